#include "ecg/staralg.hpp"

#include <algorithm>
#include <sstream>

#include "ecg/error.hpp"

namespace ecg::star {

Context::Context(EdgeColoredGraph g) : graph_(std::move(g)) {
    require_valid(graph_);
    for (size_t i = 0; i < graph_.vertices.size(); ++i) vidx_[graph_.vertices[i]] = int(i);
    for (size_t i = 0; i < graph_.edges.size(); ++i) {
        const auto& e = graph_.edges[i];
        eidx_[e.id] = int(i);
        esrc_.push_back(vidx_.at(e.src));
        edst_.push_back(vidx_.at(e.dst));
        ecol_.push_back(e.color);
        incoming_[{vidx_.at(e.dst), e.color}].push_back(int(i));
    }
    monochrome_ = graph_.colors_used().size() <= 1;
}

int Context::vertex_index(const std::string& id) const {
    auto it = vidx_.find(id);
    if (it == vidx_.end()) throw Error("unknown vertex: " + id);
    return it->second;
}

int Context::edge_index(const std::string& id) const {
    auto it = eidx_.find(id);
    if (it == eidx_.end()) throw Error("unknown edge: " + id);
    return it->second;
}

const std::vector<int>& Context::incoming(int v, int c) const {
    static const std::vector<int> empty;
    auto it = incoming_.find({v, c});
    return it == incoming_.end() ? empty : it->second;
}

int Context::designated(int v, int c) const {
    const auto& in = incoming(v, c);
    return in.empty() ? -1 : in.back();
}

ContextPtr make_context(const EdgeColoredGraph& g) { return std::make_shared<Context>(g); }

StarPolynomial detail_from_terms(ContextPtr ctx, std::map<Word, mpq_class, WordLess> terms);

namespace {

// the projection p with p * x = x (left) resp. x * p = x (right)
int left_support(const Context& c, const Letter& l) {
    switch (l.kind) {
        case LetterKind::P: return l.index;
        case LetterKind::S: return c.dst(l.index);
        case LetterKind::Sstar: return c.src(l.index);
    }
    return -1;
}

int right_support(const Context& c, const Letter& l) {
    switch (l.kind) {
        case LetterKind::P: return l.index;
        case LetterKind::S: return c.src(l.index);
        case LetterKind::Sstar: return c.dst(l.index);
    }
    return -1;
}

enum class RuleKind {
    None,
    Kill,       // incompatible supports, or same-color range orthogonality
    CollapseP,  // p p -> p
    DropFirst,  // p X -> X
    DropSecond, // X p -> X
    R6ToP,      // S* S -> p_{s(e)} (same edge)
    R7,         // designated S_d S_d* -> p_v - sum of the other range pairs
};

RuleKind match_pair(const Context& c, const Letter& a, const Letter& b) {
    if (right_support(c, a) != left_support(c, b)) return RuleKind::Kill;
    if (a.kind == LetterKind::P && b.kind == LetterKind::P) return RuleKind::CollapseP;
    if (a.kind == LetterKind::P) return RuleKind::DropFirst;
    if (b.kind == LetterKind::P) return RuleKind::DropSecond;
    if (a.kind == LetterKind::Sstar && b.kind == LetterKind::S &&
        c.color(a.index) == c.color(b.index))
        return a.index == b.index ? RuleKind::R6ToP : RuleKind::Kill;
    if (a.kind == LetterKind::S && b.kind == LetterKind::Sstar && a.index == b.index &&
        c.designated(c.dst(a.index), c.color(a.index)) == a.index)
        return RuleKind::R7;
    return RuleKind::None;
}

int find_leftmost_redex(const Context& c, const Word& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (match_pair(c, w[i], w[i + 1]) != RuleKind::None) return int(i);
    return -1;
}

std::vector<int> find_all_redexes(const Context& c, const Word& w) {
    std::vector<int> out;
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (match_pair(c, w[i], w[i + 1]) != RuleKind::None) out.push_back(int(i));
    return out;
}

int count_designated_pairs(const Context& c, const Word& w) {
    int n = 0;
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i].kind == LetterKind::S && w[i + 1].kind == LetterKind::Sstar &&
            w[i].index == w[i + 1].index &&
            c.designated(c.dst(w[i].index), c.color(w[i].index)) == w[i].index)
            ++n;
    return n;
}

Word splice(const Word& w, size_t i, std::initializer_list<Letter> mid) {
    Word out;
    out.reserve(w.size() - 2 + mid.size());
    out.insert(out.end(), w.begin(), w.begin() + i);
    out.insert(out.end(), mid.begin(), mid.end());
    out.insert(out.end(), w.begin() + i + 2, w.end());
    return out;
}

// rewrite the pair at position i; the source word is consumed
std::vector<std::pair<Word, mpq_class>> apply_rule(const Context& c, const Word& w, size_t i,
                                                   const mpq_class& coeff) {
    const Letter a = w[i], b = w[i + 1];
    switch (match_pair(c, a, b)) {
        case RuleKind::Kill: return {};
        case RuleKind::CollapseP: return {{splice(w, i, {a}), coeff}};
        case RuleKind::DropFirst: return {{splice(w, i, {b}), coeff}};
        case RuleKind::DropSecond: return {{splice(w, i, {a}), coeff}};
        case RuleKind::R6ToP:
            return {{splice(w, i, {Letter{LetterKind::P, c.src(a.index)}}), coeff}};
        case RuleKind::R7: {
            int v = c.dst(a.index), col = c.color(a.index);
            std::vector<std::pair<Word, mpq_class>> out;
            out.push_back({splice(w, i, {Letter{LetterKind::P, v}}), coeff});
            for (int f : c.incoming(v, col)) {
                if (f == a.index) continue;
                out.push_back({splice(w, i, {Letter{LetterKind::S, f}, Letter{LetterKind::Sstar, f}}),
                               -coeff});
            }
            return out;
        }
        case RuleKind::None: break;
    }
    throw InternalError("apply_rule on a position without a redex");
}

using Measure = std::pair<size_t, int>;
Measure measure_of(const Context& c, const Word& w) {
    return {w.size(), count_designated_pairs(c, w)};
}

StarPolynomial reduce_core(ContextPtr ctx, const std::vector<std::pair<Word, mpq_class>>& raw,
                           ReduceStats* stats, std::mt19937_64* rng) {
    internal_check(ctx != nullptr, "reduce without ambient context");
    const Context& c = *ctx;
    std::map<Word, mpq_class, WordLess> acc;
    std::vector<std::pair<Word, mpq_class>> work;
    for (const auto& [w, q] : raw) {
        mpq_class c = q;
        c.canonicalize(); // caller-supplied rationals may be unnormalized
        if (c != 0) work.push_back({w, std::move(c)});
    }

    while (!work.empty()) {
        size_t k = work.size() - 1;
        if (rng) k = (*rng)() % work.size();
        auto [w, q] = std::move(work[k]);
        if (k != work.size() - 1) work[k] = std::move(work.back());
        work.pop_back();

        int pos;
        if (rng) {
            auto all = find_all_redexes(c, w);
            pos = all.empty() ? -1 : all[(*rng)() % all.size()];
        } else {
            pos = find_leftmost_redex(c, w);
        }
        if (pos < 0) {
            auto [it, fresh] = acc.try_emplace(w, q);
            if (!fresh) {
                it->second += q;
                if (it->second == 0) acc.erase(it);
            }
            continue;
        }
        auto derived = apply_rule(c, w, size_t(pos), q);
        if (stats) {
            ++stats->rewrites;
            auto before = measure_of(c, w);
            for (const auto& [dw, dq] : derived)
                if (!(measure_of(c, dw) < before)) ++stats->measure_violations;
        }
        for (auto& d : derived) work.push_back(std::move(d));
    }

    return detail_from_terms(std::move(ctx), std::move(acc));
}

} // namespace

StarPolynomial detail_from_terms(ContextPtr ctx, std::map<Word, mpq_class, WordLess> terms) {
    StarPolynomial p(std::move(ctx));
    p.terms_ = std::move(terms);
    return p;
}

StarPolynomial reduce(ContextPtr ctx, const std::vector<std::pair<Word, mpq_class>>& raw) {
    return reduce_core(std::move(ctx), raw, nullptr, nullptr);
}

StarPolynomial reduce_instrumented(ContextPtr ctx,
                                   const std::vector<std::pair<Word, mpq_class>>& raw,
                                   ReduceStats& stats) {
    return reduce_core(std::move(ctx), raw, &stats, nullptr);
}

StarPolynomial reduce_randomized(ContextPtr ctx,
                                 const std::vector<std::pair<Word, mpq_class>>& raw,
                                 std::mt19937_64& rng) {
    return reduce_core(std::move(ctx), raw, nullptr, &rng);
}

StarPolynomial StarPolynomial::zero(ContextPtr ctx) { return StarPolynomial(std::move(ctx)); }

StarPolynomial StarPolynomial::vertex(ContextPtr ctx, const std::string& v) {
    int i = ctx->vertex_index(v);
    return reduce(ctx, {{Word{Letter{LetterKind::P, i}}, 1}});
}

StarPolynomial StarPolynomial::edge(ContextPtr ctx, const std::string& e) {
    int i = ctx->edge_index(e);
    return reduce(ctx, {{Word{Letter{LetterKind::S, i}}, 1}});
}

StarPolynomial StarPolynomial::edge_star(ContextPtr ctx, const std::string& e) {
    int i = ctx->edge_index(e);
    return reduce(ctx, {{Word{Letter{LetterKind::Sstar, i}}, 1}});
}

StarPolynomial StarPolynomial::unit(ContextPtr ctx) {
    std::vector<std::pair<Word, mpq_class>> raw;
    for (int i = 0; i < ctx->vertex_count(); ++i)
        raw.push_back({Word{Letter{LetterKind::P, i}}, 1});
    return reduce(ctx, raw);
}

namespace {
void require_same_ambient(const StarPolynomial& a, const StarPolynomial& b) {
    const auto& ca = a.context();
    const auto& cb = b.context();
    internal_check(ca && cb, "polynomial without ambient context");
    if (ca == cb) return;
    if (!(ca->graph() == cb->graph())) throw Error("ambient graph mismatch");
}
} // namespace

StarPolynomial StarPolynomial::operator+(const StarPolynomial& o) const {
    require_same_ambient(*this, o);
    auto t = terms_;
    for (const auto& [w, q] : o.terms_) {
        auto [it, fresh] = t.try_emplace(w, q);
        if (!fresh) {
            it->second += q;
            if (it->second == 0) t.erase(it);
        }
    }
    return detail_from_terms(ctx_, std::move(t));
}

StarPolynomial StarPolynomial::operator-() const {
    auto t = terms_;
    for (auto& [w, q] : t) q = -q;
    return detail_from_terms(ctx_, std::move(t));
}

StarPolynomial StarPolynomial::operator-(const StarPolynomial& o) const { return *this + (-o); }

StarPolynomial StarPolynomial::scaled(const mpq_class& c) const {
    mpq_class f = c;
    f.canonicalize();
    if (f == 0) return StarPolynomial(ctx_);
    auto t = terms_;
    for (auto& [w, q] : t) q *= f;
    return detail_from_terms(ctx_, std::move(t));
}

StarPolynomial StarPolynomial::operator*(const StarPolynomial& o) const {
    require_same_ambient(*this, o);
    std::vector<std::pair<Word, mpq_class>> raw;
    for (const auto& [w1, q1] : terms_)
        for (const auto& [w2, q2] : o.terms_) {
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            raw.push_back({std::move(w), q1 * q2});
        }
    return reduce(ctx_, raw);
}

bool StarPolynomial::operator==(const StarPolynomial& o) const {
    require_same_ambient(*this, o);
    return terms_ == o.terms_;
}

StarPolynomial StarPolynomial::adjoint() const {
    std::vector<std::pair<Word, mpq_class>> raw;
    for (const auto& [w, q] : terms_) {
        Word r;
        r.reserve(w.size());
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            Letter l = *it;
            if (l.kind == LetterKind::S)
                l.kind = LetterKind::Sstar;
            else if (l.kind == LetterKind::Sstar)
                l.kind = LetterKind::S;
            r.push_back(l);
        }
        raw.push_back({std::move(r), q}); // rational coefficients: conjugation is trivial
    }
    return reduce(ctx_, raw);
}

std::string StarPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, q] : terms_) {
        mpq_class a = abs(q);
        if (first) {
            if (q < 0) os << "-";
            first = false;
        } else {
            os << (q < 0 ? " - " : " + ");
        }
        if (a != 1) os << a << " ";
        bool fl = true;
        for (const auto& l : w) {
            if (!fl) os << " ";
            fl = false;
            switch (l.kind) {
                case LetterKind::P: os << "p(" << ctx_->vertex_id(l.index) << ")"; break;
                case LetterKind::S: os << "S(" << ctx_->edge_id(l.index) << ")"; break;
                case LetterKind::Sstar: os << "S*(" << ctx_->edge_id(l.index) << ")"; break;
            }
        }
    }
    return os.str();
}

Equality equal(const StarPolynomial& p, const StarPolynomial& q) {
    require_same_ambient(p, q);
    StarPolynomial d = p - q;
    if (d.is_zero()) return Equality::Proved;
    // in a monochrome ambient the normal words form a linear basis, so a
    // nonzero normal form is a genuine refutation
    return p.context()->monochrome() ? Equality::Refuted : Equality::Unproved;
}

GeneratorMap canonical_family(ContextPtr ctx) {
    GeneratorMap m;
    m.name = "canonical";
    m.source = ctx;
    m.target = ctx;
    for (int i = 0; i < ctx->vertex_count(); ++i)
        m.vertex_images.push_back(StarPolynomial::vertex(ctx, ctx->vertex_id(i)));
    for (int i = 0; i < ctx->edge_count(); ++i)
        m.edge_images.push_back(StarPolynomial::edge(ctx, ctx->edge_id(i)));
    return m;
}

bool VerifyReport::all_hold() const {
    return std::all_of(relations.begin(), relations.end(),
                       [](const RelationResult& r) { return r.status == RelationStatus::Holds; });
}

namespace {

RelationStatus status_of(Equality e) {
    switch (e) {
        case Equality::Proved: return RelationStatus::Holds;
        case Equality::Refuted: return RelationStatus::Fails;
        case Equality::Unproved: return RelationStatus::Unproved;
    }
    return RelationStatus::Unproved;
}

void push_relation(VerifyReport& rep, const std::string& id, const std::string& desc,
                   const StarPolynomial& lhs, const StarPolynomial& rhs) {
    RelationResult r;
    r.id = id;
    r.description = desc;
    r.status = status_of(equal(lhs, rhs));
    r.residual = lhs - rhs;
    rep.relations.push_back(std::move(r));
}

} // namespace

VerifyReport verify_ck_family(const GeneratorMap& m) {
    const Context& src = *m.source;
    internal_check(int(m.vertex_images.size()) == src.vertex_count() &&
                       int(m.edge_images.size()) == src.edge_count(),
                   "generator map is not total");
    VerifyReport rep;
    for (int v = 0; v < src.vertex_count(); ++v)
        rep.images.push_back({"p(" + src.vertex_id(v) + ")", m.vertex_images[v]});
    for (int e = 0; e < src.edge_count(); ++e)
        rep.images.push_back({"S(" + src.edge_id(e) + ")", m.edge_images[e]});

    auto zero = StarPolynomial::zero(m.target);

    // (a) vertex images: selfadjoint idempotents, pairwise orthogonal
    for (int v = 0; v < src.vertex_count(); ++v) {
        const auto& pv = m.vertex_images[v];
        const auto& id = src.vertex_id(v);
        push_relation(rep, "p_selfadjoint[" + id + "]", "p(" + id + ")* = p(" + id + ")",
                      pv.adjoint(), pv);
        push_relation(rep, "p_idempotent[" + id + "]",
                      "p(" + id + ") p(" + id + ") = p(" + id + ")", pv * pv, pv);
    }
    for (int v = 0; v < src.vertex_count(); ++v)
        for (int w = 0; w < src.vertex_count(); ++w) {
            if (v == w) continue;
            const auto& iv = src.vertex_id(v);
            const auto& iw = src.vertex_id(w);
            push_relation(rep, "p_orthogonal[" + iv + "," + iw + "]",
                          "p(" + iv + ") p(" + iw + ") = 0",
                          m.vertex_images[v] * m.vertex_images[w], zero);
        }

    // (b) source projections
    for (int e = 0; e < src.edge_count(); ++e) {
        const auto& ie = src.edge_id(e);
        const auto& is = src.vertex_id(src.src(e));
        push_relation(rep, "ck_source[" + ie + "]",
                      "S*(" + ie + ") S(" + ie + ") = p(" + is + ")",
                      m.edge_images[e].adjoint() * m.edge_images[e], m.vertex_images[src.src(e)]);
    }

    // (c) range orthogonality within a color ((f,e) is the adjoint of (e,f))
    for (int e = 0; e < src.edge_count(); ++e)
        for (int f = e + 1; f < src.edge_count(); ++f) {
            if (src.color(e) != src.color(f)) continue;
            const auto& ie = src.edge_id(e);
            const auto& iff = src.edge_id(f);
            push_relation(rep, "ck_range_orthogonal[" + ie + "," + iff + "]",
                          "S*(" + ie + ") S(" + iff + ") = 0",
                          m.edge_images[e].adjoint() * m.edge_images[f], zero);
        }

    // (d) per-color range sums
    for (int v = 0; v < src.vertex_count(); ++v)
        for (int c : src.graph().colors_used()) {
            const auto& in = src.incoming(v, c);
            if (in.empty()) continue;
            StarPolynomial sum = StarPolynomial::zero(m.target);
            std::string lhs;
            for (int e : in) {
                sum = sum + m.edge_images[e] * m.edge_images[e].adjoint();
                if (!lhs.empty()) lhs += " + ";
                lhs += "S(" + src.edge_id(e) + ") S*(" + src.edge_id(e) + ")";
            }
            const auto& iv = src.vertex_id(v);
            push_relation(rep, "ck_sum[" + iv + "," + std::to_string(c) + "]",
                          lhs + " = p(" + iv + ")", sum, m.vertex_images[v]);
        }
    return rep;
}

VerifyReport verify_homomorphism(const GeneratorMap& m) { return verify_ck_family(m); }

StarPolynomial apply_map(const GeneratorMap& m, const StarPolynomial& p) {
    if (!(p.context()->graph() == m.source->graph()))
        throw Error("apply_map: polynomial is not over the map's source graph");
    StarPolynomial out = StarPolynomial::zero(m.target);
    for (const auto& [w, q] : p.terms()) {
        StarPolynomial prod;
        bool first = true;
        for (const auto& l : w) {
            StarPolynomial img;
            switch (l.kind) {
                case LetterKind::P: img = m.vertex_images[l.index]; break;
                case LetterKind::S: img = m.edge_images[l.index]; break;
                case LetterKind::Sstar: img = m.edge_images[l.index].adjoint(); break;
            }
            prod = first ? img : prod * img;
            first = false;
        }
        out = out + prod.scaled(q);
    }
    return out;
}

VerifyReport verify_mutually_inverse(const GeneratorMap& m1, const GeneratorMap& m2) {
    if (!(m1.target->graph() == m2.source->graph()) ||
        !(m2.target->graph() == m1.source->graph()))
        throw Error("maps are not composable");
    VerifyReport rep;
    auto check_roundtrip = [&rep](const GeneratorMap& fwd, const GeneratorMap& bwd,
                                  const std::string& tag) {
        const Context& src = *fwd.source;
        for (int v = 0; v < src.vertex_count(); ++v) {
            const auto& id = src.vertex_id(v);
            push_relation(rep, "roundtrip_" + tag + "[p(" + id + ")]",
                          bwd.name + "(" + fwd.name + "(p(" + id + "))) = p(" + id + ")",
                          apply_map(bwd, fwd.vertex_images[v]),
                          StarPolynomial::vertex(fwd.source, id));
        }
        for (int e = 0; e < src.edge_count(); ++e) {
            const auto& id = src.edge_id(e);
            push_relation(rep, "roundtrip_" + tag + "[S(" + id + ")]",
                          bwd.name + "(" + fwd.name + "(S(" + id + "))) = S(" + id + ")",
                          apply_map(bwd, fwd.edge_images[e]), StarPolynomial::edge(fwd.source, id));
        }
    };
    check_roundtrip(m1, m2, "source");
    check_roundtrip(m2, m1, "target");
    return rep;
}

EdgeColoredGraph infer_graph(
    const std::vector<std::pair<std::string, StarPolynomial>>& projections,
    const std::vector<std::pair<std::string, StarPolynomial>>& isometries,
    const std::vector<int>& colors) {
    if (colors.size() != isometries.size())
        throw Error("infer_graph: one color per partial isometry required");
    EdgeColoredGraph g;
    g.name = "inferred";
    for (const auto& [id, p] : projections) g.vertices.push_back(id);
    for (size_t k = 0; k < isometries.size(); ++k) {
        const auto& [id, s] = isometries[k];
        StarPolynomial sstar_s = s.adjoint() * s;
        StarPolynomial s_sstar = s * s.adjoint();
        int src = -1, dst = -1;
        for (size_t j = 0; j < projections.size(); ++j) {
            const auto& p = projections[j].second;
            if (equal(sstar_s, p) == Equality::Proved) {
                if (src >= 0) throw Error("infer_graph: ambiguous source for " + id);
                src = int(j);
            }
            if (equal(p * s_sstar * p, s_sstar) == Equality::Proved) {
                if (dst >= 0) throw Error("infer_graph: ambiguous range for " + id);
                dst = int(j);
            }
        }
        if (src < 0) throw Error("infer_graph: no source projection matches S*S for " + id);
        if (dst < 0) throw Error("infer_graph: no dominating range projection for " + id);
        g.edges.push_back({id, projections[src].first, projections[dst].first, colors[k]});
    }
    return g;
}

} // namespace ecg::star
