#ifndef ECG_STARALG_HPP
#define ECG_STARALG_HPP

#include <gmpxx.h>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ecg/graph.hpp"

namespace ecg::star {

/// Immutable lookup tables for the generators of one ambient graph:
/// index maps, per-edge endpoints/colors, incoming edges per (vertex, color)
/// and the designated edge (last declared) used by the sum-relation rewrite.
class Context {
public:
    explicit Context(EdgeColoredGraph g);

    const EdgeColoredGraph& graph() const { return graph_; }
    int vertex_count() const { return int(graph_.vertices.size()); }
    int edge_count() const { return int(graph_.edges.size()); }

    int vertex_index(const std::string& id) const; ///< throws on miss
    int edge_index(const std::string& id) const;
    const std::string& vertex_id(int i) const { return graph_.vertices[i]; }
    const std::string& edge_id(int i) const { return graph_.edges[i].id; }

    int src(int e) const { return esrc_[e]; }
    int dst(int e) const { return edst_[e]; }
    int color(int e) const { return ecol_[e]; }

    /// Incoming color-c edges of v, declaration order. Empty when none.
    const std::vector<int>& incoming(int v, int c) const;
    /// The designated (last declared) incoming color-c edge at v, or -1.
    int designated(int v, int c) const;
    bool monochrome() const { return monochrome_; }

private:
    EdgeColoredGraph graph_;
    std::map<std::string, int> vidx_, eidx_;
    std::vector<int> esrc_, edst_, ecol_;
    std::map<std::pair<int, int>, std::vector<int>> incoming_;
    bool monochrome_ = true;
};

using ContextPtr = std::shared_ptr<const Context>;
ContextPtr make_context(const EdgeColoredGraph& g);

enum class LetterKind { P, S, Sstar };

struct Letter {
    LetterKind kind;
    int index; ///< vertex index for P, edge index otherwise
    auto operator<=>(const Letter&) const = default;
};

/// A word in the generators {p_v, S_e, S_e*}. Words stored inside a
/// StarPolynomial are in normal form: no rewrite rule applies to any
/// adjacent pair.
using Word = std::vector<Letter>;

/// Length-lexicographic word order; gives every polynomial a deterministic
/// term order.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

enum class Equality { Proved, Refuted, Unproved };

/// Exact-rational linear combination of normal-form words over one ambient
/// graph. Value type; all operations return reduced polynomials.
class StarPolynomial {
public:
    StarPolynomial() = default;
    explicit StarPolynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    static StarPolynomial zero(ContextPtr ctx);
    static StarPolynomial vertex(ContextPtr ctx, const std::string& v);
    static StarPolynomial edge(ContextPtr ctx, const std::string& e);
    static StarPolynomial edge_star(ContextPtr ctx, const std::string& e);
    /// The unit 1 = sum of all vertex projections.
    static StarPolynomial unit(ContextPtr ctx);

    const ContextPtr& context() const { return ctx_; }
    const std::map<Word, mpq_class, WordLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    StarPolynomial operator+(const StarPolynomial& o) const;
    StarPolynomial operator-(const StarPolynomial& o) const;
    StarPolynomial operator-() const;
    StarPolynomial operator*(const StarPolynomial& o) const; ///< reduced product
    StarPolynomial scaled(const mpq_class& c) const;
    bool operator==(const StarPolynomial& o) const;

    /// Reverse every word, star every letter, reduce.
    StarPolynomial adjoint() const;

    std::string to_string() const;

private:
    friend StarPolynomial detail_from_terms(ContextPtr, std::map<Word, mpq_class, WordLess>);
    ContextPtr ctx_;
    std::map<Word, mpq_class, WordLess> terms_;
};

/// Instrumentation for the termination argument: every rewrite replaces a
/// word by words that are strictly smaller in the measure
/// (length, number of designated adjacent pairs), lexicographically.
struct ReduceStats {
    long long rewrites = 0;
    long long measure_violations = 0;
};

/// Normal form of an arbitrary (word, coefficient) combination.
StarPolynomial reduce(ContextPtr ctx, const std::vector<std::pair<Word, mpq_class>>& raw);

/// Same, counting rewrites and checking the termination measure.
StarPolynomial reduce_instrumented(ContextPtr ctx,
                                   const std::vector<std::pair<Word, mpq_class>>& raw,
                                   ReduceStats& stats);

/// Same, applying rules at positions chosen by rng instead of leftmost.
/// Used by the confluence property tests.
StarPolynomial reduce_randomized(ContextPtr ctx,
                                 const std::vector<std::pair<Word, mpq_class>>& raw,
                                 std::mt19937_64& rng);

/// Proved iff p - q reduces to 0. Refuted needs a monochrome ambient, where
/// normal words are a linear basis; multicolored nonzero residues are only
/// Unproved.
Equality equal(const StarPolynomial& p, const StarPolynomial& q);

/// Generator assignment source -> polynomials over the target graph.
struct GeneratorMap {
    std::string name;
    ContextPtr source;
    ContextPtr target;
    std::vector<StarPolynomial> vertex_images; ///< by source vertex index
    std::vector<StarPolynomial> edge_images;   ///< by source edge index
};

/// The identity family of g: v -> p_v, e -> S_e over g itself.
GeneratorMap canonical_family(ContextPtr ctx);

enum class RelationStatus { Holds, Fails, Unproved };

struct RelationResult {
    std::string id;          ///< stable machine id, e.g. "ck_source[x2]"
    std::string description; ///< human form of the relation
    RelationStatus status;
    StarPolynomial residual; ///< normal form of lhs - rhs (zero when Holds)
};

struct VerifyReport {
    /// reduced image of every generator, vertices first (source order)
    std::vector<std::pair<std::string, StarPolynomial>> images;
    std::vector<RelationResult> relations;
    bool all_hold() const;
};

/// Check the edge-colored Cuntz-Krieger relations of the source graph on the
/// images: (a) vertex images are selfadjoint idempotents, pairwise
/// orthogonal; (b) S_e* S_e = p_{s(e)}; (c) same-color distinct edges have
/// orthogonal ranges; (d) per (vertex, color) with incoming edges the range
/// sum equals the vertex projection.
VerifyReport verify_ck_family(const GeneratorMap& m);

/// Alias of verify_ck_family: all relations holding certifies the induced
/// homomorphism by the universal property; a failing relation refutes this
/// assignment.
VerifyReport verify_homomorphism(const GeneratorMap& m);

/// Substitute m's images into a polynomial over m's source graph.
StarPolynomial apply_map(const GeneratorMap& m, const StarPolynomial& p);

/// For every generator x of m1's source check m2(m1(x)) = x, and
/// symmetrically for m2's source.
VerifyReport verify_mutually_inverse(const GeneratorMap& m1, const GeneratorMap& m2);

/// Reconstruct the graph of a family: one vertex per projection, one edge
/// per partial isometry, s(S) = the p with S*S = p, r(S) = the p dominating
/// SS*, colors supplied by the caller.
EdgeColoredGraph infer_graph(const std::vector<std::pair<std::string, StarPolynomial>>& projections,
                             const std::vector<std::pair<std::string, StarPolynomial>>& isometries,
                             const std::vector<int>& colors);

} // namespace ecg::star

#endif
