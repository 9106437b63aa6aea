#include "ecg/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace ecg::io {

std::string ParseError::message() const {
    std::ostringstream os;
    os << span.file << ":" << span.line << ":" << span.column << ": expected " << expected
       << ", found " << found;
    return os.str();
}

namespace {

constexpr size_t kErrorCap = 32;

enum class Tok {
    Ident,
    Int,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Colon,
    Comma,
    Arrow,    // ->
    FatArrow, // =>
    At,
    Plus,
    Minus,
    Slash,
    Star,
    Eof,
    Bad,
};

struct Token {
    Tok kind;
    std::string lexeme;
    SourceSpan span;
};

class Lexer {
public:
    Lexer(const std::string& text, const std::string& file) : text_(text), file_(file) {
        for (;;) {
            Token t = next();
            toks_.push_back(t);
            if (t.kind == Tok::Eof) break;
        }
    }
    const std::vector<Token>& tokens() const { return toks_; }

private:
    SourceSpan here() const { return {file_, line_, col_, pos_}; }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void advance() {
        if (pos_ >= text_.size()) return;
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    Token next() {
        for (;;) {
            while (pos_ < text_.size() && (std::isspace(uint8_t(peek())) || peek() == '\r'))
                advance();
            if (peek() == '#') {
                while (pos_ < text_.size() && peek() != '\n') advance();
                continue;
            }
            break;
        }
        SourceSpan sp = here();
        if (pos_ >= text_.size()) return {Tok::Eof, "end of input", sp};
        char c = peek();
        auto one = [&](Tok k) {
            std::string lx(1, c);
            advance();
            return Token{k, lx, sp};
        };
        if (std::isalpha(uint8_t(c)) || c == '_') {
            std::string lx;
            while (std::isalnum(uint8_t(peek())) || peek() == '_') {
                lx += peek();
                advance();
            }
            return {Tok::Ident, lx, sp};
        }
        if (std::isdigit(uint8_t(c))) {
            std::string lx;
            while (std::isdigit(uint8_t(peek()))) {
                lx += peek();
                advance();
            }
            return {Tok::Int, lx, sp};
        }
        switch (c) {
            case '{': return one(Tok::LBrace);
            case '}': return one(Tok::RBrace);
            case '(': return one(Tok::LParen);
            case ')': return one(Tok::RParen);
            case ';': return one(Tok::Semi);
            case ':': return one(Tok::Colon);
            case ',': return one(Tok::Comma);
            case '@': return one(Tok::At);
            case '+': return one(Tok::Plus);
            case '/': return one(Tok::Slash);
            case '*': return one(Tok::Star);
            case '-':
                advance();
                if (peek() == '>') {
                    advance();
                    return {Tok::Arrow, "->", sp};
                }
                return {Tok::Minus, "-", sp};
            case '=':
                advance();
                if (peek() == '>') {
                    advance();
                    return {Tok::FatArrow, "=>", sp};
                }
                return {Tok::Bad, "=", sp};
            default: return one(Tok::Bad);
        }
    }

    const std::string& text_;
    std::string file_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    std::vector<Token> toks_;
};

class Parser {
public:
    Parser(const std::string& text, const std::string& file) : lex_(text, file) {}

protected:
    const Token& peek(int ahead = 0) const {
        size_t i = std::min(pos_ + size_t(ahead), lex_.tokens().size() - 1);
        return lex_.tokens()[i];
    }
    const Token& take() {
        const Token& t = lex_.tokens()[pos_];
        if (pos_ + 1 < lex_.tokens().size()) ++pos_;
        return t;
    }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_keyword(const char* kw) const { return at(Tok::Ident) && peek().lexeme == kw; }

    void error(const Token& t, const std::string& expected) {
        if (errors_.size() < kErrorCap) errors_.push_back({t.span, expected, t.lexeme});
        else capped_ = true;
    }
    bool overflowed() const { return capped_ || errors_.size() >= kErrorCap; }

    /// expect a token kind; on mismatch records an error and leaves the
    /// cursor in place
    std::optional<Token> expect(Tok k, const std::string& what) {
        if (at(k)) return take();
        error(peek(), what);
        return std::nullopt;
    }

    /// skip to just after the next ';' (or stop before '}' / EOF)
    void sync_statement() {
        for (;;) {
            if (at(Tok::Eof) || at(Tok::RBrace)) return;
            if (at(Tok::Semi)) {
                take();
                return;
            }
            take();
        }
    }

    Lexer lex_;
    size_t pos_ = 0;
    std::vector<ParseError> errors_;
    bool capped_ = false;
};

class GraphParser : public Parser {
public:
    using Parser::Parser;

    GraphParse run() {
        EdgeColoredGraph g;
        parse_header(g);
        parse_body(g);
        GraphParse out;
        out.errors = std::move(errors_);
        if (out.errors.empty()) out.graph = std::move(g);
        return out;
    }

private:
    void parse_header(EdgeColoredGraph& g) {
        if (at_keyword("graph")) take();
        else error(peek(), "'graph'");
        if (auto t = expect(Tok::Ident, "graph name")) g.name = t->lexeme;
        expect(Tok::LBrace, "'{'");
    }

    void parse_body(EdgeColoredGraph& g) {
        std::set<std::string> vids, eids;
        while (!at(Tok::RBrace) && !at(Tok::Eof) && !overflowed()) {
            if (at_keyword("vertex")) {
                take();
                for (;;) {
                    auto t = expect(Tok::Ident, "vertex id");
                    if (!t) break;
                    if (!vids.insert(t->lexeme).second) error(*t, "fresh vertex id (duplicate vertex id)");
                    else g.vertices.push_back(t->lexeme);
                    if (at(Tok::Comma)) {
                        take();
                        continue;
                    }
                    break;
                }
                if (!expect(Tok::Semi, "';'")) sync_statement();
            } else if (at_keyword("edge")) {
                take();
                auto id = expect(Tok::Ident, "edge id");
                if (!id || !expect(Tok::Colon, "':'")) {
                    sync_statement();
                    continue;
                }
                auto src = expect(Tok::Ident, "source vertex");
                if (!src || !expect(Tok::Arrow, "'->'")) {
                    sync_statement();
                    continue;
                }
                auto dst = expect(Tok::Ident, "range vertex");
                if (!dst) {
                    sync_statement();
                    continue;
                }
                int color = 1;
                bool bad = false;
                if (at(Tok::At)) {
                    take();
                    auto c = expect(Tok::Int, "color");
                    if (!c) bad = true;
                    else {
                        color = std::atoi(c->lexeme.c_str());
                        if (color < 1) {
                            error(*c, "positive color");
                            bad = true;
                        }
                    }
                }
                if (!vids.count(src->lexeme)) {
                    error(*src, "declared vertex (unknown vertex " + src->lexeme + ")");
                    bad = true;
                }
                if (!vids.count(dst->lexeme)) {
                    error(*dst, "declared vertex (unknown vertex " + dst->lexeme + ")");
                    bad = true;
                }
                if (!eids.insert(id->lexeme).second) {
                    error(*id, "fresh edge id (duplicate edge id)");
                    bad = true;
                }
                if (!bad) g.edges.push_back({id->lexeme, src->lexeme, dst->lexeme, color});
                if (!expect(Tok::Semi, "';'")) sync_statement();
            } else {
                error(peek(), "'vertex' or 'edge'");
                take();
                sync_statement();
            }
        }
        expect(Tok::RBrace, "'}'");
        if (!at(Tok::Eof)) error(peek(), "end of input");
    }
};

class GenmapParser : public Parser {
public:
    GenmapParser(const std::string& text, const std::string& file, const EdgeColoredGraph& source,
                 const EdgeColoredGraph& target)
        : Parser(text, file), source_(source), target_(target) {}

    GenmapParse run() {
        star::GeneratorMap m;
        m.source = star::make_context(source_);
        m.target = star::make_context(target_);
        m.vertex_images.resize(source_.vertices.size());
        m.edge_images.resize(source_.edges.size());
        std::vector<bool> vseen(source_.vertices.size(), false), eseen(source_.edges.size(), false);

        if (at_keyword("hom")) take();
        else error(peek(), "'hom'");
        if (auto t = expect(Tok::Ident, "map name")) m.name = t->lexeme;
        expect(Tok::Colon, "':'");
        if (auto t = expect(Tok::Ident, "source graph name")) {
            if (t->lexeme != source_.name)
                error(*t, "source graph '" + source_.name + "'");
        }
        expect(Tok::Arrow, "'->'");
        if (auto t = expect(Tok::Ident, "target graph name")) {
            if (t->lexeme != target_.name)
                error(*t, "target graph '" + target_.name + "'");
        }
        expect(Tok::LBrace, "'{'");

        while (!at(Tok::RBrace) && !at(Tok::Eof) && !overflowed()) {
            bool is_vertex;
            if (at_keyword("vertex")) is_vertex = true;
            else if (at_keyword("edge")) is_vertex = false;
            else {
                error(peek(), "'vertex' or 'edge'");
                take();
                sync_statement();
                continue;
            }
            take();
            auto id = expect(Tok::Ident, is_vertex ? "vertex id" : "edge id");
            if (!id || !expect(Tok::FatArrow, "'=>'")) {
                sync_statement();
                continue;
            }
            int idx = -1;
            if (is_vertex) {
                idx = source_.vertex_index(id->lexeme);
                if (idx < 0) error(*id, "source vertex (unknown vertex " + id->lexeme + ")");
                else if (vseen[idx]) error(*id, "single assignment for vertex " + id->lexeme);
            } else {
                idx = [&] {
                    for (size_t i = 0; i < source_.edges.size(); ++i)
                        if (source_.edges[i].id == id->lexeme) return int(i);
                    return -1;
                }();
                if (idx < 0) error(*id, "source edge (unknown edge " + id->lexeme + ")");
                else if (eseen[idx]) error(*id, "single assignment for edge " + id->lexeme);
            }
            auto value = parse_expr(m.target);
            if (!expect(Tok::Semi, "';'")) sync_statement();
            if (value && idx >= 0) {
                if (is_vertex) {
                    m.vertex_images[idx] = *value;
                    vseen[idx] = true;
                } else {
                    m.edge_images[idx] = *value;
                    eseen[idx] = true;
                }
            }
        }
        auto close = peek();
        expect(Tok::RBrace, "'}'");
        for (size_t i = 0; i < vseen.size(); ++i)
            if (!vseen[i]) error(close, "assignment for vertex " + source_.vertices[i]);
        for (size_t i = 0; i < eseen.size(); ++i)
            if (!eseen[i]) error(close, "assignment for edge " + source_.edges[i].id);

        GenmapParse out;
        out.errors = std::move(errors_);
        if (out.errors.empty()) out.map = std::move(m);
        return out;
    }

private:
    bool at_factor_start() const {
        if (at_keyword("p") || at_keyword("S")) return true;
        return at(Tok::Int) && peek().lexeme == "1";
    }

    std::optional<star::StarPolynomial> parse_factor(const star::ContextPtr& ctx) {
        if (at(Tok::Int)) {
            auto t = take();
            if (t.lexeme == "1") return star::StarPolynomial::unit(ctx);
            error(t, "factor");
            return std::nullopt;
        }
        auto head = expect(Tok::Ident, "factor");
        if (!head) return std::nullopt;
        bool star_gen = false;
        if (head->lexeme == "S" && at(Tok::Star)) {
            take();
            star_gen = true;
        }
        if (!expect(Tok::LParen, "'('")) return std::nullopt;
        auto id = expect(Tok::Ident, "generator id");
        if (!id) return std::nullopt;
        if (!expect(Tok::RParen, "')'")) return std::nullopt;
        if (head->lexeme == "p") {
            if (star_gen || ctx->graph().vertex_index(id->lexeme) < 0) {
                error(*id, "target vertex (unknown generator " + id->lexeme + ")");
                return std::nullopt;
            }
            return star::StarPolynomial::vertex(ctx, id->lexeme);
        }
        if (head->lexeme == "S") {
            if (!ctx->graph().find_edge(id->lexeme)) {
                error(*id, "target edge (unknown generator " + id->lexeme + ")");
                return std::nullopt;
            }
            return star_gen ? star::StarPolynomial::edge_star(ctx, id->lexeme)
                            : star::StarPolynomial::edge(ctx, id->lexeme);
        }
        error(*head, "'p', 'S' or 'S*'");
        return std::nullopt;
    }

    std::optional<star::StarPolynomial> parse_term(const star::ContextPtr& ctx) {
        mpq_class coeff = 1;
        bool coeff_seen = false;
        if (at(Tok::Int)) {
            // an integer is a coefficient when followed by '/' or a factor;
            // a lone "1" is the unit factor
            bool has_div = peek(1).kind == Tok::Slash;
            bool followed = false;
            {
                size_t save = pos_;
                take();
                if (has_div) {
                    take();
                    if (at(Tok::Int)) take();
                }
                followed = at_factor_start();
                pos_ = save;
            }
            if (has_div || followed) {
                auto num = take();
                coeff = mpq_class(num.lexeme);
                coeff_seen = true;
                if (at(Tok::Slash)) {
                    take();
                    auto den = expect(Tok::Int, "denominator");
                    if (!den) return std::nullopt;
                    mpq_class d(den->lexeme);
                    if (d == 0) {
                        error(*den, "nonzero denominator");
                        return std::nullopt;
                    }
                    coeff /= d;
                }
            }
        }
        if (!at_factor_start()) {
            // no error here unless a coefficient dangles: the caller reports
            // a missing term at this token
            if (coeff_seen) error(peek(), "factor");
            return std::nullopt;
        }
        auto first = parse_factor(ctx);
        if (!first) return std::nullopt;
        star::StarPolynomial prod = *first;
        while (at_factor_start()) {
            auto f = parse_factor(ctx);
            if (!f) return std::nullopt;
            prod = prod * *f;
        }
        return prod.scaled(coeff);
    }

    std::optional<star::StarPolynomial> parse_expr(const star::ContextPtr& ctx) {
        auto term = [&](const Token& at_tok) -> std::optional<star::StarPolynomial> {
            size_t before = errors_.size();
            auto t = parse_term(ctx);
            if (!t && errors_.size() == before) error(at_tok, "term");
            return t;
        };
        bool negate = false;
        if (at(Tok::Minus)) {
            take();
            negate = true;
        }
        auto first = term(peek());
        if (!first) return std::nullopt;
        star::StarPolynomial sum = negate ? -*first : *first;
        while (at(Tok::Plus) || at(Tok::Minus)) {
            bool minus = take().kind == Tok::Minus;
            auto t = term(peek());
            if (!t) return std::nullopt;
            sum = minus ? sum - *t : sum + *t;
        }
        return sum;
    }

    const EdgeColoredGraph& source_;
    const EdgeColoredGraph& target_;
};

} // namespace

GraphParse parse_graph(const std::string& text, const std::string& filename) {
    return GraphParser(text, filename).run();
}

GenmapParse parse_genmap(const std::string& text, const EdgeColoredGraph& source,
                         const EdgeColoredGraph& target, const std::string& filename) {
    return GenmapParser(text, filename, source, target).run();
}

std::optional<HomHeader> peek_hom_header(const std::string& text) {
    Lexer lex(text, "<header>");
    const auto& t = lex.tokens();
    if (t.size() < 6) return std::nullopt;
    if (t[0].kind != Tok::Ident || t[0].lexeme != "hom") return std::nullopt;
    if (t[1].kind != Tok::Ident || t[2].kind != Tok::Colon || t[3].kind != Tok::Ident ||
        t[4].kind != Tok::Arrow || t[5].kind != Tok::Ident)
        return std::nullopt;
    return HomHeader{t[1].lexeme, t[3].lexeme, t[5].lexeme};
}

std::string emit_graph(const EdgeColoredGraph& g) {
    EdgeColoredGraph c = canonical(g);
    std::ostringstream os;
    os << "graph " << c.name << " {\n";
    for (const auto& v : c.vertices) os << "  vertex " << v << ";\n";
    for (const auto& e : c.edges)
        os << "  edge " << e.id << ": " << e.src << " -> " << e.dst << " @ " << e.color << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace ecg::io
