#ifndef ECG_TESTS_HELPERS_HPP
#define ECG_TESTS_HELPERS_HPP

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ecg/graph.hpp"
#include "ecg/io.hpp"
#include "ecg/staralg.hpp"

namespace ecgtest {

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::string fixture_path(const std::string& name) {
    return std::string(ECG_FIXTURE_DIR) + "/" + name;
}

inline std::string fixture_text(const std::string& name) { return read_text(fixture_path(name)); }

inline ecg::EdgeColoredGraph fixture(const std::string& name) {
    auto parsed = ecg::io::parse_graph(fixture_text(name), name);
    if (!parsed.ok()) {
        std::string msg = "fixture " + name + " does not parse:";
        for (const auto& e : parsed.errors) msg += "\n  " + e.message();
        throw std::runtime_error(msg);
    }
    return *parsed.graph;
}

inline ecg::star::GeneratorMap fixture_map(const std::string& name,
                                           const ecg::EdgeColoredGraph& src,
                                           const ecg::EdgeColoredGraph& tgt) {
    auto parsed = ecg::io::parse_genmap(fixture_text(name), src, tgt, name);
    if (!parsed.ok()) {
        std::string msg = "fixture " + name + " does not parse:";
        for (const auto& e : parsed.errors) msg += "\n  " + e.message();
        throw std::runtime_error(msg);
    }
    return *parsed.map;
}

/// Small random graph: <= max_v vertices, <= max_e edges, colors <= max_c.
inline ecg::EdgeColoredGraph random_graph(std::mt19937_64& rng, int max_v = 4, int max_e = 6,
                                          int max_c = 3) {
    ecg::EdgeColoredGraph g;
    g.name = "rand";
    int nv = 1 + int(rng() % uint64_t(max_v));
    for (int i = 0; i < nv; ++i) g.vertices.push_back("v" + std::to_string(i));
    int ne = int(rng() % uint64_t(max_e + 1));
    for (int i = 0; i < ne; ++i)
        g.edges.push_back({"e" + std::to_string(i), g.vertices[rng() % nv],
                           g.vertices[rng() % nv], 1 + int(rng() % uint64_t(max_c))});
    return g;
}

/// Random polynomial over g: a handful of short words with small rational
/// coefficients. Raw words may be arbitrary letter sequences; the result is
/// reduced.
inline ecg::star::StarPolynomial random_poly(std::mt19937_64& rng,
                                             const ecg::star::ContextPtr& ctx, int max_terms = 4,
                                             int max_len = 4) {
    using namespace ecg::star;
    std::vector<std::pair<Word, mpq_class>> raw;
    int terms = 1 + int(rng() % uint64_t(max_terms));
    for (int t = 0; t < terms; ++t) {
        Word w;
        int len = 1 + int(rng() % uint64_t(max_len));
        for (int i = 0; i < len; ++i) {
            int kind = int(rng() % 3);
            if (ctx->edge_count() == 0) kind = 0;
            if (kind == 0)
                w.push_back({LetterKind::P, int(rng() % uint64_t(ctx->vertex_count()))});
            else if (kind == 1)
                w.push_back({LetterKind::S, int(rng() % uint64_t(ctx->edge_count()))});
            else
                w.push_back({LetterKind::Sstar, int(rng() % uint64_t(ctx->edge_count()))});
        }
        long num = long(rng() % 7) - 3;
        long den = 1 + long(rng() % 3);
        raw.push_back({std::move(w), mpq_class(num, den)});
    }
    return reduce(ctx, raw);
}

} // namespace ecgtest

#endif
