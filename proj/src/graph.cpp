#include "ecg/graph.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ecg/error.hpp"

namespace ecg {

bool EdgeColoredGraph::has_vertex(const std::string& v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

const Edge* EdgeColoredGraph::find_edge(const std::string& id) const {
    for (const auto& e : edges)
        if (e.id == id) return &e;
    return nullptr;
}

int EdgeColoredGraph::vertex_index(const std::string& v) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == v) return static_cast<int>(i);
    return -1;
}

std::vector<int> EdgeColoredGraph::colors_used() const {
    std::set<int> cs;
    for (const auto& e : edges) cs.insert(e.color);
    return {cs.begin(), cs.end()};
}

ValidationReport validate(const EdgeColoredGraph& g) {
    ValidationReport r;
    std::unordered_set<std::string> vseen;
    for (const auto& v : g.vertices)
        if (!vseen.insert(v).second) r.violations.push_back({"duplicate_vertex_id", v});
    std::unordered_set<std::string> eseen;
    for (const auto& e : g.edges) {
        if (!eseen.insert(e.id).second) r.violations.push_back({"duplicate_edge_id", e.id});
        if (!vseen.count(e.src)) r.violations.push_back({"unknown_vertex", e.src});
        if (!vseen.count(e.dst)) r.violations.push_back({"unknown_vertex", e.dst});
        if (e.color < 1) r.violations.push_back({"nonpositive_color", e.id});
    }
    return r;
}

void require_valid(const EdgeColoredGraph& g) {
    auto r = validate(g);
    if (r.ok()) return;
    std::ostringstream os;
    os << "invalid graph '" << g.name << "':";
    for (const auto& v : r.violations) os << " [" << v.code << " " << v.detail << "]";
    throw Error(os.str());
}

ColorPartition color_partition(const EdgeColoredGraph& g) {
    ColorPartition p;
    for (const auto& v : g.vertices) p.at[v];
    for (const auto& e : g.edges) p.at[e.dst][e.color].push_back(e.id);
    return p;
}

EdgeColoredGraph monochrome_subgraph(const EdgeColoredGraph& g, int color) {
    EdgeColoredGraph out;
    out.name = g.name + "_" + std::to_string(color);
    out.vertices = g.vertices;
    for (const auto& e : g.edges)
        if (e.color == color) out.edges.push_back({e.id, e.src, e.dst, 1});
    return out;
}

EdgeColoredGraph in_star(const EdgeColoredGraph& g, const std::string& v) {
    if (!g.has_vertex(v)) throw Error("no such vertex: " + v);
    EdgeColoredGraph out;
    out.name = g.name + "_in_" + v;
    out.vertices = g.vertices;
    for (const auto& e : g.edges)
        if (e.dst == v) out.edges.push_back(e);
    return out;
}

EdgeColoredGraph free_product(const std::vector<EdgeColoredGraph>& factors,
                              const std::set<std::string>& shared) {
    for (const auto& g : factors)
        for (const auto& v : shared)
            if (!g.has_vertex(v))
                throw Error("shared vertex '" + v + "' missing from factor '" + g.name + "'");

    EdgeColoredGraph out;
    std::unordered_set<std::string> vseen, eseen;
    int color_offset = 0;
    for (const auto& g : factors) {
        for (const auto& v : g.vertices) {
            if (shared.count(v)) {
                if (!vseen.count(v)) {
                    vseen.insert(v);
                    out.vertices.push_back(v);
                }
            } else {
                if (!vseen.insert(v).second)
                    throw Error("vertex id collision in free product: " + v);
                out.vertices.push_back(v);
            }
        }
        // normalize this factor's colors to 1..k, then shift past the
        // colors already taken
        auto cs = g.colors_used();
        std::map<int, int> rank;
        for (size_t i = 0; i < cs.size(); ++i) rank[cs[i]] = static_cast<int>(i) + 1;
        for (const auto& e : g.edges) {
            if (!eseen.insert(e.id).second)
                throw Error("edge id collision in free product: " + e.id);
            out.edges.push_back({e.id, e.src, e.dst, color_offset + rank[e.color]});
        }
        color_offset += static_cast<int>(cs.size());
    }
    out.name = [&] {
        std::string n;
        for (const auto& g : factors) {
            if (!n.empty()) n += "_";
            n += g.name;
        }
        return n;
    }();
    return out;
}

EdgeColoredGraph canonical_recoloring(const EdgeColoredGraph& g) {
    auto part = color_partition(g);
    // per vertex: incoming colors sorted ascending -> 1..m(v)
    std::map<std::string, std::map<int, int>> rank;
    for (const auto& [v, blocks] : part.at) {
        int i = 0;
        for (const auto& [c, _] : blocks) rank[v][c] = ++i;
    }
    EdgeColoredGraph out = g;
    for (auto& e : out.edges) e.color = rank[e.dst][e.color];
    return out;
}

int coloring_number(const EdgeColoredGraph& g) {
    auto part = color_partition(g);
    size_t m = 0;
    for (const auto& [v, blocks] : part.at) m = std::max(m, blocks.size());
    return static_cast<int>(m);
}

bool colorings_equivalent(const EdgeColoredGraph& g1, const EdgeColoredGraph& g2) {
    if (g1.vertices != g2.vertices) throw Error("not comparable: vertex sets differ");
    if (g1.edges.size() != g2.edges.size()) throw Error("not comparable: edge sets differ");
    for (size_t i = 0; i < g1.edges.size(); ++i) {
        const auto& a = g1.edges[i];
        const auto& b = g2.edges[i];
        if (a.id != b.id || a.src != b.src || a.dst != b.dst)
            throw Error("not comparable: edge " + a.id + " differs");
    }
    auto p1 = color_partition(g1);
    auto p2 = color_partition(g2);
    for (const auto& v : g1.vertices) {
        std::set<std::set<std::string>> b1, b2;
        for (const auto& [c, ids] : p1.at[v]) b1.insert({ids.begin(), ids.end()});
        for (const auto& [c, ids] : p2.at[v]) b2.insert({ids.begin(), ids.end()});
        if (b1 != b2) return false;
    }
    return true;
}

EdgeColoredGraph reverse_edges(const EdgeColoredGraph& g) {
    EdgeColoredGraph out = g;
    for (auto& e : out.edges) std::swap(e.src, e.dst);
    return out;
}

EdgeColoredGraph canonical(const EdgeColoredGraph& g) {
    EdgeColoredGraph out = g;
    std::sort(out.vertices.begin(), out.vertices.end());
    std::sort(out.edges.begin(), out.edges.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
    return out;
}

} // namespace ecg
