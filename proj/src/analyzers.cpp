#include "ecg/analyzers.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "ecg/error.hpp"

namespace ecg::analyzers {

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "pass";
        case Outcome::Fail: return "fail";
        case Outcome::NotExact: return "not_exact";
        case Outcome::Nuclear: return "nuclear";
        case Outcome::Unknown: return "unknown";
    }
    return "unknown";
}

Verdict is_row_finite(const EdgeColoredGraph& g) {
    require_valid(g);
    Verdict v;
    v.property = "row_finite";
    v.outcome = Outcome::Pass; // finite graphs are row finite by definition
    v.reason = "finite_graph";
    std::map<std::pair<int, int>, int> counts; // (vertex idx, color) -> in-degree
    for (const auto& e : g.edges) counts[{g.vertex_index(e.dst), e.color}]++;
    for (const auto& [key, n] : counts)
        v.indegrees.push_back({g.vertices[key.first], key.second, n});
    return v;
}

namespace {

// all simple directed cycles as edge index sequences, deterministic order
std::vector<std::vector<int>> simple_cycles(const EdgeColoredGraph& g) {
    const int nv = int(g.vertices.size());
    std::vector<std::vector<std::pair<int, int>>> out(nv); // vertex -> (edge idx, dst idx)
    for (size_t i = 0; i < g.edges.size(); ++i)
        out[g.vertex_index(g.edges[i].src)].push_back(
            {int(i), g.vertex_index(g.edges[i].dst)});

    std::vector<std::vector<int>> cycles;
    std::vector<int> path;
    std::vector<bool> on_path(nv, false);
    // cycles are rooted at their smallest vertex index to avoid duplicates
    std::function<void(int, int)> dfs = [&](int root, int v) {
        on_path[v] = true;
        for (auto [e, w] : out[v]) {
            if (w == root) {
                auto cyc = path;
                cyc.push_back(e);
                cycles.push_back(std::move(cyc));
            } else if (w > root && !on_path[w]) {
                path.push_back(e);
                dfs(root, w);
                path.pop_back();
            }
        }
        on_path[v] = false;
    };
    for (int root = 0; root < nv; ++root) dfs(root, root);
    return cycles;
}

// vertices reachable (along s -> r) from any seed vertex
std::vector<bool> reachable_from(const EdgeColoredGraph& g, const std::vector<int>& seeds) {
    const int nv = int(g.vertices.size());
    std::vector<bool> seen(nv, false);
    std::vector<int> stack = seeds;
    for (int s : stack) seen[s] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& e : g.edges) {
            int s = g.vertex_index(e.src), d = g.vertex_index(e.dst);
            if (s == v && !seen[d]) {
                seen[d] = true;
                stack.push_back(d);
            }
        }
    }
    return seen;
}

std::vector<std::string> edge_ids(const EdgeColoredGraph& g, const std::vector<int>& idxs) {
    std::vector<std::string> out;
    for (int i : idxs) out.push_back(g.edges[i].id);
    return out;
}

} // namespace

Verdict monochrome_simple(const EdgeColoredGraph& g1) {
    require_valid(g1);
    if (g1.colors_used().size() > 1) throw Error("expected 1-colored graph");
    Verdict v;
    v.property = "monochrome_simple";

    auto cycles = simple_cycles(g1);
    for (const auto& cyc : cycles) {
        std::set<int> cyc_edges(cyc.begin(), cyc.end());
        std::set<int> cyc_vertices;
        for (int e : cyc) cyc_vertices.insert(g1.vertex_index(g1.edges[e].dst));
        bool has_entrance = false;
        for (size_t i = 0; i < g1.edges.size() && !has_entrance; ++i)
            if (!cyc_edges.count(int(i)) &&
                cyc_vertices.count(g1.vertex_index(g1.edges[i].dst)))
                has_entrance = true;
        if (!has_entrance) {
            v.outcome = Outcome::Fail;
            v.reason = "cycle_without_entrance";
            v.witness = Witness{{}, edge_ids(g1, cyc), {}};
            return v;
        }
    }

    auto check_cofinal = [&](const std::vector<int>& seeds, const std::string& reason,
                             const std::string& locus) -> bool {
        auto seen = reachable_from(g1, seeds);
        for (size_t i = 0; i < g1.vertices.size(); ++i)
            if (!seen[i]) {
                v.outcome = Outcome::Fail;
                v.reason = reason;
                v.witness = Witness{{locus, g1.vertices[i]}, {}, {}};
                return false;
            }
        return true;
    };

    for (const auto& cyc : cycles) {
        std::vector<int> seeds;
        for (int e : cyc) seeds.push_back(g1.vertex_index(g1.edges[e].dst));
        if (!check_cofinal(seeds, "vertex_unreachable_from_cycle", g1.edges[cyc[0]].id)) return v;
    }

    // vertices receiving nothing play the sink role under this convention
    for (size_t i = 0; i < g1.vertices.size(); ++i) {
        bool receives = std::any_of(g1.edges.begin(), g1.edges.end(),
                                    [&](const Edge& e) { return e.dst == g1.vertices[i]; });
        if (!receives &&
            !check_cofinal({int(i)}, "vertex_unreachable_from_source", g1.vertices[i]))
            return v;
    }

    v.outcome = Outcome::Pass;
    v.reason = "cofinal_and_cycles_entered";
    return v;
}

Verdict simplicity_necessary(const EdgeColoredGraph& g) {
    require_valid(g);
    Verdict v;
    v.property = "simplicity_necessary";
    for (int c : g.colors_used()) {
        Verdict fiber = monochrome_simple(monochrome_subgraph(g, c));
        if (fiber.outcome != Outcome::Pass) {
            v.outcome = Outcome::Fail;
            v.reason = "monochrome_factor_not_simple:" + fiber.reason;
            v.witness = fiber.witness.value_or(Witness{});
            v.witness->colors = {c};
            return v;
        }
    }
    // ordered pairs (v1, v2): edges with s = v2 and r = v1 must share a color
    for (const auto& v1 : g.vertices)
        for (const auto& v2 : g.vertices) {
            std::set<int> colors;
            for (const auto& e : g.edges)
                if (e.src == v2 && e.dst == v1) colors.insert(e.color);
            if (colors.size() >= 2) {
                v.outcome = Outcome::Fail;
                v.reason = "pair_subgraph_multicolored";
                v.witness = Witness{{v1, v2}, {}, {colors.begin(), colors.end()}};
                return v;
            }
        }
    v.outcome = Outcome::Pass;
    v.reason = "necessary_only"; // the conditions are not sufficient
    return v;
}

Verdict nonexact_witnesses(const EdgeColoredGraph& g) {
    require_valid(g);
    Verdict v;
    v.property = "exactness";
    for (const auto& vert : g.vertices) {
        std::set<int> loop_colors;
        for (const auto& e : g.edges)
            if (e.src == vert && e.dst == vert) loop_colors.insert(e.color);
        if (loop_colors.size() >= 2) {
            v.outcome = Outcome::NotExact;
            v.reason = "bicolored_loops";
            v.witness = Witness{{vert}, {}, {loop_colors.begin(), loop_colors.end()}};
            return v;
        }
    }
    for (const auto& v1 : g.vertices)
        for (const auto& v2 : g.vertices) {
            std::set<int> colors;
            for (const auto& e : g.edges)
                if (e.src == v1 && e.dst == v2) colors.insert(e.color);
            if (colors.size() >= 3) {
                v.outcome = Outcome::NotExact;
                v.reason = "pair_three_colors";
                v.witness = Witness{{v2, v1}, {}, {colors.begin(), colors.end()}};
                return v;
            }
        }
    v.outcome = Outcome::Unknown;
    v.reason = "no_obstruction_found";
    return v;
}

Verdict nuclearity_heuristic(const EdgeColoredGraph& g) {
    require_valid(g);
    Verdict v;
    v.property = "nuclearity";
    if (coloring_number(g) <= 1) {
        v.outcome = Outcome::Nuclear;
        v.reason = "one_colorable";
        return v;
    }
    // Edge reversal: replacing every S_e by its adjoint realizes the
    // reversed graph, which is then 1-colorable, iff every vertex emits at
    // most one edge and receives at most one edge per color. The coloring
    // count of the reversal alone is not enough: a vertex emitting two
    // same-colored edges breaks the reversed sum relation, and the original
    // algebra can fail exactness even though the reversal is 1-colorable.
    std::map<std::string, int> out_degree;
    std::map<std::pair<std::string, int>, int> in_by_color;
    bool reversible = true;
    for (const auto& e : g.edges) {
        if (++out_degree[e.src] > 1) reversible = false;
        if (++in_by_color[{e.dst, e.color}] > 1) reversible = false;
    }
    if (reversible) {
        v.outcome = Outcome::Nuclear;
        v.reason = "reversal_is_isomorphism";
        return v;
    }
    v.outcome = Outcome::Unknown;
    v.reason = "no_mechanism_applies";
    return v;
}

} // namespace ecg::analyzers
