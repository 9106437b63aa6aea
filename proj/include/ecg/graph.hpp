#ifndef ECG_GRAPH_HPP
#define ECG_GRAPH_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ecg {

/// One directed edge with a positive integer color.
struct Edge {
    std::string id;
    std::string src; ///< source vertex s(e)
    std::string dst; ///< range vertex r(e)
    int color = 1;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite directed multigraph with colored edges. Vertices and edges keep
/// their declaration order; every operation iterates in that order so all
/// derived outputs are reproducible.
///
/// Structural equality (operator==) compares vertex and edge sequences but
/// not the name; the name is display metadata.
struct EdgeColoredGraph {
    std::string name;
    std::vector<std::string> vertices;
    std::vector<Edge> edges;

    bool operator==(const EdgeColoredGraph& o) const {
        return vertices == o.vertices && edges == o.edges;
    }

    bool has_vertex(const std::string& v) const;
    const Edge* find_edge(const std::string& id) const;
    int vertex_index(const std::string& v) const; ///< -1 when absent
    /// Distinct colors in ascending order.
    std::vector<int> colors_used() const;
};

struct Violation {
    std::string code;   ///< duplicate_vertex_id | duplicate_edge_id | unknown_vertex | nonpositive_color
    std::string detail; ///< the offending id / endpoint
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Per-vertex partition of the incoming edge set by color. Blocks are
/// disjoint, nonempty, and union to the full in-star of the vertex.
struct ColorPartition {
    // vertex id -> color -> edge ids (declaration order)
    std::map<std::string, std::map<int, std::vector<std::string>>> at;
};

ValidationReport validate(const EdgeColoredGraph& g);

/// Throws Error listing all violations when g does not validate.
void require_valid(const EdgeColoredGraph& g);

ColorPartition color_partition(const EdgeColoredGraph& g);

/// The fiber G_i: full vertex set, exactly the color-i edges, recolored to 1.
/// An unknown color yields the edgeless graph on the same vertices.
EdgeColoredGraph monochrome_subgraph(const EdgeColoredGraph& g, int color);

/// The in-star G_v: all vertices, only the edges with range v, colors kept.
EdgeColoredGraph in_star(const EdgeColoredGraph& g, const std::string& v);

/// Glue the factors along the shared vertex set. Non-shared vertex ids and
/// all edge ids must be pairwise disjoint across factors. Each factor's
/// colors are normalized to 1..k and then shifted so distinct factors never
/// share a color.
EdgeColoredGraph free_product(const std::vector<EdgeColoredGraph>& factors,
                              const std::set<std::string>& shared);

/// Order-preserving relabel of the colors incident at each vertex to
/// {1,...,m(v)}. Equivalent to the input and attains the coloring number.
EdgeColoredGraph canonical_recoloring(const EdgeColoredGraph& g);

/// max over vertices of the number of distinct incoming colors (0 when
/// edgeless).
int coloring_number(const EdgeColoredGraph& g);

/// True iff every vertex's in-star is partitioned identically by the two
/// colorings. Both graphs must agree on vertices, edge ids, sources and
/// ranges; only colors may differ.
bool colorings_equivalent(const EdgeColoredGraph& g1, const EdgeColoredGraph& g2);

/// Swap source and range of every edge; colors kept. Involution.
EdgeColoredGraph reverse_edges(const EdgeColoredGraph& g);

/// Vertices and edges sorted by id. parse(emit(g)) equals canonical(g).
EdgeColoredGraph canonical(const EdgeColoredGraph& g);

} // namespace ecg

#endif
