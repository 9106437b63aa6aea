#ifndef ECG_ANALYZERS_HPP
#define ECG_ANALYZERS_HPP

#include <optional>
#include <string>
#include <vector>

#include "ecg/graph.hpp"

namespace ecg::analyzers {

enum class Outcome { Pass, Fail, NotExact, Nuclear, Unknown };

std::string outcome_name(Outcome o);

/// Structured locus of a verdict: the vertices / edges / colors it points at.
struct Witness {
    std::vector<std::string> vertices;
    std::vector<std::string> edges;
    std::vector<int> colors;
};

struct InDegreeEntry {
    std::string vertex;
    int color;
    int count;
};

struct Verdict {
    std::string property;
    Outcome outcome = Outcome::Unknown;
    std::optional<Witness> witness;
    std::string reason; ///< machine-readable code
    std::vector<InDegreeEntry> indegrees; ///< filled by is_row_finite only
};

/// Finite graphs are always row finite; the verdict carries the
/// per-(vertex, color) in-degree table consumed by the sum relations.
Verdict is_row_finite(const EdgeColoredGraph& g);

/// Simplicity of the graph algebra of a 1-colored finite graph. With the
/// range-summed relation convention the standard criterion reads: every
/// cycle has an entrance (an edge from outside the cycle's edge set whose
/// range lies on the cycle), every vertex is reachable from every cycle, and
/// every vertex is reachable from every vertex that receives no edge.
/// Throws on multicolored input.
Verdict monochrome_simple(const EdgeColoredGraph& g1);

/// Necessary conditions from the simplicity proposition: every monochrome
/// fiber passes monochrome_simple and, for every ordered vertex pair
/// (v1, v2), the edges with s = v2 and r = v1 use a single color. A pass is
/// necessary, not sufficient.
Verdict simplicity_necessary(const EdgeColoredGraph& g);

/// Non-exactness obstructions: a vertex carrying self-loops in >= 2 colors,
/// or an ordered vertex pair carrying parallel edges in >= 3 colors.
/// Obstruction found -> not_exact with witness; otherwise unknown.
Verdict nonexact_witnesses(const EdgeColoredGraph& g);

/// Positive mechanisms only: 1-colorable graphs are nuclear, and so are
/// graphs whose edge reversal is 1-colorable. Anything else is unknown.
Verdict nuclearity_heuristic(const EdgeColoredGraph& g);

} // namespace ecg::analyzers

#endif
