#ifndef ECG_IO_HPP
#define ECG_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "ecg/graph.hpp"
#include "ecg/staralg.hpp"

namespace ecg::io {

struct SourceSpan {
    std::string file;
    int line = 1;   ///< 1-based
    int column = 1; ///< 1-based
    size_t offset = 0;
};

struct ParseError {
    SourceSpan span;
    std::string expected;
    std::string found;

    std::string message() const;
};

/// Parsing is total: malformed input yields an error list (capped at 32),
/// never an exception. A returned graph always validates.
struct GraphParse {
    std::optional<EdgeColoredGraph> graph;
    std::vector<ParseError> errors;
    bool ok() const { return graph.has_value(); }
};

GraphParse parse_graph(const std::string& text, const std::string& filename = "<input>");

struct GenmapParse {
    std::optional<star::GeneratorMap> map;
    std::vector<ParseError> errors;
    bool ok() const { return map.has_value(); }
};

/// Parse a .hom file against the given source and target graphs. The header
/// names must match the graphs' names; every source vertex and edge must get
/// exactly one assignment. Expressions are parsed over the target graph's
/// generators.
GenmapParse parse_genmap(const std::string& text, const EdgeColoredGraph& source,
                         const EdgeColoredGraph& target, const std::string& filename = "<input>");

/// Canonical emission: sorted declarations, one per line, explicit colors,
/// LF line endings. parse_graph(emit_graph(g)) equals canonical(g), and
/// emission is byte-deterministic.
std::string emit_graph(const EdgeColoredGraph& g);

/// The "hom NAME : SRC -> TGT" header of a map file, if it lexes.
struct HomHeader {
    std::string name, source, target;
};
std::optional<HomHeader> peek_hom_header(const std::string& text);

} // namespace ecg::io

#endif
