#ifndef ECG_REPORT_HPP
#define ECG_REPORT_HPP

#include <string>

#include <json.hpp>

#include "ecg/analyzers.hpp"
#include "ecg/graph.hpp"
#include "ecg/ktheory.hpp"
#include "ecg/staralg.hpp"

namespace ecg::report {

using Json = nlohmann::ordered_json;

Json group_json(const abelian::FgAbelianGroup& g);
Json witness_json(const std::optional<analyzers::Witness>& w);
Json ktheory_block(const ktheory::KPair& k);

/// The analysis report for one graph, keys in the documented order.
Json analyze_json(const EdgeColoredGraph& g);
Json ktheory_json(const EdgeColoredGraph& g);
Json verify_json(const star::VerifyReport& rep);

std::string analyze_text(const EdgeColoredGraph& g, bool color);
std::string ktheory_text(const EdgeColoredGraph& g, bool color);
std::string verify_text(const star::VerifyReport& rep, const std::string& heading, bool color);

/// Dump with 2-space indentation and a trailing newline; byte-deterministic.
std::string dump(const Json& j);

} // namespace ecg::report

#endif
