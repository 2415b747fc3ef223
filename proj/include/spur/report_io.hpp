#pragma once

#include <string>

#include <json.hpp>

#include "spur/bench.hpp"
#include "spur/refine.hpp"
#include "spur/spurious.hpp"

namespace spur {

using Json = nlohmann::ordered_json;

/// Canonical machine-readable report. Field names are fixed: verdict,
/// failure_index, dead, bad, isolated, weights, stats, detector. State
/// sets are emitted as lexicographically sorted id lists. No wall-clock
/// values: the same inputs always produce byte-identical output.
Json report_to_json(const SpuriousReport& report, const KripkeStructure& K);

std::string report_to_text(const SpuriousReport& report,
                           const KripkeStructure& K);

Json cegar_to_json(const CegarResult& result, const KripkeStructure& K);
std::string cegar_to_text(const CegarResult& result);

Json bench_to_json(const BenchReport& report);
std::string bench_to_text(const BenchReport& report);

std::vector<std::string> ids_sorted(const KripkeStructure& K,
                                    const StateSet& set);

} // namespace spur
