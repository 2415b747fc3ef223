#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spur/generator.hpp"
#include "spur/refine.hpp"

namespace spur {

struct BenchParams {
    size_t num_models = 20;
    GenParams base;
    std::vector<DetectorKind> detectors = {DetectorKind::first,
                                           DetectorKind::splitpath};
    /// Properties tried per model (rows exist only where the checker
    /// finds a counterexample).
    size_t trials_per_model = 2;
    std::optional<PathKind> kind_filter; // finite, lasso, or both
    LastMode last_mode = LastMode::unconstrained;
    unsigned workers = 1;
    std::optional<size_t> unwind; // split_path override
    bool measure_time = false;
};

struct BenchRow {
    std::uint64_t model_seed = 0;
    size_t model_states = 0;
    std::string property;
    PathKind ce_kind = PathKind::finite;
    size_t cfp_length = 0;
    std::string detector;
    Verdict verdict = Verdict::real;
    std::optional<size_t> failure_index;
    size_t positions_examined = 0;
    size_t positions_checked = 0;
    size_t fixpoint_iterations = 0; // total recorded stages
    std::optional<size_t> unwind_used;
    std::optional<size_t> unwound_length;
    std::string agreement; // "agree" | "detector_incomplete"
    double wall_ms = 0.0;  // only populated with measure_time
};

struct DetectorAggregate {
    size_t rows = 0;
    size_t agree = 0;
    size_t detector_incomplete = 0;
    double mean_positions_examined = 0.0;
    double mean_unwound_length = 0.0; // split_path rows only
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::map<std::string, DetectorAggregate> aggregates;
    double mean_cfp_length = 0.0;
    size_t models_generated = 0;
    size_t counterexamples = 0;
};

/// Generate models, derive abstractions, collect checker
/// counterexamples, and run every requested detector plus the oracle on
/// each. A detector verdict that contradicts the oracle in the unsound
/// direction (detector spurious, oracle real) throws ModelError; the
/// sound misses are recorded as detector_incomplete rows.
BenchReport bench_compare(const BenchParams& params);

} // namespace spur
