#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spur/checker.hpp"
#include "spur/oracle.hpp"
#include "spur/spurious.hpp"

namespace spur {

struct RefinementStep {
    std::string failure_state;
    Partition partition;
    std::vector<std::string> new_classes;
};

/// Split the failure class into up to three classes (dead / bad /
/// isolated, dropping empty parts). Throws DegenerateSplitError when
/// fewer than two parts are nonempty. All other classes are unchanged.
AbstractionMap refine(const KripkeStructure& K, const AbstractionMap& map,
                      const std::string& failure_class,
                      const Partition& partition);

enum class DetectorKind {
    first,
    heaviest,
    parallel_first,
    parallel_heaviest,
    splitpath,
    oracle,
};

DetectorKind parse_detector(const std::string& name);
std::string detector_name(DetectorKind kind);

/// Run one detector on a validated counterexample.
SpuriousReport run_detector(DetectorKind kind, const KripkeStructure& K,
                            const AbstractionMap& map,
                            const AbstractModel& model,
                            const Counterexample& ce, LastMode last_mode,
                            unsigned workers = 1);

enum class CegarOutcome { verified, real_counterexample, budget_exhausted };

struct CegarIteration {
    size_t index = 0; // 1-based
    size_t abstract_states = 0;
    Counterexample counterexample;
    SpuriousReport report;
    /// Set when the detector reported real but the oracle refuted it.
    bool detector_incomplete = false;
    std::optional<Verdict> oracle_verdict;
    std::optional<RefinementStep> refinement;
    std::optional<std::string> note;
};

struct CegarResult {
    CegarOutcome outcome = CegarOutcome::budget_exhausted;
    size_t iterations = 0;
    std::optional<Counterexample> witness; // oracle-validated, concrete ids
    std::optional<Counterexample> abstract_counterexample;
    std::vector<CegarIteration> trace;
    size_t final_abstract_states = 0;
};

/// The abstraction-refinement loop: build the abstract model, check the
/// property, analyze any counterexample, refine on the reported failure
/// partition, repeat. Detector "real" claims are confirmed with the
/// exact oracle; a refuted claim is recorded as detector_incomplete and
/// refinement continues from the oracle-derived failure split.
CegarResult cegar(const KripkeStructure& K,
                  const std::vector<std::string>& invisible,
                  const Property& property, DetectorKind detector,
                  LastMode last_mode, size_t max_iterations,
                  unsigned workers = 1);

} // namespace spur
