#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spur/abstraction.hpp"
#include "spur/counterexample.hpp"
#include "spur/model.hpp"
#include "spur/sets.hpp"

namespace spur {

/// How to seed the Out fixpoint at the last position of a finite path.
/// `unconstrained` treats the whole fiber as able to continue (a safety
/// counterexample needs no continuation past its last state);
/// `paper_strict` seeds from the deadlock set F.
enum class LastMode { unconstrained, paper_strict };

enum class Verdict { real, spurious };

/// A directional fixpoint at one CFP position: the recorded stage sets
/// and their union. Stages are recorded while they contribute new
/// states, so their count never exceeds the fiber size.
struct StageSets {
    std::vector<StateSet> stages;
    StateSet result;

    size_t stage_count() const { return stages.size(); }
};

struct InOutSets {
    StageSets in;
    StageSets out;
};

/// Dead / bad / isolated split of a failure fiber: dead = In (reachable
/// from the previous fiber but unable to continue), bad = Out (able to
/// continue but unreachable), isolated = the rest.
struct Partition {
    StateSet dead;
    StateSet bad;
    StateSet isolated;
};

struct PositionCheck {
    size_t position = 0;
    size_t fiber_size = 0;
    size_t in_stages = 0;
    size_t out_stages = 0;
    bool failure = false;
};

struct DetectorStats {
    /// Length of the sequence the detector analyzes: the CFP for the
    /// In/Out detectors, the unwound sequence for split_path.
    size_t positions_examined = 0;
    /// Positions whose fixpoints (or images) were actually computed.
    size_t positions_checked = 0;
    /// Per-position fixpoint stage counts, ordered by position.
    std::vector<PositionCheck> checks;
    /// split_path only: |M_i| per step.
    std::vector<size_t> image_sizes;
    std::optional<size_t> unwind_used;
    std::optional<size_t> unwound_length;
};

/// Canonical detector result. `failure_index` is a CFP position for the
/// In/Out detectors and a position in the unwound sequence for
/// split_path; `failure_state` names the abstract state either way.
struct SpuriousReport {
    std::string detector;
    Verdict verdict = Verdict::real;
    std::optional<size_t> failure_index;
    std::optional<std::string> failure_state;
    std::optional<InOutSets> in_out;
    std::optional<Partition> partition;
    std::vector<std::uint64_t> weights; // per CFP position
    DetectorStats stats;
    std::optional<Counterexample> witness; // oracle detector, real verdict
};

/// In fixpoint at CFP position i: states of the fiber reachable (inside
/// the fiber) from the previous fiber, seeded from the initial states
/// when i = 0.
StageSets in_set(const KripkeStructure& K, const AbstractionMap& map,
                 const CFPView& view, size_t i);

/// Out fixpoint at CFP position i: states of the fiber that can reach
/// the next fiber while staying inside the fiber. The last position's
/// successor is the loop-start fiber for lassos; for finite paths it is
/// governed by `last_mode`.
StageSets out_set(const KripkeStructure& K, const AbstractionMap& map,
                  const CFPView& view, size_t i, LastMode last_mode);

struct FailureCheck {
    bool failure = false;
    InOutSets in_out;
};

/// Position i is a failure state iff In and Out are disjoint.
FailureCheck is_failure_state(const KripkeStructure& K,
                              const AbstractionMap& map, const CFPView& view,
                              size_t i, LastMode last_mode);

/// Dead/bad/isolated split at a failure position. Throws ModelError if
/// the position is not a failure (dead and bad would overlap).
Partition partition_origins(const KripkeStructure& K,
                            const AbstractionMap& map, const CFPView& view,
                            size_t i, LastMode last_mode);

struct Weight {
    std::uint64_t ein = 0;
    std::uint64_t eout = 0;
    std::uint64_t value() const { return ein * eout; }
};

/// EIn = concrete edges entering the fiber from outside, EOut = edges
/// leaving it; the weight EIn*EOut estimates how many abstract paths
/// run through the state.
Weight state_weight(const KripkeStructure& K, const AbstractionMap& map,
                    int cls);
Weight state_weight(const AbstractModel& model, const KripkeStructure& K,
                    const AbstractionMap& map, const std::string& id);

/// Scan CFP positions in order; report the first failure, or a real
/// verdict if every position passes.
SpuriousReport check_spurious_first(const KripkeStructure& K,
                                    const AbstractionMap& map,
                                    const Counterexample& ce,
                                    LastMode last_mode);

/// Visit CFP positions heaviest first (ties: lower index); report the
/// first failure found in that order.
SpuriousReport check_spurious_heaviest(const KripkeStructure& K,
                                       const AbstractionMap& map,
                                       const AbstractModel& model,
                                       const Counterexample& ce,
                                       LastMode last_mode);

enum class ParallelMode { first_detected, heaviest };

struct ParallelOptions {
    unsigned workers = 1;
    ParallelMode mode = ParallelMode::first_detected;
    /// When true, first_detected cancels outstanding positions as soon
    /// as any failure is found (the reported index is then the minimum
    /// among the failures that completed). When false, all positions
    /// run to completion and the global minimum index is reported.
    bool eager_cancel = false;
};

/// Check all CFP positions independently across `workers` threads. The
/// only shared mutable state is the per-position result array (single
/// writer per slot) and the cancellation flag. mode=heaviest completes
/// every position and matches check_spurious_heaviest.
SpuriousReport check_spurious_parallel(const KripkeStructure& K,
                                       const AbstractionMap& map,
                                       const AbstractModel& model,
                                       const Counterexample& ce,
                                       LastMode last_mode,
                                       const ParallelOptions& options);

/// Safe unwind bound for lassos: |CFP| * max fiber size. Forward images
/// of a lasso longer than the position product must revisit a product
/// node, so a spurious lasso always produces an empty image within this
/// bound.
size_t default_unwind(const AbstractionMap& map, const Counterexample& ce);

/// Baseline detector: forward images M_0 = I n h-(s0),
/// M_i = R(M_{i-1}) n h-(si); the first empty image marks failure state
/// s_{i-1} (s_0 when M_0 is empty). Lassos are unwound `unwind` extra
/// loop repetitions past the CFP (default: the safe bound). The report
/// partition splits the failure fiber into the stuck image (dead), the
/// states with an edge into the next fiber (bad), and the rest.
SpuriousReport split_path(const KripkeStructure& K, const AbstractionMap& map,
                          const Counterexample& ce,
                          std::optional<size_t> unwind = std::nullopt);

} // namespace spur
