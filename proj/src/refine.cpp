#include "spur/refine.hpp"

#include <algorithm>

#include "spur/errors.hpp"

namespace spur {

AbstractionMap refine(const KripkeStructure& K, const AbstractionMap& map,
                      const std::string& failure_class,
                      const Partition& partition) {
    (void)K;
    int cls = map.index_of(failure_class);
    std::vector<std::pair<std::string, StateSet>> parts;
    if (!partition.dead.empty())
        parts.emplace_back("d", partition.dead);
    if (!partition.bad.empty())
        parts.emplace_back("b", partition.bad);
    if (!partition.isolated.empty())
        parts.emplace_back("i", partition.isolated);
    if (parts.size() < 2)
        throw DegenerateSplitError(
            "splitting '" + failure_class +
            "' yields fewer than two classes; refinement cannot make "
            "progress at this state");
    return map.split_class(cls, parts);
}

DetectorKind parse_detector(const std::string& name) {
    if (name == "first")
        return DetectorKind::first;
    if (name == "heaviest")
        return DetectorKind::heaviest;
    if (name == "parallel-first")
        return DetectorKind::parallel_first;
    if (name == "parallel-heaviest")
        return DetectorKind::parallel_heaviest;
    if (name == "splitpath")
        return DetectorKind::splitpath;
    if (name == "oracle")
        return DetectorKind::oracle;
    throw ModelError("unknown detector '" + name +
                     "' (expected first, heaviest, parallel-first, "
                     "parallel-heaviest, splitpath, or oracle)");
}

std::string detector_name(DetectorKind kind) {
    switch (kind) {
    case DetectorKind::first: return "first";
    case DetectorKind::heaviest: return "heaviest";
    case DetectorKind::parallel_first: return "parallel-first";
    case DetectorKind::parallel_heaviest: return "parallel-heaviest";
    case DetectorKind::splitpath: return "splitpath";
    case DetectorKind::oracle: return "oracle";
    }
    return "?";
}

SpuriousReport run_detector(DetectorKind kind, const KripkeStructure& K,
                            const AbstractionMap& map,
                            const AbstractModel& model,
                            const Counterexample& ce, LastMode last_mode,
                            unsigned workers) {
    switch (kind) {
    case DetectorKind::first:
        return check_spurious_first(K, map, ce, last_mode);
    case DetectorKind::heaviest:
        return check_spurious_heaviest(K, map, model, ce, last_mode);
    case DetectorKind::parallel_first:
        return check_spurious_parallel(
            K, map, model, ce, last_mode,
            {workers, ParallelMode::first_detected, false});
    case DetectorKind::parallel_heaviest:
        return check_spurious_parallel(
            K, map, model, ce, last_mode,
            {workers, ParallelMode::heaviest, false});
    case DetectorKind::splitpath:
        return split_path(K, map, ce);
    case DetectorKind::oracle:
        return oracle_report(K, map, ce);
    }
    throw ModelError("unknown detector kind");
}

CegarResult cegar(const KripkeStructure& K,
                  const std::vector<std::string>& invisible,
                  const Property& property, DetectorKind detector,
                  LastMode last_mode, size_t max_iterations,
                  unsigned workers) {
    AbstractionMap map = AbstractionMap::build(K, invisible);
    CegarResult result;

    for (size_t iter = 1; iter <= max_iterations; ++iter) {
        result.iterations = iter;
        AbstractModel model = build_abstract_model(K, map);
        result.final_abstract_states = model.num_states();

        auto ce = check_property(model, property);
        if (!ce) {
            result.outcome = CegarOutcome::verified;
            return result;
        }

        CegarIteration record;
        record.index = iter;
        record.abstract_states = model.num_states();
        record.counterexample = *ce;
        record.report = run_detector(detector, K, map, model, *ce, last_mode,
                                     workers);

        SpuriousReport* refinement_source = &record.report;
        SpuriousReport fallback;

        if (record.report.verdict == Verdict::real) {
            if (detector == DetectorKind::oracle) {
                // The detector is the oracle; its verdict is final.
                record.oracle_verdict = Verdict::real;
                result.outcome = CegarOutcome::real_counterexample;
                result.witness = record.report.witness;
                result.abstract_counterexample = *ce;
                result.trace.push_back(std::move(record));
                return result;
            }
            ConcretizationResult exact = concretize(K, map, *ce);
            record.oracle_verdict = exact.verdict;
            if (exact.verdict == Verdict::real) {
                result.outcome = CegarOutcome::real_counterexample;
                result.witness = exact.witness;
                result.abstract_counterexample = *ce;
                result.trace.push_back(std::move(record));
                return result;
            }
            // The detector missed a spurious counterexample; continue
            // refinement from the oracle-derived failure split.
            record.detector_incomplete = true;
            fallback = oracle_report(K, map, *ce);
            refinement_source = &fallback;
        }

        RefinementStep step;
        step.failure_state = *refinement_source->failure_state;
        step.partition = *refinement_source->partition;
        std::optional<AbstractionMap> refined;
        try {
            refined = refine(K, map, step.failure_state, step.partition);
        } catch (const DegenerateSplitError& e) {
            record.note = e.what();
            result.trace.push_back(std::move(record));
            result.outcome = CegarOutcome::budget_exhausted;
            return result;
        }
        for (const auto& cls : refined->classes())
            if (!map.has_class(cls.id))
                step.new_classes.push_back(cls.id);
        record.refinement = std::move(step);
        result.trace.push_back(std::move(record));
        map = std::move(*refined);
    }
    result.outcome = CegarOutcome::budget_exhausted;
    return result;
}

} // namespace spur
