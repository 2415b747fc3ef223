#include "spur/bench.hpp"

#include <chrono>

#include "spur/errors.hpp"
#include "spur/model.hpp"

namespace spur {

namespace {

size_t total_stages(const SpuriousReport& report) {
    size_t total = 0;
    for (const auto& check : report.stats.checks)
        total += check.in_stages + check.out_stages;
    return total;
}

std::vector<Property> candidate_properties(const KripkeStructure& K,
                                           const BenchParams& params) {
    std::vector<Property> candidates;
    const auto& domain = K.vars()[0].domain; // group variable
    bool want_finite = !params.kind_filter ||
                       *params.kind_filter == PathKind::finite;
    bool want_lasso = !params.kind_filter ||
                      *params.kind_filter == PathKind::lasso;
    if (want_finite)
        for (auto it = domain.rbegin(); it != domain.rend(); ++it)
            candidates.push_back(parse_property("AG !(g=" + *it + ")"));
    if (want_lasso)
        for (const auto& value : domain)
            candidates.push_back(parse_property("GF g=" + value));
    return candidates;
}

} // namespace

BenchReport bench_compare(const BenchParams& params) {
    BenchReport report;

    for (size_t m = 0; m < params.num_models; ++m) {
        GenParams gp = params.base;
        gp.seed = params.base.seed + m;
        KripkeStructure K = KripkeStructure::parse(gen_random_model(gp));
        ++report.models_generated;
        AbstractionMap map = AbstractionMap::build(K, derive_invisible(gp));
        AbstractModel model = build_abstract_model(K, map);

        size_t found = 0;
        for (const auto& property : candidate_properties(K, params)) {
            if (found >= params.trials_per_model)
                break;
            std::optional<Counterexample> ce;
            try {
                ce = check_property(model, property);
            } catch (const PropertyError&) {
                continue; // group variable hidden by this abstraction
            }
            if (!ce)
                continue;
            ++found;
            ++report.counterexamples;
            validate_counterexample(model, *ce);

            ConcretizationResult exact = concretize(K, map, *ce);
            for (DetectorKind kind : params.detectors) {
                BenchRow row;
                row.model_seed = gp.seed;
                row.model_states = K.num_states();
                row.property = property.text;
                row.ce_kind = ce->kind;
                row.cfp_length = ce->states.size();
                row.detector = detector_name(kind);

                auto started = std::chrono::steady_clock::now();
                SpuriousReport result =
                    kind == DetectorKind::splitpath
                        ? split_path(K, map, *ce, params.unwind)
                        : run_detector(kind, K, map, model, *ce,
                                       params.last_mode, params.workers);
                if (params.measure_time) {
                    auto elapsed =
                        std::chrono::steady_clock::now() - started;
                    row.wall_ms =
                        std::chrono::duration<double, std::milli>(elapsed)
                            .count();
                }

                row.verdict = result.verdict;
                row.failure_index = result.failure_index;
                row.positions_examined = result.stats.positions_examined;
                row.positions_checked = result.stats.positions_checked;
                row.fixpoint_iterations = total_stages(result);
                row.unwind_used = result.stats.unwind_used;
                row.unwound_length = result.stats.unwound_length;

                if (result.verdict == exact.verdict) {
                    row.agreement = "agree";
                } else if (result.verdict == Verdict::real &&
                           exact.verdict == Verdict::spurious) {
                    row.agreement = "detector_incomplete";
                } else {
                    throw ModelError(
                        "detector '" + row.detector +
                        "' reported spurious where the oracle found a "
                        "witness (unsound)");
                }
                report.rows.push_back(std::move(row));
            }
        }
    }

    double cfp_sum = 0.0;
    size_t cfp_count = 0;
    std::map<std::string, size_t> unwound_rows;
    for (const auto& row : report.rows) {
        DetectorAggregate& agg = report.aggregates[row.detector];
        ++agg.rows;
        if (row.agreement == "agree")
            ++agg.agree;
        else
            ++agg.detector_incomplete;
        agg.mean_positions_examined += static_cast<double>(
            row.positions_examined);
        if (row.unwound_length) {
            agg.mean_unwound_length += static_cast<double>(
                *row.unwound_length);
            ++unwound_rows[row.detector];
        }
    }
    for (auto& [name, agg] : report.aggregates) {
        if (agg.rows > 0)
            agg.mean_positions_examined /= static_cast<double>(agg.rows);
        if (size_t n = unwound_rows[name]; n > 0)
            agg.mean_unwound_length /= static_cast<double>(n);
    }
    for (const auto& row : report.rows) {
        if (row.detector == report.rows.front().detector) {
            cfp_sum += static_cast<double>(row.cfp_length);
            ++cfp_count;
        }
    }
    report.mean_cfp_length = cfp_count ? cfp_sum / cfp_count : 0.0;
    return report;
}

} // namespace spur
