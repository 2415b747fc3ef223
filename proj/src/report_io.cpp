#include "spur/report_io.hpp"

#include <algorithm>
#include <sstream>

#include "spur/counterexample.hpp"

namespace spur {

std::vector<std::string> ids_sorted(const KripkeStructure& K,
                                    const StateSet& set) {
    std::vector<std::string> ids;
    ids.reserve(set.size());
    for (int s : set)
        ids.push_back(K.state_id(s));
    std::sort(ids.begin(), ids.end());
    return ids;
}

namespace {

const char* verdict_name(Verdict v) {
    return v == Verdict::real ? "real" : "spurious";
}

Json stats_to_json(const DetectorStats& stats) {
    Json j;
    j["positions_examined"] = stats.positions_examined;
    j["positions_checked"] = stats.positions_checked;
    Json checks = Json::array();
    for (const auto& check : stats.checks) {
        Json c;
        c["position"] = check.position;
        c["fiber_size"] = check.fiber_size;
        c["in_stages"] = check.in_stages;
        c["out_stages"] = check.out_stages;
        c["failure"] = check.failure;
        checks.push_back(std::move(c));
    }
    j["stage_counts"] = std::move(checks);
    if (!stats.image_sizes.empty())
        j["image_sizes"] = stats.image_sizes;
    if (stats.unwind_used)
        j["unwind_used"] = *stats.unwind_used;
    if (stats.unwound_length)
        j["unwound_length"] = *stats.unwound_length;
    return j;
}

} // namespace

Json report_to_json(const SpuriousReport& report, const KripkeStructure& K) {
    Json j;
    j["detector"] = report.detector;
    j["verdict"] = verdict_name(report.verdict);
    if (report.failure_index)
        j["failure_index"] = *report.failure_index;
    else
        j["failure_index"] = nullptr;
    if (report.failure_state)
        j["failure_state"] = *report.failure_state;
    else
        j["failure_state"] = nullptr;
    j["dead"] = report.partition ? ids_sorted(K, report.partition->dead)
                                 : std::vector<std::string>{};
    j["bad"] = report.partition ? ids_sorted(K, report.partition->bad)
                                : std::vector<std::string>{};
    j["isolated"] = report.partition
                        ? ids_sorted(K, report.partition->isolated)
                        : std::vector<std::string>{};
    j["weights"] = report.weights;
    j["stats"] = stats_to_json(report.stats);
    if (report.witness)
        j["witness"] = render_path(*report.witness);
    return j;
}

std::string report_to_text(const SpuriousReport& report,
                           const KripkeStructure& K) {
    std::ostringstream out;
    out << "detector:      " << report.detector << '\n';
    out << "verdict:       " << verdict_name(report.verdict) << '\n';
    if (report.failure_state)
        out << "failure state: " << *report.failure_state << " (position "
            << *report.failure_index << ")\n";
    auto line = [&](const char* name, const StateSet& set) {
        out << name;
        for (const auto& id : ids_sorted(K, set))
            out << ' ' << id;
        out << '\n';
    };
    if (report.partition) {
        line("dead:         ", report.partition->dead);
        line("bad:          ", report.partition->bad);
        line("isolated:     ", report.partition->isolated);
    }
    if (report.in_out) {
        line("in set:       ", report.in_out->in.result);
        line("out set:      ", report.in_out->out.result);
    }
    if (!report.weights.empty()) {
        out << "weights:      ";
        for (auto w : report.weights)
            out << ' ' << w;
        out << '\n';
    }
    out << "positions:     " << report.stats.positions_checked << " checked / "
        << report.stats.positions_examined << " examined\n";
    if (!report.stats.image_sizes.empty()) {
        out << "image sizes:  ";
        for (auto size : report.stats.image_sizes)
            out << ' ' << size;
        out << '\n';
    }
    if (report.stats.unwind_used)
        out << "unwind used:   " << *report.stats.unwind_used << '\n';
    if (report.witness)
        out << "witness:       " << render_path(*report.witness) << '\n';
    return out.str();
}

namespace {

const char* outcome_name(CegarOutcome outcome) {
    switch (outcome) {
    case CegarOutcome::verified: return "verified";
    case CegarOutcome::real_counterexample: return "real_counterexample";
    case CegarOutcome::budget_exhausted: return "budget_exhausted";
    }
    return "?";
}

} // namespace

Json cegar_to_json(const CegarResult& result, const KripkeStructure& K) {
    Json j;
    j["outcome"] = outcome_name(result.outcome);
    j["iterations"] = result.iterations;
    j["final_abstract_states"] = result.final_abstract_states;
    if (result.witness)
        j["witness"] = render_path(*result.witness);
    if (result.abstract_counterexample)
        j["abstract_counterexample"] =
            render_path(*result.abstract_counterexample);
    Json trace = Json::array();
    for (const auto& it : result.trace) {
        Json t;
        t["iteration"] = it.index;
        t["abstract_states"] = it.abstract_states;
        t["counterexample"] = render_path(it.counterexample);
        t["report"] = report_to_json(it.report, K);
        t["detector_incomplete"] = it.detector_incomplete;
        if (it.oracle_verdict)
            t["oracle_verdict"] = verdict_name(*it.oracle_verdict);
        if (it.refinement) {
            Json r;
            r["failure_state"] = it.refinement->failure_state;
            r["dead"] = ids_sorted(K, it.refinement->partition.dead);
            r["bad"] = ids_sorted(K, it.refinement->partition.bad);
            r["isolated"] = ids_sorted(K, it.refinement->partition.isolated);
            r["new_classes"] = it.refinement->new_classes;
            t["refinement"] = std::move(r);
        }
        if (it.note)
            t["note"] = *it.note;
        trace.push_back(std::move(t));
    }
    j["trace"] = std::move(trace);
    return j;
}

std::string cegar_to_text(const CegarResult& result) {
    std::ostringstream out;
    for (const auto& it : result.trace) {
        out << "iteration " << it.index << ": " << it.abstract_states
            << " abstract states, counterexample "
            << render_path(it.counterexample) << '\n';
        out << "  detector " << it.report.detector << ": "
            << verdict_name(it.report.verdict);
        if (it.report.failure_state)
            out << " at " << *it.report.failure_state;
        out << '\n';
        if (it.detector_incomplete)
            out << "  oracle refuted the real verdict; refining from the "
                   "image split\n";
        if (it.refinement) {
            out << "  split " << it.refinement->failure_state << " into";
            for (const auto& id : it.refinement->new_classes)
                out << ' ' << id;
            out << '\n';
        }
        if (it.note)
            out << "  note: " << *it.note << '\n';
    }
    out << "outcome: " << outcome_name(result.outcome) << " after "
        << result.iterations << " iteration(s)\n";
    if (result.witness)
        out << "witness: " << render_path(*result.witness) << '\n';
    return out.str();
}

Json bench_to_json(const BenchReport& report) {
    Json j;
    j["models_generated"] = report.models_generated;
    j["counterexamples"] = report.counterexamples;
    j["mean_cfp_length"] = report.mean_cfp_length;
    Json rows = Json::array();
    for (const auto& row : report.rows) {
        Json r;
        r["model_seed"] = row.model_seed;
        r["model_states"] = row.model_states;
        r["property"] = row.property;
        r["ce_kind"] = row.ce_kind == PathKind::finite ? "finite" : "lasso";
        r["cfp_length"] = row.cfp_length;
        r["detector"] = row.detector;
        r["verdict"] = verdict_name(row.verdict);
        if (row.failure_index)
            r["failure_index"] = *row.failure_index;
        else
            r["failure_index"] = nullptr;
        r["positions_examined"] = row.positions_examined;
        r["positions_checked"] = row.positions_checked;
        r["fixpoint_iterations"] = row.fixpoint_iterations;
        if (row.unwind_used)
            r["unwind_used"] = *row.unwind_used;
        if (row.unwound_length)
            r["unwound_length"] = *row.unwound_length;
        r["agreement"] = row.agreement;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    Json aggregates;
    for (const auto& [name, agg] : report.aggregates) {
        Json a;
        a["rows"] = agg.rows;
        a["agree"] = agg.agree;
        a["detector_incomplete"] = agg.detector_incomplete;
        a["mean_positions_examined"] = agg.mean_positions_examined;
        if (agg.mean_unwound_length > 0.0)
            a["mean_unwound_length"] = agg.mean_unwound_length;
        aggregates[name] = std::move(a);
    }
    j["aggregates"] = std::move(aggregates);
    return j;
}

std::string bench_to_text(const BenchReport& report) {
    std::ostringstream out;
    out << "models: " << report.models_generated
        << "  counterexamples: " << report.counterexamples
        << "  mean CFP length: " << report.mean_cfp_length << '\n';
    for (const auto& [name, agg] : report.aggregates) {
        out << "  " << name << ": rows " << agg.rows << ", agree "
            << agg.agree << ", detector_incomplete "
            << agg.detector_incomplete << ", mean positions examined "
            << agg.mean_positions_examined;
        if (agg.mean_unwound_length > 0.0)
            out << ", mean unwound length " << agg.mean_unwound_length;
        out << '\n';
    }
    return out.str();
}

} // namespace spur
