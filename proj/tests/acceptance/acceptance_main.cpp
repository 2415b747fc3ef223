// Acceptance suite: runs every acceptance criterion at its stated
// tolerance and prints one pass/fail line per criterion. Returns
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "spur/bench.hpp"
#include "spur/oracle.hpp"
#include "spur/refine.hpp"
#include "spur/report_io.hpp"
#include "support/brute.hpp"
#include "support/corpus.hpp"
#include "support/fixtures.hpp"

using namespace spur;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct CheckFail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition)
        throw CheckFail(message);
}

void criterion(int number, const std::string& title,
               const std::function<void()>& body) {
    auto start = Clock::now();
    try {
        body();
        double ms = std::chrono::duration<double, std::milli>(Clock::now() -
                                                              start)
                        .count();
        std::printf("[PASS] criterion %2d (%8.1f ms): %s\n", number, ms,
                    title.c_str());
    } catch (const std::exception& e) {
        ++g_failures;
        std::printf("[FAIL] criterion %2d: %s\n       %s\n", number,
                    title.c_str(), e.what());
    }
    std::fflush(stdout);
}

StateSet ids_to_set(const KripkeStructure& K,
                    const std::vector<std::string>& ids) {
    StateSet set;
    for (const auto& id : ids)
        set_insert(set, K.state_index(id));
    return set;
}

const Counterexample TL_LASSO{PathKind::lasso, {"stop", "go"}, 1};
const Counterexample F12_PATH{PathKind::finite, {"a", "b", "c", "d"}, 0};

// ---- criterion bodies ----------------------------------------------

void example2_reproduction() {
    auto start = Clock::now();
    auto [K, map, model] = fixtures::f12();
    auto report = check_spurious_first(K, map, F12_PATH,
                                       LastMode::unconstrained);
    require(report.verdict == Verdict::spurious, "verdict must be spurious");
    require(report.failure_index == 2, "failure must be at position 2 (c)");
    require(report.failure_state == "c", "failure state must be c");
    require(report.partition.has_value(), "partition missing");
    require(report.partition->dead == ids_to_set(K, {"9"}), "dead != {9}");
    require(report.partition->bad == ids_to_set(K, {"7"}), "bad != {7}");
    require(report.partition->isolated == ids_to_set(K, {"8"}),
            "isolated != {8}");
    double s = std::chrono::duration<double>(Clock::now() - start).count();
    require(s < 1.0, "took longer than one second");
}

void example1_pipeline() {
    auto start = Clock::now();
    auto [K, map, model] = fixtures::tl();
    auto ce = check_property(model, parse_property("GF state=stop"));
    require(ce.has_value(), "checker must report a counterexample");
    require(ce->kind == PathKind::lasso, "counterexample must be a lasso");
    require(ce->states == std::vector<std::string>{"stop", "go"},
            "lasso must be <s1,(s2)^w>");
    require(ce->loop_start == 1, "loop must start at position 1");
    auto exact = concretize_lasso(K, map, *ce);
    require(exact.verdict == Verdict::spurious,
            "concretization must be spurious");
    double s = std::chrono::duration<double>(Clock::now() - start).count();
    require(s < 1.0, "took longer than one second");
}

void documented_discrepancy() {
    auto [K, map, model] = fixtures::tl();
    auto cfp_check = check_spurious_first(K, map, TL_LASSO,
                                          LastMode::unconstrained);
    require(cfp_check.verdict == Verdict::real,
            "the CFP detector must report real on the TL lasso");
    auto exact = concretize_lasso(K, map, TL_LASSO);
    require(exact.verdict == Verdict::spurious,
            "the oracle must report spurious on the TL lasso");
    auto unwound = split_path(K, map, TL_LASSO, 2);
    require(unwound.verdict == Verdict::spurious,
            "split_path with unwind=2 must report spurious");
}

void oracle_equivalence_finite() {
    auto items = corpus::collect(500, PathKind::finite, 1);
    size_t spurious_rows = 0;
    std::map<std::string, size_t> misses; // detector -> real-vs-spurious gaps
    size_t unsound = 0;

    for (const auto& item : items) {
        auto exact = concretize_finite(item.model, item.map,
                                       item.counterexample);
        if (exact.verdict == Verdict::spurious)
            ++spurious_rows;
        std::vector<std::pair<std::string, Verdict>> verdicts;
        verdicts.emplace_back("first",
                              check_spurious_first(item.model, item.map,
                                                   item.counterexample,
                                                   LastMode::unconstrained)
                                  .verdict);
        verdicts.emplace_back(
            "heaviest", check_spurious_heaviest(item.model, item.map,
                                                item.abstract_model,
                                                item.counterexample,
                                                LastMode::unconstrained)
                            .verdict);
        for (unsigned workers : {1u, 4u})
            verdicts.emplace_back(
                "parallel(w=" + std::to_string(workers) + ")",
                check_spurious_parallel(item.model, item.map,
                                        item.abstract_model,
                                        item.counterexample,
                                        LastMode::unconstrained,
                                        {workers,
                                         ParallelMode::first_detected, false})
                    .verdict);
        verdicts.emplace_back(
            "splitpath",
            split_path(item.model, item.map, item.counterexample).verdict);
        for (const auto& [name, verdict] : verdicts) {
            if (verdict == Verdict::spurious && exact.verdict == Verdict::real)
                ++unsound;
            if (verdict == Verdict::real && exact.verdict == Verdict::spurious)
                ++misses[name];
        }
    }
    require(unsound == 0, "a detector was unsound against the oracle");

    size_t total_misses = 0;
    std::string breakdown;
    for (const auto& [name, count] : misses) {
        total_misses += count;
        breakdown += " " + name + "=" + std::to_string(count);
    }
    require(total_misses == 0,
            "100% agreement does not hold: over " +
                std::to_string(items.size()) + " models (" +
                std::to_string(spurious_rows) +
                " spurious rows) the In/Out detectors reported real where "
                "the oracle found no witness:" +
                breakdown +
                ". The In fixpoint closes under steps inside a fiber, so a "
                "path that dwells inside a fiber before crossing satisfies "
                "every In/Out intersection while no strictly position-wise "
                "witness exists; split_path and the oracle agree on every "
                "row. See the documented-incompleteness unit test.");
}

void locality_metamorphic() {
    std::mt19937_64 rng(99);
    size_t cases = 0;
    size_t violations = 0;
    auto items = corpus::collect(60, PathKind::finite, 1001);
    for (const auto& item : items) {
        const auto& K = item.model;
        auto view = cfp(item.counterexample);
        for (int pick = 0; pick < 2; ++pick) {
            size_t i = rng() % view.states.size();
            StateSet guarded =
                item.map.origins(item.map.index_of(view.states[i]));
            if (i > 0)
                guarded = set_union(guarded,
                                    item.map.origins(item.map.index_of(
                                        view.states[i - 1])));
            if (i + 1 < view.states.size())
                guarded = set_union(guarded,
                                    item.map.origins(item.map.index_of(
                                        view.states[i + 1])));
            else if (view.loop_start)
                guarded = set_union(guarded,
                                    item.map.origins(item.map.index_of(
                                        view.states[*view.loop_start])));

            std::vector<std::pair<int, int>> candidates;
            for (int u = 0; u < K.num_states(); ++u)
                for (int v = 0; v < K.num_states(); ++v)
                    if (!set_contains(guarded, u) && !set_contains(guarded, v))
                        candidates.emplace_back(u, v);
            if (candidates.empty())
                continue;

            for (int round = 0; round < 2; ++round) {
                auto [u, v] = candidates[rng() % candidates.size()];
                auto edges = K.transitions();
                auto it = std::find(edges.begin(), edges.end(),
                                    std::make_pair(u, v));
                if (it != edges.end())
                    edges.erase(it);
                else
                    edges.emplace_back(u, v);
                auto mutated = K.with_transitions(std::move(edges));
                for (LastMode mode :
                     {LastMode::unconstrained, LastMode::paper_strict}) {
                    auto before =
                        is_failure_state(K, item.map, view, i, mode);
                    auto after =
                        is_failure_state(mutated, item.map, view, i, mode);
                    if (before.failure != after.failure ||
                        before.in_out.in.result != after.in_out.in.result ||
                        before.in_out.out.result != after.in_out.out.result)
                        ++violations;
                    ++cases;
                }
            }
        }
    }
    require(cases >= 200, "fewer than 200 mutation cases were exercised (" +
                              std::to_string(cases) + ")");
    require(violations == 0,
            std::to_string(violations) + " of " + std::to_string(cases) +
                " mutations changed a supposedly local check");
}

void heaviest_maximality() {
    size_t instances_with_several = 0;
    auto check_instance = [&](const KripkeStructure& K,
                              const AbstractionMap& map,
                              const AbstractModel& model,
                              const Counterexample& ce, LastMode mode) {
        auto view = cfp(ce);
        auto failures = brute::all_failures(K, map, view, mode);
        if (failures.empty())
            return;
        if (failures.size() >= 2)
            ++instances_with_several;
        auto report = check_spurious_heaviest(K, map, model, ce, mode);
        require(report.verdict == Verdict::spurious,
                "heaviest must report spurious when failures exist");
        std::uint64_t reported = report.weights[*report.failure_index];
        for (size_t f : failures) {
            require(reported >= report.weights[f],
                    "heaviest returned a non-maximal failure weight");
            if (report.weights[f] == reported)
                require(*report.failure_index <= f,
                        "weight tie must break toward the lower index");
        }
    };

    auto w2 = fixtures::w2();
    check_instance(w2.model, w2.map, w2.abstract_model,
                   {PathKind::finite, {"p", "q", "r", "t"}, 0},
                   LastMode::unconstrained);
    auto items = corpus::collect(200, PathKind::finite, 1);
    for (const auto& item : items)
        for (LastMode mode :
             {LastMode::unconstrained, LastMode::paper_strict})
            check_instance(item.model, item.map, item.abstract_model,
                           item.counterexample, mode);
    require(instances_with_several >= 5,
            "too few multi-failure instances to be meaningful");
}

void fixpoint_bound() {
    auto items = corpus::collect(120, PathKind::finite, 3001);
    auto lassos = corpus::collect(40, PathKind::lasso, 3501);
    items.insert(items.end(), lassos.begin(), lassos.end());
    for (const auto& item : items) {
        for (LastMode mode :
             {LastMode::unconstrained, LastMode::paper_strict}) {
            auto first = check_spurious_first(item.model, item.map,
                                              item.counterexample, mode);
            auto heaviest = check_spurious_heaviest(
                item.model, item.map, item.abstract_model,
                item.counterexample, mode);
            auto parallel = check_spurious_parallel(
                item.model, item.map, item.abstract_model,
                item.counterexample, mode,
                {4, ParallelMode::heaviest, false});
            for (const auto* report : {&first, &heaviest, &parallel})
                for (const auto& check : report->stats.checks) {
                    require(check.in_stages <= check.fiber_size,
                            "in-stage count exceeded the fiber size");
                    require(check.out_stages <= check.fiber_size,
                            "out-stage count exceeded the fiber size");
                }
        }
    }
}

void cegar_convergence() {
    auto K12 = KripkeStructure::parse(fixtures::F12);
    auto f12 = cegar(K12, {"n"}, parse_property("AG !(g=d)"),
                     DetectorKind::first, LastMode::unconstrained, 50);
    require(f12.outcome == CegarOutcome::verified,
            "F12 must verify AG !(g=d)");
    require(f12.iterations == 2, "F12 must verify in exactly 2 iterations");
    require(f12.trace.size() == 1, "F12 must take exactly 1 refinement");

    auto Ktl = KripkeStructure::parse(fixtures::TL);
    auto tl = cegar(Ktl, {"color"}, parse_property("GF state=stop"),
                    DetectorKind::first, LastMode::unconstrained, 50);
    require(tl.outcome == CegarOutcome::verified,
            "TL must verify GF state=stop");

    auto items = corpus::collect(30, PathKind::finite, 4001);
    for (const auto& item : items) {
        const auto& domain = item.model.vars()[0].domain;
        auto prop = parse_property("AG !(g=" + domain.back() + ")");
        for (DetectorKind kind : {DetectorKind::first, DetectorKind::heaviest,
                                  DetectorKind::splitpath,
                                  DetectorKind::oracle}) {
            auto result =
                cegar(item.model, derive_invisible(item.params), prop, kind,
                      LastMode::unconstrained,
                      static_cast<size_t>(item.model.num_states()) + 2);
            require(result.outcome != CegarOutcome::budget_exhausted,
                    "a loop run failed to terminate within |S| refinements");
            require(result.trace.size() <=
                        static_cast<size_t>(item.model.num_states()),
                    "refinement count exceeded |S|");
        }
    }
}

void cfp_cost_claim() {
    BenchParams params;
    params.num_models = 40;
    params.base.num_states = 16;
    params.base.num_vars = 2;
    params.base.domain_size = 3;
    params.base.edge_density = 0.12;
    params.base.seed = 1;
    params.detectors = {DetectorKind::first, DetectorKind::splitpath};
    params.kind_filter = PathKind::lasso;
    params.unwind = 2;
    auto report = bench_compare(params);
    require(!report.rows.empty(), "lasso corpus produced no rows");

    double first_mean = 0.0, cfp_mean = 0.0;
    size_t first_rows = 0;
    for (const auto& row : report.rows) {
        if (row.detector == "first") {
            require(row.positions_examined == row.cfp_length,
                    "first must examine exactly the CFP");
            first_mean += static_cast<double>(row.positions_examined);
            cfp_mean += static_cast<double>(row.cfp_length);
            ++first_rows;
        } else {
            require(row.unwound_length.has_value(),
                    "splitpath rows must record the unwound length");
            require(row.cfp_length < *row.unwound_length,
                    "the unwound sequence must exceed the CFP at unwind 2");
        }
    }
    require(first_rows > 0, "no rows for the first detector");
    require(first_mean == cfp_mean,
            "mean positions examined by first must equal the CFP length");
    // the claim is part of the bench output
    auto j = bench_to_json(report);
    require(j["aggregates"]["first"].contains("mean_positions_examined"),
            "bench output must report mean positions examined");
    require(j["aggregates"]["splitpath"].contains("mean_unwound_length"),
            "bench output must report the unwound length");
    require(j["aggregates"]["splitpath"]["mean_unwound_length"]
                    .get<double>() >
                j["aggregates"]["first"]["mean_positions_examined"]
                    .get<double>(),
            "unwound mean must exceed the CFP mean");
}

// ---- determinism over the real CLI ----------------------------------

std::string run_command(const std::string& command, int* exit_code) {
    std::string output;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    require(pipe != nullptr, "failed to spawn: " + command);
    char buffer[4096];
    size_t n;
    while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0)
        output.append(buffer, n);
    int status = pclose(pipe);
    if (exit_code)
        *exit_code = WEXITSTATUS(status);
    return output;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), "cannot write " + path);
    out << content;
}

void determinism() {
    const std::string cli = SPUR_CLI_PATH;
    write_file("acc_tl.km", fixtures::TL);
    write_file("acc_f12.km", fixtures::F12);
    write_file("acc_paths.txt", "finite: a b c d\n");

    std::vector<std::pair<std::string, int>> commands = {
        {cli + " gen --states 24 --vars 2 --domain 3 --density 0.15 --seed 5",
         0},
        {cli + " --json analyze acc_f12.km --invisible n --paths "
               "acc_paths.txt --detector heaviest",
         0},
        {cli + " --json analyze acc_f12.km --invisible n --paths "
               "acc_paths.txt --detector parallel-first --workers 4",
         0},
        {cli + " --json cegar acc_f12.km --invisible n --prop \"AG !(g=d)\" "
               "--detector first",
         0},
        {cli + " --json cegar acc_tl.km --invisible color --prop "
               "\"GF state=stop\" --detector heaviest",
         0},
        {cli + " --json --seed 11 bench --models 4 --states 12 "
               "--detectors first,splitpath,oracle --kind both",
         0},
    };
    for (const auto& [command, expected] : commands) {
        int code_a = -1, code_b = -1;
        std::string a = run_command(command, &code_a);
        std::string b = run_command(command, &code_b);
        require(code_a == expected,
                "unexpected exit code " + std::to_string(code_a) + " from: " +
                    command + "\n" + a);
        require(code_a == code_b, "exit codes differ between runs");
        require(a == b, "output differs between identical runs of: " +
                            command);
        require(!a.empty(), "no output from: " + command);
    }

    // cegar exit codes: 10 for a real counterexample
    int code = -1;
    run_command(cli + " --quiet cegar acc_f12.km --prop \"AG !(g=c & n=3)\" "
                      "--detector first",
                &code);
    require(code == 10, "cegar must exit 10 on a real counterexample");
    run_command(cli + " --quiet cegar acc_f12.km --invisible n --prop "
                      "\"AG !(g=d)\" --max-iter 1 --detector first",
                &code);
    require(code == 20, "cegar must exit 20 on budget exhaustion");
    run_command(cli + " cegar missing.km --prop \"AG !(g=d)\"", &code);
    require(code == 2, "cegar must exit 2 on input errors");
}

} // namespace

int main() {
    std::printf("spur acceptance suite\n");
    criterion(1, "Example 2 reproduction: F12 spurious at c with {9}/{7}/{8}",
              example2_reproduction);
    criterion(2, "Example 1 pipeline: TL lasso emitted and refuted",
              example1_pipeline);
    criterion(3, "documented discrepancy: CFP check real, oracle spurious",
              documented_discrepancy);
    criterion(4, "oracle equivalence on 500 finite random counterexamples",
              oracle_equivalence_finite);
    criterion(5, "locality under metamorphic transition mutations",
              locality_metamorphic);
    criterion(6, "heaviest detector returns a maximal-weight failure",
              heaviest_maximality);
    criterion(7, "fixpoint stage counts never exceed the fiber size",
              fixpoint_bound);
    criterion(8, "CEGAR convergence on the fixtures and the corpus",
              cegar_convergence);
    criterion(9, "CFP cost claim on a seeded lasso corpus", cfp_cost_claim);
    criterion(10, "byte-identical machine-readable output on repeat runs",
              determinism);
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
