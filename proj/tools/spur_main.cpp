#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spur/bench.hpp"
#include "spur/errors.hpp"
#include "spur/generator.hpp"
#include "spur/report_io.hpp"

namespace {

using namespace spur;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ModelError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            if (!current.empty())
                parts.push_back(current);
            current.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            current += c;
        }
    }
    if (!current.empty())
        parts.push_back(current);
    return parts;
}

struct CommonFlags {
    bool json = false;
    bool quiet = false;
    std::uint64_t seed = 0;
};

void emit(const CommonFlags& flags, const Json& json_doc,
          const std::string& text) {
    if (flags.json)
        std::cout << json_doc.dump(2) << '\n';
    else if (!flags.quiet)
        std::cout << text;
}

struct AnalyzeArgs {
    std::string model_path;
    std::string invisible;
    std::string paths_file;
    std::string detector = "first";
    unsigned workers = 1;
    bool strict_last = false;
    std::optional<size_t> unwind;
};

int cmd_parse(const CommonFlags& flags, const std::string& model_path) {
    KripkeStructure K = KripkeStructure::parse(read_file(model_path));
    Json j;
    j["states"] = K.num_states();
    j["variables"] = K.vars().size();
    j["transitions"] = K.transitions().size();
    j["initial"] = ids_sorted(K, K.initial());
    j["deadlocks"] = ids_sorted(K, K.deadlocks());
    std::ostringstream text;
    text << "parsed: " << K.num_states() << " states, "
         << K.transitions().size() << " transitions, "
         << K.deadlocks().size() << " deadlock state(s)\n";
    emit(flags, j, text.str());
    return 0;
}

int cmd_abstract(const CommonFlags& flags, const std::string& model_path,
                 const std::string& invisible, bool dump) {
    KripkeStructure K = KripkeStructure::parse(read_file(model_path));
    AbstractionMap map = AbstractionMap::build(K, split_csv(invisible));
    AbstractModel model = build_abstract_model(K, map);
    if (dump) {
        std::cout << dump_abstract_model(K, map, model);
        return 0;
    }
    Json j;
    Json classes = Json::array();
    for (const auto& state : model.states) {
        Json c;
        c["id"] = state.id;
        c["origins"] = ids_sorted(K, state.origins);
        Json label;
        for (const auto& [name, value] : state.label)
            label[name] = value;
        c["label"] = std::move(label);
        classes.push_back(std::move(c));
    }
    j["classes"] = std::move(classes);
    Json transitions = Json::array();
    for (const auto& [from, to] : model.transitions)
        transitions.push_back(model.states[from].id + " -> " +
                              model.states[to].id);
    j["transitions"] = std::move(transitions);
    Json initial = Json::array();
    for (int c : model.initial)
        initial.push_back(model.states[c].id);
    j["initial"] = std::move(initial);

    std::ostringstream text;
    text << "abstract states: " << model.num_states() << '\n';
    for (const auto& state : model.states) {
        text << "  " << state.id << " = {";
        bool first = true;
        for (const auto& id : ids_sorted(K, state.origins)) {
            text << (first ? "" : ", ") << id;
            first = false;
        }
        text << "}\n";
    }
    text << "transitions:";
    for (const auto& [from, to] : model.transitions)
        text << ' ' << model.states[from].id << "->" << model.states[to].id;
    text << "\ninitial:";
    for (int c : model.initial)
        text << ' ' << model.states[c].id;
    text << '\n';
    emit(flags, j, text.str());
    return 0;
}

int cmd_modelcheck(const CommonFlags& flags, const std::string& model_path,
                   const std::string& invisible, const std::string& prop) {
    KripkeStructure K = KripkeStructure::parse(read_file(model_path));
    AbstractionMap map = AbstractionMap::build(K, split_csv(invisible));
    AbstractModel model = build_abstract_model(K, map);
    Property property = parse_property(prop);
    auto ce = check_property(model, property);
    Json j;
    if (ce) {
        j["result"] = "counterexample";
        j["path"] = render_path(*ce);
        emit(flags, j, render_path(*ce) + "\n");
    } else {
        j["result"] = "verified";
        emit(flags, j, "verified\n");
    }
    return 0;
}

int cmd_analyze(const CommonFlags& flags, const AnalyzeArgs& args) {
    KripkeStructure K = KripkeStructure::parse(read_file(args.model_path));
    AbstractionMap map = AbstractionMap::build(K, split_csv(args.invisible));
    AbstractModel model = build_abstract_model(K, map);
    LastMode mode = args.strict_last ? LastMode::paper_strict
                                     : LastMode::unconstrained;
    DetectorKind kind = parse_detector(args.detector);

    Json reports = Json::array();
    std::ostringstream text;
    for (const auto& ce : parse_path_file(read_file(args.paths_file))) {
        validate_counterexample(model, ce);
        auto started = std::chrono::steady_clock::now();
        SpuriousReport report =
            kind == DetectorKind::splitpath
                ? split_path(K, map, ce, args.unwind)
                : run_detector(kind, K, map, model, ce, mode, args.workers);
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - started)
                        .count();
        Json j = report_to_json(report, K);
        j["path"] = render_path(ce);
        reports.push_back(std::move(j));
        text << "path:          " << render_path(ce) << '\n'
             << report_to_text(report, K);
        char line[48];
        std::snprintf(line, sizeof(line), "time:          %.3f ms\n\n", ms);
        text << line;
    }
    emit(flags, reports, text.str());
    return 0;
}

int cmd_refine(const CommonFlags& flags, const AnalyzeArgs& args, bool dump) {
    KripkeStructure K = KripkeStructure::parse(read_file(args.model_path));
    AbstractionMap map = AbstractionMap::build(K, split_csv(args.invisible));
    AbstractModel model = build_abstract_model(K, map);
    LastMode mode = args.strict_last ? LastMode::paper_strict
                                     : LastMode::unconstrained;
    DetectorKind kind = parse_detector(args.detector);

    auto paths = parse_path_file(read_file(args.paths_file));
    if (paths.empty())
        throw ModelError("path file contains no counterexample");
    const Counterexample& ce = paths.front();
    validate_counterexample(model, ce);
    SpuriousReport report =
        kind == DetectorKind::splitpath
            ? split_path(K, map, ce, args.unwind)
            : run_detector(kind, K, map, model, ce, mode, args.workers);

    if (report.verdict == Verdict::real) {
        Json j;
        j["verdict"] = "real";
        j["refined"] = false;
        if (report.witness)
            j["witness"] = render_path(*report.witness);
        emit(flags, j, "real counterexample; nothing to refine\n");
        return 0;
    }

    AbstractionMap refined =
        refine(K, map, *report.failure_state, *report.partition);
    AbstractModel refined_model = build_abstract_model(K, refined);
    if (dump) {
        std::cout << dump_abstract_model(K, refined, refined_model);
        return 0;
    }
    Json j;
    j["verdict"] = "spurious";
    j["refined"] = true;
    j["failure_state"] = *report.failure_state;
    j["dead"] = ids_sorted(K, report.partition->dead);
    j["bad"] = ids_sorted(K, report.partition->bad);
    j["isolated"] = ids_sorted(K, report.partition->isolated);
    j["abstract_states"] = refined_model.num_states();
    std::ostringstream text;
    text << "split " << *report.failure_state << "; abstract model now has "
         << refined_model.num_states() << " states\n";
    emit(flags, j, text.str());
    return 0;
}

int cmd_cegar(const CommonFlags& flags, const std::string& model_path,
              const std::string& invisible, const std::string& prop,
              const std::string& detector, size_t max_iter, bool strict_last,
              unsigned workers) {
    KripkeStructure K = KripkeStructure::parse(read_file(model_path));
    Property property = parse_property(prop);
    LastMode mode =
        strict_last ? LastMode::paper_strict : LastMode::unconstrained;
    auto started = std::chrono::steady_clock::now();
    CegarResult result = cegar(K, split_csv(invisible), property,
                               parse_detector(detector), mode, max_iter,
                               workers);
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - started)
                    .count();
    char line[48];
    std::snprintf(line, sizeof(line), "time: %.3f ms\n", ms);
    emit(flags, cegar_to_json(result, K), cegar_to_text(result) + line);
    switch (result.outcome) {
    case CegarOutcome::verified: return 0;
    case CegarOutcome::real_counterexample: return 10;
    case CegarOutcome::budget_exhausted: return 20;
    }
    return 2;
}

int cmd_gen(const GenParams& params) {
    std::cout << gen_random_model(params);
    return 0;
}

int cmd_bench(const CommonFlags& flags, BenchParams params,
              const std::string& detectors, const std::string& kind) {
    params.detectors.clear();
    for (const auto& name : split_csv(detectors))
        params.detectors.push_back(parse_detector(name));
    if (params.detectors.empty())
        throw ModelError("no detectors selected");
    if (kind == "finite")
        params.kind_filter = PathKind::finite;
    else if (kind == "lasso")
        params.kind_filter = PathKind::lasso;
    else if (kind != "both")
        throw ModelError("--kind must be finite, lasso, or both");
    BenchReport report = bench_compare(params);
    emit(flags, bench_to_json(report), bench_to_text(report));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spur: spurious-counterexample analysis for explicit-state "
                 "abstraction refinement"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonFlags flags;
    app.add_flag("--json", flags.json, "machine-readable output");
    app.add_flag("--quiet", flags.quiet, "suppress human-readable output");
    app.add_option("--seed", flags.seed, "generator seed");

    std::string model_path, invisible, prop, paths_file;
    bool dump_abstract = false;

    auto* parse_cmd = app.add_subcommand("parse", "parse and validate a model");
    parse_cmd->add_option("model", model_path, "model file")->required();

    auto* abstract_cmd =
        app.add_subcommand("abstract", "build the abstraction");
    abstract_cmd->add_option("model", model_path, "model file")->required();
    abstract_cmd->add_option("--invisible", invisible,
                             "comma-separated invisible variables");
    abstract_cmd->add_flag("--dump-abstract", dump_abstract,
                           "emit the abstract model in the model format");

    auto* check_cmd =
        app.add_subcommand("modelcheck", "check a property on the abstraction");
    check_cmd->add_option("model", model_path, "model file")->required();
    check_cmd->add_option("--invisible", invisible,
                          "comma-separated invisible variables");
    check_cmd->add_option("--prop", prop, "property, e.g. \"AG !(x=a)\"")
        ->required();

    AnalyzeArgs analyze_args;
    auto add_analyze_options = [&](CLI::App* cmd) {
        cmd->add_option("model", analyze_args.model_path, "model file")
            ->required();
        cmd->add_option("--invisible", analyze_args.invisible,
                        "comma-separated invisible variables");
        cmd->add_option("--paths", analyze_args.paths_file,
                        "counterexample path file")
            ->required();
        cmd->add_option("--detector", analyze_args.detector,
                        "first|heaviest|parallel-first|parallel-heaviest|"
                        "splitpath|oracle");
        cmd->add_option("--workers", analyze_args.workers,
                        "threads for the parallel detectors");
        cmd->add_flag("--strict-last-state", analyze_args.strict_last,
                      "seed the last Out set from deadlock states");
        cmd->add_option("--unwind", analyze_args.unwind,
                        "loop repetitions for splitpath on lassos");
    };
    auto* analyze_cmd =
        app.add_subcommand("analyze", "run a detector on counterexamples");
    add_analyze_options(analyze_cmd);
    auto* refine_cmd = app.add_subcommand(
        "refine", "split the failure state of a spurious counterexample");
    add_analyze_options(refine_cmd);
    refine_cmd->add_flag("--dump-abstract", dump_abstract,
                         "emit the refined abstract model");

    std::string detector = "first", bench_detectors = "first,splitpath";
    std::string bench_kind = "both";
    size_t max_iter = 100;
    unsigned workers = 1;
    auto* cegar_cmd =
        app.add_subcommand("cegar", "full abstraction-refinement loop");
    cegar_cmd->add_option("model", model_path, "model file")->required();
    cegar_cmd->add_option("--invisible", invisible,
                          "comma-separated invisible variables");
    cegar_cmd->add_option("--prop", prop, "property")->required();
    cegar_cmd->add_option("--detector", detector,
                          "first|heaviest|parallel-first|parallel-heaviest|"
                          "splitpath|oracle");
    cegar_cmd->add_option("--max-iter", max_iter, "iteration budget");
    bool strict_last = false;
    cegar_cmd->add_flag("--strict-last-state", strict_last,
                        "seed the last Out set from deadlock states");
    cegar_cmd->add_option("--workers", workers,
                          "threads for the parallel detectors");

    GenParams gen_params;
    auto add_gen_options = [&](CLI::App* cmd) {
        cmd->add_option("--states", gen_params.num_states, "state count");
        cmd->add_option("--vars", gen_params.num_vars, "variable count");
        cmd->add_option("--domain", gen_params.domain_size,
                        "values per variable");
        cmd->add_option("--density", gen_params.edge_density,
                        "edge probability in [0,1]");
        cmd->add_option("--invisible-fraction", gen_params.invisible_fraction,
                        "fraction of variables to hide");
    };
    auto* gen_cmd = app.add_subcommand("gen", "emit a random model");
    add_gen_options(gen_cmd);

    BenchParams bench_params;
    auto* bench_cmd =
        app.add_subcommand("bench", "compare detectors on random models");
    add_gen_options(bench_cmd);
    bench_cmd->add_option("--models", bench_params.num_models,
                          "number of models to generate");
    bench_cmd->add_option("--detectors", bench_detectors,
                          "comma-separated detector list");
    bench_cmd->add_option("--trials", bench_params.trials_per_model,
                          "properties tried per model");
    bench_cmd->add_option("--kind", bench_kind, "finite|lasso|both");
    bench_cmd->add_option("--workers", bench_params.workers,
                          "threads for the parallel detectors");
    std::optional<size_t> bench_unwind;
    bench_cmd->add_option("--unwind", bench_unwind,
                          "loop repetitions for splitpath on lassos");
    bench_cmd->add_flag("--strict-last-state", strict_last,
                        "seed the last Out set from deadlock states");
    bool bench_timing = false;
    bench_cmd->add_flag("--timing", bench_timing,
                        "measure wall time (human-readable output only)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (parse_cmd->parsed())
            return cmd_parse(flags, model_path);
        if (abstract_cmd->parsed())
            return cmd_abstract(flags, model_path, invisible, dump_abstract);
        if (check_cmd->parsed())
            return cmd_modelcheck(flags, model_path, invisible, prop);
        if (analyze_cmd->parsed())
            return cmd_analyze(flags, analyze_args);
        if (refine_cmd->parsed())
            return cmd_refine(flags, analyze_args, dump_abstract);
        if (cegar_cmd->parsed())
            return cmd_cegar(flags, model_path, invisible, prop, detector,
                             max_iter, strict_last, workers);
        if (gen_cmd->parsed()) {
            gen_params.seed = flags.seed;
            return cmd_gen(gen_params);
        }
        if (bench_cmd->parsed()) {
            bench_params.base = gen_params;
            bench_params.base.seed = flags.seed;
            bench_params.unwind = bench_unwind;
            bench_params.last_mode = strict_last ? LastMode::paper_strict
                                                 : LastMode::unconstrained;
            bench_params.measure_time = bench_timing;
            return cmd_bench(flags, bench_params, bench_detectors,
                             bench_kind);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
