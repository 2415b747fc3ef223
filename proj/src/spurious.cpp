#include "spur/spurious.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <thread>

#include "spur/errors.hpp"

namespace spur {

namespace {

std::vector<int> resolve_positions(const AbstractionMap& map,
                                   const CFPView& view) {
    std::vector<int> classes;
    classes.reserve(view.states.size());
    for (const auto& id : view.states)
        classes.push_back(map.index_of(id));
    return classes;
}

std::vector<bool> fiber_mask(const KripkeStructure& K, const StateSet& fiber) {
    std::vector<bool> mask(K.num_states(), false);
    for (int s : fiber)
        mask[s] = true;
    return mask;
}

/// Accumulate literal stage sets until a stage contributes nothing new.
/// `step` maps a stage to the next stage (already restricted to the
/// fiber). Every recorded stage after the seed adds at least one state,
/// so the recorded count is bounded by the fiber size.
StageSets run_stages(StateSet seed,
                     const std::function<StateSet(const StateSet&)>& step) {
    StageSets out;
    out.stages.push_back(seed);
    out.result = std::move(seed);
    while (true) {
        StateSet next = step(out.stages.back());
        StateSet fresh = set_minus(next, out.result);
        if (fresh.empty())
            break;
        out.result = set_union(out.result, fresh);
        out.stages.push_back(std::move(next));
    }
    return out;
}

StateSet edge_targets_within(const KripkeStructure& K, const StateSet& sources,
                             const std::vector<bool>& mask) {
    StateSet next;
    for (int s : sources)
        for (int t : K.succ(s))
            if (mask[t])
                set_insert(next, t);
    return next;
}

StateSet edge_sources_within(const KripkeStructure& K, const StateSet& targets,
                             const std::vector<bool>& mask) {
    StateSet next;
    for (int t : targets)
        for (int s : K.pred(t))
            if (mask[s])
                set_insert(next, s);
    return next;
}

StageSets in_set_resolved(const KripkeStructure& K, const AbstractionMap& map,
                          const std::vector<int>& classes, size_t i) {
    const StateSet& fiber = map.origins(classes[i]);
    auto mask = fiber_mask(K, fiber);

    StateSet seed;
    if (i == 0) {
        seed = set_intersect(fiber, K.initial());
    } else {
        seed = edge_targets_within(K, map.origins(classes[i - 1]), mask);
    }
    return run_stages(std::move(seed), [&](const StateSet& stage) {
        return edge_targets_within(K, stage, mask);
    });
}

StageSets out_set_resolved(const KripkeStructure& K, const AbstractionMap& map,
                           const std::vector<int>& classes, const CFPView& view,
                           size_t i, LastMode last_mode) {
    const StateSet& fiber = map.origins(classes[i]);
    auto mask = fiber_mask(K, fiber);
    const size_t last = classes.size() - 1;

    StateSet seed;
    if (i < last) {
        seed = edge_sources_within(K, map.origins(classes[i + 1]), mask);
    } else if (view.loop_start) {
        seed = edge_sources_within(K, map.origins(classes[*view.loop_start]),
                                   mask);
    } else if (last_mode == LastMode::unconstrained) {
        // Nothing constrains continuation past the end of a finite
        // counterexample: the whole fiber counts as able to continue.
        StageSets out;
        out.stages.push_back(fiber);
        out.result = fiber;
        return out;
    } else {
        seed = set_intersect(fiber, K.deadlocks());
    }
    return run_stages(std::move(seed), [&](const StateSet& stage) {
        return edge_sources_within(K, stage, mask);
    });
}

FailureCheck check_position(const KripkeStructure& K, const AbstractionMap& map,
                            const std::vector<int>& classes,
                            const CFPView& view, size_t i, LastMode last_mode) {
    FailureCheck fc;
    fc.in_out.in = in_set_resolved(K, map, classes, i);
    fc.in_out.out = out_set_resolved(K, map, classes, view, i, last_mode);
    fc.failure = sets_disjoint(fc.in_out.in.result, fc.in_out.out.result);
    return fc;
}

Partition partition_from(const AbstractionMap& map, int cls,
                         const InOutSets& in_out) {
    Partition p;
    p.dead = in_out.in.result;
    p.bad = in_out.out.result;
    p.isolated = set_minus(set_minus(map.origins(cls), p.dead), p.bad);
    return p;
}

std::vector<std::uint64_t> position_weights(const KripkeStructure& K,
                                            const AbstractionMap& map,
                                            const std::vector<int>& classes) {
    std::vector<std::uint64_t> weights;
    weights.reserve(classes.size());
    for (int cls : classes)
        weights.push_back(state_weight(K, map, cls).value());
    return weights;
}

PositionCheck position_check_stats(size_t i, size_t fiber_size,
                                   const FailureCheck& fc) {
    return {i, fiber_size, fc.in_out.in.stage_count(),
            fc.in_out.out.stage_count(), fc.failure};
}

} // namespace

StageSets in_set(const KripkeStructure& K, const AbstractionMap& map,
                 const CFPView& view, size_t i) {
    auto classes = resolve_positions(map, view);
    if (i >= classes.size())
        throw ModelError("position out of range");
    return in_set_resolved(K, map, classes, i);
}

StageSets out_set(const KripkeStructure& K, const AbstractionMap& map,
                  const CFPView& view, size_t i, LastMode last_mode) {
    auto classes = resolve_positions(map, view);
    if (i >= classes.size())
        throw ModelError("position out of range");
    return out_set_resolved(K, map, classes, view, i, last_mode);
}

FailureCheck is_failure_state(const KripkeStructure& K,
                              const AbstractionMap& map, const CFPView& view,
                              size_t i, LastMode last_mode) {
    auto classes = resolve_positions(map, view);
    if (i >= classes.size())
        throw ModelError("position out of range");
    return check_position(K, map, classes, view, i, last_mode);
}

Partition partition_origins(const KripkeStructure& K, const AbstractionMap& map,
                            const CFPView& view, size_t i, LastMode last_mode) {
    auto classes = resolve_positions(map, view);
    if (i >= classes.size())
        throw ModelError("position out of range");
    FailureCheck fc = check_position(K, map, classes, view, i, last_mode);
    if (!fc.failure)
        throw ModelError("position " + std::to_string(i) +
                         " is not a failure state: dead and bad would overlap");
    return partition_from(map, classes[i], fc.in_out);
}

Weight state_weight(const KripkeStructure& K, const AbstractionMap& map,
                    int cls) {
    if (cls < 0 || cls >= map.class_count())
        throw ModelError("class index out of range");
    Weight w;
    for (const auto& [from, to] : K.transitions()) {
        bool from_in = map.class_of(from) == cls;
        bool to_in = map.class_of(to) == cls;
        if (!from_in && to_in)
            ++w.ein;
        if (from_in && !to_in)
            ++w.eout;
    }
    return w;
}

Weight state_weight(const AbstractModel& model, const KripkeStructure& K,
                    const AbstractionMap& map, const std::string& id) {
    (void)model;
    return state_weight(K, map, map.index_of(id));
}

SpuriousReport check_spurious_first(const KripkeStructure& K,
                                    const AbstractionMap& map,
                                    const Counterexample& ce,
                                    LastMode last_mode) {
    CFPView view = cfp(ce);
    auto classes = resolve_positions(map, view);

    SpuriousReport report;
    report.detector = "first";
    report.weights = position_weights(K, map, classes);
    report.stats.positions_examined = view.length();

    for (size_t i = 0; i < classes.size(); ++i) {
        FailureCheck fc = check_position(K, map, classes, view, i, last_mode);
        report.stats.checks.push_back(
            position_check_stats(i, map.origins(classes[i]).size(), fc));
        if (fc.failure) {
            report.verdict = Verdict::spurious;
            report.failure_index = i;
            report.failure_state = view.states[i];
            report.partition = partition_from(map, classes[i], fc.in_out);
            report.in_out = std::move(fc.in_out);
            break;
        }
    }
    report.stats.positions_checked = report.stats.checks.size();
    return report;
}

namespace {

std::vector<size_t> weight_order(const std::vector<std::uint64_t>& weights) {
    std::vector<size_t> order(weights.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (weights[a] != weights[b])
            return weights[a] > weights[b];
        return a < b;
    });
    return order;
}

} // namespace

SpuriousReport check_spurious_heaviest(const KripkeStructure& K,
                                       const AbstractionMap& map,
                                       const AbstractModel& model,
                                       const Counterexample& ce,
                                       LastMode last_mode) {
    if (model.num_states() != map.class_count())
        throw ModelError("abstract model does not match the abstraction map");
    CFPView view = cfp(ce);
    auto classes = resolve_positions(map, view);

    SpuriousReport report;
    report.detector = "heaviest";
    report.weights = position_weights(K, map, classes);
    report.stats.positions_examined = view.length();

    for (size_t i : weight_order(report.weights)) {
        FailureCheck fc = check_position(K, map, classes, view, i, last_mode);
        report.stats.checks.push_back(
            position_check_stats(i, map.origins(classes[i]).size(), fc));
        if (fc.failure) {
            report.verdict = Verdict::spurious;
            report.failure_index = i;
            report.failure_state = view.states[i];
            report.partition = partition_from(map, classes[i], fc.in_out);
            report.in_out = std::move(fc.in_out);
            break;
        }
    }
    std::sort(report.stats.checks.begin(), report.stats.checks.end(),
              [](const PositionCheck& a, const PositionCheck& b) {
                  return a.position < b.position;
              });
    report.stats.positions_checked = report.stats.checks.size();
    return report;
}

SpuriousReport check_spurious_parallel(const KripkeStructure& K,
                                       const AbstractionMap& map,
                                       const AbstractModel& model,
                                       const Counterexample& ce,
                                       LastMode last_mode,
                                       const ParallelOptions& options) {
    if (model.num_states() != map.class_count())
        throw ModelError("abstract model does not match the abstraction map");
    CFPView view = cfp(ce);
    auto classes = resolve_positions(map, view);
    const size_t n = classes.size();

    struct Slot {
        bool computed = false;
        FailureCheck check;
    };
    std::vector<Slot> slots(n);
    std::atomic<size_t> next{0};
    std::atomic<bool> cancel{false};
    const bool eager =
        options.eager_cancel && options.mode == ParallelMode::first_detected;

    auto worker = [&]() {
        while (true) {
            if (eager && cancel.load(std::memory_order_acquire))
                break;
            size_t k = next.fetch_add(1, std::memory_order_relaxed);
            if (k >= n)
                break;
            FailureCheck fc =
                check_position(K, map, classes, view, k, last_mode);
            bool failed = fc.failure;
            slots[k].check = std::move(fc);
            slots[k].computed = true;
            if (failed && eager)
                cancel.store(true, std::memory_order_release);
        }
    };

    unsigned worker_count =
        std::max(1u, std::min<unsigned>(options.workers,
                                        static_cast<unsigned>(n)));
    if (worker_count == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(worker_count);
        for (unsigned w = 0; w < worker_count; ++w)
            threads.emplace_back(worker);
        for (auto& t : threads)
            t.join();
    }

    SpuriousReport report;
    report.detector = options.mode == ParallelMode::first_detected
                          ? "parallel-first"
                          : "parallel-heaviest";
    report.weights = position_weights(K, map, classes);
    report.stats.positions_examined = n;

    std::optional<size_t> chosen;
    for (size_t i = 0; i < n; ++i) {
        if (!slots[i].computed || !slots[i].check.failure)
            continue;
        if (options.mode == ParallelMode::first_detected) {
            if (!chosen)
                chosen = i;
        } else {
            if (!chosen || report.weights[i] > report.weights[*chosen])
                chosen = i;
        }
    }

    if (chosen) {
        size_t i = *chosen;
        report.verdict = Verdict::spurious;
        report.failure_index = i;
        report.failure_state = view.states[i];
        report.partition =
            partition_from(map, classes[i], slots[i].check.in_out);
        report.in_out = slots[i].check.in_out;
    }

    // With eager cancellation the set of completed positions depends on
    // timing; keep only the reported position in the stats so the
    // emitted report stays deterministic.
    if (eager && chosen) {
        report.stats.checks.push_back(position_check_stats(
            *chosen, map.origins(classes[*chosen]).size(),
            slots[*chosen].check));
    } else {
        for (size_t i = 0; i < n; ++i)
            if (slots[i].computed)
                report.stats.checks.push_back(position_check_stats(
                    i, map.origins(classes[i]).size(), slots[i].check));
    }
    report.stats.positions_checked = report.stats.checks.size();
    return report;
}

size_t default_unwind(const AbstractionMap& map, const Counterexample& ce) {
    return ce.states.size() * std::max<size_t>(1, map.max_fiber_size());
}

SpuriousReport split_path(const KripkeStructure& K, const AbstractionMap& map,
                          const Counterexample& ce,
                          std::optional<size_t> unwind) {
    CFPView view = cfp(ce);
    std::vector<int> seq = resolve_positions(map, view);
    std::vector<std::string> ids = view.states;

    SpuriousReport report;
    report.detector = "splitpath";

    if (ce.kind == PathKind::lasso) {
        size_t reps = unwind ? std::max<size_t>(1, *unwind)
                             : default_unwind(map, ce);
        report.stats.unwind_used = reps;
        const size_t loop_len = ce.states.size() - ce.loop_start;
        seq.reserve(seq.size() + reps * loop_len);
        for (size_t r = 0; r < reps; ++r) {
            for (size_t k = ce.loop_start; k < ce.states.size(); ++k) {
                seq.push_back(seq[k]);
                ids.push_back(ids[k]);
            }
        }
    }
    report.stats.unwound_length = seq.size();
    report.stats.positions_examined = seq.size();

    auto fibers_cross = [&](size_t pos) {
        // States of fiber(pos) with an edge into fiber(pos + 1).
        StateSet crossing;
        auto mask = fiber_mask(K, map.origins(seq[pos + 1]));
        for (int s : map.origins(seq[pos]))
            for (int t : K.succ(s))
                if (mask[t]) {
                    set_insert(crossing, s);
                    break;
                }
        return crossing;
    };

    auto finish_spurious = [&](size_t k, StateSet image_before) {
        size_t failure = k == 0 ? 0 : k - 1;
        report.verdict = Verdict::spurious;
        report.failure_index = failure;
        report.failure_state = ids[failure];
        Partition p;
        p.dead = std::move(image_before); // reachable along the path, stuck
        if (failure + 1 < seq.size())
            p.bad = fibers_cross(failure); // can continue, unreachable
        p.isolated =
            set_minus(set_minus(map.origins(seq[failure]), p.dead), p.bad);
        report.partition = std::move(p);
    };

    StateSet image = set_intersect(map.origins(seq[0]), K.initial());
    report.stats.image_sizes.push_back(image.size());
    report.stats.positions_checked = 1;
    if (image.empty()) {
        finish_spurious(0, {});
        return report;
    }
    for (size_t k = 1; k < seq.size(); ++k) {
        auto mask = fiber_mask(K, map.origins(seq[k]));
        StateSet next = edge_targets_within(K, image, mask);
        report.stats.image_sizes.push_back(next.size());
        ++report.stats.positions_checked;
        if (next.empty()) {
            finish_spurious(k, std::move(image));
            return report;
        }
        image = std::move(next);
    }
    report.verdict = Verdict::real;
    return report;
}

} // namespace spur
