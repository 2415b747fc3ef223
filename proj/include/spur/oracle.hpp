#pragma once

#include <optional>

#include "spur/counterexample.hpp"
#include "spur/spurious.hpp"

namespace spur {

/// Exact concretization outcome. The witness is a concrete path (or
/// lasso) over concrete state ids that projects position-wise onto the
/// abstract counterexample.
struct ConcretizationResult {
    Verdict verdict = Verdict::spurious;
    std::optional<Counterexample> witness;
    size_t product_nodes = 0;
    /// Finite paths: first layer with no reachable product node.
    std::optional<size_t> first_empty_layer;
};

/// Ground truth for finite paths: layered reachability over the product
/// of K with the path positions. Returns the lexicographically least
/// witness (by state id, position by position) when one exists.
ConcretizationResult concretize_finite(const KripkeStructure& K,
                                       const AbstractionMap& map,
                                       const Counterexample& ce);

/// Ground truth for lassos: the counterexample is real iff the product
/// of K with the lasso's position automaton has a cycle reachable from
/// a start node. A product self-loop counts as a cycle. Witness
/// selection is deterministic (least entry node by (position, id),
/// shortest stem and loop with lexicographic tie-breaks).
ConcretizationResult concretize_lasso(const KripkeStructure& K,
                                      const AbstractionMap& map,
                                      const Counterexample& ce);

ConcretizationResult concretize(const KripkeStructure& K,
                                const AbstractionMap& map,
                                const Counterexample& ce);

/// Package the oracle as a detector. Real verdicts carry the witness;
/// spurious verdicts borrow split_path's failure position and partition
/// (with the safe unwind bound for lassos) so refinement can proceed.
SpuriousReport oracle_report(const KripkeStructure& K,
                             const AbstractionMap& map,
                             const Counterexample& ce);

} // namespace spur
