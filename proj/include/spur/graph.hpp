#pragma once

#include <vector>

namespace spur {

/// Strongly connected components of a directed graph given as adjacency
/// lists. Components are returned in reverse topological order (a
/// component appears before any component it has an edge into is not
/// guaranteed; Tarjan emission order). Node order inside a component is
/// the pop order of the algorithm; callers that need determinism beyond
/// that should sort. Iterative so deep graphs cannot overflow the stack.
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& succ);

/// True if `node` lies on a cycle: its SCC has more than one member, or
/// it has a self-loop.
bool on_cycle(const std::vector<std::vector<int>>& succ,
              const std::vector<int>& scc_of, int node,
              const std::vector<int>& scc_sizes);

} // namespace spur
