#include "spur/graph.hpp"

#include <algorithm>

namespace spur {

namespace {

struct TarjanFrame {
    int node;
    size_t next_child;
};

} // namespace

std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& succ) {
    const int n = static_cast<int>(succ.size());
    std::vector<int> index(n, -1);
    std::vector<int> lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> components;
    int next_index = 0;

    std::vector<TarjanFrame> frames;
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1)
            continue;
        frames.push_back({root, 0});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!frames.empty()) {
            TarjanFrame& frame = frames.back();
            int v = frame.node;
            if (frame.next_child < succ[v].size()) {
                int w = succ[v][frame.next_child++];
                if (index[w] == -1) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
            } else {
                if (lowlink[v] == index[v]) {
                    std::vector<int> component;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        component.push_back(w);
                    } while (w != v);
                    std::sort(component.begin(), component.end());
                    components.push_back(std::move(component));
                }
                frames.pop_back();
                if (!frames.empty()) {
                    int parent = frames.back().node;
                    lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
                }
            }
        }
    }
    return components;
}

bool on_cycle(const std::vector<std::vector<int>>& succ,
              const std::vector<int>& scc_of, int node,
              const std::vector<int>& scc_sizes) {
    if (scc_sizes[scc_of[node]] > 1)
        return true;
    const auto& out = succ[node];
    return std::find(out.begin(), out.end(), node) != out.end();
}

} // namespace spur
