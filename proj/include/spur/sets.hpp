#pragma once

#include <algorithm>
#include <vector>

namespace spur {

/// Sorted vector of state (or class) indices, ascending, no duplicates.
/// All derived sets in the toolkit use this representation so iteration
/// order is deterministic.
using StateSet = std::vector<int>;

inline bool set_contains(const StateSet& s, int x) {
    return std::binary_search(s.begin(), s.end(), x);
}

inline void set_insert(StateSet& s, int x) {
    auto it = std::lower_bound(s.begin(), s.end(), x);
    if (it == s.end() || *it != x)
        s.insert(it, x);
}

inline StateSet set_intersect(const StateSet& a, const StateSet& b) {
    StateSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

inline StateSet set_union(const StateSet& a, const StateSet& b) {
    StateSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(out));
    return out;
}

inline StateSet set_minus(const StateSet& a, const StateSet& b) {
    StateSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
    return out;
}

inline bool sets_disjoint(const StateSet& a, const StateSet& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else
            return false;
    }
    return true;
}

/// Normalize an arbitrary vector into a StateSet.
inline StateSet make_set(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace spur
