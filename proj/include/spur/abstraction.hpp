#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spur/model.hpp"
#include "spur/sets.hpp"

namespace spur {

/// One abstract state: a block of the partition of S. Identified by a
/// synthesized id derived from the shared visible valuation, with a
/// suffix once refinement splits a block. `generation` counts how many
/// splits produced it (0 for a plain visible-valuation fiber).
struct AbstractClass {
    std::string id;
    StateSet members;
    int generation = 0;
};

/// The abstraction function h induced by a set of invisible variables,
/// generalized to any partition refining the visible-valuation fibers
/// (refinement splits blocks without changing visibility).
///
/// Value type: does not hold a reference to the model. All queries take
/// state indices of the structure the map was built from.
class AbstractionMap {
public:
    /// Partition the states of K into visible-valuation fibers.
    /// Classes are ordered by first occurrence in state declaration
    /// order. Throws ModelError on an unknown variable name. Making
    /// every variable invisible is allowed and yields a single class.
    static AbstractionMap build(const KripkeStructure& K,
                                const std::vector<std::string>& invisible_names);

    int class_count() const { return static_cast<int>(classes_.size()); }
    const AbstractClass& cls(int index) const { return classes_[index]; }
    const std::vector<AbstractClass>& classes() const { return classes_; }

    /// h: state index -> class index.
    int class_of(int state) const { return class_of_[state]; }

    /// Class index for an abstract-state id; throws ModelError.
    int index_of(const std::string& id) const;
    bool has_class(const std::string& id) const;

    /// h-inverse: the origin set of a class.
    const StateSet& origins(int cls) const { return classes_[cls].members; }
    const StateSet& h_inverse(const std::string& id) const;

    const std::vector<int>& invisible_vars() const { return invisible_; }
    const std::vector<int>& visible_vars() const { return visible_; }

    /// Shared visible valuation of a class as (var name, value name)
    /// pairs in variable declaration order.
    std::vector<std::pair<std::string, std::string>> label_of(
        int cls, const KripkeStructure& K) const;

    int num_model_states() const { return static_cast<int>(class_of_.size()); }

    size_t max_fiber_size() const;

    /// Replace one class by the given nonempty parts (in order). Part
    /// ids are synthesized as `<old id>.<suffix>` and uniquified if
    /// needed. Used by refinement; parts must partition the old class.
    AbstractionMap split_class(
        int cls,
        const std::vector<std::pair<std::string, StateSet>>& parts) const;

private:
    AbstractionMap() = default;
    void rebuild_index();
    std::string unique_id(const std::string& base) const;

    std::vector<int> invisible_; // var indices, sorted
    std::vector<int> visible_;   // complement, sorted
    std::vector<AbstractClass> classes_;
    std::vector<int> class_of_;
    std::map<std::string, int> index_of_;
};

/// Existential abstraction of K under a map: one state per class,
/// transition (a,b) iff some pair of origins has a concrete transition,
/// initial iff the class meets K.initial().
struct AbstractState {
    std::string id;
    StateSet origins;
    std::vector<std::pair<std::string, std::string>> label;
    int generation = 0;
};

struct AbstractModel {
    std::vector<AbstractState> states;
    StateSet initial; // class indices
    std::vector<std::pair<int, int>> transitions; // sorted, unique
    std::vector<std::vector<int>> succ;
    std::vector<std::vector<int>> pred;
    std::map<std::string, int> id_index;

    int num_states() const { return static_cast<int>(states.size()); }
    int index(const std::string& id) const;
    bool has_transition(int from, int to) const;
};

AbstractModel build_abstract_model(const KripkeStructure& K,
                                   const AbstractionMap& map);

/// Emit an abstract model in the model file format: visible variables
/// only, abstract ids as state ids. The dump parses back into a Kripke
/// structure isomorphic to the abstract transition graph.
std::string dump_abstract_model(const KripkeStructure& K,
                                const AbstractionMap& map,
                                const AbstractModel& model);

} // namespace spur
