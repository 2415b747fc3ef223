#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spur/sets.hpp"

namespace spur {

/// A finite-domain variable. Domain values are pairwise distinct and
/// keep their declared order.
struct VarDecl {
    std::string name;
    std::vector<std::string> domain;

    bool operator==(const VarDecl&) const = default;
};

/// A concrete state: an id plus a total valuation. valuation[v] indexes
/// into vars[v].domain of the owning structure.
struct ConcreteState {
    std::string id;
    std::vector<int> valuation;

    bool operator==(const ConcreteState&) const = default;
};

/// Explicit-state Kripke structure. Immutable after construction; safe
/// for concurrent reads.
///
/// Model file format (UTF-8, line based, `#` starts a comment, tokens
/// whitespace separated, declarations before use):
///
///   var <name> : <val> <val> ...
///   state <id> <name>=<val> ...      every declared var exactly once
///   init <id> [<id> ...]
///   trans <from> <to>
class KripkeStructure {
public:
    /// Parse a model document. Deterministic; declaration order is
    /// preserved. Throws ParseError with a line number on any defect.
    static KripkeStructure parse(const std::string& text);

    /// Assemble a structure from parts (tests, generators). Valuations
    /// are given as value names per declared variable, in order.
    static KripkeStructure make(
        std::vector<VarDecl> vars,
        const std::vector<std::pair<std::string, std::vector<std::string>>>& states,
        const std::vector<std::string>& initial_ids,
        const std::vector<std::pair<std::string, std::string>>& transition_ids);

    const std::vector<VarDecl>& vars() const { return vars_; }
    const std::vector<ConcreteState>& states() const { return states_; }
    int num_states() const { return static_cast<int>(states_.size()); }

    /// Index of a declared state id; throws ModelError if unknown.
    int state_index(const std::string& id) const;
    bool has_state(const std::string& id) const;
    const std::string& state_id(int index) const { return states_[index].id; }

    int var_index(const std::string& name) const;

    /// Initial states, sorted by declaration index. Never empty.
    const StateSet& initial() const { return initial_; }

    /// Transition pairs in first-declaration order, duplicates removed.
    const std::vector<std::pair<int, int>>& transitions() const {
        return transitions_;
    }

    const std::vector<int>& succ(int state) const { return succ_[state]; }
    const std::vector<int>& pred(int state) const { return pred_[state]; }

    /// Deadlock set F: states with no outgoing transition. Stored at
    /// construction and always equal to compute_deadlocks().
    const StateSet& deadlocks() const { return deadlocks_; }
    StateSet compute_deadlocks() const;

    /// Successor ids of a state, sorted lexicographically.
    std::vector<std::string> successors(const std::string& id) const;

    /// Value name of variable `var` in state `state`.
    const std::string& value_of(int state, int var) const;

    /// Emit the model document. parse(render()) is structurally equal
    /// to this structure.
    std::string render() const;

    /// Same states and variables, different transition relation.
    /// Deadlocks are recomputed.
    KripkeStructure with_transitions(
        std::vector<std::pair<int, int>> transitions) const;

    bool operator==(const KripkeStructure& other) const;

private:
    KripkeStructure() = default;
    void finalize();

    std::vector<VarDecl> vars_;
    std::vector<ConcreteState> states_;
    StateSet initial_;
    std::vector<std::pair<int, int>> transitions_;

    // derived
    std::vector<std::vector<int>> succ_;
    std::vector<std::vector<int>> pred_;
    StateSet deadlocks_;
    std::map<std::string, int> state_index_;
    std::map<std::string, int> var_index_;
};

} // namespace spur
