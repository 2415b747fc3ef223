#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spur/abstraction.hpp"
#include "spur/counterexample.hpp"

namespace spur {

/// Boolean formula over variable atoms. Grammar (loosest binding
/// first):  or := and ('|' and)*   and := unary ('&' unary)*
///          unary := '!' unary | '(' or ')' | atom
///          atom := <var> '=' <value>
struct Formula {
    enum class Kind { atom, negation, conjunction, disjunction };

    Kind kind = Kind::atom;
    std::string var;   // atom
    std::string value; // atom
    std::vector<Formula> children;
};

enum class PropertyKind { invariant, recurrence }; // AG f, GF f

struct Property {
    PropertyKind kind = PropertyKind::invariant;
    Formula formula;
    std::string text; // original source, for reports
};

Formula parse_formula(const std::string& text);

/// Parse "AG <formula>" or "GF <formula>".
Property parse_property(const std::string& text);

std::string render_formula(const Formula& f);

/// Evaluate against any valuation. The lookup returns the value of a
/// variable or nullopt; nullopt makes evaluation throw PropertyError
/// (this is the refinement-safety check for abstract labels).
bool eval_formula(const Formula& f,
                  const std::function<std::optional<std::string>(
                      const std::string&)>& lookup);

/// Evaluate over the visible label of an abstract state.
bool eval_prop(const AbstractModel& model, int cls, const Formula& f);

/// Evaluate over the full valuation of a concrete state.
bool eval_concrete(const KripkeStructure& K, int state, const Formula& f);

/// Shortest abstract path from an initial state to a state violating f,
/// or nullopt when every reachable state satisfies f. Deterministic:
/// breadth-first search in lexicographic id order.
std::optional<Counterexample> find_invariant_counterexample(
    const AbstractModel& model, const Formula& f);

/// A lasso whose loop contains no f-state (the stem may pass through
/// f-states), or nullopt when no such lasso exists. Such a lasso is
/// exactly a violation of "infinitely often f". Deterministic.
std::optional<Counterexample> find_recurrence_counterexample(
    const AbstractModel& model, const Formula& f);

/// Dispatch on the property kind; nullopt means verified.
std::optional<Counterexample> check_property(const AbstractModel& model,
                                             const Property& property);

} // namespace spur
