#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spur/abstraction.hpp"

namespace spur {

enum class PathKind { finite, lasso };

/// An abstract counterexample: a finite path, or a lasso whose loop is
/// states[loop_start..] repeated forever. States are referenced by
/// abstract-state id so the detectors stay decoupled from the checker.
///
/// Path file format, one path per line:
///   finite: id id id ...
///   lasso:  id id ( id id ... )     parenthesized suffix is the loop
struct Counterexample {
    PathKind kind = PathKind::finite;
    std::vector<std::string> states;
    size_t loop_start = 0; // meaningful for lassos only

    bool operator==(const Counterexample&) const = default;
};

/// Complete finite prefix of a counterexample: the state sequence
/// listed once, with the convention that a lasso's last state has the
/// loop-start state as its successor.
struct CFPView {
    std::vector<std::string> states;
    std::optional<size_t> loop_start;
    std::optional<std::string> successor_of_last;

    size_t length() const { return states.size(); }
};

/// Check every structural invariant of `ce` against the abstract model:
/// nonempty, known ids, initial start, consecutive transitions, and the
/// loop-back edge for lassos. Throws ModelError describing the first
/// violation (with the position for missing transitions).
void validate_counterexample(const AbstractModel& model,
                             const Counterexample& ce);

CFPView cfp(const Counterexample& ce);

Counterexample parse_path_line(const std::string& line, int line_no = 1);
std::vector<Counterexample> parse_path_file(const std::string& text);
std::string render_path(const Counterexample& ce);

} // namespace spur
