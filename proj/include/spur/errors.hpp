#pragma once

#include <stdexcept>
#include <string>

namespace spur {

/// Error raised while reading a model or path document. Carries the
/// 1-based line number of the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Semantic misuse of a model or abstraction: unknown state ids,
/// mismatched maps, invalid counterexamples.
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& message)
        : std::runtime_error(message) {}
};

/// A property formula referred to a variable that is unknown or not
/// visible under the current abstraction.
class PropertyError : public std::runtime_error {
public:
    explicit PropertyError(const std::string& message)
        : std::runtime_error(message) {}
};

/// A refinement split produced fewer than two nonempty classes, so the
/// abstraction cannot make progress at that state.
class DegenerateSplitError : public std::runtime_error {
public:
    explicit DegenerateSplitError(const std::string& message)
        : std::runtime_error(message) {}
};

} // namespace spur
