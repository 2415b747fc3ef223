#include "spur/counterexample.hpp"

#include <sstream>

#include "spur/errors.hpp"

namespace spur {

void validate_counterexample(const AbstractModel& model,
                             const Counterexample& ce) {
    if (ce.states.empty())
        throw ModelError("counterexample is empty");
    if (ce.kind == PathKind::lasso && ce.loop_start >= ce.states.size())
        throw ModelError("loop start out of range");

    std::vector<int> indices;
    indices.reserve(ce.states.size());
    for (const auto& id : ce.states)
        indices.push_back(model.index(id));

    if (!set_contains(model.initial, indices.front()))
        throw ModelError("counterexample does not start in an initial state");
    for (size_t k = 0; k + 1 < indices.size(); ++k)
        if (!model.has_transition(indices[k], indices[k + 1]))
            throw ModelError("no abstract transition at position " +
                             std::to_string(k));
    if (ce.kind == PathKind::lasso &&
        !model.has_transition(indices.back(), indices[ce.loop_start]))
        throw ModelError("loop-back transition missing");
}

CFPView cfp(const Counterexample& ce) {
    CFPView view;
    view.states = ce.states;
    if (ce.kind == PathKind::lasso) {
        view.loop_start = ce.loop_start;
        view.successor_of_last = ce.states[ce.loop_start];
    }
    return view;
}

Counterexample parse_path_line(const std::string& line, int line_no) {
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok)
        tokens.push_back(tok);
    if (tokens.empty())
        throw ParseError(line_no, "empty path");

    Counterexample ce;
    if (tokens[0] == "finite:") {
        ce.kind = PathKind::finite;
        for (size_t t = 1; t < tokens.size(); ++t)
            ce.states.push_back(tokens[t]);
        if (ce.states.empty())
            throw ParseError(line_no, "finite path has no states");
        return ce;
    }
    if (tokens[0] != "lasso:")
        throw ParseError(line_no, "expected 'finite:' or 'lasso:'");

    ce.kind = PathKind::lasso;
    size_t t = 1;
    while (t < tokens.size() && tokens[t] != "(")
        ce.states.push_back(tokens[t++]);
    if (t == tokens.size())
        throw ParseError(line_no, "lasso path has no loop '( ... )'");
    ce.loop_start = ce.states.size();
    ++t; // consume '('
    while (t < tokens.size() && tokens[t] != ")")
        ce.states.push_back(tokens[t++]);
    if (t == tokens.size())
        throw ParseError(line_no, "unterminated loop, expected ')'");
    if (t + 1 != tokens.size())
        throw ParseError(line_no, "trailing tokens after ')'");
    if (ce.loop_start == ce.states.size())
        throw ParseError(line_no, "lasso loop is empty");
    return ce;
}

std::vector<Counterexample> parse_path_file(const std::string& text) {
    std::vector<Counterexample> paths;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto pos = raw.find('#');
        std::string line = pos == std::string::npos ? raw : raw.substr(0, pos);
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (blank)
            continue;
        paths.push_back(parse_path_line(line, line_no));
    }
    return paths;
}

std::string render_path(const Counterexample& ce) {
    std::ostringstream out;
    if (ce.kind == PathKind::finite) {
        out << "finite:";
        for (const auto& id : ce.states)
            out << ' ' << id;
        return out.str();
    }
    out << "lasso:";
    for (size_t k = 0; k < ce.loop_start; ++k)
        out << ' ' << ce.states[k];
    out << " (";
    for (size_t k = ce.loop_start; k < ce.states.size(); ++k)
        out << ' ' << ce.states[k];
    out << " )";
    return out.str();
}

} // namespace spur
