#include "spur/checker.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "spur/errors.hpp"
#include "spur/graph.hpp"

namespace spur {

namespace {

struct Token {
    enum class Kind { ident, bang, amp, pipe, lparen, rparen, equals, end };
    Kind kind;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        while (pos_ < text_.size() && std::isspace(
                   static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ >= text_.size())
            return {Token::Kind::end, ""};
        char c = text_[pos_];
        switch (c) {
        case '!': ++pos_; return {Token::Kind::bang, "!"};
        case '&': ++pos_; return {Token::Kind::amp, "&"};
        case '|': ++pos_; return {Token::Kind::pipe, "|"};
        case '(': ++pos_; return {Token::Kind::lparen, "("};
        case ')': ++pos_; return {Token::Kind::rparen, ")"};
        case '=': ++pos_; return {Token::Kind::equals, "="};
        default: break;
        }
        size_t start = pos_;
        while (pos_ < text_.size() &&
               std::string("!&|()=").find(text_[pos_]) == std::string::npos &&
               !std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return {Token::Kind::ident, text_.substr(start, pos_ - start)};
    }

private:
    const std::string& text_;
    size_t pos_ = 0;
};

class FormulaParser {
public:
    explicit FormulaParser(const std::string& text)
        : lexer_(text) {
        advance();
    }

    Formula parse() {
        Formula f = parse_or();
        if (current_.kind != Token::Kind::end)
            throw PropertyError("unexpected token '" + current_.text +
                                "' in formula");
        return f;
    }

private:
    void advance() { current_ = lexer_.next(); }

    Formula parse_or() {
        Formula f = parse_and();
        while (current_.kind == Token::Kind::pipe) {
            advance();
            Formula node;
            node.kind = Formula::Kind::disjunction;
            node.children.push_back(std::move(f));
            node.children.push_back(parse_and());
            f = std::move(node);
        }
        return f;
    }

    Formula parse_and() {
        Formula f = parse_unary();
        while (current_.kind == Token::Kind::amp) {
            advance();
            Formula node;
            node.kind = Formula::Kind::conjunction;
            node.children.push_back(std::move(f));
            node.children.push_back(parse_unary());
            f = std::move(node);
        }
        return f;
    }

    Formula parse_unary() {
        if (current_.kind == Token::Kind::bang) {
            advance();
            Formula node;
            node.kind = Formula::Kind::negation;
            node.children.push_back(parse_unary());
            return node;
        }
        if (current_.kind == Token::Kind::lparen) {
            advance();
            Formula f = parse_or();
            if (current_.kind != Token::Kind::rparen)
                throw PropertyError("expected ')' in formula");
            advance();
            return f;
        }
        if (current_.kind != Token::Kind::ident)
            throw PropertyError("expected atom '<var>=<value>' in formula");
        Formula atom;
        atom.kind = Formula::Kind::atom;
        atom.var = current_.text;
        advance();
        if (current_.kind != Token::Kind::equals)
            throw PropertyError("expected '=' after variable '" + atom.var +
                                "'");
        advance();
        if (current_.kind != Token::Kind::ident)
            throw PropertyError("expected value after '" + atom.var + "='");
        atom.value = current_.text;
        advance();
        return atom;
    }

    Lexer lexer_;
    Token current_;
};

} // namespace

Formula parse_formula(const std::string& text) {
    return FormulaParser(text).parse();
}

Property parse_property(const std::string& text) {
    size_t start = text.find_first_not_of(" \t");
    if (start == std::string::npos || text.size() < start + 2)
        throw PropertyError("expected 'AG <formula>' or 'GF <formula>'");
    std::string head = text.substr(start, 2);
    Property p;
    if (head == "AG")
        p.kind = PropertyKind::invariant;
    else if (head == "GF")
        p.kind = PropertyKind::recurrence;
    else
        throw PropertyError("property must start with AG or GF");
    p.formula = parse_formula(text.substr(start + 2));
    p.text = text;
    return p;
}

std::string render_formula(const Formula& f) {
    switch (f.kind) {
    case Formula::Kind::atom:
        return f.var + "=" + f.value;
    case Formula::Kind::negation:
        return "!(" + render_formula(f.children[0]) + ")";
    case Formula::Kind::conjunction:
        return "(" + render_formula(f.children[0]) + " & " +
               render_formula(f.children[1]) + ")";
    case Formula::Kind::disjunction:
        return "(" + render_formula(f.children[0]) + " | " +
               render_formula(f.children[1]) + ")";
    }
    return "";
}

bool eval_formula(const Formula& f,
                  const std::function<std::optional<std::string>(
                      const std::string&)>& lookup) {
    switch (f.kind) {
    case Formula::Kind::atom: {
        auto value = lookup(f.var);
        if (!value)
            throw PropertyError("formula refers to variable '" + f.var +
                                "' which is not visible here");
        return *value == f.value;
    }
    case Formula::Kind::negation:
        return !eval_formula(f.children[0], lookup);
    case Formula::Kind::conjunction:
        return eval_formula(f.children[0], lookup) &&
               eval_formula(f.children[1], lookup);
    case Formula::Kind::disjunction:
        return eval_formula(f.children[0], lookup) ||
               eval_formula(f.children[1], lookup);
    }
    return false;
}

bool eval_prop(const AbstractModel& model, int cls, const Formula& f) {
    const auto& label = model.states[cls].label;
    return eval_formula(f, [&](const std::string& var)
                               -> std::optional<std::string> {
        for (const auto& [name, value] : label)
            if (name == var)
                return value;
        return std::nullopt;
    });
}

bool eval_concrete(const KripkeStructure& K, int state, const Formula& f) {
    return eval_formula(f, [&](const std::string& var)
                               -> std::optional<std::string> {
        for (size_t v = 0; v < K.vars().size(); ++v)
            if (K.vars()[v].name == var)
                return K.value_of(state, static_cast<int>(v));
        return std::nullopt;
    });
}

namespace {

/// Class indices sorted by abstract id; all searches explore in this
/// order so results are deterministic.
std::vector<int> id_sorted(const AbstractModel& model,
                           const std::vector<int>& classes) {
    std::vector<int> sorted = classes;
    std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
        return model.states[a].id < model.states[b].id;
    });
    return sorted;
}

std::vector<std::string> to_ids(const AbstractModel& model,
                                const std::vector<int>& classes) {
    std::vector<std::string> ids;
    ids.reserve(classes.size());
    for (int c : classes)
        ids.push_back(model.states[c].id);
    return ids;
}

} // namespace

std::optional<Counterexample> find_invariant_counterexample(
    const AbstractModel& model, const Formula& f) {
    std::vector<int> parent(model.num_states(), -2);
    std::deque<int> queue;
    for (int c : id_sorted(model, {model.initial.begin(), model.initial.end()})) {
        parent[c] = -1;
        queue.push_back(c);
    }
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (!eval_prop(model, u, f)) {
            std::vector<int> path;
            for (int c = u; c != -1; c = parent[c])
                path.push_back(c);
            std::reverse(path.begin(), path.end());
            Counterexample ce;
            ce.kind = PathKind::finite;
            ce.states = to_ids(model, path);
            return ce;
        }
        for (int v : id_sorted(model, model.succ[u])) {
            if (parent[v] == -2) {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    return std::nullopt;
}

std::optional<Counterexample> find_recurrence_counterexample(
    const AbstractModel& model, const Formula& f) {
    const int n = model.num_states();

    // Evaluate once per abstract state; the loop must avoid f-states.
    std::vector<bool> avoid(n);
    for (int c = 0; c < n; ++c)
        avoid[c] = !eval_prop(model, c, f);

    std::vector<bool> reachable(n, false);
    {
        std::deque<int> queue;
        for (int c : model.initial) {
            reachable[c] = true;
            queue.push_back(c);
        }
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : model.succ[u])
                if (!reachable[v]) {
                    reachable[v] = true;
                    queue.push_back(v);
                }
        }
    }

    // Cycle search restricted to reachable avoid-states.
    std::vector<std::vector<int>> restricted(n);
    for (const auto& [from, to] : model.transitions)
        if (reachable[from] && reachable[to] && avoid[from] && avoid[to])
            restricted[from].push_back(to);

    auto components = strongly_connected_components(restricted);
    std::vector<int> scc_of(n, -1);
    std::vector<int> scc_sizes(components.size(), 0);
    for (size_t c = 0; c < components.size(); ++c) {
        scc_sizes[c] = static_cast<int>(components[c].size());
        for (int node : components[c])
            scc_of[node] = static_cast<int>(c);
    }

    int target = -1;
    for (int c = 0; c < n; ++c) {
        if (!reachable[c] || !avoid[c])
            continue;
        if (!on_cycle(restricted, scc_of, c, scc_sizes))
            continue;
        if (target == -1 || model.states[c].id < model.states[target].id)
            target = c;
    }
    if (target == -1)
        return std::nullopt;

    // Stem: shortest path from an initial state to the target over the
    // full abstract graph.
    std::vector<int> parent(n, -2);
    std::deque<int> queue;
    for (int c : id_sorted(model, {model.initial.begin(), model.initial.end()})) {
        parent[c] = -1;
        queue.push_back(c);
    }
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u == target)
            break;
        for (int v : id_sorted(model, model.succ[u]))
            if (parent[v] == -2) {
                parent[v] = u;
                queue.push_back(v);
            }
    }
    std::vector<int> stem;
    for (int c = target; c != -1; c = parent[c])
        stem.push_back(c);
    std::reverse(stem.begin(), stem.end());

    // Loop: shortest cycle through the target inside the restricted
    // graph (a self-loop gives a loop of length one).
    std::vector<int> cycle{target};
    bool self_loop = std::find(restricted[target].begin(),
                               restricted[target].end(),
                               target) != restricted[target].end();
    if (!self_loop) {
        std::vector<int> loop_parent(n, -2);
        std::deque<int> loop_queue;
        for (int v : id_sorted(model, restricted[target])) {
            if (loop_parent[v] == -2) {
                loop_parent[v] = -1;
                loop_queue.push_back(v);
            }
        }
        int closer = -1;
        while (!loop_queue.empty() && closer == -1) {
            int u = loop_queue.front();
            loop_queue.pop_front();
            if (std::find(restricted[u].begin(), restricted[u].end(),
                          target) != restricted[u].end()) {
                closer = u;
                break;
            }
            for (int v : id_sorted(model, restricted[u]))
                if (loop_parent[v] == -2) {
                    loop_parent[v] = u;
                    loop_queue.push_back(v);
                }
        }
        std::vector<int> tail;
        for (int c = closer; c != -1; c = loop_parent[c])
            tail.push_back(c);
        std::reverse(tail.begin(), tail.end());
        cycle.insert(cycle.end(), tail.begin(), tail.end());
    }

    Counterexample ce;
    ce.kind = PathKind::lasso;
    std::vector<int> all = stem;
    all.insert(all.end(), cycle.begin() + 1, cycle.end());
    ce.states = to_ids(model, all);
    ce.loop_start = stem.size() - 1;
    return ce;
}

std::optional<Counterexample> check_property(const AbstractModel& model,
                                             const Property& property) {
    return property.kind == PropertyKind::invariant
               ? find_invariant_counterexample(model, property.formula)
               : find_recurrence_counterexample(model, property.formula);
}

} // namespace spur
