#include "spur/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "spur/errors.hpp"

namespace spur {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok)
        tokens.push_back(tok);
    return tokens;
}

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

} // namespace

KripkeStructure KripkeStructure::parse(const std::string& text) {
    KripkeStructure k;
    std::set<std::pair<int, int>> seen_trans;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool saw_state = false;

    while (std::getline(in, raw)) {
        ++line_no;
        auto tokens = tokenize(strip_comment(raw));
        if (tokens.empty())
            continue;
        const std::string& head = tokens[0];

        if (head == "var") {
            if (saw_state)
                throw ParseError(line_no, "variable declared after first state");
            if (tokens.size() < 4 || tokens[2] != ":")
                throw ParseError(line_no,
                                 "expected 'var <name> : <val> <val> ...'");
            const std::string& name = tokens[1];
            if (name.find('=') != std::string::npos)
                throw ParseError(line_no, "variable name must not contain '='");
            if (k.var_index_.count(name))
                throw ParseError(line_no, "duplicate variable '" + name + "'");
            VarDecl decl{name, {tokens.begin() + 3, tokens.end()}};
            std::set<std::string> values;
            for (const auto& v : decl.domain)
                if (!values.insert(v).second)
                    throw ParseError(line_no, "duplicate value '" + v +
                                                  "' in domain of '" + name +
                                                  "'");
            k.var_index_[name] = static_cast<int>(k.vars_.size());
            k.vars_.push_back(std::move(decl));
        } else if (head == "state") {
            saw_state = true;
            if (tokens.size() < 2)
                throw ParseError(line_no, "expected 'state <id> <name>=<val> ...'");
            const std::string& id = tokens[1];
            if (k.state_index_.count(id))
                throw ParseError(line_no, "duplicate state id '" + id + "'");
            std::vector<int> valuation(k.vars_.size(), -1);
            for (size_t t = 2; t < tokens.size(); ++t) {
                auto eq = tokens[t].find('=');
                if (eq == std::string::npos)
                    throw ParseError(line_no, "expected '<name>=<val>', got '" +
                                                  tokens[t] + "'");
                std::string name = tokens[t].substr(0, eq);
                std::string value = tokens[t].substr(eq + 1);
                auto vi = k.var_index_.find(name);
                if (vi == k.var_index_.end())
                    throw ParseError(line_no,
                                     "undeclared variable '" + name + "'");
                const VarDecl& decl = k.vars_[vi->second];
                auto dv = std::find(decl.domain.begin(), decl.domain.end(),
                                    value);
                if (dv == decl.domain.end())
                    throw ParseError(line_no, "undeclared value '" + value +
                                                  "' for variable '" + name +
                                                  "'");
                if (valuation[vi->second] != -1)
                    throw ParseError(line_no, "variable '" + name +
                                                  "' assigned twice");
                valuation[vi->second] =
                    static_cast<int>(dv - decl.domain.begin());
            }
            for (size_t v = 0; v < k.vars_.size(); ++v)
                if (valuation[v] == -1)
                    throw ParseError(line_no, "state '" + id +
                                                  "' does not assign variable '" +
                                                  k.vars_[v].name + "'");
            k.state_index_[id] = static_cast<int>(k.states_.size());
            k.states_.push_back({id, std::move(valuation)});
        } else if (head == "init") {
            if (tokens.size() < 2)
                throw ParseError(line_no, "expected 'init <id>'");
            for (size_t t = 1; t < tokens.size(); ++t) {
                auto it = k.state_index_.find(tokens[t]);
                if (it == k.state_index_.end())
                    throw ParseError(line_no,
                                     "unknown state id '" + tokens[t] + "'");
                set_insert(k.initial_, it->second);
            }
        } else if (head == "trans") {
            if (tokens.size() != 3)
                throw ParseError(line_no, "expected 'trans <from> <to>'");
            auto from = k.state_index_.find(tokens[1]);
            if (from == k.state_index_.end())
                throw ParseError(line_no,
                                 "unknown state id '" + tokens[1] + "'");
            auto to = k.state_index_.find(tokens[2]);
            if (to == k.state_index_.end())
                throw ParseError(line_no,
                                 "unknown state id '" + tokens[2] + "'");
            std::pair<int, int> edge{from->second, to->second};
            if (seen_trans.insert(edge).second)
                k.transitions_.push_back(edge);
        } else {
            throw ParseError(line_no, "unknown directive '" + head + "'");
        }
    }

    if (k.initial_.empty())
        throw ParseError(line_no, "missing init declaration");
    k.finalize();
    return k;
}

KripkeStructure KripkeStructure::make(
    std::vector<VarDecl> vars,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& states,
    const std::vector<std::string>& initial_ids,
    const std::vector<std::pair<std::string, std::string>>& transition_ids) {
    KripkeStructure k;
    k.vars_ = std::move(vars);
    for (size_t v = 0; v < k.vars_.size(); ++v) {
        if (k.var_index_.count(k.vars_[v].name))
            throw ModelError("duplicate variable '" + k.vars_[v].name + "'");
        k.var_index_[k.vars_[v].name] = static_cast<int>(v);
    }
    for (const auto& [id, values] : states) {
        if (k.state_index_.count(id))
            throw ModelError("duplicate state id '" + id + "'");
        if (values.size() != k.vars_.size())
            throw ModelError("state '" + id + "' has wrong valuation arity");
        std::vector<int> valuation(k.vars_.size());
        for (size_t v = 0; v < values.size(); ++v) {
            const auto& domain = k.vars_[v].domain;
            auto it = std::find(domain.begin(), domain.end(), values[v]);
            if (it == domain.end())
                throw ModelError("undeclared value '" + values[v] +
                                 "' for variable '" + k.vars_[v].name + "'");
            valuation[v] = static_cast<int>(it - domain.begin());
        }
        k.state_index_[id] = static_cast<int>(k.states_.size());
        k.states_.push_back({id, std::move(valuation)});
    }
    for (const auto& id : initial_ids)
        set_insert(k.initial_, k.state_index(id));
    std::set<std::pair<int, int>> seen;
    for (const auto& [from, to] : transition_ids) {
        std::pair<int, int> edge{k.state_index(from), k.state_index(to)};
        if (seen.insert(edge).second)
            k.transitions_.push_back(edge);
    }
    if (k.initial_.empty())
        throw ModelError("initial state set must be nonempty");
    k.finalize();
    return k;
}

void KripkeStructure::finalize() {
    succ_.assign(states_.size(), {});
    pred_.assign(states_.size(), {});
    for (const auto& [from, to] : transitions_) {
        succ_[from].push_back(to);
        pred_[to].push_back(from);
    }
    for (auto& list : succ_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    for (auto& list : pred_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    deadlocks_ = compute_deadlocks();
}

StateSet KripkeStructure::compute_deadlocks() const {
    std::vector<bool> has_out(states_.size(), false);
    for (const auto& [from, to] : transitions_) {
        (void)to;
        has_out[from] = true;
    }
    StateSet f;
    for (int s = 0; s < num_states(); ++s)
        if (!has_out[s])
            f.push_back(s);
    return f;
}

int KripkeStructure::state_index(const std::string& id) const {
    auto it = state_index_.find(id);
    if (it == state_index_.end())
        throw ModelError("unknown state id '" + id + "'");
    return it->second;
}

bool KripkeStructure::has_state(const std::string& id) const {
    return state_index_.count(id) != 0;
}

int KripkeStructure::var_index(const std::string& name) const {
    auto it = var_index_.find(name);
    if (it == var_index_.end())
        throw ModelError("unknown variable '" + name + "'");
    return it->second;
}

std::vector<std::string> KripkeStructure::successors(
    const std::string& id) const {
    int s = state_index(id);
    std::vector<std::string> out;
    out.reserve(succ_[s].size());
    for (int t : succ_[s])
        out.push_back(states_[t].id);
    std::sort(out.begin(), out.end());
    return out;
}

const std::string& KripkeStructure::value_of(int state, int var) const {
    return vars_[var].domain[states_[state].valuation[var]];
}

std::string KripkeStructure::render() const {
    std::ostringstream out;
    for (const auto& var : vars_) {
        out << "var " << var.name << " :";
        for (const auto& v : var.domain)
            out << ' ' << v;
        out << '\n';
    }
    for (const auto& state : states_) {
        out << "state " << state.id;
        for (size_t v = 0; v < vars_.size(); ++v)
            out << ' ' << vars_[v].name << '='
                << vars_[v].domain[state.valuation[v]];
        out << '\n';
    }
    for (int s : initial_)
        out << "init " << states_[s].id << '\n';
    for (const auto& [from, to] : transitions_)
        out << "trans " << states_[from].id << ' ' << states_[to].id << '\n';
    return out.str();
}

KripkeStructure KripkeStructure::with_transitions(
    std::vector<std::pair<int, int>> transitions) const {
    KripkeStructure k;
    k.vars_ = vars_;
    k.states_ = states_;
    k.initial_ = initial_;
    k.state_index_ = state_index_;
    k.var_index_ = var_index_;
    std::set<std::pair<int, int>> seen;
    for (const auto& edge : transitions) {
        if (edge.first < 0 || edge.first >= num_states() || edge.second < 0 ||
            edge.second >= num_states())
            throw ModelError("transition endpoint out of range");
        if (seen.insert(edge).second)
            k.transitions_.push_back(edge);
    }
    k.finalize();
    return k;
}

bool KripkeStructure::operator==(const KripkeStructure& other) const {
    return vars_ == other.vars_ && states_ == other.states_ &&
           initial_ == other.initial_ && transitions_ == other.transitions_;
}

} // namespace spur
