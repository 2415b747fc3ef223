#include "spur/abstraction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "spur/errors.hpp"

namespace spur {

AbstractionMap AbstractionMap::build(
    const KripkeStructure& K, const std::vector<std::string>& invisible_names) {
    AbstractionMap m;
    std::set<int> invisible;
    for (const auto& name : invisible_names)
        invisible.insert(K.var_index(name));
    m.invisible_.assign(invisible.begin(), invisible.end());
    for (int v = 0; v < static_cast<int>(K.vars().size()); ++v)
        if (!invisible.count(v))
            m.visible_.push_back(v);

    // One class per visible-valuation signature, ordered by first
    // occurrence in state declaration order.
    std::map<std::vector<int>, int> class_of_signature;
    m.class_of_.assign(K.num_states(), -1);
    std::set<std::string> used_ids;
    for (int s = 0; s < K.num_states(); ++s) {
        std::vector<int> signature;
        signature.reserve(m.visible_.size());
        for (int v : m.visible_)
            signature.push_back(K.states()[s].valuation[v]);
        auto it = class_of_signature.find(signature);
        if (it == class_of_signature.end()) {
            std::string base;
            for (size_t i = 0; i < m.visible_.size(); ++i) {
                if (i > 0)
                    base += '.';
                base += K.vars()[m.visible_[i]].domain[signature[i]];
            }
            if (base.empty())
                base = "top";
            std::string id = base;
            for (int n = 2; used_ids.count(id); ++n)
                id = base + "~" + std::to_string(n);
            used_ids.insert(id);
            int index = static_cast<int>(m.classes_.size());
            m.classes_.push_back({id, {}, 0});
            it = class_of_signature.emplace(std::move(signature), index).first;
        }
        m.class_of_[s] = it->second;
        m.classes_[it->second].members.push_back(s);
    }
    m.rebuild_index();
    return m;
}

void AbstractionMap::rebuild_index() {
    index_of_.clear();
    for (int c = 0; c < class_count(); ++c)
        index_of_[classes_[c].id] = c;
}

int AbstractionMap::index_of(const std::string& id) const {
    auto it = index_of_.find(id);
    if (it == index_of_.end())
        throw ModelError("unknown abstract state '" + id + "'");
    return it->second;
}

bool AbstractionMap::has_class(const std::string& id) const {
    return index_of_.count(id) != 0;
}

const StateSet& AbstractionMap::h_inverse(const std::string& id) const {
    return classes_[index_of(id)].members;
}

std::vector<std::pair<std::string, std::string>> AbstractionMap::label_of(
    int cls, const KripkeStructure& K) const {
    std::vector<std::pair<std::string, std::string>> label;
    if (classes_[cls].members.empty())
        return label;
    int witness = classes_[cls].members.front();
    for (int v : visible_)
        label.emplace_back(K.vars()[v].name, K.value_of(witness, v));
    return label;
}

size_t AbstractionMap::max_fiber_size() const {
    size_t max = 0;
    for (const auto& cls : classes_)
        max = std::max(max, cls.members.size());
    return max;
}

std::string AbstractionMap::unique_id(const std::string& base) const {
    std::string id = base;
    for (int n = 2; index_of_.count(id); ++n)
        id = base + "~" + std::to_string(n);
    return id;
}

AbstractionMap AbstractionMap::split_class(
    int cls, const std::vector<std::pair<std::string, StateSet>>& parts) const {
    if (cls < 0 || cls >= class_count())
        throw ModelError("class index out of range");
    const AbstractClass& old = classes_[cls];
    StateSet covered;
    for (const auto& [suffix, members] : parts) {
        (void)suffix;
        if (members.empty())
            throw ModelError("split parts must be nonempty");
        if (!sets_disjoint(covered, members))
            throw ModelError("split parts overlap");
        covered = set_union(covered, members);
    }
    if (covered != old.members)
        throw ModelError("split parts must cover the class exactly");

    AbstractionMap m;
    m.invisible_ = invisible_;
    m.visible_ = visible_;
    m.class_of_ = class_of_;
    m.classes_.reserve(classes_.size() + parts.size() - 1);
    for (int c = 0; c < class_count(); ++c) {
        if (c != cls) {
            m.classes_.push_back(classes_[c]);
            continue;
        }
        for (const auto& [suffix, members] : parts) {
            AbstractClass part;
            part.id = unique_id(old.id + "." + suffix);
            part.members = members;
            part.generation = old.generation + 1;
            m.classes_.push_back(std::move(part));
        }
    }
    for (int c = 0; c < static_cast<int>(m.classes_.size()); ++c)
        for (int s : m.classes_[c].members)
            m.class_of_[s] = c;
    m.rebuild_index();
    return m;
}

AbstractModel build_abstract_model(const KripkeStructure& K,
                                   const AbstractionMap& map) {
    if (map.num_model_states() != K.num_states())
        throw ModelError("abstraction map does not match the model");
    AbstractModel m;
    m.states.reserve(map.class_count());
    for (int c = 0; c < map.class_count(); ++c) {
        const AbstractClass& cls = map.cls(c);
        m.states.push_back(
            {cls.id, cls.members, map.label_of(c, K), cls.generation});
        m.id_index[cls.id] = c;
    }
    for (int s : K.initial())
        set_insert(m.initial, map.class_of(s));

    std::set<std::pair<int, int>> lifted;
    for (const auto& [from, to] : K.transitions())
        lifted.insert({map.class_of(from), map.class_of(to)});
    m.transitions.assign(lifted.begin(), lifted.end());

    m.succ.assign(m.states.size(), {});
    m.pred.assign(m.states.size(), {});
    for (const auto& [from, to] : m.transitions) {
        m.succ[from].push_back(to);
        m.pred[to].push_back(from);
    }
    return m;
}

int AbstractModel::index(const std::string& id) const {
    auto it = id_index.find(id);
    if (it == id_index.end())
        throw ModelError("unknown abstract state '" + id + "'");
    return it->second;
}

bool AbstractModel::has_transition(int from, int to) const {
    return std::binary_search(transitions.begin(), transitions.end(),
                              std::pair<int, int>{from, to});
}

std::string dump_abstract_model(const KripkeStructure& K,
                                const AbstractionMap& map,
                                const AbstractModel& model) {
    std::ostringstream out;
    for (int v : map.visible_vars()) {
        out << "var " << K.vars()[v].name << " :";
        for (const auto& value : K.vars()[v].domain)
            out << ' ' << value;
        out << '\n';
    }
    for (const auto& state : model.states) {
        out << "state " << state.id;
        for (const auto& [name, value] : state.label)
            out << ' ' << name << '=' << value;
        out << '\n';
    }
    for (int c : model.initial)
        out << "init " << model.states[c].id << '\n';
    for (const auto& [from, to] : model.transitions)
        out << "trans " << model.states[from].id << ' ' << model.states[to].id
            << '\n';
    return out.str();
}

} // namespace spur
