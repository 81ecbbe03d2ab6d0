#include "sliver/tree.hpp"

#include <algorithm>

#include "sliver/error.hpp"

namespace sliver {

std::optional<std::size_t> component_index(const Directions& dirs, const std::string& name) {
    for (std::size_t i = 0; i < dirs.size(); ++i)
        if (dirs[i].name == name) return i;
    return std::nullopt;
}

std::size_t direction_count(const Directions& dirs) {
    std::size_t n = 1;
    for (const auto& c : dirs) n *= c.values.size();
    return n;
}

std::vector<Direction> enumerate_directions(const Directions& dirs) {
    std::vector<Direction> out;
    for (const auto& c : dirs)
        if (c.values.empty()) return out;
    std::vector<std::size_t> idx(dirs.size(), 0);
    while (true) {
        Direction d;
        d.reserve(dirs.size());
        for (std::size_t i = 0; i < dirs.size(); ++i) d.push_back(dirs[i].values[idx[i]]);
        out.push_back(std::move(d));
        std::size_t pos = idx.size();
        while (pos > 0 && idx[pos - 1] + 1 == dirs[pos - 1].values.size()) idx[--pos] = 0;
        if (pos == 0) break;
        ++idx[pos - 1];
    }
    return out;
}

bool direction_valid(const Directions& dirs, const Direction& d) {
    if (d.size() != dirs.size()) return false;
    for (std::size_t i = 0; i < dirs.size(); ++i)
        if (std::find(dirs[i].values.begin(), dirs[i].values.end(), d[i]) ==
            dirs[i].values.end())
            return false;
    return true;
}

std::string direction_key(const Direction& d) {
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) out += '|';
        out += d[i];
    }
    return out;
}

Direction parse_direction_key(const std::string& key, std::size_t arity) {
    Direction out;
    if (arity == 0) {
        if (!key.empty()) fail_schema("direction key for empty product must be empty");
        return out;
    }
    std::size_t start = 0;
    while (true) {
        std::size_t bar = key.find('|', start);
        if (bar == std::string::npos) {
            out.push_back(key.substr(start));
            break;
        }
        out.push_back(key.substr(start, bar - start));
        start = bar + 1;
    }
    if (out.size() != arity)
        fail_schema("direction key '" + key + "' has arity " + std::to_string(out.size()) +
                    ", expected " + std::to_string(arity));
    return out;
}

std::vector<std::string> validate_tree(const RegularTree& t) {
    std::vector<std::string> out;
    if (t.gen_states.empty()) {
        out.push_back("no generator states");
        return out;
    }
    if (t.root_state >= t.gen_states.size()) out.push_back("root state out of range");
    if (t.labels.size() != t.gen_states.size())
        out.push_back("label table size != generator state count");
    for (const auto& c : t.dirs)
        if (c.values.empty()) out.push_back("direction component " + c.name + " has no values");
    if (!direction_valid(t.dirs, t.root_dir)) out.push_back("root direction not in the product");
    auto all = enumerate_directions(t.dirs);
    for (std::size_t g = 0; g < t.gen_states.size(); ++g) {
        for (const auto& d : all) {
            auto it = t.succ.find({g, direction_key(d)});
            if (it == t.succ.end()) {
                out.push_back("successor missing at (" + t.gen_states[g] + ", " +
                              direction_key(d) + ")");
            } else if (it->second >= t.gen_states.size()) {
                out.push_back("successor out of range at (" + t.gen_states[g] + ", " +
                              direction_key(d) + ")");
            }
        }
    }
    for (const auto& [key, val] : t.succ) {
        if (key.first >= t.gen_states.size()) out.push_back("successor from unknown state");
        if (val >= t.gen_states.size()) out.push_back("successor to unknown state");
    }
    return out;
}

std::size_t tree_state_at(const RegularTree& t, const std::vector<Direction>& node) {
    std::size_t g = t.root_state;
    for (const auto& d : node) {
        if (!direction_valid(t.dirs, d)) fail_precondition("node uses an invalid direction");
        auto it = t.succ.find({g, direction_key(d)});
        if (it == t.succ.end()) fail_precondition("tree generator is not total");
        g = it->second;
    }
    return g;
}

RegularTree widen_tree(const RegularTree& t, const Directions& dirs, const Direction& root_fill) {
    // Positions of the original components inside the wider product.
    std::vector<std::optional<std::size_t>> from(dirs.size());
    std::vector<bool> used(t.dirs.size(), false);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        auto j = component_index(t.dirs, dirs[i].name);
        if (!j) continue;
        if (dirs[i].values != t.dirs[*j].values)
            fail_precondition("widen: component " + dirs[i].name + " has different values");
        from[i] = *j;
        used[*j] = true;
    }
    for (std::size_t j = 0; j < t.dirs.size(); ++j)
        if (!used[j]) fail_precondition("widen: component " + t.dirs[j].name + " not kept");
    if (root_fill.size() != dirs.size()) fail_precondition("widen: bad root direction arity");

    RegularTree out;
    out.dirs = dirs;
    out.gen_states = t.gen_states;
    out.root_state = t.root_state;
    out.labels = t.labels;
    Direction root = root_fill;
    for (std::size_t i = 0; i < dirs.size(); ++i)
        if (from[i]) root[i] = t.root_dir[*from[i]];
    if (!direction_valid(dirs, root)) fail_precondition("widen: root direction not in product");
    out.root_dir = std::move(root);
    for (const auto& d : enumerate_directions(dirs)) {
        Direction inner(t.dirs.size());
        for (std::size_t i = 0; i < dirs.size(); ++i)
            if (from[i]) inner[*from[i]] = d[i];
        for (std::size_t g = 0; g < t.gen_states.size(); ++g) {
            auto it = t.succ.find({g, direction_key(inner)});
            if (it == t.succ.end()) fail_precondition("widen: input generator not total");
            out.succ[{g, direction_key(d)}] = it->second;
        }
    }
    return out;
}

RegularTree full_tree(Directions dirs, Direction root) {
    RegularTree t;
    t.dirs = std::move(dirs);
    t.gen_states = {"g0"};
    t.root_state = 0;
    t.root_dir = std::move(root);
    t.labels = {{}};
    for (const auto& d : enumerate_directions(t.dirs)) t.succ[{0, direction_key(d)}] = 0;
    return t;
}

}  // namespace sliver
