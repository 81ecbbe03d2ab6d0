#include "sliver/arena.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>

#include "sliver/error.hpp"
#include "sliver/logic.hpp"

namespace sliver {

bool ends_in_bottom(const StackWord& w) { return !w.empty() && w.back() == kBottom; }

bool contains_bottom(const StackWord& w) {
    return std::find(w.begin(), w.end(), kBottom) != w.end();
}

std::string stack_word_key(const StackWord& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += '+';
        out += w[i];
    }
    return out;
}

StackWord parse_stack_word_key(const std::string& key) {
    StackWord out;
    if (key.empty()) return out;
    std::size_t start = 0;
    while (true) {
        std::size_t plus = key.find('+', start);
        if (plus == std::string::npos) {
            out.push_back(key.substr(start));
            return out;
        }
        out.push_back(key.substr(start, plus - start));
        start = plus + 1;
    }
}

bool WordDfa::accepts(const StackWord& word) const {
    std::size_t cur = initial;
    for (const auto& sym : word) {
        auto it = delta.find({cur, sym});
        if (it == delta.end()) return false;
        cur = it->second;
    }
    return accepting.count(cur) > 0;
}

std::set<std::string> RegularLabelling::atoms() const {
    std::set<std::string> out;
    for (const auto& [key, dfa] : acceptors) out.insert(key.first);
    return out;
}

std::optional<std::size_t> Pcks::state_index(const std::string& name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].name == name) return i;
    return std::nullopt;
}

std::vector<std::string> Pcks::component_values(std::size_t i) const {
    std::set<std::string> vals;
    for (const auto& s : states)
        if (i >= 1 && i <= s.tuple.size()) vals.insert(s.tuple[i - 1]);
    return {vals.begin(), vals.end()};
}

std::vector<std::string> Pcks::full_alphabet() const {
    std::vector<std::string> out = stack_alphabet;
    out.push_back(kBottom);
    return out;
}

std::optional<std::size_t> Pga::state_index(const std::string& name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return i;
    return std::nullopt;
}

std::vector<std::string> Pga::full_alphabet() const {
    std::vector<std::string> out = stack_alphabet;
    out.push_back(kBottom);
    return out;
}

std::vector<std::vector<std::string>> Pga::joint_actions() const {
    std::vector<std::string> sorted_actions = actions;
    std::sort(sorted_actions.begin(), sorted_actions.end());
    std::vector<std::vector<std::string>> out;
    if (agents.empty() || sorted_actions.empty()) return out;
    std::vector<std::size_t> idx(agents.size(), 0);
    while (true) {
        std::vector<std::string> joint;
        joint.reserve(agents.size());
        for (std::size_t i : idx) joint.push_back(sorted_actions[i]);
        out.push_back(std::move(joint));
        std::size_t pos = idx.size();
        while (pos > 0 && idx[pos - 1] + 1 == sorted_actions.size()) idx[--pos] = 0;
        if (pos == 0) break;
        ++idx[pos - 1];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

bool plain_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c == '|' || c == '+' || c == ',' || std::isspace(static_cast<unsigned char>(c)))
            return false;
    return true;
}

bool identifier_name(const std::string& s) {
    if (s.empty()) return false;
    auto head = static_cast<unsigned char>(s[0]);
    if (!std::isalpha(head) && s[0] != '_') return false;
    for (char c : s) {
        auto u = static_cast<unsigned char>(c);
        if (!std::isalnum(u) && c != '_' && c != '\'') return false;
    }
    return true;
}

void check_push_discipline(const std::string& top, const StackWord& push, const std::string& where,
                           std::vector<std::string>& out) {
    if (top == kBottom) {
        if (!ends_in_bottom(push))
            out.push_back(where + ": push from bottom must end in the bottom symbol");
        for (std::size_t i = 0; i + 1 < push.size(); ++i)
            if (push[i] == kBottom)
                out.push_back(where + ": bottom symbol not last in pushed word");
    } else if (contains_bottom(push)) {
        out.push_back(where + ": pushed word contains the bottom symbol");
    }
}

void check_acceptors(const RegularLabelling& l, const std::vector<std::string>& alphabet,
                     const std::function<bool(const std::string&)>& known_state,
                     std::vector<std::string>& out) {
    for (const auto& [key, dfa] : l.acceptors) {
        const std::string where = "acceptor (" + key.first + ", " + key.second + ")";
        if (!identifier_name(key.first) || is_reserved_atom(key.first))
            out.push_back(where + ": bad atom name");
        if (!known_state(key.second)) out.push_back(where + ": unknown state");
        if (dfa.states.empty()) {
            out.push_back(where + ": no states");
            continue;
        }
        if (dfa.initial >= dfa.states.size()) out.push_back(where + ": initial out of range");
        for (std::size_t q : dfa.accepting)
            if (q >= dfa.states.size()) out.push_back(where + ": accepting state out of range");
        for (const auto& [from, to] : dfa.delta) {
            if (from.first >= dfa.states.size() || to >= dfa.states.size())
                out.push_back(where + ": transition state out of range");
            if (std::find(alphabet.begin(), alphabet.end(), from.second) == alphabet.end())
                out.push_back(where + ": transition on unknown symbol " + from.second);
        }
        for (std::size_t q = 0; q < dfa.states.size(); ++q)
            for (const auto& sym : alphabet)
                if (!dfa.delta.count({q, sym}))
                    out.push_back(where + ": not total, missing (" + dfa.states[q] + ", " + sym +
                                  ")");
    }
}

}  // namespace

std::set<std::pair<std::size_t, std::string>> reachable_tops(const Pcks& k) {
    // Forward saturation over a stack automaton. Controls are PCKS states
    // plus fresh intermediates from splitting long pushes into single pushes;
    // automaton states are the controls, one final state, and one state per
    // split push step.
    struct Rule {
        std::size_t from;
        std::string top;
        std::size_t to;
        StackWord push;  // length <= 2 after normalization
    };
    std::vector<Rule> rules;
    std::size_t controls = k.states.size();
    for (const auto& r : k.rules) {
        if (r.push.size() <= 2) {
            rules.push_back({r.from, r.top, r.to, r.push});
            continue;
        }
        // (s, top) -> (y_k, w_k), then push w_{j} over w_{j+1} stepwise.
        std::size_t k_len = r.push.size();
        std::vector<std::size_t> mid(k_len - 1);
        for (auto& m : mid) m = controls++;
        rules.push_back({r.from, r.top, mid.back(), {r.push.back()}});
        for (std::size_t j = k_len - 1; j >= 1; --j) {
            std::size_t tgt = j == 1 ? r.to : mid[j - 2];
            rules.push_back({mid[j - 1], r.push[j], tgt, {r.push[j - 1], r.push[j]}});
        }
    }

    const std::string eps;
    std::size_t final_state = controls;
    std::size_t next_state = controls + 1;
    // One helper automaton state per push rule.
    std::map<std::size_t, std::size_t> push_state;
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (rules[i].push.size() == 2) push_state[i] = next_state++;

    using Edge = std::tuple<std::size_t, std::string, std::size_t>;
    std::set<Edge> edges;
    std::deque<Edge> work;
    auto add = [&](std::size_t x, const std::string& a, std::size_t y) {
        Edge e{x, a, y};
        if (edges.insert(e).second) work.push_back(e);
    };
    if (k.initial < k.states.size()) add(k.initial, kBottom, final_state);

    while (!work.empty()) {
        auto [x, a, y] = work.front();
        work.pop_front();
        if (a == eps) {
            // Combine with everything currently leaving y.
            for (const auto& [x2, b, z] : std::set<Edge>(edges))
                if (x2 == y && b != eps) add(x, b, z);
            continue;
        }
        // Combine with epsilon edges ending at x.
        for (const auto& [w, b, x2] : std::set<Edge>(edges))
            if (x2 == x && b == eps) add(w, a, y);
        if (x >= controls) continue;
        for (std::size_t i = 0; i < rules.size(); ++i) {
            const Rule& r = rules[i];
            if (r.from != x || r.top != a) continue;
            switch (r.push.size()) {
                case 0:
                    add(r.to, eps, y);
                    break;
                case 1:
                    add(r.to, r.push[0], y);
                    break;
                case 2:
                    add(r.to, r.push[0], push_state[i]);
                    add(push_state[i], r.push[1], y);
                    break;
            }
        }
    }

    // A (state, top) pair is witnessed by an edge whose target can still
    // reach the final state.
    std::set<std::size_t> alive{final_state};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [x, a, y] : edges)
            if (alive.count(y) && alive.insert(x).second) grew = true;
    }
    std::set<std::pair<std::size_t, std::string>> out;
    for (const auto& [x, a, y] : edges)
        if (x < k.states.size() && !a.empty() && alive.count(y)) out.insert({x, a});
    return out;
}

std::vector<std::string> validate_pcks(const Pcks& k) {
    std::vector<std::string> out;
    if (k.components < 1) out.push_back("component count must be at least 1");
    if (k.states.empty()) {
        out.push_back("no states");
        return out;
    }
    if (k.initial >= k.states.size()) out.push_back("initial state out of range");

    std::set<std::string> names;
    std::set<std::vector<std::string>> tuples;
    for (const auto& s : k.states) {
        if (!plain_name(s.name)) out.push_back("bad state name '" + s.name + "'");
        if (!names.insert(s.name).second) out.push_back("duplicate state name " + s.name);
        if (s.tuple.size() != k.components)
            out.push_back("state " + s.name + ": tuple arity != component count");
        for (const auto& v : s.tuple)
            if (!plain_name(v)) out.push_back("state " + s.name + ": bad component value");
        if (!tuples.insert(s.tuple).second)
            out.push_back("state " + s.name + ": duplicate component tuple");
    }

    std::set<std::string> alphabet;
    for (const auto& sym : k.stack_alphabet) {
        if (!plain_name(sym) || sym == kBottom)
            out.push_back("bad stack symbol '" + sym + "'");
        if (!alphabet.insert(sym).second) out.push_back("duplicate stack symbol " + sym);
    }
    alphabet.insert(kBottom);

    bool rules_ok = true;
    for (std::size_t i = 0; i < k.rules.size(); ++i) {
        const auto& r = k.rules[i];
        const std::string where = "rule #" + std::to_string(i);
        if (r.from >= k.states.size() || r.to >= k.states.size()) {
            out.push_back(where + ": state out of range");
            rules_ok = false;
            continue;
        }
        if (!alphabet.count(r.top)) {
            out.push_back(where + ": unknown top symbol " + r.top);
            rules_ok = false;
        }
        for (const auto& sym : r.push)
            if (!alphabet.count(sym)) {
                out.push_back(where + ": unknown pushed symbol " + sym);
                rules_ok = false;
            }
        check_push_discipline(r.top, r.push, where, out);
    }

    check_acceptors(k.labelling, k.full_alphabet(),
                    [&](const std::string& s) { return k.state_index(s).has_value(); }, out);

    if (rules_ok && k.initial < k.states.size()) {
        for (const auto& [s, top] : reachable_tops(k)) {
            bool has = false;
            for (const auto& r : k.rules)
                if (r.from == s && r.top == top) {
                    has = true;
                    break;
                }
            if (!has)
                out.push_back("relation not left-total: no rule from reachable (" +
                              k.states[s].name + ", " + top + ")");
        }
    }
    return out;
}

std::vector<std::string> validate_pga(const Pga& g) {
    std::vector<std::string> out;
    if (g.states.empty()) {
        out.push_back("no states");
        return out;
    }
    if (g.initial >= g.states.size()) out.push_back("initial state out of range");
    if (g.agents.empty()) out.push_back("no agents");
    if (g.actions.empty()) out.push_back("no actions");

    std::set<std::string> seen;
    for (const auto& s : g.states) {
        if (!plain_name(s)) out.push_back("bad state name '" + s + "'");
        if (!seen.insert(s).second) out.push_back("duplicate state name " + s);
    }
    seen.clear();
    for (const auto& a : g.actions) {
        if (!identifier_name(a)) out.push_back("bad action name '" + a + "'");
        if (!seen.insert(a).second) out.push_back("duplicate action " + a);
    }
    seen.clear();
    for (const auto& a : g.agents) {
        if (!identifier_name(a)) out.push_back("bad agent name '" + a + "'");
        if (!seen.insert(a).second) out.push_back("duplicate agent " + a);
    }
    seen.clear();
    std::set<std::string> alphabet;
    for (const auto& sym : g.stack_alphabet) {
        if (!plain_name(sym) || sym == kBottom) out.push_back("bad stack symbol '" + sym + "'");
        if (!alphabet.insert(sym).second) out.push_back("duplicate stack symbol " + sym);
    }
    alphabet.insert(kBottom);

    std::set<std::string> action_set(g.actions.begin(), g.actions.end());
    bool delta_ok = true;
    for (const auto& [key, val] : g.delta) {
        const auto& [from, top, joint] = key;
        const std::string where = "transition from " +
                                  (from < g.states.size() ? g.states[from] : "?") + " top " + top;
        if (from >= g.states.size() || val.first >= g.states.size()) {
            out.push_back(where + ": state out of range");
            delta_ok = false;
            continue;
        }
        if (!alphabet.count(top)) {
            out.push_back(where + ": unknown top symbol");
            delta_ok = false;
        }
        if (joint.size() != g.agents.size())
            out.push_back(where + ": joint action arity != agent count");
        for (const auto& a : joint)
            if (!action_set.count(a)) out.push_back(where + ": unknown action " + a);
        for (const auto& sym : val.second)
            if (!alphabet.count(sym)) {
                out.push_back(where + ": unknown pushed symbol " + sym);
                delta_ok = false;
            }
        check_push_discipline(top, val.second, where, out);
    }

    for (const auto& [obsid, blocks] : g.observations) {
        if (!identifier_name(obsid)) out.push_back("bad observation id '" + obsid + "'");
        std::set<std::size_t> covered;
        for (const auto& block : blocks) {
            if (block.empty()) out.push_back("observation " + obsid + ": empty block");
            for (std::size_t s : block) {
                if (s >= g.states.size()) {
                    out.push_back("observation " + obsid + ": state out of range");
                    continue;
                }
                if (!covered.insert(s).second)
                    out.push_back("observation " + obsid + ": state " + g.states[s] +
                                  " in two blocks");
            }
        }
        if (covered.size() != g.states.size())
            out.push_back("observation " + obsid + ": blocks do not cover all states");
    }

    check_acceptors(g.labelling, g.full_alphabet(),
                    [&](const std::string& s) { return g.state_index(s).has_value(); }, out);

    if (delta_ok && g.initial < g.states.size()) {
        // Totality per reachable (state, top) pair and joint action, checked
        // on the induced pushdown relation.
        Pcks shadow;
        shadow.stack_alphabet = g.stack_alphabet;
        shadow.components = 1;
        for (const auto& s : g.states) shadow.states.push_back({s, {s}});
        shadow.initial = g.initial;
        for (const auto& [key, val] : g.delta)
            shadow.rules.push_back({std::get<0>(key), std::get<1>(key), val.first, val.second});
        auto joints = g.joint_actions();
        for (const auto& [s, top] : reachable_tops(shadow)) {
            for (const auto& m : joints) {
                if (!g.delta.count({s, top, m})) {
                    std::string joint_str;
                    for (const auto& a : m) joint_str += joint_str.empty() ? a : "." + a;
                    out.push_back("delta not total: missing (" + g.states[s] + ", " + top +
                                  ", " + joint_str + ")");
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dynamics
// ---------------------------------------------------------------------------

std::vector<Config> step_pcks(const Pcks& k, const Config& c) {
    if (c.state >= k.states.size()) fail_precondition("configuration state out of range");
    if (c.stack.empty() || !ends_in_bottom(c.stack))
        fail_precondition("malformed configuration stack");
    std::set<Config> next;
    for (const auto& r : k.rules) {
        if (r.from != c.state || r.top != c.stack.front()) continue;
        StackWord stack = r.push;
        stack.insert(stack.end(), c.stack.begin() + 1, c.stack.end());
        next.insert({r.to, std::move(stack)});
    }
    return {next.begin(), next.end()};
}

std::set<std::string> eval_labelling(const RegularLabelling& l, const std::string& state,
                                     const StackWord& stack) {
    std::set<std::string> out;
    for (const auto& [key, dfa] : l.acceptors)
        if (key.second == state && dfa.accepts(stack)) out.insert(key.first);
    return out;
}

std::vector<StackWord> succinct_directions(const Pcks& k) {
    std::map<std::string, StackWord> by_key;
    by_key[""] = {};
    for (const auto& r : k.rules) by_key[stack_word_key(r.push)] = r.push;
    std::vector<StackWord> out;
    out.reserve(by_key.size());
    for (auto& [key, word] : by_key) out.push_back(std::move(word));
    return out;
}

Config reconstruct(const Pcks& k, const std::vector<SuccinctLetter>& u) {
    if (u.empty()) fail_precondition("invalid succinct path: empty");
    if (u.front().state != k.initial)
        fail_precondition("invalid succinct path: root is not the initial state");
    if (!ends_in_bottom(u.front().push))
        fail_precondition("invalid succinct path: root word is not a full stack content");
    StackWord stack = u.front().push;
    for (std::size_t i = 1; i < u.size(); ++i) {
        if (u[i].state >= k.states.size())
            fail_precondition("invalid succinct path: state out of range");
        if (stack.front() == kBottom && u[i].push.empty())
            fail_precondition("invalid succinct path: pop on the bottom symbol");
        if (stack.front() == kBottom && !ends_in_bottom(u[i].push))
            fail_precondition("invalid succinct path: bottom removed by rewrite");
        StackWord next = u[i].push;
        next.insert(next.end(), stack.begin() + 1, stack.end());
        stack = std::move(next);
    }
    return {u.back().state, std::move(stack)};
}

std::vector<SuccinctLetter> kappa(const Pcks& k, const std::vector<Config>& path) {
    if (path.empty()) fail_precondition("empty path");
    if (path.front().state != k.initial) fail_precondition("path does not start at the initial state");
    std::vector<SuccinctLetter> out;
    out.push_back({path.front().state, path.front().stack});
    for (std::size_t i = 1; i < path.size(); ++i) {
        const StackWord& prev = path[i - 1].stack;
        const StackWord& cur = path[i].stack;
        if (prev.empty() || cur.size() + 1 < prev.size())
            fail_precondition("consecutive configurations not one step apart");
        std::size_t push_len = cur.size() + 1 - prev.size();
        if (!std::equal(prev.begin() + 1, prev.end(), cur.begin() + push_len))
            fail_precondition("consecutive stacks do not share the untouched suffix");
        out.push_back({path[i].state, StackWord(cur.begin(), cur.begin() + push_len)});
    }
    return out;
}

}  // namespace sliver
