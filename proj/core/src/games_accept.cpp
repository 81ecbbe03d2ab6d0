#include "sliver/games_accept.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <utility>

namespace sliver {

namespace {

bool same_directions(const Directions& a, const Directions& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].name != b[i].name || a[i].values != b[i].values) return false;
    return true;
}

struct GameBuilder {
    const Apta& a;
    const RegularTree& t;
    Ppg g;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> fetch_ids;
    std::deque<std::pair<std::size_t, std::size_t>> pending;
    std::vector<std::string> tops;

    GameBuilder(const Apta& a_, const RegularTree& t_) : a(a_), t(t_), tops(a_.full_alphabet()) {}

    std::size_t add_control(std::string name, Player owner, int colour) {
        g.controls.push_back(std::move(name));
        g.owner.push_back(owner);
        g.colour.push_back(colour);
        return g.controls.size() - 1;
    }

    std::size_t fetch(std::size_t gen, std::size_t q) {
        auto it = fetch_ids.find({gen, q});
        if (it != fetch_ids.end()) return it->second;
        const std::size_t id = add_control(
            "fetch " + t.gen_states[gen] + " q" + std::to_string(q), Player::Eve,
            a.colours[q]);
        fetch_ids.emplace(std::make_pair(gen, q), id);
        pending.emplace_back(gen, q);
        return id;
    }

    // Materializes the control for one subterm of a transition value and the
    // controls of everything below it. The value was selected by (q, letter
    // of gen, top), so its controls only carry rules for that top.
    std::size_t formula(std::size_t gen, std::size_t q, const std::string& top,
                        const PosBool& f, std::map<const PbNode*, std::size_t>& memo) {
        auto it = memo.find(f.get());
        if (it != memo.end()) return it->second;
        const std::string name = "term " + t.gen_states[gen] + " q" + std::to_string(q) +
                                 " @" + top + " #" + std::to_string(memo.size());
        std::size_t id = 0;
        switch (f->kind) {
            case PbKind::True:
                // Adam is stuck at a true transition constant; Eve wins.
                id = add_control(name, Player::Adam, a.colours[q]);
                break;
            case PbKind::False:
                id = add_control(name, Player::Eve, a.colours[q]);
                break;
            case PbKind::Or:
            case PbKind::And:
                id = add_control(name, f->kind == PbKind::Or ? Player::Eve : Player::Adam,
                                 a.colours[q]);
                memo.emplace(f.get(), id);
                for (const PosBool& kid : f->kids)
                    g.rules[{id, top}].push_back({formula(gen, q, top, kid, memo), {top}});
                return id;
            case PbKind::Atom: {
                id = add_control(name, Player::Eve, a.colours[q]);
                const std::size_t next_gen =
                    t.succ.at({gen, direction_key(f->atom.direction)});
                g.rules[{id, top}].push_back({fetch(next_gen, f->atom.state), f->atom.push});
                break;
            }
        }
        memo.emplace(f.get(), id);
        return id;
    }

    void expand(std::size_t gen, std::size_t q) {
        const std::size_t id = fetch_ids.at({gen, q});
        for (const std::string& top : tops) {
            std::map<const PbNode*, std::size_t> memo;
            const PosBool& value = a.at(q, t.labels[gen], top);
            g.rules[{id, top}].push_back({formula(gen, q, top, value, memo), {top}});
        }
    }
};

}  // namespace

Ppg acceptance_game(const Apta& a, const RegularTree& t, const std::vector<Direction>& node,
                    const StackWord& stack0) {
    if (!same_directions(a.dirs, t.dirs))
        fail_precondition("acceptance game needs the tree and automaton direction products to agree");
    std::set<std::string> atoms(a.atoms.begin(), a.atoms.end());
    for (std::size_t gen = 0; gen < t.labels.size(); ++gen)
        for (const std::string& p : t.labels[gen])
            if (atoms.count(p) == 0)
                fail_precondition("tree label '" + p + "' is not in the automaton alphabet");
    if (!ends_in_bottom(stack0) ||
        std::count(stack0.begin(), stack0.end(), std::string(kBottom)) != 1)
        fail_precondition("initial stack must contain the bottom marker exactly once, last");
    std::set<std::string> alpha(a.stack_alphabet.begin(), a.stack_alphabet.end());
    for (std::size_t i = 0; i + 1 < stack0.size(); ++i)
        if (alpha.count(stack0[i]) == 0)
            fail_precondition("initial stack symbol '" + stack0[i] +
                              "' is not in the automaton stack alphabet");

    GameBuilder b(a, t);
    b.g.stack_alphabet = a.stack_alphabet;
    b.g.initial_control = b.fetch(tree_state_at(t, node), a.initial);
    b.g.initial_stack = stack0;
    while (!b.pending.empty()) {
        auto [gen, q] = b.pending.front();
        b.pending.pop_front();
        b.expand(gen, q);
    }
    return std::move(b.g);
}

bool membership(const Apta& a, const RegularTree& t, const std::vector<Direction>& node,
                const StackWord& stack0, const Budget& budget) {
    return solve_pushdown_parity(acceptance_game(a, t, node, stack0), budget) == Player::Eve;
}

}  // namespace sliver
