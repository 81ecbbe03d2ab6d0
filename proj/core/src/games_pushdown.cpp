#include "sliver/games_pushdown.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <utility>

namespace sliver {

namespace {

bool plain_symbol(const std::string& s) {
    if (s.empty() || s == kBottom) return false;
    for (char ch : s)
        if (ch == '+' || ch == '|' || ch == ',' || ch == ' ' || ch == '\t' || ch == '\n')
            return false;
    return true;
}

bool push_ok_on(const std::string& top, const StackWord& push) {
    if (top == kBottom) {
        if (!ends_in_bottom(push)) return false;
        return std::count(push.begin(), push.end(), std::string(kBottom)) == 1;
    }
    return !contains_bottom(push);
}

}  // namespace

std::vector<std::string> validate_ppg(const Ppg& g) {
    std::vector<std::string> errs;
    const std::size_t n = g.controls.size();
    if (n == 0) errs.push_back("game has no control states");
    if (g.owner.size() != n) errs.push_back("owner table size differs from control count");
    if (g.colour.size() != n) errs.push_back("colour table size differs from control count");
    for (std::size_t i = 0; i < g.colour.size(); ++i)
        if (g.colour[i] < 0)
            errs.push_back("control " + std::to_string(i) + " has a negative colour");

    std::set<std::string> alpha;
    for (const std::string& s : g.stack_alphabet) {
        if (!plain_symbol(s))
            errs.push_back("stack symbol '" + s + "' is reserved or not plain");
        if (!alpha.insert(s).second) errs.push_back("stack symbol '" + s + "' repeats");
    }
    auto known = [&](const std::string& s) { return s == kBottom || alpha.count(s) != 0; };

    for (const auto& [key, list] : g.rules) {
        const std::string where =
            "rule (" + std::to_string(key.first) + ", " + key.second + ")";
        if (key.first >= n) {
            errs.push_back(where + " names an unknown control");
            continue;
        }
        if (!known(key.second)) errs.push_back(where + " reads an unknown top symbol");
        for (const PpgRule& r : list) {
            if (r.to >= n) errs.push_back(where + " moves to an unknown control");
            for (const std::string& s : r.push)
                if (!known(s)) errs.push_back(where + " pushes unknown symbol '" + s + "'");
            if (!push_ok_on(key.second, r.push))
                errs.push_back(where + " breaks the bottom discipline");
        }
    }

    if (g.initial_control >= n) errs.push_back("initial control is out of range");
    if (!ends_in_bottom(g.initial_stack) ||
        std::count(g.initial_stack.begin(), g.initial_stack.end(), std::string(kBottom)) != 1)
        errs.push_back("initial stack must contain the bottom marker exactly once, last");
    else
        for (std::size_t i = 0; i + 1 < g.initial_stack.size(); ++i)
            if (alpha.count(g.initial_stack[i]) == 0)
                errs.push_back("initial stack holds unknown symbol '" + g.initial_stack[i] + "'");
    return errs;
}

std::optional<Player> solve_pushdown_bounded(const Ppg& g, std::size_t config_cap,
                                             const Budget& budget) {
    // Stacks are interned as shared (top, rest) nodes so that the growing
    // fronts of a pushing loop cost linear, not quadratic, memory before the
    // exploration cap calls the game unbounded.
    constexpr std::size_t kEmpty = static_cast<std::size_t>(-1);
    std::vector<std::pair<std::string, std::size_t>> nodes;
    std::map<std::pair<std::string, std::size_t>, std::size_t> node_ids;
    auto push_sym = [&](const std::string& s, std::size_t rest) {
        auto key = std::make_pair(s, rest);
        auto it = node_ids.find(key);
        if (it != node_ids.end()) return it->second;
        nodes.emplace_back(s, rest);
        node_ids.emplace(std::move(key), nodes.size() - 1);
        return nodes.size() - 1;
    };
    std::size_t init = kEmpty;
    for (auto it = g.initial_stack.rbegin(); it != g.initial_stack.rend(); ++it)
        init = push_sym(*it, init);

    std::vector<std::pair<std::size_t, std::size_t>> configs;  // control, stack node
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
    std::vector<std::vector<std::size_t>> edges;
    auto intern = [&](std::size_t c, std::size_t s) {
        auto key = std::make_pair(c, s);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        const std::size_t id = configs.size();
        ids.emplace(key, id);
        configs.emplace_back(c, s);
        edges.emplace_back();
        return id;
    };

    intern(g.initial_control, init);
    for (std::size_t head = 0; head < configs.size(); ++head) {
        if (config_cap != 0 && configs.size() > config_cap) return std::nullopt;
        const auto [c, stack] = configs[head];
        if (stack == kEmpty) fail_internal("pushdown configuration lost its stack");
        auto it = g.rules.find({c, nodes[stack].first});
        if (it == g.rules.end()) continue;
        for (const PpgRule& r : it->second) {
            std::size_t succ = nodes[stack].second;
            for (auto sym = r.push.rbegin(); sym != r.push.rend(); ++sym)
                succ = push_sym(*sym, succ);
            // intern may grow `edges`, so take the id before indexing.
            const std::size_t to = intern(r.to, succ);
            edges[head].push_back(to);
        }
    }
    if (config_cap != 0 && configs.size() > config_cap) return std::nullopt;

    Fpg f;
    f.names.reserve(configs.size());
    f.owner.reserve(configs.size());
    f.colour.reserve(configs.size());
    for (const auto& [c, s] : configs) {
        f.names.push_back(g.controls[c] + " @" + std::to_string(s));
        f.owner.push_back(g.owner[c]);
        f.colour.push_back(g.colour[c]);
    }
    for (auto& out : edges) {
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    f.edges = std::move(edges);
    f.initial = 0;
    return solve_finite_parity(f, budget).winner[0];
}

namespace {

// Rules flattened so every push word has length at most two; longer words
// run through fresh colour-0 single-move controls, which leaves winners
// unchanged under max parity. A fresh start control installs the initial
// stack so the reduction can begin from the bare bottom configuration.
struct Norm {
    std::vector<std::string> name;
    std::vector<Player> owner;
    std::vector<int> colour;
    std::map<std::pair<std::size_t, std::string>, std::vector<PpgRule>> rules;
    std::size_t start = 0;
};

Norm normalized(const Ppg& g) {
    Norm n;
    n.name = g.controls;
    n.owner = g.owner;
    n.colour = g.colour;
    auto fresh = [&](std::string nm) {
        n.name.push_back(std::move(nm));
        n.owner.push_back(Player::Eve);
        n.colour.push_back(0);
        return n.name.size() - 1;
    };
    auto chain = [&](std::size_t from, const std::string& top, std::size_t to,
                     const StackWord& w, const std::string& tag) {
        if (w.size() <= 2) {
            n.rules[{from, top}].push_back({to, w});
            return;
        }
        std::size_t cur = fresh(tag + "#rw");
        n.rules[{from, top}].push_back({cur, {w.back()}});
        for (std::size_t i = w.size() - 1; i >= 2; --i) {
            std::size_t nxt = fresh(tag + "#" + std::to_string(i - 1));
            n.rules[{cur, w[i]}].push_back({nxt, {w[i - 1], w[i]}});
            cur = nxt;
        }
        n.rules[{cur, w[1]}].push_back({to, {w[0], w[1]}});
    };
    for (const auto& [key, list] : g.rules)
        for (std::size_t i = 0; i < list.size(); ++i)
            chain(key.first, key.second, list[i].to, list[i].push,
                  g.controls[key.first] + "/" + key.second + "/" + std::to_string(i));
    n.start = fresh("start");
    chain(n.start, kBottom, g.initial_control, g.initial_stack, "start");
    return n;
}


// Reward order on colours: how happy Eve is when this colour is the maximum
// of a stretch of play. Odd maxima are bad (worse the higher), even maxima
// good (better the higher), every even beats every odd.
int reward_rank(int c) { return c % 2 == 0 ? c : -c; }

bool reward_le(int a, int b) { return reward_rank(a) <= reward_rank(b); }

// A claim promises, for some pop landings of the current level, the worst
// maximal colour Eve is willing to deliver between the push and the pop
// (landing colour folded in). At most one pair per landing: promising two
// colours for one landing is never better than promising the reward-lower
// of them. Sorted by landing and interned so positions carry small ids.
using Claim = std::vector<std::pair<std::size_t, int>>;

struct ClaimTable {
    std::vector<Claim> items;
    std::map<Claim, std::size_t> index;

    std::size_t intern(Claim c) {
        std::sort(c.begin(), c.end());
        auto it = index.find(c);
        if (it != index.end()) return it->second;
        items.push_back(c);
        index.emplace(std::move(c), items.size() - 1);
        return items.size() - 1;
    }
    // The promise is kept by a pop landing in `ctl` with maximal colour
    // `colour` iff some promised pair names that landing with a reward at
    // most as good. Promising low and delivering high loses nothing: the
    // outer play resumed from the promised colour, and position values only
    // improve for Eve along the reward order.
    bool holds(std::size_t id, int colour, std::size_t ctl) const {
        for (const auto& [r, c] : items[id])
            if (r == ctl && reward_le(c, colour)) return true;
        return false;
    }
};

// Per-level analysis of the normalized game. A level starts when a push
// installs (control, symbol) and ends when that symbol is popped.
//
//  * menu: for each level entry, the (landing, maximal colour) pairs some
//    play can realise between the push and the pop. Claims never need any
//    other pair, since a claim only ever collects the pops one strategy
//    realises and every such pop is realised by some play.
//  * rel: for each (control, symbol), the pop landings reachable without
//    leaving the current level. Promise pairs naming other landings can
//    never be tested from there, so positions may drop them, which keeps
//    the promise component of position keys from multiplying.
struct Summary {
    std::map<std::pair<std::size_t, std::string>, std::size_t> entry_ids;
    std::vector<std::map<std::size_t, std::vector<int>>> menu;
    std::vector<std::vector<std::size_t>> landings;
    std::map<std::pair<std::size_t, std::string>, std::vector<std::size_t>> rel;
    std::size_t widest = 0;  // most landings over any level entry

    explicit Summary(const Norm& n) {
        std::vector<std::set<std::tuple<std::size_t, std::string, int>>> reach;
        std::vector<std::set<std::pair<int, std::size_t>>> pops;
        // deps[e]: (level, uncovered symbol, colour at push) continuations
        // waiting on pops of level e.
        std::vector<std::set<std::tuple<std::size_t, std::string, int>>> deps;
        std::vector<std::tuple<std::size_t, std::size_t, std::string, int>> work;

        auto entry = [&](std::size_t c, const std::string& s) {
            auto it = entry_ids.find({c, s});
            if (it != entry_ids.end()) return it->second;
            const std::size_t e = reach.size();
            entry_ids.emplace(std::make_pair(c, s), e);
            reach.emplace_back();
            pops.emplace_back();
            deps.emplace_back();
            reach[e].insert({c, s, n.colour[c]});
            work.emplace_back(e, c, s, n.colour[c]);
            return e;
        };
        auto add = [&](std::size_t e, std::size_t c, const std::string& s, int col) {
            if (reach[e].insert({c, s, col}).second) work.emplace_back(e, c, s, col);
        };
        std::vector<std::pair<int, std::size_t>> popped;
        auto land = [&](std::size_t e, int col, std::size_t r) {
            if (pops[e].insert({col, r}).second) popped.emplace_back(col, r);
        };

        for (const auto& [key, list] : n.rules)
            for (const PpgRule& r : list)
                if (r.push.size() == 2) entry(r.to, r.push[0]);

        while (!work.empty()) {
            auto [e, c, s, col] = work.back();
            work.pop_back();
            auto it = n.rules.find({c, s});
            if (it == n.rules.end()) continue;
            for (const PpgRule& r : it->second) {
                if (r.push.empty()) {
                    popped.clear();
                    land(e, std::max(col, n.colour[r.to]), r.to);
                    for (const auto& [pc, pr] : popped)
                        for (const auto& [de, ds, dc] : deps[e])
                            add(de, pr, ds, std::max(dc, pc));
                } else if (r.push.size() == 1) {
                    add(e, r.to, r.push[0], std::max(col, n.colour[r.to]));
                } else {
                    const std::size_t inner = entry(r.to, r.push[0]);
                    if (deps[inner].insert({e, r.push[1], col}).second)
                        for (const auto& [pc, pr] : pops[inner])
                            add(e, pr, r.push[1], std::max(col, pc));
                }
            }
        }

        menu.resize(reach.size());
        landings.resize(reach.size());
        for (std::size_t e = 0; e < reach.size(); ++e) {
            for (const auto& [col, r] : pops[e]) menu[e][r].push_back(col);
            for (const auto& [r, cols] : menu[e]) landings[e].push_back(r);
            widest = std::max(widest, landings[e].size());
        }

        // Same-level landing reachability: within a level, control moves by
        // rewrites and by returns from inner levels, and each visited pair
        // contributes the landings of its own pop rules.
        std::map<std::pair<std::size_t, std::string>, std::set<std::size_t>> out;
        std::map<std::pair<std::size_t, std::string>,
                 std::vector<std::pair<std::size_t, std::string>>>
            preds;
        std::vector<std::pair<std::size_t, std::string>> queue;
        for (const auto& [key, list] : n.rules) {
            for (const PpgRule& r : list) {
                if (r.push.empty()) {
                    if (out[key].insert(r.to).second && out[key].size() == 1)
                        queue.push_back(key);
                } else if (r.push.size() == 1) {
                    preds[{r.to, r.push[0]}].push_back(key);
                } else {
                    const std::size_t e = entry_ids.at({r.to, r.push[0]});
                    for (std::size_t back : landings[e])
                        preds[{back, r.push[1]}].push_back(key);
                }
            }
            queue.push_back(key);
        }
        while (!queue.empty()) {
            const auto node = queue.back();
            queue.pop_back();
            auto pit = preds.find(node);
            if (pit == preds.end()) continue;
            const std::set<std::size_t>& mine = out[node];
            for (const auto& pred : pit->second) {
                std::set<std::size_t>& theirs = out[pred];
                const std::size_t before = theirs.size();
                theirs.insert(mine.begin(), mine.end());
                if (theirs.size() != before) queue.push_back(pred);
            }
        }
        for (auto& [key, set] : out) rel[key].assign(set.begin(), set.end());
    }
};

constexpr std::size_t kMenuCap = 65536;

// All claims over at most `width` landings of level e, one promised colour
// per chosen landing, drawn from the realisable pairs.
std::vector<Claim> level_claims(const Summary& s, std::size_t e, std::size_t width) {
    const std::vector<std::size_t>& lds = s.landings[e];
    std::vector<Claim> done;
    Claim cur;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (done.size() > kMenuCap)
            fail_budget("claim menu of the pushdown reduction is too large: level with " +
                        std::to_string(lds.size()) + " pop landings");
        if (i == lds.size()) {
            done.push_back(cur);
            return;
        }
        self(self, i + 1);
        if (cur.size() == width) return;
        for (int col : s.menu[e].at(lds[i])) {
            cur.emplace_back(lds[i], col);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return done;
}

// The claim game at menu width k: Walukiewicz's finite parity game over
// (control, top, promise, colour memory) positions, with Eve's claims
// restricted to at most k promised landings per push. Narrowing the menu
// only hurts Eve, so an Eve win at any width is an Eve win of the pushdown
// game, and the game with every landing available is exact.
Player solve_claim_game(const Norm& n, const Summary& s, std::size_t k,
                        const Budget& budget) {
    ClaimTable claims;
    const std::size_t no_promise = claims.intern({});

    std::vector<Player> owner;
    std::vector<int> colour;
    std::vector<std::vector<std::size_t>> edges;
    auto node = [&](Player o, int c) {
        owner.push_back(o);
        colour.push_back(c);
        edges.emplace_back();
        budget.charge_vertices(owner.size());
        return owner.size() - 1;
    };
    const std::size_t eve_wins = node(Player::Adam, 0);
    const std::size_t adam_wins = node(Player::Eve, 0);

    // Checks are interned by (control, top, promise, colour memory), with
    // the promise first narrowed to the landings testable from there.
    std::map<std::tuple<std::size_t, std::string, std::size_t, int>, std::size_t> checks;
    std::vector<std::tuple<std::size_t, std::string, std::size_t, int>> todo;
    auto check = [&](std::size_t ctl, const std::string& top, std::size_t prom, int m) {
        if (prom != no_promise) {
            auto rit = s.rel.find({ctl, top});
            Claim narrowed;
            if (rit != s.rel.end())
                for (const auto& pr : claims.items[prom])
                    if (std::binary_search(rit->second.begin(), rit->second.end(),
                                           pr.first))
                        narrowed.push_back(pr);
            prom = claims.intern(std::move(narrowed));
        }
        auto key = std::make_tuple(ctl, top, prom, m);
        auto it = checks.find(key);
        if (it != checks.end()) return it->second;
        const std::size_t id = node(n.owner[ctl], n.colour[ctl]);
        checks.emplace(key, id);
        todo.push_back(std::move(key));
        return id;
    };
    // Claim choices and challenge nodes are interned by successor set, so
    // claims that differ only in untestable promises collapse.
    std::map<std::pair<Player, std::vector<std::size_t>>, std::size_t> muxes;
    auto mux = [&](Player o, std::vector<std::size_t> succ) {
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
        auto key = std::make_pair(o, std::move(succ));
        auto it = muxes.find(key);
        if (it != muxes.end()) return it->second;
        const std::size_t id = node(o, 0);
        edges[id] = key.second;
        muxes.emplace(std::move(key), id);
        return id;
    };
    // Believing a pair skips a whole sub-level whose maximal colour was the
    // promised one, so that colour must show up in the parity sequence.
    std::map<std::pair<int, std::size_t>, std::size_t> vias;
    auto via = [&](int c, std::size_t tgt) {
        auto key = std::make_pair(c, tgt);
        auto it = vias.find(key);
        if (it != vias.end()) return it->second;
        const std::size_t id = node(Player::Eve, c);
        edges[id].push_back(tgt);
        vias.emplace(key, id);
        return id;
    };
    // One claim-choice node per (level, uncovered symbol, relevant promise,
    // colour memory); every push with that context shares it.
    std::map<std::tuple<std::size_t, std::string, std::size_t, int>, std::size_t> picks;
    std::map<std::pair<std::size_t, std::string>, std::vector<std::size_t>> belrel;
    std::map<std::size_t, std::vector<Claim>> menus;

    const std::size_t init = check(n.start, kBottom, no_promise, n.colour[n.start]);

    while (!todo.empty()) {
        const auto [ctl, top, prom, m] = todo.back();
        todo.pop_back();
        const std::size_t head = checks.at({ctl, top, prom, m});
        auto it = n.rules.find({ctl, top});
        if (it == n.rules.end()) continue;
        for (const PpgRule& r : it->second) {
            if (r.push.empty()) {
                const int pc = std::max(m, n.colour[r.to]);
                edges[head].push_back(claims.holds(prom, pc, r.to) ? eve_wins : adam_wins);
            } else if (r.push.size() == 1) {
                const std::size_t to =
                    check(r.to, r.push[0], prom, std::max(m, n.colour[r.to]));
                edges[head].push_back(to);
            } else {
                const std::size_t e = s.entry_ids.at({r.to, r.push[0]});
                auto bit = belrel.find({e, r.push[1]});
                if (bit == belrel.end()) {
                    std::set<std::size_t> seen;
                    for (std::size_t lr : s.landings[e]) {
                        auto rit = s.rel.find({lr, r.push[1]});
                        if (rit != s.rel.end())
                            seen.insert(rit->second.begin(), rit->second.end());
                    }
                    bit = belrel.emplace(std::make_pair(e, r.push[1]),
                                         std::vector<std::size_t>(seen.begin(), seen.end()))
                              .first;
                }
                Claim kept;
                for (const auto& pr : claims.items[prom])
                    if (std::binary_search(bit->second.begin(), bit->second.end(),
                                           pr.first))
                        kept.push_back(pr);
                const std::size_t promb = claims.intern(std::move(kept));

                auto pick = picks.find({e, r.push[1], promb, m});
                if (pick == picks.end()) {
                    auto mit = menus.find(e);
                    if (mit == menus.end())
                        mit = menus.emplace(e, level_claims(s, e, k)).first;
                    std::vector<std::size_t> options;
                    for (const Claim& c : mit->second) {
                        std::vector<std::size_t> branch;
                        branch.push_back(
                            check(r.to, r.push[0], claims.intern(c), n.colour[r.to]));
                        for (const auto& [lr, lc] : c) {
                            const std::size_t tgt =
                                check(lr, r.push[1], promb, std::max(m, lc));
                            branch.push_back(via(lc, tgt));
                        }
                        options.push_back(mux(Player::Adam, std::move(branch)));
                    }
                    pick = picks
                               .emplace(std::make_tuple(e, r.push[1], promb, m),
                                        mux(Player::Eve, std::move(options)))
                               .first;
                }
                edges[head].push_back(pick->second);
            }
        }
        std::sort(edges[head].begin(), edges[head].end());
        edges[head].erase(std::unique(edges[head].begin(), edges[head].end()),
                          edges[head].end());
    }

    Fpg f;
    f.names.assign(owner.size(), std::string());
    f.owner = std::move(owner);
    f.colour = std::move(colour);
    f.edges = std::move(edges);
    f.initial = init;
    if (std::getenv("SLIVER_TRACE"))
        std::fprintf(stderr, "[claim] k=%zu vertices=%zu checks=%zu claims=%zu picks=%zu\n",
                     k, f.owner.size(), checks.size(), claims.items.size(), picks.size());
    return solve_finite_parity(f, budget).winner[init];
}

Ppg flipped(const Ppg& g) {
    Ppg d = g;
    for (Player& o : d.owner) o = o == Player::Eve ? Player::Adam : Player::Eve;
    for (int& c : d.colour) ++c;
    return d;
}

// Quotient by bisimilarity of controls: two controls merge when they share
// owner and colour and, per top symbol, the same rewrites up to the classes
// of their targets with identical pushed words. The configuration graphs are
// then bisimilar, so the winner is preserved. Builder-produced games carry a
// lot of duplicated scaffolding, and collapsing it shrinks every later stage.
Ppg quotient_controls(const Ppg& g) {
    std::vector<std::size_t> cls(g.controls.size());
    for (std::size_t c = 0; c < cls.size(); ++c)
        cls[c] = static_cast<std::size_t>(g.colour[c]) * 2 +
                 (g.owner[c] == Player::Eve ? 0 : 1);

    std::vector<std::vector<std::pair<const std::string*, const std::vector<PpgRule>*>>>
        rules_of(g.controls.size());
    for (const auto& [key, list] : g.rules)
        rules_of[key.first].emplace_back(&key.second, &list);

    using Sig = std::pair<std::size_t,
                          std::vector<std::pair<std::string, std::vector<std::pair<StackWord, std::size_t>>>>>;
    for (;;) {
        std::map<Sig, std::size_t> fresh;
        std::vector<std::size_t> next(cls.size());
        for (std::size_t c = 0; c < cls.size(); ++c) {
            Sig sig;
            sig.first = cls[c];
            for (const auto& [sym, list] : rules_of[c]) {
                std::vector<std::pair<StackWord, std::size_t>> moves;
                for (const PpgRule& r : *list) moves.emplace_back(r.push, cls[r.to]);
                std::sort(moves.begin(), moves.end());
                moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
                sig.second.emplace_back(*sym, std::move(moves));
            }
            std::sort(sig.second.begin(), sig.second.end());
            auto [it, added] = fresh.emplace(std::move(sig), fresh.size());
            (void)added;
            next[c] = it->second;
        }
        if (next == cls) break;
        cls = std::move(next);
    }

    std::size_t classes = 0;
    for (std::size_t c : cls) classes = std::max(classes, c + 1);
    std::vector<std::size_t> rep(classes, static_cast<std::size_t>(-1));
    for (std::size_t c = 0; c < cls.size(); ++c)
        if (rep[cls[c]] == static_cast<std::size_t>(-1)) rep[cls[c]] = c;

    Ppg q;
    q.stack_alphabet = g.stack_alphabet;
    q.initial_control = cls[g.initial_control];
    q.initial_stack = g.initial_stack;
    q.controls.resize(classes);
    q.owner.resize(classes);
    q.colour.resize(classes);
    for (std::size_t k = 0; k < classes; ++k) {
        q.controls[k] = g.controls[rep[k]];
        q.owner[k] = g.owner[rep[k]];
        q.colour[k] = g.colour[rep[k]];
    }
    for (const auto& [key, list] : g.rules) {
        if (rep[cls[key.first]] != key.first) continue;
        auto& out = q.rules[{cls[key.first], key.second}];
        std::set<std::pair<std::size_t, StackWord>> seen;
        for (const PpgRule& r : list)
            if (seen.insert({cls[r.to], r.push}).second) out.push_back({cls[r.to], r.push});
    }
    return q;
}

}  // namespace

Player solve_pushdown_walukiewicz(const Ppg& g, const Budget& budget) {
    const Norm pn = normalized(g);
    const Summary ps(pn);
    const Ppg dual = flipped(g);
    const Norm dn = normalized(dual);
    const Summary ds(dn);

    // Menu widths climb until one side wins its restricted game. Restricting
    // claims only weakens the claiming player, so a win at any width stands,
    // and the full-width game decides either way. The dual run answers for
    // Adam: he wins g exactly when Eve wins the owner-flipped copy.
    for (std::size_t k = 1;; k *= 2) {
        const bool pfull = k >= std::max<std::size_t>(ps.widest, 1);
        if (solve_claim_game(pn, ps, k, budget) == Player::Eve) return Player::Eve;
        if (pfull) return Player::Adam;
        const bool dfull = k >= std::max<std::size_t>(ds.widest, 1);
        if (solve_claim_game(dn, ds, k, budget) == Player::Eve) return Player::Adam;
        if (dfull) return Player::Eve;
    }
}

Player solve_pushdown_parity(const Ppg& g, const Budget& budget) {
    std::size_t cap = budget.max_game_vertices;
    if (cap == 0) cap = Budget{}.max_game_vertices;
    const Ppg q = quotient_controls(g);
    // The probe settles games whose configuration space closes; a pushing
    // loop overruns any cap, so the probe only gets a small slice and the
    // reduction keeps the full budget.
    const std::size_t probe = std::min<std::size_t>(cap, 50'000);
    if (auto won = solve_pushdown_bounded(q, probe, budget)) return *won;
    return solve_pushdown_walukiewicz(q, budget);
}

}  // namespace sliver
