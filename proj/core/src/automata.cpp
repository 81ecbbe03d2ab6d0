#include "sliver/automata.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "sliver/logic.hpp"
#include "sliver/omega_det.hpp"

namespace sliver {

std::string letter_key(const std::set<std::string>& letter) {
    std::string out;
    for (const auto& p : letter) {
        if (!out.empty()) out += ',';
        out += p;
    }
    return out;
}

StackWord guide_push(const Guide& g, const std::set<std::string>& letter,
                     const std::string& top, const std::string& value) {
    auto it = g.table.find({letter_key(letter), top, value});
    if (it != g.table.end()) return it->second;
    if (g.decode_fallback) return parse_stack_word_key(value);
    fail_precondition("stack guide has no entry for letter {" + letter_key(letter) +
                      "}, top '" + top + "', value '" + value + "'");
}

std::vector<std::string> Apta::full_alphabet() const {
    std::vector<std::string> out = stack_alphabet;
    out.push_back(kBottom);
    return out;
}

const PosBool& Apta::at(std::size_t state, const std::set<std::string>& letter,
                        const std::string& top) const {
    auto it = delta.find({state, letter, top});
    if (it == delta.end())
        fail_internal("automaton transition missing for state " + std::to_string(state) +
                      ", letter {" + letter_key(letter) + "}, top '" + top + "'");
    return it->second;
}

std::vector<std::set<std::string>> enumerate_letters(const std::vector<std::string>& atoms) {
    if (atoms.size() > 16) fail_budget("letter alphabet exceeds 16 atoms");
    std::vector<std::set<std::string>> out;
    const std::size_t total = std::size_t{1} << atoms.size();
    out.reserve(total);
    for (std::size_t mask = 0; mask < total; ++mask) {
        std::set<std::string> letter;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if ((mask >> i) & 1u) letter.insert(atoms[i]);
        out.push_back(std::move(letter));
    }
    return out;
}

namespace {

// Push validity relative to the symbol it replaces: the bottom is rewritten
// to a word that keeps it at the end, any other symbol to a bottom-free word.
bool push_ok(const std::string& top, const StackWord& push) {
    if (top == kBottom) {
        if (push.empty() || push.back() != kBottom) return false;
        return std::count(push.begin(), push.end(), kBottom) == 1;
    }
    return std::find(push.begin(), push.end(), kBottom) == push.end();
}

}  // namespace

void validate_apta(const Apta& a) {
    if (a.state_count == 0) fail_schema("automaton needs at least one state");
    if (a.initial >= a.state_count) fail_schema("automaton initial state out of range");
    if (a.colours.size() != a.state_count)
        fail_schema("automaton colour list does not match the state count");
    for (int c : a.colours)
        if (c < 0) fail_schema("automaton colours must be non-negative");

    std::set<std::string> symbols;
    for (const auto& s : a.stack_alphabet) {
        if (s.empty() || s == kBottom) fail_schema("invalid stack symbol '" + s + "'");
        if (s.find_first_of("+|, \t\n") != std::string::npos)
            fail_schema("stack symbol '" + s + "' contains a reserved character");
        if (!symbols.insert(s).second) fail_schema("duplicate stack symbol '" + s + "'");
    }

    if (a.dirs.empty()) fail_schema("automaton needs at least one direction component");
    std::set<std::string> comp_names;
    for (const auto& comp : a.dirs) {
        if (!comp_names.insert(comp.name).second)
            fail_schema("duplicate direction component '" + comp.name + "'");
        if (comp.values.empty())
            fail_schema("direction component '" + comp.name + "' has no values");
        std::set<std::string> vals;
        for (const auto& v : comp.values) {
            if (v.find_first_of("|, \t\n") != std::string::npos)
                fail_schema("direction value '" + v + "' contains a reserved character");
            if (!vals.insert(v).second)
                fail_schema("duplicate direction value '" + v + "' in component '" +
                            comp.name + "'");
        }
    }

    std::set<std::string> atom_set;
    for (const auto& p : a.atoms) {
        if (is_reserved_atom(p)) fail_schema("reserved atom '" + p + "' in letter alphabet");
        if (!atom_set.insert(p).second) fail_schema("duplicate letter atom '" + p + "'");
    }

    const auto letters = enumerate_letters(a.atoms);
    const auto tops = a.full_alphabet();
    for (const auto& [key, value] : a.delta) {
        const auto& [q, letter, top] = key;
        if (q >= a.state_count) fail_schema("transition from unknown state");
        for (const auto& p : letter)
            if (!atom_set.count(p)) fail_schema("transition letter atom '" + p + "' unknown");
        if (top != kBottom && !symbols.count(top))
            fail_schema("transition top symbol '" + top + "' unknown");
        if (!value) fail_schema("null transition value");
        pb_for_each_atom(value, [&](const PbAtom& at) {
            if (!direction_valid(a.dirs, at.direction))
                fail_schema("transition atom direction is not a valid tuple");
            if (at.state >= a.state_count) fail_schema("transition atom targets unknown state");
            for (const auto& s : at.push)
                if (s != kBottom && !symbols.count(s))
                    fail_schema("transition atom pushes unknown symbol '" + s + "'");
            if (!push_ok(top, at.push))
                fail_schema("transition atom push violates the bottom discipline");
        });
    }
    for (std::size_t q = 0; q < a.state_count; ++q)
        for (const auto& letter : letters)
            for (const auto& top : tops)
                if (!a.delta.count({q, letter, top}))
                    fail_schema("transition table is not total (state " + std::to_string(q) +
                                ", letter {" + letter_key(letter) + "}, top '" + top + "')");

    if (a.nondeterministic && !is_npta(a))
        fail_schema("nondeterministic flag set but the table is not in exact-cover shape");

    if (a.guide) {
        const auto ci = component_index(a.dirs, a.guide->component);
        if (!ci) fail_schema("guide component '" + a.guide->component + "' unknown");
        for (const auto& [key, value] : a.delta) {
            const auto& [q, letter, top] = key;
            (void)q;
            pb_for_each_atom(value, [&](const PbAtom& at) {
                if (guide_push(*a.guide, letter, top, at.direction[*ci]) != at.push)
                    fail_schema("transition atom push disagrees with the stack guide");
            });
        }
    }
}

bool is_npta(const Apta& a) {
    const auto all = enumerate_directions(a.dirs);
    std::set<std::string> want;
    for (const auto& d : all) want.insert(direction_key(d));
    for (const auto& [key, value] : a.delta) {
        for (const auto& disjunct : pb_disjuncts(value)) {
            if (disjunct->kind == PbKind::False) continue;
            auto atoms = pb_conjunct_atoms(disjunct);
            if (!atoms) return false;
            std::map<std::string, std::size_t> cover;
            for (const auto& at : *atoms) ++cover[direction_key(at.direction)];
            if (cover.size() != want.size()) return false;
            for (const auto& [dk, n] : cover)
                if (n != 1 || !want.count(dk)) return false;
        }
    }
    return true;
}

void normalize_colours(Apta& a) {
    std::set<int> distinct(a.colours.begin(), a.colours.end());
    std::map<int, int> remap;
    int prev_old = 0;
    int prev_new = 0;
    bool first = true;
    for (int c : distinct) {
        if (first) {
            remap[c] = c % 2;
            first = false;
        } else {
            remap[c] = prev_new + (c % 2 != prev_old % 2 ? 1 : 0);
        }
        prev_old = c;
        prev_new = remap[c];
    }
    for (int& c : a.colours) c = remap.at(c);
}

std::optional<Guide> guided_stack_fn(const Apta& a) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < a.dirs.size(); ++i)
        if (a.dirs[i].name == "stack") order.push_back(i);
    for (std::size_t i = 0; i < a.dirs.size(); ++i)
        if (a.dirs[i].name != "stack") order.push_back(i);

    for (std::size_t ci : order) {
        Guide g;
        g.component = a.dirs[ci].name;
        bool ok = true;
        for (const auto& [key, value] : a.delta) {
            const auto& [q, letter, top] = key;
            (void)q;
            const std::string lk = letter_key(letter);
            pb_for_each_atom(value, [&](const PbAtom& at) {
                if (!ok) return;
                auto [it, fresh] = g.table.try_emplace({lk, top, at.direction[ci]}, at.push);
                if (!fresh && it->second != at.push) ok = false;
            });
            if (!ok) break;
        }
        if (ok) return g;
    }
    return std::nullopt;
}

Apta dualize(const Apta& a) {
    Apta out = a;
    for (auto& [key, value] : out.delta) value = pb_dualize(value);
    for (int& c : out.colours) ++c;
    out.nondeterministic = false;
    normalize_colours(out);
    return out;
}

Apta quotient_states(const Apta& a) {
    const auto letters = enumerate_letters(a.atoms);
    const auto tops = a.full_alphabet();

    std::map<int, std::size_t> by_colour;
    for (int c : a.colours) by_colour.emplace(c, by_colour.size());
    std::vector<std::size_t> cls(a.state_count);
    for (std::size_t q = 0; q < a.state_count; ++q) cls[q] = by_colour.at(a.colours[q]);
    for (;;) {
        std::map<std::string, std::size_t> fresh;
        std::vector<std::size_t> next(a.state_count);
        for (std::size_t q = 0; q < a.state_count; ++q) {
            std::string sig = std::to_string(cls[q]);
            for (const auto& letter : letters)
                for (const auto& top : tops) {
                    PosBool row = pb_map_atoms(a.at(q, letter, top), [&](const PbAtom& at) {
                        PbAtom r = at;
                        r.state = cls[at.state];
                        return r;
                    });
                    sig += '#';
                    sig += pb_to_string(row);
                }
            auto [it, added] = fresh.emplace(std::move(sig), fresh.size());
            (void)added;
            next[q] = it->second;
        }
        if (next == cls) break;
        cls = std::move(next);
    }

    std::size_t classes = 0;
    for (std::size_t c : cls) classes = std::max(classes, c + 1);
    if (classes == a.state_count) return a;
    std::vector<std::size_t> rep(classes, static_cast<std::size_t>(-1));
    for (std::size_t q = 0; q < a.state_count; ++q)
        if (rep[cls[q]] == static_cast<std::size_t>(-1)) rep[cls[q]] = q;

    Apta out;
    out.stack_alphabet = a.stack_alphabet;
    out.dirs = a.dirs;
    out.atoms = a.atoms;
    out.state_count = classes;
    out.initial = cls[a.initial];
    out.colours.resize(classes);
    for (std::size_t k = 0; k < classes; ++k) out.colours[k] = a.colours[rep[k]];
    for (std::size_t k = 0; k < classes; ++k)
        for (const auto& letter : letters)
            for (const auto& top : tops)
                out.delta[{k, letter, top}] =
                    pb_map_atoms(a.at(rep[k], letter, top), [&](const PbAtom& at) {
                        PbAtom r = at;
                        r.state = cls[at.state];
                        return r;
                    });
    out.guide = a.guide;
    out.nondeterministic = a.nondeterministic && is_npta(out);
    normalize_colours(out);
    return out;
}

Apta narrow(const Apta& a, const std::vector<std::string>& keep) {
    std::set<std::string> keep_set(keep.begin(), keep.end());
    if (keep_set.size() != keep.size()) fail_precondition("narrow: duplicate component name");
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < a.dirs.size(); ++i)
        if (keep_set.count(a.dirs[i].name)) {
            kept.push_back(i);
            keep_set.erase(a.dirs[i].name);
        }
    if (!keep_set.empty())
        fail_precondition("narrow: component '" + *keep_set.begin() + "' does not exist");
    if (kept.empty()) fail_precondition("narrow: at least one component must be kept");

    Apta out = a;
    out.dirs.clear();
    for (std::size_t i : kept) out.dirs.push_back(a.dirs[i]);
    for (auto& [key, value] : out.delta)
        value = pb_map_atoms(value, [&](const PbAtom& at) {
            PbAtom r = at;
            r.direction.clear();
            for (std::size_t i : kept) r.direction.push_back(at.direction[i]);
            return r;
        });
    out.nondeterministic = false;
    if (a.guide && !component_index(out.dirs, a.guide->component)) out.guide.reset();
    normalize_colours(out);
    return out;
}

Apta project(const Apta& n, const std::string& atom) {
    if (!n.nondeterministic)
        fail_precondition("project requires the nondeterministic shape");
    if (std::find(n.atoms.begin(), n.atoms.end(), atom) == n.atoms.end())
        fail_precondition("projected atom '" + atom + "' is not in the letter alphabet");

    Apta out = n;
    for (auto& [key, value] : out.delta) {
        const auto& [q, letter, top] = key;
        std::set<std::string> without = letter;
        without.erase(atom);
        std::set<std::string> with = without;
        with.insert(atom);
        value = pb_or2(n.at(q, without, top), n.at(q, with, top));
    }

    // A pure decode guide never depends on the letter, so it survives the
    // merge verbatim. A table-backed guide is re-certified on its component:
    // the merged letters need fresh keys, and a conflict means the original
    // function actually depended on the projected atom.
    if (n.guide && !(n.guide->decode_fallback && n.guide->table.empty())) {
        Guide g;
        g.component = n.guide->component;
        g.decode_fallback = false;
        const std::size_t ci = *component_index(out.dirs, g.component);
        bool ok = true;
        for (const auto& [key, value] : out.delta) {
            const std::string lk = letter_key(std::get<1>(key));
            const std::string& top = std::get<2>(key);
            pb_for_each_atom(value, [&](const PbAtom& at) {
                if (!ok) return;
                auto [it, fresh] = g.table.try_emplace({lk, top, at.direction[ci]}, at.push);
                if (!fresh && it->second != at.push) ok = false;
            });
            if (!ok) break;
        }
        if (!ok) fail_precondition("projection broke the stack guide");
        out.guide = std::move(g);
    }
    normalize_colours(out);
    return out;
}

Apta simulate(const Apta& a, const Budget& budget) {
    if (!a.guide) fail_precondition("simulate requires a stack guide");
    if (a.nondeterministic && is_npta(a)) {
        Apta out = a;
        normalize_colours(out);
        return out;
    }
    const std::size_t guide_ci = *component_index(a.dirs, a.guide->component);

    TraceMonitor monitor(a.colours, budget);
    const auto letters = enumerate_letters(a.atoms);
    const auto tops = a.full_alphabet();
    const auto dir_tuples = enumerate_directions(a.dirs);

    // Interned subset states (sorted tracked set, monitor state).
    std::map<std::pair<std::vector<std::size_t>, std::size_t>, std::size_t> ids;
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> work;
    auto intern = [&](std::vector<std::size_t> set, std::size_t w) {
        auto it = ids.find({set, w});
        if (it != ids.end()) return it->second;
        const std::size_t id = ids.size();
        ids.emplace(std::make_pair(set, w), id);
        work.push_back({std::move(set), w});
        budget.charge_states(ids.size() + 1);
        return id;
    };
    intern({a.initial}, monitor.initial());

    // The accepting sink receives directions with no tracked obligation. Its
    // pushes copy the top, and the guide gains overriding entries wherever
    // its own answer is missing or breaks the bottom discipline there.
    Guide out_guide = *a.guide;
    auto sink_push = [&](const std::set<std::string>& letter, const std::string& top,
                         const std::string& value) -> StackWord {
        const StackWord keep_top{top};
        bool usable = false;
        try {
            StackWord w = guide_push(out_guide, letter, top, value);
            usable = push_ok(top, w);
            if (usable) return w;
        } catch (const Error&) {
        }
        if (!usable) out_guide.table[{letter_key(letter), top, value}] = keep_top;
        return keep_top;
    };

    std::map<std::tuple<std::size_t, std::set<std::string>, std::string>, PosBool> delta;
    std::size_t acc_reserved = 0;  // patched to the real sink id afterwards
    const std::size_t acc_mark = static_cast<std::size_t>(-1);

    for (std::size_t head = 0; head < work.size(); ++head) {
        if (std::getenv("SLIVER_TRACE") && head % 2048 == 0)
            std::fprintf(stderr, "[sim] head=%zu states=%zu tracked=%zu\n", head, ids.size(),
                         work[head].first.size());
        const auto [set, w] = work[head];
        for (const auto& letter : letters) {
            for (const auto& top : tops) {
                // One model choice per tracked state; a combination induces
                // the relation fed to the monitor per direction.
                std::vector<std::vector<std::set<PbAtom>>> choices;
                bool dead = false;
                for (std::size_t q : set) {
                    choices.push_back(pb_models(a.at(q, letter, top)));
                    if (choices.back().empty()) dead = true;
                }
                std::vector<PosBool> disjuncts;
                std::set<std::string> seen_disjuncts;
                if (!dead) {
                    double combos = 1;
                    for (const auto& c : choices) combos *= static_cast<double>(c.size());
                    if (combos > static_cast<double>(1 << 18))
                        fail_budget("alternation removal enumerates " +
                                    std::to_string(combos) + " run-graph choices for one row");
                    std::vector<std::size_t> pick(set.size(), 0);
                    for (;;) {
                        std::map<std::string, Relation> rel;
                        std::map<std::string, StackWord> pushes;
                        for (std::size_t i = 0; i < set.size(); ++i)
                            for (const PbAtom& at : choices[i][pick[i]]) {
                                const std::string dk = direction_key(at.direction);
                                rel[dk].push_back({set[i], at.state});
                                pushes.emplace(dk, at.push);
                            }
                        std::vector<PosBool> conj;
                        for (const auto& d : dir_tuples) {
                            const std::string dk = direction_key(d);
                            PbAtom at;
                            at.direction = d;
                            auto it = rel.find(dk);
                            if (it == rel.end()) {
                                at.state = acc_mark;
                                at.push = sink_push(letter, top, d[guide_ci]);
                            } else {
                                Relation& r = it->second;
                                std::sort(r.begin(), r.end());
                                r.erase(std::unique(r.begin(), r.end()), r.end());
                                std::vector<std::size_t> targets;
                                for (const auto& [src, tgt] : r) targets.push_back(tgt);
                                std::sort(targets.begin(), targets.end());
                                targets.erase(std::unique(targets.begin(), targets.end()),
                                              targets.end());
                                at.state = intern(std::move(targets), monitor.step(w, r));
                                at.push = pushes.at(dk);
                            }
                            conj.push_back(pb_atom(std::move(at)));
                        }
                        PosBool disjunct = pb_and(std::move(conj));
                        std::string dkey = pb_to_string(disjunct);
                        if (seen_disjuncts.insert(std::move(dkey)).second)
                            disjuncts.push_back(std::move(disjunct));

                        std::size_t i = 0;
                        while (i < pick.size() && ++pick[i] == choices[i].size())
                            pick[i++] = 0;
                        if (i == pick.size()) break;
                    }
                }
                delta[{head, letter, top}] =
                    disjuncts.empty() ? pb_false() : pb_or(std::move(disjuncts));
            }
        }
    }

    acc_reserved = work.size();
    Apta out;
    out.stack_alphabet = a.stack_alphabet;
    out.dirs = a.dirs;
    out.atoms = a.atoms;
    out.state_count = acc_reserved + 1;
    out.initial = 0;
    out.colours.resize(out.state_count, 0);
    for (const auto& [key, id] : ids) out.colours[id] = monitor.colour(key.second);
    out.nondeterministic = true;

    for (auto& [key, value] : delta)
        out.delta[key] = pb_map_atoms(value, [&](const PbAtom& at) {
            PbAtom r = at;
            if (r.state == acc_mark) r.state = acc_reserved;
            return r;
        });
    for (const auto& letter : letters)
        for (const auto& top : tops) {
            std::vector<PosBool> conj;
            for (const auto& d : dir_tuples) {
                PbAtom at;
                at.direction = d;
                at.state = acc_reserved;
                at.push = sink_push(letter, top, d[guide_ci]);
                conj.push_back(pb_atom(std::move(at)));
            }
            out.delta[{acc_reserved, letter, top}] = pb_and(std::move(conj));
        }
    out.guide = std::move(out_guide);
    normalize_colours(out);
    return out;
}

}  // namespace sliver
