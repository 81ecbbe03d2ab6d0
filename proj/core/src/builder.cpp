#include "sliver/builder.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sliver/nbw.hpp"
#include "sliver/posbool.hpp"

namespace sliver {

namespace {

void collect_observations(const QctlStateRef& f, std::vector<const std::set<int>*>& out);

void collect_observations(const QctlPathRef& p, std::vector<const std::set<int>*>& out) {
    if (!p) return;
    if (p->kind == QctlPathKind::State) {
        collect_observations(p->state, out);
        return;
    }
    collect_observations(p->lhs, out);
    collect_observations(p->rhs, out);
}

void collect_observations(const QctlStateRef& f, std::vector<const std::set<int>*>& out) {
    if (!f) return;
    switch (f->kind) {
        case QctlStateKind::Atom:
            return;
        case QctlStateKind::Exists:
            out.push_back(&f->obs);
            collect_observations(f->lhs, out);
            return;
        case QctlStateKind::Not:
            collect_observations(f->lhs, out);
            return;
        case QctlStateKind::Or:
            collect_observations(f->lhs, out);
            collect_observations(f->rhs, out);
            return;
        case QctlStateKind::Path:
            collect_observations(f->path, out);
            return;
    }
}

// Observation indices run over the model components 1..N plus N+1 for the
// stack letter of the unfolding.
std::set<int> intersect_observations(const std::vector<const std::set<int>*>& occ,
                                     std::size_t components) {
    std::set<int> result;
    if (occ.empty()) {
        for (std::size_t i = 1; i <= components + 1; ++i) result.insert(static_cast<int>(i));
        return result;
    }
    result = *occ.front();
    for (std::size_t j = 1; j < occ.size(); ++j) {
        std::set<int> next;
        std::set_intersection(result.begin(), result.end(), occ[j]->begin(), occ[j]->end(),
                              std::inserter(next, next.begin()));
        result = std::move(next);
    }
    return result;
}

std::string component_name(int i) { return "c" + std::to_string(i); }

constexpr const char* kStackComponent = "stack";

PosBool shift_states(const PosBool& v, std::size_t off) {
    if (off == 0) return v;
    return pb_map_atoms(v, [off](const PbAtom& a) {
        PbAtom b = a;
        b.state += off;
        return b;
    });
}

// The compilation context: one model, one atom alphabet (the quantified atoms
// of the root formula), one budget. Automata for subformulas are memoized per
// (printed formula, model state).
struct Builder {
    const Pcks& k;
    Budget budget;
    std::vector<std::string> alphabet;
    std::vector<std::set<std::string>> letters;
    std::vector<std::string> tops;
    std::vector<StackWord> stack_dirs;
    std::map<std::pair<std::size_t, std::string>, std::vector<const PcksRule*>> rules_by_top;
    std::map<std::pair<std::string, std::size_t>, Apta> memo;

    Builder(const Pcks& model, std::set<std::string> quantified, const Budget& b)
        : k(model), budget(b), alphabet(quantified.begin(), quantified.end()) {
        letters = enumerate_letters(alphabet);
        tops = k.full_alphabet();
        stack_dirs = succinct_directions(k);
        for (const PcksRule& r : k.rules) rules_by_top[{r.from, r.top}].push_back(&r);
    }

    std::set<int> all_components() const {
        return intersect_observations({}, k.components);
    }

    std::set<int> observed(const QctlStateRef& f) const {
        std::vector<const std::set<int>*> occ;
        collect_observations(f, occ);
        return intersect_observations(occ, k.components);
    }

    std::set<int> observed(const QctlPathRef& p) const {
        std::vector<const std::set<int>*> occ;
        collect_observations(p, occ);
        return intersect_observations(occ, k.components);
    }

    Directions dirs_for(const std::set<int>& obs) const {
        Directions dirs;
        for (int i : obs) {
            if (static_cast<std::size_t>(i) > k.components) continue;  // the stack index
            dirs.push_back({component_name(i), k.component_values(static_cast<std::size_t>(i))});
        }
        DirComponent stack{kStackComponent, {}};
        for (const StackWord& w : stack_dirs) stack.values.push_back(stack_word_key(w));
        dirs.push_back(std::move(stack));
        return dirs;
    }

    std::vector<std::string> project_state(std::size_t s, const std::set<int>& obs) const {
        std::vector<std::string> vals;
        for (int i : obs) {
            if (static_cast<std::size_t>(i) > k.components) continue;
            vals.push_back(k.states[s].tuple[static_cast<std::size_t>(i) - 1]);
        }
        return vals;
    }

    Direction model_direction(std::size_t s, const StackWord& push,
                              const std::set<int>& obs) const {
        Direction d = project_state(s, obs);
        d.push_back(stack_word_key(push));
        return d;
    }

    // Restriction of `a` to the components for `obs`. Skipped when nothing is
    // dropped, which keeps the nondeterministic flag of the input alive.
    Apta narrowed(const Apta& a, const std::set<int>& obs) const {
        std::vector<std::string> keep;
        for (const DirComponent& c : a.dirs) {
            if (c.name == kStackComponent) {
                keep.push_back(c.name);
                continue;
            }
            for (int i : obs) {
                if (c.name == component_name(i)) {
                    keep.push_back(c.name);
                    break;
                }
            }
        }
        if (keep.size() == a.dirs.size()) return a;
        return narrow(a, keep);
    }

    Apta skeleton(const std::set<int>& obs) const {
        Apta a;
        a.stack_alphabet = k.stack_alphabet;
        a.dirs = dirs_for(obs);
        a.atoms = alphabet;
        a.guide = Guide{kStackComponent, {}, true};
        return a;
    }

    Apta constant(bool value) const {
        Apta a = skeleton(all_components());
        a.state_count = 1;
        a.colours = {0};
        for (const auto& letter : letters)
            for (const auto& top : tops)
                a.delta[{0, letter, top}] = value ? pb_true() : pb_false();
        return a;
    }

    Apta quantified_atom(const std::string& p) const {
        Apta a = skeleton(all_components());
        a.state_count = 1;
        a.colours = {0};
        for (const auto& letter : letters) {
            PosBool v = letter.count(p) ? pb_true() : pb_false();
            for (const auto& top : tops) a.delta[{0, letter, top}] = v;
        }
        return a;
    }

    // Runs the labelling acceptor for (p, state) over the stack content by
    // popping one symbol per step, descending towards a fixed direction of
    // the input tree; the node labels never matter. At the bottom the last
    // symbol is fed without popping and the verdict is immediate.
    Apta free_atom(const std::string& p, std::size_t s) const {
        auto it = k.labelling.acceptors.find({p, k.states[s].name});
        if (it == k.labelling.acceptors.end()) return constant(false);
        const WordDfa& w = it->second;

        std::set<int> obs = all_components();
        std::size_t least = 0;
        for (std::size_t i = 1; i < k.states.size(); ++i)
            if (k.states[i].tuple < k.states[least].tuple) least = i;
        Direction down = model_direction(least, StackWord{}, obs);

        Apta a = skeleton(obs);
        a.state_count = 1 + w.states.size();
        a.colours.assign(a.state_count, 0);
        budget.charge_states(a.state_count);

        auto row = [&](std::size_t j, const std::string& top) -> PosBool {
            auto step = w.delta.find({j, top});
            if (step == w.delta.end()) return pb_false();
            if (top == kBottom)
                return w.accepting.count(step->second) ? pb_true() : pb_false();
            return pb_atom({down, 1 + step->second, StackWord{}});
        };
        for (const auto& top : tops) {
            for (const auto& letter : letters) {
                a.delta[{0, letter, top}] = row(w.initial, top);
                for (std::size_t j = 0; j < w.states.size(); ++j)
                    a.delta[{1 + j, letter, top}] = row(j, top);
            }
        }
        return a;
    }

    Apta disjunction(const QctlStateRef& f, std::size_t s) {
        std::set<int> obs = observed(f);
        Apta a1 = narrowed(build(f->lhs, s), obs);
        Apta a2 = narrowed(build(f->rhs, s), obs);

        Apta a = skeleton(obs);
        a.state_count = 1 + a1.state_count + a2.state_count;
        budget.charge_states(a.state_count);
        a.colours.push_back(0);
        a.colours.insert(a.colours.end(), a1.colours.begin(), a1.colours.end());
        a.colours.insert(a.colours.end(), a2.colours.begin(), a2.colours.end());

        const std::size_t off1 = 1;
        const std::size_t off2 = 1 + a1.state_count;
        for (const auto& [key, value] : a1.delta) {
            const auto& [q, letter, top] = key;
            a.delta[{off1 + q, letter, top}] = shift_states(value, off1);
        }
        for (const auto& [key, value] : a2.delta) {
            const auto& [q, letter, top] = key;
            a.delta[{off2 + q, letter, top}] = shift_states(value, off2);
        }
        for (const auto& letter : letters)
            for (const auto& top : tops)
                a.delta[{0, letter, top}] =
                    pb_or2(shift_states(a1.at(a1.initial, letter, top), off1),
                           shift_states(a2.at(a2.initial, letter, top), off2));
        normalize_colours(a);
        return a;
    }

    Apta quantification(const QctlStateRef& f, std::size_t s) {
        if (!f->obs.count(static_cast<int>(k.components) + 1))
            fail_precondition("quantifier on \"" + f->atom + "\" must observe the stack (" +
                              "component " + std::to_string(k.components + 1) + ")");
        std::set<int> inner_obs = observed(f->lhs);
        if (!std::includes(inner_obs.begin(), inner_obs.end(), f->obs.begin(), f->obs.end()))
            fail_precondition("quantifier on \"" + f->atom +
                              "\" observes components outside those of its body; the "
                              "formula is not hierarchical");
        Apta raw = narrowed(build(f->lhs, s), f->obs);
        Apta a1 = quotient_states(raw);
        if (std::getenv("SLIVER_TRACE"))
            std::fprintf(stderr, "[exists %s] body=%zu quotient=%zu colours=%d npta=%d\n",
                         f->atom.c_str(), raw.state_count, a1.state_count,
                         a1.colours.empty() ? -1 : *std::max_element(a1.colours.begin(),
                                                                     a1.colours.end()),
                         (int)a1.nondeterministic);
        Apta a2 = a1.nondeterministic ? std::move(a1) : simulate(a1, budget);
        return quotient_states(project(a2, f->atom));
    }

    // Product of a word automaton for the path formula with the model
    // transitions; the maximal state subformulas of the path become letter
    // guesses that are discharged by conjoining, per guess, the automaton of
    // the subformula or of its complement at the current model state.
    Apta path_quantification(const QctlPathRef& psi, std::size_t s) {
        std::set<int> obs = observed(psi);
        Nbw word = ltl_to_nbw(psi, budget);
        const std::size_t m = word.atoms.size();
        if (m > 16) fail_budget("path formula with " + std::to_string(m) + " state subformulas");

        std::map<std::string, QctlStateRef> by_name;
        for (const QctlStateRef& sub : max_state_subformulas(psi)) by_name[to_string(sub)] = sub;
        std::vector<QctlStateRef> subs;
        for (const std::string& name : word.atoms) {
            auto found = by_name.find(name);
            if (found == by_name.end())
                fail_internal("word automaton atom \"" + name + "\" is not a state subformula");
            subs.push_back(found->second);
        }

        const std::size_t nstates = k.states.size();
        const std::size_t product = word.state_count * nstates;
        auto product_id = [&](std::size_t q, std::size_t sprime) { return q * nstates + sprime; };

        std::vector<std::vector<Apta>> pos(nstates), neg(nstates);
        std::size_t next = product;
        std::vector<std::vector<std::size_t>> off_pos(nstates), off_neg(nstates);
        for (std::size_t sp = 0; sp < nstates; ++sp) {
            for (std::size_t i = 0; i < m; ++i) {
                pos[sp].push_back(narrowed(build(subs[i], sp), obs));
                neg[sp].push_back(dualize(pos[sp].back()));
                off_pos[sp].push_back(next);
                next += pos[sp].back().state_count;
                off_neg[sp].push_back(next);
                next += neg[sp].back().state_count;
            }
        }
        const std::size_t init_id = next;
        budget.charge_states(next + 1);

        Apta a = skeleton(obs);
        a.state_count = next + 1;
        a.initial = init_id;
        a.colours.assign(a.state_count, 0);
        for (std::size_t q = 0; q < word.state_count; ++q)
            for (std::size_t sp = 0; sp < nstates; ++sp)
                a.colours[product_id(q, sp)] = word.accepting.count(q) ? 2 : 1;

        for (std::size_t sp = 0; sp < nstates; ++sp) {
            for (std::size_t i = 0; i < m; ++i) {
                for (const auto* part : {&pos[sp][i], &neg[sp][i]}) {
                    const std::size_t off = part == &pos[sp][i] ? off_pos[sp][i] : off_neg[sp][i];
                    for (std::size_t q = 0; q < part->state_count; ++q)
                        a.colours[off + q] = part->colours[q];
                    for (const auto& [key, value] : part->delta) {
                        const auto& [q, letter, top] = key;
                        a.delta[{off + q, letter, top}] = shift_states(value, off);
                    }
                }
            }
        }

        // One step of the word automaton under a guessed letter, synchronous
        // with one model transition.
        auto word_step = [&](std::size_t q, std::size_t sp, const std::string& top,
                             std::uint32_t mask) -> PosBool {
            auto succ = word.delta.find({q, mask});
            if (succ == word.delta.end() || succ->second.empty()) return pb_false();
            auto rules = rules_by_top.find({sp, top});
            if (rules == rules_by_top.end()) return pb_false();
            std::vector<PosBool> parts;
            for (std::size_t qn : succ->second)
                for (const PcksRule* r : rules->second)
                    parts.push_back(pb_atom({model_direction(r->to, r->push, obs),
                                             product_id(qn, r->to), r->push}));
            return pb_or(std::move(parts));
        };

        for (std::size_t q = 0; q < word.state_count; ++q) {
            for (std::size_t sp = 0; sp < nstates; ++sp) {
                for (const auto& top : tops) {
                    for (const auto& letter : letters) {
                        std::vector<PosBool> guesses;
                        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
                            PosBool step = word_step(q, sp, top, mask);
                            if (step->kind == PbKind::False) continue;
                            std::vector<PosBool> parts{step};
                            bool dead = false;
                            for (std::size_t i = 0; i < m && !dead; ++i) {
                                const bool claimed = (mask >> i) & 1u;
                                const Apta& sub = claimed ? pos[sp][i] : neg[sp][i];
                                const std::size_t off =
                                    claimed ? off_pos[sp][i] : off_neg[sp][i];
                                PosBool v = sub.at(sub.initial, letter, top);
                                if (v->kind == PbKind::False) dead = true;
                                else if (v->kind != PbKind::True)
                                    parts.push_back(shift_states(v, off));
                            }
                            if (!dead) guesses.push_back(pb_and(std::move(parts)));
                        }
                        a.delta[{product_id(q, sp), letter, top}] = pb_or(std::move(guesses));
                    }
                }
            }
        }

        for (const auto& top : tops) {
            for (const auto& letter : letters) {
                std::vector<PosBool> starts;
                for (std::size_t q0 : word.initials)
                    starts.push_back(a.at(product_id(q0, s), letter, top));
                a.delta[{init_id, letter, top}] = pb_or(std::move(starts));
            }
        }
        normalize_colours(a);
        return a;
    }

    Apta build(const QctlStateRef& f, std::size_t s) {
        const std::pair<std::string, std::size_t> key{to_string(f), s};
        auto hit = memo.find(key);
        if (hit != memo.end()) return hit->second;

        Apta result;
        switch (f->kind) {
            case QctlStateKind::Atom:
                if (f->atom == kTrueAtom) result = constant(true);
                else if (f->atom == kFalseAtom) result = constant(false);
                else if (std::binary_search(alphabet.begin(), alphabet.end(), f->atom))
                    result = quantified_atom(f->atom);
                else result = free_atom(f->atom, s);
                break;
            case QctlStateKind::Not:
                result = dualize(build(f->lhs, s));
                break;
            case QctlStateKind::Or:
                result = disjunction(f, s);
                break;
            case QctlStateKind::Exists:
                result = quantification(f, s);
                break;
            case QctlStateKind::Path:
                result = path_quantification(f->path, s);
                break;
        }
        memo.emplace(key, result);
        return result;
    }
};

}  // namespace

std::set<int> observed_components(const QctlStateRef& f, std::size_t components) {
    std::vector<const std::set<int>*> occ;
    collect_observations(f, occ);
    return intersect_observations(occ, components);
}

Directions formula_directions(const Pcks& k, const QctlStateRef& f) {
    Builder b(k, quantified_atoms(f), Budget{});
    return b.dirs_for(b.observed(f));
}

Apta build_formula_automaton(const Pcks& k, const QctlStateRef& phi, std::size_t state,
                             const Budget& budget) {
    if (state >= k.states.size()) fail_precondition("state index out of range");
    std::set<std::string> quantified = quantified_atoms(phi);
    std::set<std::string> free = free_atoms(phi);
    for (const std::string& p : quantified) {
        if (free.count(p))
            fail_precondition("atom \"" + p +
                              "\" is both quantified and free; apply "
                              "normalize_quantified_atoms first");
        if (is_reserved_atom(p)) fail_precondition("reserved atom \"" + p + "\" quantified");
    }
    std::vector<const std::set<int>*> occ;
    collect_observations(phi, occ);
    for (const auto* o : occ)
        for (int i : *o)
            if (i < 1 || static_cast<std::size_t>(i) > k.components + 1)
                fail_precondition("observation component " + std::to_string(i) +
                                  " outside the model's components and the stack");
    Builder b(k, std::move(quantified), budget);
    return b.build(phi, state);
}

}  // namespace sliver
