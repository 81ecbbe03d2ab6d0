#include "sliver/reduction.hpp"

#include <algorithm>
#include <set>

#include "sliver/error.hpp"

namespace sliver {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

// Index of the block of `partition` containing control state c.
std::size_t class_of(const std::vector<std::set<std::size_t>>& partition, std::size_t c) {
    for (std::size_t b = 0; b < partition.size(); ++b)
        if (partition[b].count(c)) return b;
    fail_internal("control state " + std::to_string(c) + " missing from a partition");
}

// Unique names: `primary` if already pairwise distinct, else `indexed`; then
// apostrophes appended to the whole family while it touches `forbidden`.
std::vector<std::string> fresh_family(std::vector<std::string> primary,
                                      std::vector<std::string> indexed,
                                      const std::set<std::string>& forbidden) {
    std::set<std::string> seen(primary.begin(), primary.end());
    std::vector<std::string>& names = seen.size() == primary.size() ? primary : indexed;
    for (bool clash = true; clash;) {
        clash = false;
        for (const std::string& n : names) clash = clash || forbidden.count(n);
        if (clash)
            for (std::string& n : names) n += "'";
    }
    return names;
}

std::set<std::string> labelled_atoms(const Pga& g) {
    std::set<std::string> atoms = g.labelling.atoms();
    atoms.insert(kTrueAtom);
    atoms.insert(kFalseAtom);
    return atoms;
}

// Shared tables of one translation run.
struct Translator {
    const Pga& g;
    std::vector<std::string> obs_names;
    std::vector<const std::vector<std::set<std::size_t>>*> obs_parts;
    std::vector<std::string> actions;                    // sorted
    std::vector<std::vector<std::string>> joints;        // joint-action order
    std::vector<std::string> joint_atom;                 // aligned with joints
    std::map<std::pair<std::string, std::string>, std::string> strat_atom;

    Translator(const Pga& arena, const SliStateRef& phi) : g(arena) {
        for (const auto& [name, partition] : g.observations) {
            obs_names.push_back(name);
            obs_parts.push_back(&partition);
        }
        actions = g.actions;
        std::sort(actions.begin(), actions.end());
        joints = g.joint_actions();
        joint_atom = joint_action_atoms(g);

        std::set<std::string> forbidden = labelled_atoms(g);
        forbidden.insert(joint_atom.begin(), joint_atom.end());
        if (phi) {
            const std::set<std::string> used = atoms_mentioned(phi);
            forbidden.insert(used.begin(), used.end());
        }
        std::set<std::string> vars = phi ? quantified_variables(phi) : std::set<std::string>{};
        if (phi) {
            // Bound-but-unquantified variables still need choice atoms.
            const std::set<std::string> free = free_variables(phi);
            vars.insert(free.begin(), free.end());
        }
        for (const std::string& var : vars) {
            std::vector<std::string> primary, indexed;
            for (std::size_t i = 0; i < actions.size(); ++i) {
                primary.push_back("p_" + var + "_" + actions[i]);
                indexed.push_back("p_" + var + "_" + std::to_string(i));
            }
            std::vector<std::string> family = fresh_family(primary, indexed, forbidden);
            for (std::size_t i = 0; i < actions.size(); ++i) {
                strat_atom[{var, actions[i]}] = family[i];
                forbidden.insert(family[i]);
            }
        }
    }

    const std::string& choice_atom(const std::string& var, const std::string& action) const {
        auto it = strat_atom.find({var, action});
        if (it == strat_atom.end())
            fail_internal("no choice atoms prepared for strategy variable \"" + var + "\"");
        return it->second;
    }

    // Components whose observation is refined by `symbol`, 1-based.
    std::set<int> translate_observation(const std::string& symbol) const {
        auto at = g.observations.find(symbol);
        if (at == g.observations.end())
            fail_precondition("unknown observation symbol \"" + symbol + "\"");
        std::set<int> out;
        for (std::size_t j = 0; j < obs_names.size(); ++j)
            if (partition_refines(at->second, *obs_parts[j])) out.insert(static_cast<int>(j) + 1);
        return out;
    }

    // The quantified atoms for `var` code one action per node: exactly one of
    // them holds, always, on all paths.
    QctlStateRef strategy_coding(const std::string& var) const {
        QctlPathRef any;
        for (const std::string& m : actions) {
            QctlPathRef pick = qp_embed(q_atom(choice_atom(var, m)));
            for (const std::string& other : actions)
                if (other != m) pick = qp_and(pick, qp_not(qp_embed(q_atom(choice_atom(var, other)))));
            any = any ? qp_or(any, pick) : pick;
        }
        return q_forall_path(qp_always(any));
    }

    // Along the path, whatever joint action the model records next agrees
    // with the choice atoms of every bound strategy.
    QctlPathRef outcomes(const Binding& binding) const {
        QctlPathRef any;
        for (std::size_t mi = 0; mi < joints.size(); ++mi) {
            QctlPathRef follow = qp_next(qp_embed(q_atom(joint_atom[mi])));
            for (const auto& [agent, var] : binding) {
                auto slot = std::find(g.agents.begin(), g.agents.end(), agent);
                if (slot == g.agents.end())
                    fail_precondition("unknown agent \"" + agent + "\"");
                const std::string& act = joints[mi][slot - g.agents.begin()];
                follow = qp_and(qp_embed(q_atom(choice_atom(var, act))), follow);
            }
            any = any ? qp_or(any, follow) : follow;
        }
        if (!any) fail_internal("arena has no joint actions");
        return qp_always(any);
    }

    QctlStateRef state(const SliStateRef& f, const Binding& binding) const {
        switch (f->kind) {
            case SliStateKind::Atom:
                return q_atom(f->atom);
            case SliStateKind::Not:
                return q_not(state(f->lhs, binding));
            case SliStateKind::Or:
                return q_or(state(f->lhs, binding), state(f->rhs, binding));
            case SliStateKind::Strat: {
                const std::set<int> obs = translate_observation(f->obs);
                QctlStateRef body = q_and(strategy_coding(f->var), state(f->lhs, binding));
                for (auto m = actions.rbegin(); m != actions.rend(); ++m)
                    body = q_exists(choice_atom(f->var, *m), obs, body);
                return body;
            }
            case SliStateKind::Bind: {
                Binding extended = binding;
                extended[f->agent] = f->var;
                return state(f->lhs, extended);
            }
            case SliStateKind::Path:
                return q_path(qp_and(outcomes(binding), path(f->path, binding)));
        }
        fail_internal("unreachable formula kind");
    }

    QctlPathRef path(const SliPathRef& p, const Binding& binding) const {
        switch (p->kind) {
            case SliPathKind::State:
                return qp_embed(state(p->state, binding));
            case SliPathKind::Not:
                return qp_not(path(p->lhs, binding));
            case SliPathKind::Or:
                return qp_or(path(p->lhs, binding), path(p->rhs, binding));
            case SliPathKind::Next:
                return qp_next(path(p->lhs, binding));
            case SliPathKind::Until:
                return qp_until(path(p->lhs, binding), path(p->rhs, binding));
        }
        fail_internal("unreachable path kind");
    }
};

void scan_hierarchy(const Pga& g, const SliStateRef& f,
                    std::vector<std::pair<std::string, const std::vector<std::set<std::size_t>>*>>& outer,
                    std::optional<std::pair<std::string, std::string>>& found);

void scan_hierarchy(const Pga& g, const SliPathRef& p,
                    std::vector<std::pair<std::string, const std::vector<std::set<std::size_t>>*>>& outer,
                    std::optional<std::pair<std::string, std::string>>& found) {
    if (!p || found) return;
    if (p->kind == SliPathKind::State) {
        scan_hierarchy(g, p->state, outer, found);
        return;
    }
    scan_hierarchy(g, p->lhs, outer, found);
    if (p->rhs) scan_hierarchy(g, p->rhs, outer, found);
}

void scan_hierarchy(const Pga& g, const SliStateRef& f,
                    std::vector<std::pair<std::string, const std::vector<std::set<std::size_t>>*>>& outer,
                    std::optional<std::pair<std::string, std::string>>& found) {
    if (!f || found) return;
    switch (f->kind) {
        case SliStateKind::Atom:
            return;
        case SliStateKind::Not:
        case SliStateKind::Bind:
            scan_hierarchy(g, f->lhs, outer, found);
            return;
        case SliStateKind::Or:
            scan_hierarchy(g, f->lhs, outer, found);
            scan_hierarchy(g, f->rhs, outer, found);
            return;
        case SliStateKind::Path:
            scan_hierarchy(g, f->path, outer, found);
            return;
        case SliStateKind::Strat: {
            auto at = g.observations.find(f->obs);
            if (at == g.observations.end())
                fail_precondition("unknown observation symbol \"" + f->obs + "\"");
            for (const auto& [symbol, partition] : outer) {
                if (!partition_refines(at->second, *partition)) {
                    found = std::make_pair(symbol, f->obs);
                    return;
                }
            }
            outer.emplace_back(f->obs, &at->second);
            scan_hierarchy(g, f->lhs, outer, found);
            outer.pop_back();
            return;
        }
    }
}

}  // namespace

bool partition_refines(const std::vector<std::set<std::size_t>>& fine,
                       const std::vector<std::set<std::size_t>>& coarse) {
    for (const auto& block : fine) {
        if (block.empty()) continue;
        bool inside = false;
        for (const auto& big : coarse) {
            if (std::includes(big.begin(), big.end(), block.begin(), block.end())) {
                inside = true;
                break;
            }
        }
        if (!inside) return false;
    }
    return true;
}

std::optional<std::pair<std::string, std::string>> hierarchy_violation(const Pga& g,
                                                                       const SliStateRef& f) {
    std::vector<std::pair<std::string, const std::vector<std::set<std::size_t>>*>> outer;
    std::optional<std::pair<std::string, std::string>> found;
    scan_hierarchy(g, f, outer, found);
    return found;
}

bool check_hierarchical_instance(const Pga& g, const SliStateRef& f) {
    return !hierarchy_violation(g, f).has_value();
}

std::vector<std::string> joint_action_atoms(const Pga& g) {
    const std::vector<std::vector<std::string>> joints = g.joint_actions();
    std::vector<std::string> primary, indexed;
    for (std::size_t i = 0; i < joints.size(); ++i) {
        primary.push_back("last_" + join(joints[i], "_"));
        indexed.push_back("last_" + std::to_string(i));
    }
    return fresh_family(primary, indexed, labelled_atoms(g));
}

Pcks reduce_model(const Pga& g) {
    const std::vector<std::vector<std::string>> joints = g.joint_actions();
    if (joints.empty()) fail_precondition("arena needs at least one action");
    std::map<std::vector<std::string>, std::size_t> joint_index;
    for (std::size_t i = 0; i < joints.size(); ++i) joint_index[joints[i]] = i;
    const std::vector<std::string> pm = joint_action_atoms(g);

    Pcks k;
    k.stack_alphabet = g.stack_alphabet;
    k.components = g.observations.size() + 2;
    auto compound = [&](std::size_t c, std::size_t mi) { return c * joints.size() + mi; };

    for (std::size_t c = 0; c < g.states.size(); ++c) {
        for (std::size_t mi = 0; mi < joints.size(); ++mi) {
            PcksState s;
            s.name = g.states[c] + "#" + join(joints[mi], ",");
            for (const auto& [name, partition] : g.observations)
                s.tuple.push_back(std::to_string(class_of(partition, c)));
            s.tuple.push_back(g.states[c]);
            s.tuple.push_back(join(joints[mi], ","));
            k.states.push_back(std::move(s));
        }
    }
    k.initial = compound(g.initial, 0);

    for (const auto& [key, target] : g.delta) {
        const auto& [c, top, move] = key;
        const std::size_t next = joint_index.at(move);
        for (std::size_t mi = 0; mi < joints.size(); ++mi)
            k.rules.push_back(
                {compound(c, mi), top, compound(target.first, next), target.second});
    }

    WordDfa all;
    all.states = {"any"};
    all.accepting = {0};
    for (const std::string& sym : g.full_alphabet()) all.delta[{0, sym}] = 0;

    for (std::size_t c = 0; c < g.states.size(); ++c) {
        for (std::size_t mi = 0; mi < joints.size(); ++mi) {
            const std::string& name = k.states[compound(c, mi)].name;
            for (const auto& [key, dfa] : g.labelling.acceptors)
                if (key.second == g.states[c]) k.labelling.acceptors[{key.first, name}] = dfa;
            k.labelling.acceptors[{pm[mi], name}] = all;
        }
    }
    return k;
}

QctlStateRef reduce_formula(const Pga& g, const SliStateRef& f, const Binding& binding) {
    Translator tr(g, f);
    return tr.state(f, binding);
}

std::pair<Pcks, QctlStateRef> reduce_instance(const Pga& g, const SliStateRef& f) {
    const std::vector<std::string> problems = validate_pga(g);
    if (!problems.empty()) fail_precondition("invalid arena: " + problems.front());
    if (!free_variables(f).empty())
        fail_precondition("formula is not a sentence: strategy variable \"" +
                          *free_variables(f).begin() + "\" is free");
    const SliStateRef normal = normalize_strategy_variables(f);
    if (auto witness = hierarchy_violation(g, normal))
        fail_precondition("instance is not hierarchical: quantifier for \"" + witness->second +
                          "\" occurs under the coarser \"" + witness->first + "\"");

    const std::set<std::string> mentioned = atoms_mentioned(normal);
    for (const std::string& name : joint_action_atoms(g))
        if (mentioned.count(name))
            fail_precondition("atom \"" + name + "\" collides with a generated action atom");

    std::pair<Pcks, QctlStateRef> out{reduce_model(g), reduce_formula(g, normal, {})};
    if (!check_hierarchical_qctl(out.second))
        fail_internal("reduction produced a non-hierarchical formula");
    return out;
}

}  // namespace sliver
