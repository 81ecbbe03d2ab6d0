#include "sliver/model_check.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "sliver/automata.hpp"
#include "sliver/builder.hpp"
#include "sliver/games_accept.hpp"
#include "sliver/reduction.hpp"
#include "sliver/tree.hpp"

namespace sliver {

namespace {

QctlPathRef widen_path(const QctlPathRef& p, int component);

QctlStateRef widen_state(const QctlStateRef& f, int component) {
    if (!f) return f;
    switch (f->kind) {
        case QctlStateKind::Atom:
            return f;
        case QctlStateKind::Not:
            return q_not(widen_state(f->lhs, component));
        case QctlStateKind::Or:
            return q_or(widen_state(f->lhs, component), widen_state(f->rhs, component));
        case QctlStateKind::Exists: {
            std::set<int> obs = f->obs;
            obs.insert(component);
            return q_exists(f->atom, std::move(obs), widen_state(f->lhs, component));
        }
        case QctlStateKind::Path:
            return q_path(widen_path(f->path, component));
    }
    fail_internal("unreachable formula kind");
}

QctlPathRef widen_path(const QctlPathRef& p, int component) {
    switch (p->kind) {
        case QctlPathKind::State:
            return qp_embed(widen_state(p->state, component));
        case QctlPathKind::Not:
            return qp_not(widen_path(p->lhs, component));
        case QctlPathKind::Or:
            return qp_or(widen_path(p->lhs, component), widen_path(p->rhs, component));
        case QctlPathKind::Next:
            return qp_next(widen_path(p->lhs, component));
        case QctlPathKind::Until:
            return qp_until(widen_path(p->lhs, component), widen_path(p->rhs, component));
    }
    fail_internal("unreachable path kind");
}

}  // namespace

QctlStateRef widen_observations(const QctlStateRef& f, int component) {
    return widen_state(f, component);
}

bool model_check_qctl(const Pcks& k, const QctlStateRef& phi, const Budget& budget) {
    const std::vector<std::string> problems = validate_pcks(k);
    if (!problems.empty()) fail_precondition("invalid model: " + problems.front());
    QctlStateRef f = normalize_quantified_atoms(phi);
    if (!check_hierarchical_qctl(f)) fail_precondition("formula is not hierarchical");
    f = widen_observations(f, static_cast<int>(k.components) + 1);

    const Apta a = quotient_states(build_formula_automaton(k, f, k.initial, budget));

    Direction root;
    const std::set<int> obs = observed_components(f, k.components);
    for (int i : obs) {
        if (static_cast<std::size_t>(i) > k.components) continue;
        root.push_back(k.states[k.initial].tuple[static_cast<std::size_t>(i) - 1]);
    }
    const std::string bottom_key = stack_word_key({kBottom});
    const std::vector<std::string>& stack_values = a.dirs.back().values;
    root.push_back(std::binary_search(stack_values.begin(), stack_values.end(), bottom_key)
                       ? bottom_key
                       : stack_word_key({}));

    const RegularTree t = full_tree(a.dirs, root);
    return membership(a, t, {}, {kBottom}, budget);
}

bool model_check_sli(const Pga& g, const SliStateRef& phi, const Budget& budget) {
    const auto [k, f] = reduce_instance(g, phi);
    return model_check_qctl(k, f, budget);
}

}  // namespace sliver
