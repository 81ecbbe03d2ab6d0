#pragma once

#include "sliver/arena.hpp"
#include "sliver/error.hpp"
#include "sliver/logic.hpp"

namespace sliver {

// Adds `component` to every quantifier observation of the formula.
QctlStateRef widen_observations(const QctlStateRef& f, int component);

// Decides whether `k` satisfies `phi` from its initial state with stack
// content [bottom]. The formula's quantifier observations range over the
// model components; the stack letter is made visible to all of them before
// the formula automaton is built and run on the full direction tree with
// empty labelling. Raises a precondition error when `k` is invalid or `phi`
// is not hierarchical, and budget errors from the game backend.
bool model_check_qctl(const Pcks& k, const QctlStateRef& phi, const Budget& budget = {});

// Decides whether arena `g` satisfies the SLi sentence `phi`: reduces the
// instance to a compound structure and a quantified formula, then decides
// that by model_check_qctl.
bool model_check_sli(const Pga& g, const SliStateRef& phi, const Budget& budget = {});

}  // namespace sliver
