#pragma once

#include <cstddef>
#include <set>

#include "sliver/arena.hpp"
#include "sliver/automata.hpp"
#include "sliver/error.hpp"
#include "sliver/logic.hpp"

namespace sliver {

// Component indices (1-based) a formula may distinguish: the intersection of
// every concrete observation occurring in it, or all components when no
// quantifier occurs.
std::set<int> observed_components(const QctlStateRef& f, std::size_t components);

// Direction product automata for `f` run on: one component "c<i>" per
// observed model component i, holding that component's value set, followed by
// a "stack" component holding the keys of the pushed words of `k` plus the
// empty (popping) word.
Directions formula_directions(const Pcks& k, const QctlStateRef& f);

// Compiles `phi`, evaluated from `state` of `k`, into an automaton over the
// quantified atoms of `phi`, guided on the "stack" component by key decoding.
// It runs on complete trees over formula_directions(k, phi) whose labels
// carry the quantified atoms; membership at the root with initial stack
// content gamma decides satisfaction at the configuration (state, gamma),
// with quantified labellings read off the input tree and free atoms resolved
// against the labelling acceptors of `k`.
//
// Preconditions: `k` valid; quantified atoms of `phi` distinct from its free
// atoms (normalize_quantified_atoms establishes this); every quantifier
// observes a subset of what its body's quantifiers observe. Violations raise
// precondition errors; state caps raise budget errors.
Apta build_formula_automaton(const Pcks& k, const QctlStateRef& phi, std::size_t state,
                             const Budget& budget = {});

}  // namespace sliver
