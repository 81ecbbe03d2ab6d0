#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sliver/arena.hpp"
#include "sliver/logic.hpp"

namespace sliver {

// Partial assignment of strategy variables to agents, grown by binding
// operators during formula translation.
using Binding = std::map<std::string, std::string>;

// True when partition `fine` refines partition `coarse`: every block of the
// former lies inside a block of the latter. Partitions are over arena control
// states.
bool partition_refines(const std::vector<std::set<std::size_t>>& fine,
                       const std::vector<std::set<std::size_t>>& coarse);

// First pair of nested strategy quantifiers (outer symbol, inner symbol)
// whose observations break the hierarchy: the inner one fails to refine the
// outer one. Empty when the instance is hierarchical.
std::optional<std::pair<std::string, std::string>> hierarchy_violation(const Pga& g,
                                                                       const SliStateRef& f);
bool check_hierarchical_instance(const Pga& g, const SliStateRef& f);

// Atom recording the last joint action, one per joint action of `g` in
// joint-action order. Named "last_" + the '_'-joined action names, falling
// back to "last_" + index when action names make the joined forms collide,
// with apostrophes appended while any name is already a labelled atom.
std::vector<std::string> joint_action_atoms(const Pga& g);

// The compound structure of `g`: one state per (control, last joint action)
// with one component per observation symbol (the class of the control) plus
// the control itself and the joint action; transitions ignore the remembered
// action and step by the arena's; the labelling keeps the arena's acceptors
// and adds the joint-action atoms, true exactly at matching states.
Pcks reduce_model(const Pga& g);

// Translation of an SLi formula against `g`: strategy quantification becomes
// a block of quantified choice atoms (one per action) constrained to code a
// strategy, bindings extend `binding`, and path quantification relativizes to
// the outcomes respecting every bound strategy. Quantifier observations are
// the sets of observation components refined by the quantifier's own symbol.
QctlStateRef reduce_formula(const Pga& g, const SliStateRef& f, const Binding& binding);

// Full reduction of a sentence: (reduce_model, reduce_formula under the empty
// binding), after variable normalization and the hierarchy check. The output
// formula is hierarchical by construction.
std::pair<Pcks, QctlStateRef> reduce_instance(const Pga& g, const SliStateRef& f);

}  // namespace sliver
