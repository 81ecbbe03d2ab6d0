#pragma once

#include <vector>

#include "sliver/automata.hpp"
#include "sliver/games_pushdown.hpp"
#include "sliver/tree.hpp"

namespace sliver {

// The acceptance game of an alternating pushdown tree automaton run from a
// node of a regular tree. Eve resolves disjunctions, Adam conjunctions; an
// atom move descends the tree in its direction, replaces the stack top by
// the atom's push word, and hands the new node's letter to the successor
// state. Control colours come from the automaton states, so Eve wins the
// game exactly when the automaton accepts the subtree at `node` starting
// with stack `stack0` (topmost first, ending in the bottom symbol).
//
// The tree must use the automaton's direction product and label its nodes
// with subsets of the automaton's atom alphabet.
Ppg acceptance_game(const Apta& a, const RegularTree& t,
                    const std::vector<Direction>& node, const StackWord& stack0);

// Eve's verdict of the acceptance game.
bool membership(const Apta& a, const RegularTree& t, const std::vector<Direction>& node,
                const StackWord& stack0, const Budget& budget = {});

}  // namespace sliver
