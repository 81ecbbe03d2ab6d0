#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sliver/directions.hpp"

namespace sliver {

// Finitely generated complete tree over a direction product. Every node of
// the tree is reached from the root by a direction word; its subtree and
// label depend only on the generator state, and every generator state has a
// successor for every direction (completeness).
struct RegularTree {
    Directions dirs;
    std::vector<std::string> gen_states;
    std::size_t root_state = 0;
    Direction root_dir;  // the direction labelling the root node itself
    // (generator state, direction key) -> generator state; total.
    std::map<std::pair<std::size_t, std::string>, std::size_t> succ;
    std::vector<std::set<std::string>> labels;  // one atom set per generator state
};

std::vector<std::string> validate_tree(const RegularTree& t);

// Generator state reached by following `node` from the root.
std::size_t tree_state_at(const RegularTree& t, const std::vector<Direction>& node);

// Lift a tree over a sub-product to the full product `dirs`: kept components
// must appear in `dirs` (same names and values, any positions); successors
// ignore the added components. The root direction takes the given values on
// added components.
RegularTree widen_tree(const RegularTree& t, const Directions& dirs, const Direction& root_fill);

// The one-generator-state complete tree with empty labels over `dirs`,
// rooted at the given direction.
RegularTree full_tree(Directions dirs, Direction root);

}  // namespace sliver
