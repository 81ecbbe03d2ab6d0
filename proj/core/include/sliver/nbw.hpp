#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sliver/error.hpp"
#include "sliver/logic.hpp"

namespace sliver {

// Nondeterministic Büchi word automaton. Letters are subsets of `atoms`,
// encoded as bitmasks over the atom indices. Transitions absent from the
// table lead to an implicit rejecting sink, which keeps the relation total.
struct Nbw {
    std::vector<std::string> atoms;
    std::size_t state_count = 0;
    std::set<std::size_t> initials;
    std::set<std::size_t> accepting;
    std::map<std::pair<std::size_t, std::uint32_t>, std::set<std::size_t>> delta;

    std::uint32_t letter_mask(const std::set<std::string>& letter) const;
};

// Translates a path formula into a Büchi automaton over the alphabet of its
// maximal state subformulas: every State leaf is treated as an opaque atom
// named by its printing, except the constant true/false leaves. The language
// is exactly the set of infinite words satisfying the formula.
Nbw ltl_to_nbw(const QctlPathRef& psi, const Budget& budget = {});

// Acceptance of the eventually periodic word prefix . loop^omega.
bool nbw_accepts_lasso(const Nbw& a, const std::vector<std::uint32_t>& prefix,
                       const std::vector<std::uint32_t>& loop);

}  // namespace sliver
