#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sliver/error.hpp"

namespace sliver {

enum class Player { Eve, Adam };

Player opponent(Player p);

// Max-parity acceptance: the largest colour seen infinitely often decides;
// even is a win for Eve. A vertex with no outgoing edge loses for its owner.
struct Fpg {
    std::vector<std::string> names;
    std::vector<Player> owner;
    std::vector<int> colour;
    std::vector<std::vector<std::size_t>> edges;
    std::size_t initial = 0;
};

std::vector<std::string> validate_fpg(const Fpg& g);

struct FpgSolution {
    std::vector<Player> winner;
    // Positional winning moves: strategy[p][v] is set exactly when vertex v
    // is owned by p and won by p.
    std::vector<std::optional<std::size_t>> eve_moves;
    std::vector<std::optional<std::size_t>> adam_moves;
};

FpgSolution solve_finite_parity(const Fpg& g, const Budget& budget = {});

// Independently verifies a solution: each winning region is closed under the
// opponent's moves and the winner's strategy, and every cycle of the
// strategy-restricted region has the winner's parity. Returns violations.
std::vector<std::string> check_parity_solution(const Fpg& g, const FpgSolution& sol);

// Winner of an ultimately periodic colour sequence: the dominant (maximal)
// colour on the loop decides.
Player lasso_winner(const std::vector<int>& prefix_colours,
                    const std::vector<int>& loop_colours);

}  // namespace sliver
