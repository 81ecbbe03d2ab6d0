#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sliver/error.hpp"
#include "sliver/games_finite.hpp"
#include "sliver/stackword.hpp"

namespace sliver {

// One move of a pushdown parity game: the current top symbol is replaced by
// `push` (topmost first) and control passes to `to`. An empty push pops.
struct PpgRule {
    std::size_t to = 0;
    StackWord push;
};

// Max-parity game played on the configuration graph of a pushdown system.
// A configuration is a control state together with a full stack content
// ending in kBottom. Rules are keyed by (control, top symbol); a
// configuration whose key has no rules is a dead end and loses for the
// owner of its control state. The bottom marker is never removed: rules
// keyed on kBottom push words that end in kBottom, all other rules push
// plain words.
struct Ppg {
    std::vector<std::string> controls;
    std::vector<Player> owner;
    std::vector<int> colour;
    // Symbols usable above the bottom marker; kBottom itself is excluded.
    std::vector<std::string> stack_alphabet;
    std::map<std::pair<std::size_t, std::string>, std::vector<PpgRule>> rules;
    std::size_t initial_control = 0;
    StackWord initial_stack;
};

std::vector<std::string> validate_ppg(const Ppg& g);

// Exact winner of the initial configuration when the reachable part of the
// configuration graph is finite. Explores configurations breadth-first and
// solves the resulting finite game; returns nullopt once more than
// config_cap configurations have been reached (config_cap 0 removes the cap,
// in which case the call diverges on games with unbounded reachable stacks).
std::optional<Player> solve_pushdown_bounded(const Ppg& g, std::size_t config_cap,
                                             const Budget& budget = {});

// Winner of the initial configuration via the reduction to a finite parity
// game over (control, top symbol, claim vector) positions. A claim vector
// promises, for every colour, the set of controls a pop of the current top
// may land in when that colour is the maximum seen since the push; Eve
// announces claims at pushes and Adam either descends to verify one or
// believes it and skips ahead. Exact for every game, but the claim space is
// exponential in pop targets times colours, so the vertex budget makes wide
// games fail with a budget error rather than complete.
Player solve_pushdown_walukiewicz(const Ppg& g, const Budget& budget = {});

// Winner of the initial configuration. Tries the bounded-configuration
// solver first (capped by the vertex budget) and falls back to the claim
// reduction when the game is not visibly bounded. Budget exhaustion is
// reported as an error, never as a wrong verdict.
Player solve_pushdown_parity(const Ppg& g, const Budget& budget = {});

}  // namespace sliver
