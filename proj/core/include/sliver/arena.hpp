#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sliver/stackword.hpp"

namespace sliver {

// Deterministic finite word acceptor over stack symbols (including the
// bottom). Reads a full stack content topmost-first.
struct WordDfa {
    std::vector<std::string> states;
    std::size_t initial = 0;
    std::set<std::size_t> accepting;
    std::map<std::pair<std::size_t, std::string>, std::size_t> delta;

    // A missing transition rejects.
    bool accepts(const StackWord& word) const;
};

// One acceptor per (atom, state name); a missing entry means the atom never
// holds at that state.
struct RegularLabelling {
    std::map<std::pair<std::string, std::string>, WordDfa> acceptors;

    std::set<std::string> atoms() const;
};

// Pushdown compound Kripke structure. A state is a tuple of local values,
// one per component; propositional quantifiers observe subsets of the
// components.
struct PcksState {
    std::string name;
    std::vector<std::string> tuple;
};

struct PcksRule {
    std::size_t from = 0;
    std::string top;
    std::size_t to = 0;
    StackWord push;  // replaces the popped top symbol
};

struct Pcks {
    std::vector<std::string> stack_alphabet;  // without the bottom symbol
    std::size_t components = 1;
    std::vector<PcksState> states;
    std::size_t initial = 0;
    std::vector<PcksRule> rules;
    RegularLabelling labelling;  // keyed by (atom, state name)

    std::optional<std::size_t> state_index(const std::string& name) const;
    // Values occurring in component i (1-based), sorted.
    std::vector<std::string> component_values(std::size_t i) const;
    // Γ with the bottom appended, the reading alphabet of acceptors.
    std::vector<std::string> full_alphabet() const;
};

struct Config {
    std::size_t state = 0;
    StackWord stack;  // topmost first, ends in the bottom symbol

    friend auto operator<=>(const Config&, const Config&) = default;
};

// Pushdown game arena with visible stack. delta is total on the reachable
// (control, top) pairs; observation symbols are interpreted as partitions of
// the control states.
struct Pga {
    std::vector<std::string> actions;
    std::vector<std::string> agents;
    std::vector<std::string> stack_alphabet;
    std::vector<std::string> states;
    std::size_t initial = 0;
    std::map<std::tuple<std::size_t, std::string, std::vector<std::string>>,
             std::pair<std::size_t, StackWord>>
        delta;  // (control, top, joint action) -> (control, push)
    RegularLabelling labelling;
    std::map<std::string, std::vector<std::set<std::size_t>>> observations;

    std::optional<std::size_t> state_index(const std::string& name) const;
    std::vector<std::string> full_alphabet() const;
    // All joint actions, each a vector aligned with `agents`, in
    // lexicographic order of action names.
    std::vector<std::vector<std::string>> joint_actions() const;
};

// Structural checks: name sanity, bottom discipline of pushes, acceptor
// totality, uniqueness of state tuples, left-totality of the relation on all
// reachable (state, top) pairs. An empty result means valid.
std::vector<std::string> validate_pcks(const Pcks& k);
std::vector<std::string> validate_pga(const Pga& g);

// Exact set of (state, top) pairs occurring on configurations reachable from
// the initial one, via forward saturation of a stack automaton.
std::set<std::pair<std::size_t, std::string>> reachable_tops(const Pcks& k);

std::vector<Config> step_pcks(const Pcks& k, const Config& c);

std::set<std::string> eval_labelling(const RegularLabelling& l, const std::string& state,
                                     const StackWord& stack);

// All pushed words of the relation plus the empty word, deduplicated, sorted
// by their key form. These are the stack directions of the succinct
// unfolding; the empty word is a pop.
std::vector<StackWord> succinct_directions(const Pcks& k);

// One letter of a succinct path: the state entered and the word pushed over
// the popped top (the root letter instead carries the full initial stack).
struct SuccinctLetter {
    std::size_t state = 0;
    StackWord push;
};

// Replays a succinct path into the configuration it denotes. The root letter
// must name the initial state and carry a full stack content; popping the
// bottom is an error.
Config reconstruct(const Pcks& k, const std::vector<SuccinctLetter>& u);

// The succinct representation of a configuration path: inverse of
// reconstruct on genuine paths. Fails if consecutive configurations are not
// related by a single pop-and-push.
std::vector<SuccinctLetter> kappa(const Pcks& k, const std::vector<Config>& path);

}  // namespace sliver
