#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sliver/directions.hpp"
#include "sliver/error.hpp"
#include "sliver/posbool.hpp"
#include "sliver/stackword.hpp"

namespace sliver {

// Canonical key for a letter (a subset of the atom alphabet): the members
// joined by commas in their set order.
std::string letter_key(const std::set<std::string>& letter);

// Stack guide: a function from (letter, top symbol, value of one designated
// direction component) to the word replacing the top. Explicit table entries
// take precedence; with decode_fallback the component value itself is parsed
// as a stack word key ('+'-joined symbols, empty for the popping word).
struct Guide {
    std::string component;
    std::map<std::tuple<std::string, std::string, std::string>, StackWord> table;
    bool decode_fallback = false;
};

StackWord guide_push(const Guide& g, const std::set<std::string>& letter,
                     const std::string& top, const std::string& value);

// Alternating pushdown tree automaton with max-parity acceptance. It runs on
// trees whose nodes carry letters (subsets of `atoms`) and whose directions
// are tuples over `dirs`; each copy additionally maintains a stack over
// `stack_alphabet` plus the unremovable bottom symbol. A transition is chosen
// by the current state, the node letter, and the top of the stack; its
// positive boolean value combines atoms [direction, state, push].
struct Apta {
    std::vector<std::string> stack_alphabet;  // bottom symbol excluded
    Directions dirs;
    std::vector<std::string> atoms;
    std::size_t state_count = 0;
    std::size_t initial = 0;
    std::vector<int> colours;
    std::map<std::tuple<std::size_t, std::set<std::string>, std::string>, PosBool> delta;
    bool nondeterministic = false;  // promises the exact-cover DNF shape
    std::optional<Guide> guide;

    std::vector<std::string> full_alphabet() const;
    const PosBool& at(std::size_t state, const std::set<std::string>& letter,
                      const std::string& top) const;
};

// Structural checks: total transition table, well-formed atoms, the bottom
// discipline on pushes, DNF shape when the nondeterministic flag is set, and
// guide consistency for every atom when a guide is present.
void validate_apta(const Apta& a);

// Exact-cover DNF shape: every transition value is a disjunction whose
// disjuncts are false or conjunctions of atoms covering every direction
// exactly once.
bool is_npta(const Apta& a);

// Remap colours onto the smallest contiguous range with the same parities
// (consecutive distinct colours of equal parity merge).
void normalize_colours(Apta& a);

// Searches the direction components for one whose value determines the stack
// word of every atom (given letter and top); returns the certifying guide.
// A component named "stack" is preferred, then declaration order decides.
std::optional<Guide> guided_stack_fn(const Apta& a);

// Complementation: dualized transition values, colours shifted by one.
Apta dualize(const Apta& a);

// Merges states that are bisimilar (equal colour, equal rows up to the
// partition, syntactically compared). Language-preserving; the
// nondeterministic flag survives only if the merged rows still have the
// nondeterministic shape.
Apta quotient_states(const Apta& a);

// Restriction to a sub-product of the direction components: atom directions
// lose the dropped components, everything else is untouched. The guide
// survives when its component is kept.
Apta narrow(const Apta& a, const std::vector<std::string>& keep);

// Existential projection of one letter atom. Requires the nondeterministic
// shape; the result reads the projected atom but ignores it.
Apta project(const Apta& n, const std::string& atom);

// Alternation removal for guided automata: an equivalent nondeterministic
// automaton whose states pair a set of tracked states with a deterministic
// parity monitor watching all traces of the guessed run graph.
Apta simulate(const Apta& a, const Budget& budget = {});

// All letters over the given atom set, in increasing subset-mask order.
std::vector<std::set<std::string>> enumerate_letters(const std::vector<std::string>& atoms);

}  // namespace sliver
