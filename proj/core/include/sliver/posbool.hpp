#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sliver {

// One atom of a positive boolean transition formula: send the automaton to
// `state` in direction `direction` (one value per named direction component,
// in component order), replacing the current stack top by `push` (topmost
// first; may end in the bottom symbol when rewriting the bottom).
struct PbAtom {
    std::vector<std::string> direction;
    std::size_t state = 0;
    std::vector<std::string> push;

    friend auto operator<=>(const PbAtom&, const PbAtom&) = default;
};

enum class PbKind { True, False, Atom, And, Or };

struct PbNode;
using PosBool = std::shared_ptr<const PbNode>;

// Immutable n-ary tree. Negation never occurs; complementation is done
// structurally by pb_dualize.
struct PbNode {
    PbKind kind;
    PbAtom atom;               // Atom only.
    std::vector<PosBool> kids; // And/Or only.
};

PosBool pb_true();
PosBool pb_false();
PosBool pb_atom(PbAtom atom);
// n-ary constructors keep the given structure except that an empty And is the
// constant true, an empty Or the constant false, and a singleton is unwrapped.
PosBool pb_and(std::vector<PosBool> kids);
PosBool pb_or(std::vector<PosBool> kids);
PosBool pb_and2(PosBool a, PosBool b);
PosBool pb_or2(PosBool a, PosBool b);

bool pb_equal(const PosBool& a, const PosBool& b);
// Total order on formulas; used for canonical sorting and deduplication.
int pb_compare(const PosBool& a, const PosBool& b);

std::string pb_to_string(const PosBool& f);

// Truth value under an atom valuation.
bool pb_eval(const PosBool& f, const std::function<bool(const PbAtom&)>& truth);

// Swap And/Or and True/False; atoms unchanged.
PosBool pb_dualize(const PosBool& f);

// Rebuild with every atom rewritten. The tree shape is preserved.
PosBool pb_map_atoms(const PosBool& f, const std::function<PbAtom(const PbAtom&)>& fn);
// Rebuild with every atom replaced by an arbitrary formula.
PosBool pb_replace_atoms(const PosBool& f, const std::function<PosBool(const PbAtom&)>& fn);

void pb_for_each_atom(const PosBool& f, const std::function<void(const PbAtom&)>& fn);
std::vector<PbAtom> pb_atoms(const PosBool& f);

// Constant folding, flattening of nested And/Or, deduplication of equal
// children (sorted canonically). Only used where structure is ours to choose;
// the automaton operations themselves are structure-preserving.
PosBool pb_simplify(const PosBool& f);

// Top-level disjunct list: flattens nested Or. A non-Or formula is its own
// single disjunct.
std::vector<PosBool> pb_disjuncts(const PosBool& f);
// Every way of satisfying f as a set of its atoms (the DNF read as sets,
// deduplicated). An unsatisfiable formula has no models; a valid one has the
// empty model. `cap` bounds the intermediate model count.
std::vector<std::set<PbAtom>> pb_models(const PosBool& f, std::size_t cap = 4096);
// Atom list of a pure conjunction (flattening nested And). Returns nullopt if
// anything other than atoms occurs.
std::optional<std::vector<PbAtom>> pb_conjunct_atoms(const PosBool& f);

}  // namespace sliver
