#pragma once

// ============================================================================
// Order-k stacks with collapse links, their operations, flattening, and
// deterministic acceptors over flattened linked words.
// ============================================================================

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sliver/error.hpp"

namespace sliver::hostacks {

inline constexpr const char* kBottom = "_bot";

// Order-0 stack entry. link_order == 0 means a plain symbol; otherwise the
// symbol carries an (name, link_order, link_index) collapse link with
// 2 <= link_order <= k and link_index >= 1.
struct HoSymbol {
  std::string name;
  int link_order = 0;
  std::size_t link_index = 0;

  bool linked() const { return link_order != 0; }
  bool operator==(const HoSymbol&) const = default;
  auto operator<=>(const HoSymbol&) const = default;
};

// Persistent order-k stack. A node of order 0 wraps a symbol; a node of
// order k >= 1 is a non-empty sequence of order-(k-1) nodes, topmost last.
class HoStack {
 public:
  HoStack() : ord_(0) {}
  explicit HoStack(HoSymbol sym) : ord_(0), sym_(std::move(sym)) {}
  HoStack(int order, std::vector<HoStack> items);

  int order() const { return ord_; }
  const HoSymbol& symbol() const;               // order 0 only
  const std::vector<HoStack>& items() const;    // order >= 1 only
  std::size_t height() const;                   // number of items

  bool operator==(const HoStack&) const = default;

 private:
  friend HoStack with_items(const HoStack&, std::vector<HoStack>);
  int ord_;
  HoSymbol sym_;
  std::vector<HoStack> items_;
};

// bottom_k: [ ... [_bot] ... ] nested to the given order.
HoStack bottom_stack(int order);

// top_i for 1 <= i <= ord(s)+1; top_{ord+1} is s itself, top_1 the top symbol
// wrapped as an order-0 node.
const HoStack& top_k(const HoStack& s, int i);

// The five §6.1 operations. All are partial; undefined applications raise
// precondition errors quoting the offending op.
HoStack push1(const HoStack& s, const HoSymbol& a);
HoStack pushk(const HoStack& s, int i);  // 2 <= i <= ord, duplicates top_i
HoStack popk(const HoStack& s, int i);   // defined iff |top_{i+1}(s)| > 1
HoStack push_link(const HoStack& s, const std::string& name, int ell);
HoStack collapse(const HoStack& s);

struct HoOpPush1 { std::string symbol; };
struct HoOpPushK { int order; };
struct HoOpPopK { int order; };
struct HoOpPushLink { std::string symbol; int order; };
struct HoOpCollapse {};
using HoOp = std::variant<HoOpPush1, HoOpPushK, HoOpPopK, HoOpPushLink, HoOpCollapse>;

HoStack apply_stack_op(const HoOp& op, const HoStack& s);

// Script syntax used by the CLI: "push1 a", "push2", "pop3", "pushlink a 2",
// "collapse".
HoOp parse_stack_op(const std::string& line);

// Bracket notation: "[[[_bot a]] [[_bot] [_bot (a,3,1)]]]". Whitespace
// between sibling items is optional next to brackets.
HoStack parse_stack(const std::string& text, int expected_order = -1);
std::string render_stack(const HoStack& s);

// Flattened linked word: letters are "[", "]" and symbol names; positions are
// 1-based. targets maps a linked symbol's position to the position of the `]`
// closing the stack its link denotes; links whose denoted stack does not lie
// strictly to the left are omitted.
struct FlatWord {
  std::vector<std::string> letters;
  std::map<std::size_t, std::size_t> targets;
};

FlatWord flatten(const HoStack& s);

// Deterministic acceptor over flattened linked words. delta3 is consulted at
// positions in the target map, keyed additionally by the state the run had
// just after the target position; elsewhere delta2 applies. A missing
// transition rejects.
struct LinkedDfa {
  std::vector<std::string> states;
  std::size_t initial = 0;
  std::set<std::size_t> accepting;
  std::map<std::pair<std::size_t, std::string>, std::size_t> delta2;
  std::map<std::tuple<std::size_t, std::string, std::size_t>, std::size_t> delta3;
};

bool run_linked_automaton(const LinkedDfa& dfa, const HoStack& s);
bool run_linked_automaton(const LinkedDfa& dfa, const FlatWord& w);

// Structural well-formedness: uniform child orders, non-empty stacks, every
// 1-stack starting with exactly one bottom marker, link orders within range.
// Violations are returned, not thrown.
std::vector<std::string> validate_stack(const HoStack& s);

}  // namespace sliver::hostacks
