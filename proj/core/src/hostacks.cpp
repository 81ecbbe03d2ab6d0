#include "sliver/hostacks.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sliver::hostacks {

HoStack::HoStack(int order, std::vector<HoStack> items)
    : ord_(order), items_(std::move(items)) {
  if (order < 1) fail_precondition("stack order must be >= 1");
  if (items_.empty()) fail_precondition("stacks are non-empty sequences");
  for (const auto& it : items_)
    if (it.order() != order - 1)
      fail_precondition("stack items must have order " + std::to_string(order - 1));
}

const HoSymbol& HoStack::symbol() const {
  if (ord_ != 0) fail_internal("symbol() on order-" + std::to_string(ord_) + " stack");
  return sym_;
}

const std::vector<HoStack>& HoStack::items() const {
  if (ord_ == 0) fail_internal("items() on order-0 entry");
  return items_;
}

std::size_t HoStack::height() const {
  if (ord_ == 0) fail_internal("height() on order-0 entry");
  return items_.size();
}

HoStack with_items(const HoStack& s, std::vector<HoStack> items) {
  HoStack r;
  r.ord_ = s.order();
  r.items_ = std::move(items);
  return r;
}

HoStack bottom_stack(int order) {
  if (order < 1) fail_precondition("bottom stack needs order >= 1");
  HoStack s{HoSymbol{kBottom}};
  for (int i = 1; i <= order; ++i) s = HoStack(i, {std::move(s)});
  return s;
}

const HoStack& top_k(const HoStack& s, int i) {
  if (i < 1 || i > s.order() + 1)
    fail_precondition("top_" + std::to_string(i) + " out of range for order " +
                      std::to_string(s.order()));
  if (i == s.order() + 1) return s;
  const HoStack* cur = &s;
  while (cur->order() >= i) cur = &cur->items().back();
  return *cur;
}

namespace {

// s ++ t where ord(t) < ord(s): descend the top spine until t fits as a new
// topmost item.
HoStack append(const HoStack& s, const HoStack& t) {
  if (t.order() >= s.order()) fail_internal("append order mismatch");
  auto items = s.items();
  if (t.order() == s.order() - 1) {
    items.push_back(t);
  } else {
    items.back() = append(items.back(), t);
  }
  return with_items(s, std::move(items));
}

[[noreturn]] void undefined(const std::string& op, const HoStack& s) {
  fail_precondition(op + "(" + render_stack(s) + ") is undefined");
}

}  // namespace

HoStack push1(const HoStack& s, const HoSymbol& a) {
  if (s.order() < 1) fail_precondition("push1 needs a stack of order >= 1");
  if (a.name == kBottom) fail_precondition("push1 may not push the bottom marker");
  if (a.linked() && (a.link_order < 2 || a.link_order > s.order()))
    fail_precondition("link order out of range in push1");
  return append(s, HoStack{a});
}

HoStack pushk(const HoStack& s, int i) {
  if (i < 2 || i > s.order()) undefined("push" + std::to_string(i), s);
  return append(s, top_k(s, i));
}

HoStack popk(const HoStack& s, int i) {
  if (i < 1 || i > s.order()) undefined("pop" + std::to_string(i), s);
  const HoStack& container = top_k(s, i + 1);
  if (container.height() <= 1) undefined("pop" + std::to_string(i), s);
  if (i == s.order()) {
    auto items = s.items();
    items.pop_back();
    return with_items(s, std::move(items));
  }
  auto items = s.items();
  items.back() = popk(items.back(), i);
  return with_items(s, std::move(items));
}

HoStack push_link(const HoStack& s, const std::string& name, int ell) {
  if (ell < 2 || ell > s.order())
    fail_precondition("pushlink order " + std::to_string(ell) +
                      " out of range for order " + std::to_string(s.order()));
  // h counts the (ell-1)-stacks of the topmost ell-stack minus the top one,
  // so that collapsing a fresh link behaves like pop_ell.
  std::size_t h = top_k(s, ell + 1).height() - 1;
  if (h <= 1) undefined("pushlink_" + std::to_string(ell) + "_" + name, s);
  return push1(s, HoSymbol{name, ell, h});
}

HoStack collapse(const HoStack& s) {
  const HoSymbol& t = top_k(s, 1).symbol();
  if (!t.linked()) undefined("collapse", s);
  // Truncate the topmost link_order-stack to its first link_index items.
  int ell = t.link_order;
  std::size_t h = t.link_index;
  const HoStack& target = top_k(s, ell + 1);
  if (target.height() <= h) undefined("collapse", s);

  // Rebuild along the top spine down to order ell+1... the containing node of
  // the topmost ell-stack, then truncate that ell-stack.
  struct Rec {
    static HoStack go(const HoStack& cur, int ell, std::size_t h) {
      auto items = cur.items();
      if (cur.order() == ell) {
        items.resize(h);
        return with_items(cur, std::move(items));
      }
      items.back() = go(items.back(), ell, h);
      return with_items(cur, std::move(items));
    }
  };
  return Rec::go(s, ell, h);
}

HoStack apply_stack_op(const HoOp& op, const HoStack& s) {
  return std::visit(
      [&](const auto& o) -> HoStack {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, HoOpPush1>) {
          return push1(s, HoSymbol{o.symbol});
        } else if constexpr (std::is_same_v<T, HoOpPushK>) {
          return pushk(s, o.order);
        } else if constexpr (std::is_same_v<T, HoOpPopK>) {
          return popk(s, o.order);
        } else if constexpr (std::is_same_v<T, HoOpPushLink>) {
          return push_link(s, o.symbol, o.order);
        } else {
          return collapse(s);
        }
      },
      op);
}

HoOp parse_stack_op(const std::string& line) {
  std::istringstream in(line);
  std::string head;
  in >> head;
  auto rest_symbol = [&]() {
    std::string sym;
    in >> sym;
    if (sym.empty()) fail_schema("stack op '" + line + "': missing symbol");
    return sym;
  };
  if (head == "collapse") return HoOpCollapse{};
  if (head == "pushlink") {
    std::string sym = rest_symbol();
    int ell = 0;
    if (!(in >> ell)) fail_schema("stack op '" + line + "': missing link order");
    return HoOpPushLink{sym, ell};
  }
  if (head.rfind("push", 0) == 0) {
    std::string suffix = head.substr(4);
    if (suffix.empty() || !std::all_of(suffix.begin(), suffix.end(), ::isdigit))
      fail_schema("unknown stack op '" + head + "'");
    int k = std::stoi(suffix);
    if (k == 1) return HoOpPush1{rest_symbol()};
    return HoOpPushK{k};
  }
  if (head.rfind("pop", 0) == 0) {
    std::string suffix = head.substr(3);
    if (suffix.empty() || !std::all_of(suffix.begin(), suffix.end(), ::isdigit))
      fail_schema("unknown stack op '" + head + "'");
    return HoOpPopK{std::stoi(suffix)};
  }
  fail_schema("unknown stack op '" + head + "'");
}

// ---------------------------------------------------------------------------
// Bracket notation
// ---------------------------------------------------------------------------

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void err(const std::string& msg) {
    fail_schema("stack syntax at offset " + std::to_string(pos) + ": " + msg);
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string ident() {
    std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    if (start == pos) err("expected symbol");
    return text.substr(start, pos - start);
  }

  HoSymbol symbol() {
    if (text[pos] == '(') {
      ++pos;
      skip_ws();
      std::string name = ident();
      skip_ws();
      if (pos >= text.size() || text[pos] != ',') err("expected ',' in link");
      ++pos;
      skip_ws();
      std::string ls = ident();
      skip_ws();
      if (pos >= text.size() || text[pos] != ',') err("expected second ',' in link");
      ++pos;
      skip_ws();
      std::string hs = ident();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') err("expected ')' closing link");
      ++pos;
      try {
        return HoSymbol{name, std::stoi(ls), static_cast<std::size_t>(std::stoul(hs))};
      } catch (const std::exception&) {
        err("malformed link numbers");
      }
    }
    return HoSymbol{ident()};
  }

  HoStack node() {
    skip_ws();
    if (pos >= text.size()) err("unexpected end of input");
    if (text[pos] != '[') return HoStack{symbol()};
    ++pos;
    std::vector<HoStack> items;
    while (true) {
      skip_ws();
      if (pos >= text.size()) err("unterminated '['");
      if (text[pos] == ']') {
        ++pos;
        break;
      }
      items.push_back(node());
    }
    if (items.empty()) err("empty stack");
    int child_order = items.front().order();
    for (const auto& it : items)
      if (it.order() != child_order) err("mixed item orders inside a stack");
    return HoStack(child_order + 1, std::move(items));
  }
};

void render_rec(const HoStack& s, std::string& out) {
  if (s.order() == 0) {
    const HoSymbol& sym = s.symbol();
    if (sym.linked()) {
      out += "(" + sym.name + "," + std::to_string(sym.link_order) + "," +
             std::to_string(sym.link_index) + ")";
    } else {
      out += sym.name;
    }
    return;
  }
  out += "[";
  bool prev_symbol = false;
  for (const auto& it : s.items()) {
    if (prev_symbol && it.order() == 0) out += " ";
    render_rec(it, out);
    prev_symbol = it.order() == 0;
  }
  out += "]";
}

}  // namespace

HoStack parse_stack(const std::string& text, int expected_order) {
  Parser p{text};
  HoStack s = p.node();
  p.skip_ws();
  if (p.pos != text.size()) p.err("trailing characters after stack");
  if (expected_order >= 0 && s.order() != expected_order)
    fail_schema("stack has order " + std::to_string(s.order()) + ", expected " +
                std::to_string(expected_order));
  auto problems = validate_stack(s);
  if (!problems.empty()) fail_schema("invalid stack: " + problems.front());
  return s;
}

std::string render_stack(const HoStack& s) {
  std::string out;
  render_rec(s, out);
  return out;
}

std::vector<std::string> validate_stack(const HoStack& s) {
  std::vector<std::string> problems;
  int order = s.order();
  if (order < 1) {
    problems.push_back("top-level value must be a stack of order >= 1");
    return problems;
  }
  struct Walk {
    int order;
    std::vector<std::string>& problems;
    void go(const HoStack& node) {
      if (node.order() == 0) return;
      if (node.items().empty()) {
        problems.push_back("empty stack node");
        return;
      }
      if (node.order() == 1) {
        for (std::size_t i = 0; i < node.items().size(); ++i) {
          const HoSymbol& sym = node.items()[i].symbol();
          if ((sym.name == kBottom) != (i == 0))
            problems.push_back("1-stack must start with " + std::string(kBottom) +
                               " and contain it nowhere else");
          if (sym.linked()) {
            if (i == 0) problems.push_back("bottom marker cannot carry a link");
            if (sym.link_order < 2 || sym.link_order > order)
              problems.push_back("link order " + std::to_string(sym.link_order) +
                                 " out of range");
            if (sym.link_index < 1) problems.push_back("link index must be >= 1");
          }
        }
      }
      for (const auto& it : node.items()) {
        if (it.order() != node.order() - 1) {
          problems.push_back("item order mismatch");
          continue;
        }
        go(it);
      }
    }
  };
  Walk{order, problems}.go(s);
  return problems;
}

// ---------------------------------------------------------------------------
// Flattening and linked acceptors
// ---------------------------------------------------------------------------

FlatWord flatten(const HoStack& s) {
  struct Walk {
    FlatWord out;
    std::vector<std::vector<std::size_t>> completed;  // completed[k]: ends of k-stacks in open (k+1)-stack

    void go(const HoStack& node) {
      if (node.order() == 0) {
        out.letters.push_back(node.symbol().name);
        std::size_t pos = out.letters.size();
        const HoSymbol& sym = node.symbol();
        if (sym.linked()) {
          std::size_t lvl = static_cast<std::size_t>(sym.link_order) - 1;
          if (lvl < completed.size() && sym.link_index >= 1 &&
              sym.link_index <= completed[lvl].size())
            out.targets[pos] = completed[lvl][sym.link_index - 1];
        }
        return;
      }
      out.letters.push_back("[");
      std::size_t lvl = static_cast<std::size_t>(node.order()) - 1;
      std::vector<std::size_t> saved;
      if (lvl < completed.size()) {
        saved = std::move(completed[lvl]);
        completed[lvl].clear();
      }
      for (const auto& it : node.items()) go(it);
      out.letters.push_back("]");
      if (lvl < completed.size()) completed[lvl] = std::move(saved);
      std::size_t self = static_cast<std::size_t>(node.order());
      if (self < completed.size()) completed[self].push_back(out.letters.size());
    }
  };
  Walk w;
  w.completed.resize(static_cast<std::size_t>(s.order()) + 1);
  w.go(s);
  FlatWord result;
  result.letters = std::move(w.out.letters);
  result.targets = std::move(w.out.targets);
  return result;
}

bool run_linked_automaton(const LinkedDfa& dfa, const FlatWord& w) {
  std::vector<std::size_t> run;
  run.reserve(w.letters.size() + 1);
  run.push_back(dfa.initial);
  for (std::size_t i = 1; i <= w.letters.size(); ++i) {
    const std::string& a = w.letters[i - 1];
    std::size_t prev = run.back();
    auto linked = w.targets.find(i);
    std::size_t next;
    if (linked != w.targets.end()) {
      auto it = dfa.delta3.find({prev, a, run[linked->second]});
      if (it == dfa.delta3.end()) return false;
      next = it->second;
    } else {
      auto it = dfa.delta2.find({prev, a});
      if (it == dfa.delta2.end()) return false;
      next = it->second;
    }
    run.push_back(next);
  }
  return dfa.accepting.count(run.back()) > 0;
}

bool run_linked_automaton(const LinkedDfa& dfa, const HoStack& s) {
  return run_linked_automaton(dfa, flatten(s));
}

}  // namespace sliver::hostacks
