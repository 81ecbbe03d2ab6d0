#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace sliver {

// Atom names with built-in meaning: "true" holds everywhere, "false" nowhere.
// They may appear in formulas but cannot be quantified or defined by a model.
inline constexpr const char* kTrueAtom = "true";
inline constexpr const char* kFalseAtom = "false";

bool is_reserved_atom(const std::string& name);

// ---------------------------------------------------------------------------
// QCTL* with imperfect information.
//
// Two-sorted syntax. State formulas:
//   phi ::= p | !phi | phi | phi | E psi | exists p [o] . phi
// Path formulas:
//   psi ::= phi | !psi | psi | psi | X psi | psi U psi
// A quantifier carries a concrete observation: a set of 1-based component
// indices. Everything else (&, ->, A, F, G) is sugar and desugared by the
// constructors and the parser, so ASTs only ever contain the kinds below.
// ---------------------------------------------------------------------------

struct QctlState;
struct QctlPath;
using QctlStateRef = std::shared_ptr<const QctlState>;
using QctlPathRef = std::shared_ptr<const QctlPath>;

enum class QctlStateKind { Atom, Not, Or, Exists, Path };
enum class QctlPathKind { State, Not, Or, Next, Until };

struct QctlState {
    QctlStateKind kind;
    std::string atom;      // Atom: name. Exists: the quantified atom.
    std::set<int> obs;     // Exists only.
    QctlStateRef lhs;      // Not: operand. Or: left. Exists: body.
    QctlStateRef rhs;      // Or: right.
    QctlPathRef path;      // Path: operand of E.
};

struct QctlPath {
    QctlPathKind kind;
    QctlStateRef state;    // State only.
    QctlPathRef lhs;       // Not/Next: operand. Or/Until: left.
    QctlPathRef rhs;       // Or/Until: right.
};

QctlStateRef q_atom(std::string name);
QctlStateRef q_true();
QctlStateRef q_false();
QctlStateRef q_not(QctlStateRef f);
QctlStateRef q_or(QctlStateRef a, QctlStateRef b);
QctlStateRef q_and(QctlStateRef a, QctlStateRef b);
QctlStateRef q_implies(QctlStateRef a, QctlStateRef b);
QctlStateRef q_exists(std::string atom, std::set<int> obs, QctlStateRef body);
QctlStateRef q_path(QctlPathRef p);         // E psi
QctlStateRef q_forall_path(QctlPathRef p);  // A psi == !E!psi

// Embedding a state formula as a path formula. Pushes ! and | through the
// embedding so that connectives always live at the path level; this keeps
// printed formulas reparsing to the identical tree.
QctlPathRef qp_embed(QctlStateRef f);
QctlPathRef qp_not(QctlPathRef p);
QctlPathRef qp_or(QctlPathRef a, QctlPathRef b);
QctlPathRef qp_and(QctlPathRef a, QctlPathRef b);
QctlPathRef qp_implies(QctlPathRef a, QctlPathRef b);
QctlPathRef qp_next(QctlPathRef p);
QctlPathRef qp_until(QctlPathRef a, QctlPathRef b);
QctlPathRef qp_eventually(QctlPathRef p);   // F psi == true U psi
QctlPathRef qp_always(QctlPathRef p);       // G psi == !F!psi

std::string to_string(const QctlStateRef& f);
std::string to_string(const QctlPathRef& p);
bool equal(const QctlStateRef& a, const QctlStateRef& b);
bool equal(const QctlPathRef& a, const QctlPathRef& b);

// Parses the concrete syntax above. Precedence: unary > U > & > | > ->,
// with U right-associative and |, & left-associative. "exists ... ." and
// E/A extend as far right as possible. Throws a schema error with
// line/column on malformed input.
QctlStateRef parse_qctl(const std::string& text);

// Atoms bound by some quantifier, and atoms with a free occurrence. The two
// overlap until normalize_quantified_atoms has been applied.
std::set<std::string> quantified_atoms(const QctlStateRef& f);
std::set<std::string> free_atoms(const QctlStateRef& f);

// True iff along every chain of nested quantifiers the observations grow:
// whenever exists^{o2} occurs under exists^{o1}, o1 is a subset of o2.
bool check_hierarchical_qctl(const QctlStateRef& f);

// Alpha-renames quantified atoms (appending apostrophes) so that every atom
// is quantified at most once and no quantified atom also occurs free.
QctlStateRef normalize_quantified_atoms(const QctlStateRef& f);

// Maximal state subformulas of a path formula: the State leaves of its path
// skeleton, deduplicated structurally, in first-occurrence order.
std::vector<QctlStateRef> max_state_subformulas(const QctlPathRef& p);

// ---------------------------------------------------------------------------
// Strategy Logic with imperfect information.
//
// State formulas:
//   phi ::= p | !phi | phi | phi | exists x : o . phi | (a, x) phi | E psi
// where x is a strategy variable, o an observation symbol interpreted by an
// arena, and (a, x) binds agent a to the strategy named x. Path formulas as
// in QCTL*.
// ---------------------------------------------------------------------------

struct SliState;
struct SliPath;
using SliStateRef = std::shared_ptr<const SliState>;
using SliPathRef = std::shared_ptr<const SliPath>;

enum class SliStateKind { Atom, Not, Or, Strat, Bind, Path };
enum class SliPathKind { State, Not, Or, Next, Until };

struct SliState {
    SliStateKind kind;
    std::string atom;      // Atom only.
    std::string var;       // Strat: quantified variable. Bind: variable used.
    std::string obs;       // Strat: observation symbol.
    std::string agent;     // Bind only.
    SliStateRef lhs;       // Not: operand. Or: left. Strat/Bind: body.
    SliStateRef rhs;       // Or: right.
    SliPathRef path;       // Path: operand of E.
};

struct SliPath {
    SliPathKind kind;
    SliStateRef state;
    SliPathRef lhs;
    SliPathRef rhs;
};

SliStateRef s_atom(std::string name);
SliStateRef s_true();
SliStateRef s_false();
SliStateRef s_not(SliStateRef f);
SliStateRef s_or(SliStateRef a, SliStateRef b);
SliStateRef s_and(SliStateRef a, SliStateRef b);
SliStateRef s_implies(SliStateRef a, SliStateRef b);
SliStateRef s_strat(std::string var, std::string obs, SliStateRef body);
SliStateRef s_bind(std::string agent, std::string var, SliStateRef body);
SliStateRef s_path(SliPathRef p);
SliStateRef s_forall_path(SliPathRef p);

SliPathRef sp_embed(SliStateRef f);
SliPathRef sp_not(SliPathRef p);
SliPathRef sp_or(SliPathRef a, SliPathRef b);
SliPathRef sp_and(SliPathRef a, SliPathRef b);
SliPathRef sp_implies(SliPathRef a, SliPathRef b);
SliPathRef sp_next(SliPathRef p);
SliPathRef sp_until(SliPathRef a, SliPathRef b);
SliPathRef sp_eventually(SliPathRef p);
SliPathRef sp_always(SliPathRef p);

std::string to_string(const SliStateRef& f);
std::string to_string(const SliPathRef& p);
bool equal(const SliStateRef& a, const SliStateRef& b);
bool equal(const SliPathRef& a, const SliPathRef& b);

SliStateRef parse_sli(const std::string& text);

// Strategy variables with an occurrence (in a binding) not covered by an
// enclosing quantifier. A sentence has none.
std::set<std::string> free_variables(const SliStateRef& f);
std::set<std::string> quantified_variables(const SliStateRef& f);
std::set<std::string> observation_symbols(const SliStateRef& f);
std::set<std::string> agents_mentioned(const SliStateRef& f);
std::set<std::string> atoms_mentioned(const SliStateRef& f);

// Alpha-renames strategy variables so each is quantified at most once and
// quantified names are disjoint from free ones.
SliStateRef normalize_strategy_variables(const SliStateRef& f);

}  // namespace sliver
