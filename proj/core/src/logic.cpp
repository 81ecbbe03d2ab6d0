#include "sliver/logic.hpp"

#include <algorithm>

#include "sliver/error.hpp"

namespace sliver {

bool is_reserved_atom(const std::string& name) {
    return name == kTrueAtom || name == kFalseAtom;
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

namespace {

QctlStateRef mk_qs(QctlState node) {
    return std::make_shared<const QctlState>(std::move(node));
}

QctlPathRef mk_qp(QctlPath node) {
    return std::make_shared<const QctlPath>(std::move(node));
}

SliStateRef mk_ss(SliState node) {
    return std::make_shared<const SliState>(std::move(node));
}

SliPathRef mk_sp(SliPath node) {
    return std::make_shared<const SliPath>(std::move(node));
}

}  // namespace

QctlStateRef q_atom(std::string name) {
    if (name.empty()) fail_schema("atom name must be non-empty");
    return mk_qs({QctlStateKind::Atom, std::move(name), {}, nullptr, nullptr, nullptr});
}

QctlStateRef q_true() { return q_atom(kTrueAtom); }
QctlStateRef q_false() { return q_atom(kFalseAtom); }

QctlStateRef q_not(QctlStateRef f) {
    return mk_qs({QctlStateKind::Not, "", {}, std::move(f), nullptr, nullptr});
}

QctlStateRef q_or(QctlStateRef a, QctlStateRef b) {
    return mk_qs({QctlStateKind::Or, "", {}, std::move(a), std::move(b), nullptr});
}

QctlStateRef q_and(QctlStateRef a, QctlStateRef b) {
    return q_not(q_or(q_not(std::move(a)), q_not(std::move(b))));
}

QctlStateRef q_implies(QctlStateRef a, QctlStateRef b) {
    return q_or(q_not(std::move(a)), std::move(b));
}

QctlStateRef q_exists(std::string atom, std::set<int> obs, QctlStateRef body) {
    if (is_reserved_atom(atom)) fail_schema("cannot quantify reserved atom '" + atom + "'");
    for (int i : obs)
        if (i < 1) fail_schema("observation component indices are 1-based");
    return mk_qs({QctlStateKind::Exists, std::move(atom), std::move(obs), std::move(body),
                  nullptr, nullptr});
}

QctlStateRef q_path(QctlPathRef p) {
    return mk_qs({QctlStateKind::Path, "", {}, nullptr, nullptr, std::move(p)});
}

QctlStateRef q_forall_path(QctlPathRef p) { return q_not(q_path(qp_not(std::move(p)))); }

QctlPathRef qp_embed(QctlStateRef f) {
    // Connectives commute with the embedding; keeping them at the path level
    // makes printing injective on constructed trees.
    switch (f->kind) {
        case QctlStateKind::Not:
            return qp_not(qp_embed(f->lhs));
        case QctlStateKind::Or:
            return qp_or(qp_embed(f->lhs), qp_embed(f->rhs));
        default:
            return mk_qp({QctlPathKind::State, std::move(f), nullptr, nullptr});
    }
}

QctlPathRef qp_not(QctlPathRef p) {
    return mk_qp({QctlPathKind::Not, nullptr, std::move(p), nullptr});
}

QctlPathRef qp_or(QctlPathRef a, QctlPathRef b) {
    return mk_qp({QctlPathKind::Or, nullptr, std::move(a), std::move(b)});
}

QctlPathRef qp_and(QctlPathRef a, QctlPathRef b) {
    return qp_not(qp_or(qp_not(std::move(a)), qp_not(std::move(b))));
}

QctlPathRef qp_implies(QctlPathRef a, QctlPathRef b) {
    return qp_or(qp_not(std::move(a)), std::move(b));
}

QctlPathRef qp_next(QctlPathRef p) {
    return mk_qp({QctlPathKind::Next, nullptr, std::move(p), nullptr});
}

QctlPathRef qp_until(QctlPathRef a, QctlPathRef b) {
    return mk_qp({QctlPathKind::Until, nullptr, std::move(a), std::move(b)});
}

QctlPathRef qp_eventually(QctlPathRef p) { return qp_until(qp_embed(q_true()), std::move(p)); }

QctlPathRef qp_always(QctlPathRef p) { return qp_not(qp_eventually(qp_not(std::move(p)))); }

SliStateRef s_atom(std::string name) {
    if (name.empty()) fail_schema("atom name must be non-empty");
    return mk_ss({SliStateKind::Atom, std::move(name), "", "", "", nullptr, nullptr, nullptr});
}

SliStateRef s_true() { return s_atom(kTrueAtom); }
SliStateRef s_false() { return s_atom(kFalseAtom); }

SliStateRef s_not(SliStateRef f) {
    return mk_ss({SliStateKind::Not, "", "", "", "", std::move(f), nullptr, nullptr});
}

SliStateRef s_or(SliStateRef a, SliStateRef b) {
    return mk_ss({SliStateKind::Or, "", "", "", "", std::move(a), std::move(b), nullptr});
}

SliStateRef s_and(SliStateRef a, SliStateRef b) {
    return s_not(s_or(s_not(std::move(a)), s_not(std::move(b))));
}

SliStateRef s_implies(SliStateRef a, SliStateRef b) {
    return s_or(s_not(std::move(a)), std::move(b));
}

SliStateRef s_strat(std::string var, std::string obs, SliStateRef body) {
    return mk_ss({SliStateKind::Strat, "", std::move(var), std::move(obs), "", std::move(body),
                  nullptr, nullptr});
}

SliStateRef s_bind(std::string agent, std::string var, SliStateRef body) {
    return mk_ss({SliStateKind::Bind, "", std::move(var), "", std::move(agent), std::move(body),
                  nullptr, nullptr});
}

SliStateRef s_path(SliPathRef p) {
    return mk_ss({SliStateKind::Path, "", "", "", "", nullptr, nullptr, std::move(p)});
}

SliStateRef s_forall_path(SliPathRef p) { return s_not(s_path(sp_not(std::move(p)))); }

SliPathRef sp_embed(SliStateRef f) {
    switch (f->kind) {
        case SliStateKind::Not:
            return sp_not(sp_embed(f->lhs));
        case SliStateKind::Or:
            return sp_or(sp_embed(f->lhs), sp_embed(f->rhs));
        default:
            return mk_sp({SliPathKind::State, std::move(f), nullptr, nullptr});
    }
}

SliPathRef sp_not(SliPathRef p) {
    return mk_sp({SliPathKind::Not, nullptr, std::move(p), nullptr});
}

SliPathRef sp_or(SliPathRef a, SliPathRef b) {
    return mk_sp({SliPathKind::Or, nullptr, std::move(a), std::move(b)});
}

SliPathRef sp_and(SliPathRef a, SliPathRef b) {
    return sp_not(sp_or(sp_not(std::move(a)), sp_not(std::move(b))));
}

SliPathRef sp_implies(SliPathRef a, SliPathRef b) {
    return sp_or(sp_not(std::move(a)), std::move(b));
}

SliPathRef sp_next(SliPathRef p) {
    return mk_sp({SliPathKind::Next, nullptr, std::move(p), nullptr});
}

SliPathRef sp_until(SliPathRef a, SliPathRef b) {
    return mk_sp({SliPathKind::Until, nullptr, std::move(a), std::move(b)});
}

SliPathRef sp_eventually(SliPathRef p) { return sp_until(sp_embed(s_true()), std::move(p)); }

SliPathRef sp_always(SliPathRef p) { return sp_not(sp_eventually(sp_not(std::move(p)))); }

// ---------------------------------------------------------------------------
// Printing
//
// Precedence levels: quantifier-like prefixes (exists, bindings, E) are 0 and
// extend maximally to the right, | is 1, U is 3, ! and X are 4, atoms 5.
// A node is parenthesized when its level is below the context's minimum.
// ---------------------------------------------------------------------------

namespace {

constexpr int kPrecQuant = 0;
constexpr int kPrecOr = 1;
constexpr int kPrecUntil = 3;
constexpr int kPrecUnary = 4;

void print_obs(const std::set<int>& obs, std::string& out) {
    out += '[';
    bool first = true;
    for (int i : obs) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(i);
    }
    out += ']';
}

template <typename Fn>
void parenthesized(int prec, int min_prec, std::string& out, Fn body) {
    bool wrap = prec < min_prec;
    if (wrap) out += '(';
    body();
    if (wrap) out += ')';
}

void print_state(const QctlStateRef& f, int min_prec, std::string& out);
void print_path(const QctlPathRef& p, int min_prec, std::string& out);

void print_state(const QctlStateRef& f, int min_prec, std::string& out) {
    switch (f->kind) {
        case QctlStateKind::Atom:
            out += f->atom;
            return;
        case QctlStateKind::Not:
            parenthesized(kPrecUnary, min_prec, out, [&] {
                out += '!';
                print_state(f->lhs, kPrecUnary, out);
            });
            return;
        case QctlStateKind::Or:
            parenthesized(kPrecOr, min_prec, out, [&] {
                print_state(f->lhs, kPrecOr, out);
                out += " | ";
                print_state(f->rhs, kPrecOr + 1, out);
            });
            return;
        case QctlStateKind::Exists:
            parenthesized(kPrecQuant, min_prec, out, [&] {
                out += "exists ";
                out += f->atom;
                out += ' ';
                print_obs(f->obs, out);
                out += " . ";
                print_state(f->lhs, kPrecQuant, out);
            });
            return;
        case QctlStateKind::Path:
            parenthesized(kPrecQuant, min_prec, out, [&] {
                out += "E ";
                print_path(f->path, kPrecQuant, out);
            });
            return;
    }
}

void print_path(const QctlPathRef& p, int min_prec, std::string& out) {
    switch (p->kind) {
        case QctlPathKind::State:
            print_state(p->state, min_prec, out);
            return;
        case QctlPathKind::Not:
            parenthesized(kPrecUnary, min_prec, out, [&] {
                out += '!';
                print_path(p->lhs, kPrecUnary, out);
            });
            return;
        case QctlPathKind::Or:
            parenthesized(kPrecOr, min_prec, out, [&] {
                print_path(p->lhs, kPrecOr, out);
                out += " | ";
                print_path(p->rhs, kPrecOr + 1, out);
            });
            return;
        case QctlPathKind::Next:
            parenthesized(kPrecUnary, min_prec, out, [&] {
                out += "X ";
                print_path(p->lhs, kPrecUnary, out);
            });
            return;
        case QctlPathKind::Until:
            parenthesized(kPrecUntil, min_prec, out, [&] {
                print_path(p->lhs, kPrecUntil + 1, out);
                out += " U ";
                print_path(p->rhs, kPrecUntil, out);
            });
            return;
    }
}

void print_state(const SliStateRef& f, int min_prec, std::string& out);
void print_path(const SliPathRef& p, int min_prec, std::string& out);

void print_state(const SliStateRef& f, int min_prec, std::string& out) {
    switch (f->kind) {
        case SliStateKind::Atom:
            out += f->atom;
            return;
        case SliStateKind::Not:
            parenthesized(kPrecUnary, min_prec, out, [&] {
                out += '!';
                print_state(f->lhs, kPrecUnary, out);
            });
            return;
        case SliStateKind::Or:
            parenthesized(kPrecOr, min_prec, out, [&] {
                print_state(f->lhs, kPrecOr, out);
                out += " | ";
                print_state(f->rhs, kPrecOr + 1, out);
            });
            return;
        case SliStateKind::Strat:
            parenthesized(kPrecQuant, min_prec, out, [&] {
                out += "exists ";
                out += f->var;
                out += " : ";
                out += f->obs;
                out += " . ";
                print_state(f->lhs, kPrecQuant, out);
            });
            return;
        case SliStateKind::Bind:
            parenthesized(kPrecQuant, min_prec, out, [&] {
                out += '(';
                out += f->agent;
                out += ", ";
                out += f->var;
                out += ") ";
                print_state(f->lhs, kPrecQuant, out);
            });
            return;
        case SliStateKind::Path:
            parenthesized(kPrecQuant, min_prec, out, [&] {
                out += "E ";
                print_path(f->path, kPrecQuant, out);
            });
            return;
    }
}

void print_path(const SliPathRef& p, int min_prec, std::string& out) {
    switch (p->kind) {
        case SliPathKind::State:
            print_state(p->state, min_prec, out);
            return;
        case SliPathKind::Not:
            parenthesized(kPrecUnary, min_prec, out, [&] {
                out += '!';
                print_path(p->lhs, kPrecUnary, out);
            });
            return;
        case SliPathKind::Or:
            parenthesized(kPrecOr, min_prec, out, [&] {
                print_path(p->lhs, kPrecOr, out);
                out += " | ";
                print_path(p->rhs, kPrecOr + 1, out);
            });
            return;
        case SliPathKind::Next:
            parenthesized(kPrecUnary, min_prec, out, [&] {
                out += "X ";
                print_path(p->lhs, kPrecUnary, out);
            });
            return;
        case SliPathKind::Until:
            parenthesized(kPrecUntil, min_prec, out, [&] {
                print_path(p->lhs, kPrecUntil + 1, out);
                out += " U ";
                print_path(p->rhs, kPrecUntil, out);
            });
            return;
    }
}

}  // namespace

std::string to_string(const QctlStateRef& f) {
    std::string out;
    print_state(f, kPrecQuant, out);
    return out;
}

std::string to_string(const QctlPathRef& p) {
    std::string out;
    print_path(p, kPrecQuant, out);
    return out;
}

std::string to_string(const SliStateRef& f) {
    std::string out;
    print_state(f, kPrecQuant, out);
    return out;
}

std::string to_string(const SliPathRef& p) {
    std::string out;
    print_path(p, kPrecQuant, out);
    return out;
}

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------

bool equal(const QctlStateRef& a, const QctlStateRef& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case QctlStateKind::Atom:
            return a->atom == b->atom;
        case QctlStateKind::Not:
            return equal(a->lhs, b->lhs);
        case QctlStateKind::Or:
            return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
        case QctlStateKind::Exists:
            return a->atom == b->atom && a->obs == b->obs && equal(a->lhs, b->lhs);
        case QctlStateKind::Path:
            return equal(a->path, b->path);
    }
    return false;
}

bool equal(const QctlPathRef& a, const QctlPathRef& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case QctlPathKind::State:
            return equal(a->state, b->state);
        case QctlPathKind::Not:
        case QctlPathKind::Next:
            return equal(a->lhs, b->lhs);
        case QctlPathKind::Or:
        case QctlPathKind::Until:
            return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    }
    return false;
}

bool equal(const SliStateRef& a, const SliStateRef& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case SliStateKind::Atom:
            return a->atom == b->atom;
        case SliStateKind::Not:
            return equal(a->lhs, b->lhs);
        case SliStateKind::Or:
            return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
        case SliStateKind::Strat:
            return a->var == b->var && a->obs == b->obs && equal(a->lhs, b->lhs);
        case SliStateKind::Bind:
            return a->agent == b->agent && a->var == b->var && equal(a->lhs, b->lhs);
        case SliStateKind::Path:
            return equal(a->path, b->path);
    }
    return false;
}

bool equal(const SliPathRef& a, const SliPathRef& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case SliPathKind::State:
            return equal(a->state, b->state);
        case SliPathKind::Not:
        case SliPathKind::Next:
            return equal(a->lhs, b->lhs);
        case SliPathKind::Or:
        case SliPathKind::Until:
            return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    }
    return false;
}

// ---------------------------------------------------------------------------
// QCTL* static analysis
// ---------------------------------------------------------------------------

namespace {

void collect_quantified(const QctlStateRef& f, std::set<std::string>& out);

void collect_quantified(const QctlPathRef& p, std::set<std::string>& out) {
    if (!p) return;
    if (p->kind == QctlPathKind::State) collect_quantified(p->state, out);
    collect_quantified(p->lhs, out);
    collect_quantified(p->rhs, out);
}

void collect_quantified(const QctlStateRef& f, std::set<std::string>& out) {
    if (!f) return;
    if (f->kind == QctlStateKind::Exists) out.insert(f->atom);
    collect_quantified(f->lhs, out);
    collect_quantified(f->rhs, out);
    collect_quantified(f->path, out);
}

void collect_free(const QctlStateRef& f, std::set<std::string> bound, std::set<std::string>& out);

void collect_free(const QctlPathRef& p, const std::set<std::string>& bound,
                  std::set<std::string>& out) {
    if (!p) return;
    if (p->kind == QctlPathKind::State) collect_free(p->state, bound, out);
    collect_free(p->lhs, bound, out);
    collect_free(p->rhs, bound, out);
}

void collect_free(const QctlStateRef& f, std::set<std::string> bound, std::set<std::string>& out) {
    if (!f) return;
    switch (f->kind) {
        case QctlStateKind::Atom:
            if (!bound.count(f->atom) && !is_reserved_atom(f->atom)) out.insert(f->atom);
            return;
        case QctlStateKind::Exists:
            bound.insert(f->atom);
            collect_free(f->lhs, std::move(bound), out);
            return;
        default:
            collect_free(f->lhs, bound, out);
            collect_free(f->rhs, bound, out);
            collect_free(f->path, bound, out);
            return;
    }
}

bool hier_state(const QctlStateRef& f, const std::set<int>& outer);

bool hier_path(const QctlPathRef& p, const std::set<int>& outer) {
    if (!p) return true;
    if (p->kind == QctlPathKind::State && !hier_state(p->state, outer)) return false;
    return hier_path(p->lhs, outer) && hier_path(p->rhs, outer);
}

bool hier_state(const QctlStateRef& f, const std::set<int>& outer) {
    if (!f) return true;
    if (f->kind == QctlStateKind::Exists) {
        if (!std::includes(f->obs.begin(), f->obs.end(), outer.begin(), outer.end()))
            return false;
        std::set<int> inner = outer;
        inner.insert(f->obs.begin(), f->obs.end());
        return hier_state(f->lhs, inner);
    }
    return hier_state(f->lhs, outer) && hier_state(f->rhs, outer) && hier_path(f->path, outer);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
    std::string name = base;
    while (used.count(name)) name += '\'';
    return name;
}

using Renaming = std::vector<std::pair<std::string, std::string>>;

const std::string* lookup(const Renaming& env, const std::string& name) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == name) return &it->second;
    return nullptr;
}

QctlStateRef rename_state(const QctlStateRef& f, Renaming& env, std::set<std::string>& used);

QctlPathRef rename_path(const QctlPathRef& p, Renaming& env, std::set<std::string>& used) {
    if (!p) return nullptr;
    switch (p->kind) {
        case QctlPathKind::State:
            return mk_qp({p->kind, rename_state(p->state, env, used), nullptr, nullptr});
        case QctlPathKind::Not:
        case QctlPathKind::Next:
            return mk_qp({p->kind, nullptr, rename_path(p->lhs, env, used), nullptr});
        case QctlPathKind::Or:
        case QctlPathKind::Until: {
            auto lhs = rename_path(p->lhs, env, used);
            auto rhs = rename_path(p->rhs, env, used);
            return mk_qp({p->kind, nullptr, std::move(lhs), std::move(rhs)});
        }
    }
    return nullptr;
}

QctlStateRef rename_state(const QctlStateRef& f, Renaming& env, std::set<std::string>& used) {
    if (!f) return nullptr;
    switch (f->kind) {
        case QctlStateKind::Atom: {
            const std::string* repl = lookup(env, f->atom);
            return repl ? q_atom(*repl) : f;
        }
        case QctlStateKind::Not:
            return q_not(rename_state(f->lhs, env, used));
        case QctlStateKind::Or: {
            auto lhs = rename_state(f->lhs, env, used);
            auto rhs = rename_state(f->rhs, env, used);
            return q_or(std::move(lhs), std::move(rhs));
        }
        case QctlStateKind::Exists: {
            std::string fresh = fresh_name(f->atom, used);
            used.insert(fresh);
            env.emplace_back(f->atom, fresh);
            auto body = rename_state(f->lhs, env, used);
            env.pop_back();
            return q_exists(std::move(fresh), f->obs, std::move(body));
        }
        case QctlStateKind::Path:
            return q_path(rename_path(f->path, env, used));
    }
    return nullptr;
}

}  // namespace

std::set<std::string> quantified_atoms(const QctlStateRef& f) {
    std::set<std::string> out;
    collect_quantified(f, out);
    return out;
}

std::set<std::string> free_atoms(const QctlStateRef& f) {
    std::set<std::string> out;
    collect_free(f, {}, out);
    return out;
}

bool check_hierarchical_qctl(const QctlStateRef& f) { return hier_state(f, {}); }

QctlStateRef normalize_quantified_atoms(const QctlStateRef& f) {
    std::set<std::string> used = free_atoms(f);
    used.insert(kTrueAtom);
    used.insert(kFalseAtom);
    Renaming env;
    return rename_state(f, env, used);
}

namespace {

void collect_max_state(const QctlPathRef& p, std::vector<QctlStateRef>& out) {
    if (!p) return;
    if (p->kind == QctlPathKind::State) {
        for (const auto& seen : out)
            if (equal(seen, p->state)) return;
        out.push_back(p->state);
        return;
    }
    collect_max_state(p->lhs, out);
    collect_max_state(p->rhs, out);
}

}  // namespace

std::vector<QctlStateRef> max_state_subformulas(const QctlPathRef& p) {
    std::vector<QctlStateRef> out;
    collect_max_state(p, out);
    return out;
}

// ---------------------------------------------------------------------------
// SLi static analysis
// ---------------------------------------------------------------------------

namespace {

enum class SliField { FreeVar, QuantVar, Obs, Agent, Atom };

void collect_sli(const SliStateRef& f, SliField what, std::set<std::string> scope,
                 std::set<std::string>& out);

void collect_sli(const SliPathRef& p, SliField what, const std::set<std::string>& scope,
                 std::set<std::string>& out) {
    if (!p) return;
    if (p->kind == SliPathKind::State) collect_sli(p->state, what, scope, out);
    collect_sli(p->lhs, what, scope, out);
    collect_sli(p->rhs, what, scope, out);
}

void collect_sli(const SliStateRef& f, SliField what, std::set<std::string> scope,
                 std::set<std::string>& out) {
    if (!f) return;
    switch (f->kind) {
        case SliStateKind::Atom:
            if (what == SliField::Atom) out.insert(f->atom);
            return;
        case SliStateKind::Strat:
            if (what == SliField::QuantVar) out.insert(f->var);
            if (what == SliField::Obs) out.insert(f->obs);
            if (what == SliField::FreeVar) scope.insert(f->var);
            collect_sli(f->lhs, what, std::move(scope), out);
            return;
        case SliStateKind::Bind:
            if (what == SliField::Agent) out.insert(f->agent);
            if (what == SliField::FreeVar && !scope.count(f->var)) out.insert(f->var);
            collect_sli(f->lhs, what, std::move(scope), out);
            return;
        default:
            collect_sli(f->lhs, what, scope, out);
            collect_sli(f->rhs, what, scope, out);
            collect_sli(f->path, what, scope, out);
            return;
    }
}

SliStateRef rename_sli(const SliStateRef& f, Renaming& env, std::set<std::string>& used);

SliPathRef rename_sli(const SliPathRef& p, Renaming& env, std::set<std::string>& used) {
    if (!p) return nullptr;
    switch (p->kind) {
        case SliPathKind::State:
            return mk_sp({p->kind, rename_sli(p->state, env, used), nullptr, nullptr});
        case SliPathKind::Not:
        case SliPathKind::Next:
            return mk_sp({p->kind, nullptr, rename_sli(p->lhs, env, used), nullptr});
        case SliPathKind::Or:
        case SliPathKind::Until: {
            auto lhs = rename_sli(p->lhs, env, used);
            auto rhs = rename_sli(p->rhs, env, used);
            return mk_sp({p->kind, nullptr, std::move(lhs), std::move(rhs)});
        }
    }
    return nullptr;
}

SliStateRef rename_sli(const SliStateRef& f, Renaming& env, std::set<std::string>& used) {
    if (!f) return nullptr;
    switch (f->kind) {
        case SliStateKind::Atom:
            return f;
        case SliStateKind::Not:
            return s_not(rename_sli(f->lhs, env, used));
        case SliStateKind::Or: {
            auto lhs = rename_sli(f->lhs, env, used);
            auto rhs = rename_sli(f->rhs, env, used);
            return s_or(std::move(lhs), std::move(rhs));
        }
        case SliStateKind::Strat: {
            std::string fresh = fresh_name(f->var, used);
            used.insert(fresh);
            env.emplace_back(f->var, fresh);
            auto body = rename_sli(f->lhs, env, used);
            env.pop_back();
            return s_strat(std::move(fresh), f->obs, std::move(body));
        }
        case SliStateKind::Bind: {
            const std::string* repl = lookup(env, f->var);
            std::string var = repl ? *repl : f->var;
            return s_bind(f->agent, std::move(var), rename_sli(f->lhs, env, used));
        }
        case SliStateKind::Path:
            return s_path(rename_sli(f->path, env, used));
    }
    return nullptr;
}

}  // namespace

std::set<std::string> free_variables(const SliStateRef& f) {
    std::set<std::string> out;
    collect_sli(f, SliField::FreeVar, {}, out);
    return out;
}

std::set<std::string> quantified_variables(const SliStateRef& f) {
    std::set<std::string> out;
    collect_sli(f, SliField::QuantVar, {}, out);
    return out;
}

std::set<std::string> observation_symbols(const SliStateRef& f) {
    std::set<std::string> out;
    collect_sli(f, SliField::Obs, {}, out);
    return out;
}

std::set<std::string> agents_mentioned(const SliStateRef& f) {
    std::set<std::string> out;
    collect_sli(f, SliField::Agent, {}, out);
    return out;
}

std::set<std::string> atoms_mentioned(const SliStateRef& f) {
    std::set<std::string> out;
    collect_sli(f, SliField::Atom, {}, out);
    return out;
}

SliStateRef normalize_strategy_variables(const SliStateRef& f) {
    std::set<std::string> used = free_variables(f);
    Renaming env;
    return rename_sli(f, env, used);
}

}  // namespace sliver
