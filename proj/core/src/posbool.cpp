#include "sliver/posbool.hpp"

#include <algorithm>

#include "sliver/error.hpp"

namespace sliver {

namespace {

PosBool make(PbKind kind, PbAtom atom, std::vector<PosBool> kids) {
    return std::make_shared<const PbNode>(PbNode{kind, std::move(atom), std::move(kids)});
}

const PosBool& true_const() {
    static const PosBool t = make(PbKind::True, {}, {});
    return t;
}

const PosBool& false_const() {
    static const PosBool f = make(PbKind::False, {}, {});
    return f;
}

}  // namespace

PosBool pb_true() { return true_const(); }
PosBool pb_false() { return false_const(); }

PosBool pb_atom(PbAtom atom) { return make(PbKind::Atom, std::move(atom), {}); }

PosBool pb_and(std::vector<PosBool> kids) {
    if (kids.empty()) return pb_true();
    if (kids.size() == 1) return kids.front();
    return make(PbKind::And, {}, std::move(kids));
}

PosBool pb_or(std::vector<PosBool> kids) {
    if (kids.empty()) return pb_false();
    if (kids.size() == 1) return kids.front();
    return make(PbKind::Or, {}, std::move(kids));
}

PosBool pb_and2(PosBool a, PosBool b) {
    return make(PbKind::And, {}, {std::move(a), std::move(b)});
}

PosBool pb_or2(PosBool a, PosBool b) {
    return make(PbKind::Or, {}, {std::move(a), std::move(b)});
}

int pb_compare(const PosBool& a, const PosBool& b) {
    if (a.get() == b.get()) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    if (a->kind == PbKind::Atom) {
        auto c = a->atom <=> b->atom;
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    std::size_t n = std::min(a->kids.size(), b->kids.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = pb_compare(a->kids[i], b->kids[i]);
        if (c != 0) return c;
    }
    if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
    return 0;
}

bool pb_equal(const PosBool& a, const PosBool& b) { return pb_compare(a, b) == 0; }

namespace {

void join_into(std::string& out, const std::vector<std::string>& parts, char sep) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
}

void print_pb(const PosBool& f, std::string& out) {
    switch (f->kind) {
        case PbKind::True:
            out += "true";
            return;
        case PbKind::False:
            out += "false";
            return;
        case PbKind::Atom:
            out += '[';
            join_into(out, f->atom.direction, '|');
            out += ", ";
            out += std::to_string(f->atom.state);
            out += ", ";
            join_into(out, f->atom.push, '+');
            out += ']';
            return;
        case PbKind::And:
        case PbKind::Or: {
            out += '(';
            const char* sep = f->kind == PbKind::And ? " & " : " | ";
            for (std::size_t i = 0; i < f->kids.size(); ++i) {
                if (i) out += sep;
                print_pb(f->kids[i], out);
            }
            out += ')';
            return;
        }
    }
}

}  // namespace

std::string pb_to_string(const PosBool& f) {
    std::string out;
    print_pb(f, out);
    return out;
}

bool pb_eval(const PosBool& f, const std::function<bool(const PbAtom&)>& truth) {
    switch (f->kind) {
        case PbKind::True:
            return true;
        case PbKind::False:
            return false;
        case PbKind::Atom:
            return truth(f->atom);
        case PbKind::And:
            for (const auto& k : f->kids)
                if (!pb_eval(k, truth)) return false;
            return true;
        case PbKind::Or:
            for (const auto& k : f->kids)
                if (pb_eval(k, truth)) return true;
            return false;
    }
    return false;
}

PosBool pb_dualize(const PosBool& f) {
    switch (f->kind) {
        case PbKind::True:
            return pb_false();
        case PbKind::False:
            return pb_true();
        case PbKind::Atom:
            return f;
        case PbKind::And:
        case PbKind::Or: {
            std::vector<PosBool> kids;
            kids.reserve(f->kids.size());
            for (const auto& k : f->kids) kids.push_back(pb_dualize(k));
            return make(f->kind == PbKind::And ? PbKind::Or : PbKind::And, {}, std::move(kids));
        }
    }
    return f;
}

PosBool pb_map_atoms(const PosBool& f, const std::function<PbAtom(const PbAtom&)>& fn) {
    switch (f->kind) {
        case PbKind::True:
        case PbKind::False:
            return f;
        case PbKind::Atom:
            return pb_atom(fn(f->atom));
        case PbKind::And:
        case PbKind::Or: {
            std::vector<PosBool> kids;
            kids.reserve(f->kids.size());
            for (const auto& k : f->kids) kids.push_back(pb_map_atoms(k, fn));
            return make(f->kind, {}, std::move(kids));
        }
    }
    return f;
}

PosBool pb_replace_atoms(const PosBool& f, const std::function<PosBool(const PbAtom&)>& fn) {
    switch (f->kind) {
        case PbKind::True:
        case PbKind::False:
            return f;
        case PbKind::Atom:
            return fn(f->atom);
        case PbKind::And:
        case PbKind::Or: {
            std::vector<PosBool> kids;
            kids.reserve(f->kids.size());
            for (const auto& k : f->kids) kids.push_back(pb_replace_atoms(k, fn));
            return make(f->kind, {}, std::move(kids));
        }
    }
    return f;
}

void pb_for_each_atom(const PosBool& f, const std::function<void(const PbAtom&)>& fn) {
    switch (f->kind) {
        case PbKind::Atom:
            fn(f->atom);
            return;
        case PbKind::And:
        case PbKind::Or:
            for (const auto& k : f->kids) pb_for_each_atom(k, fn);
            return;
        default:
            return;
    }
}

std::vector<PbAtom> pb_atoms(const PosBool& f) {
    std::vector<PbAtom> out;
    pb_for_each_atom(f, [&](const PbAtom& a) { out.push_back(a); });
    return out;
}

PosBool pb_simplify(const PosBool& f) {
    switch (f->kind) {
        case PbKind::True:
        case PbKind::False:
        case PbKind::Atom:
            return f;
        case PbKind::And:
        case PbKind::Or: {
            bool conj = f->kind == PbKind::And;
            std::vector<PosBool> kids;
            for (const auto& raw : f->kids) {
                PosBool k = pb_simplify(raw);
                if (k->kind == (conj ? PbKind::True : PbKind::False)) continue;
                if (k->kind == (conj ? PbKind::False : PbKind::True))
                    return conj ? pb_false() : pb_true();
                if (k->kind == f->kind) {
                    // Children are already simplified, so nesting is one deep.
                    kids.insert(kids.end(), k->kids.begin(), k->kids.end());
                } else {
                    kids.push_back(std::move(k));
                }
            }
            std::sort(kids.begin(), kids.end(),
                      [](const PosBool& a, const PosBool& b) { return pb_compare(a, b) < 0; });
            kids.erase(std::unique(kids.begin(), kids.end(),
                                   [](const PosBool& a, const PosBool& b) {
                                       return pb_equal(a, b);
                                   }),
                       kids.end());
            if (kids.empty()) return conj ? pb_true() : pb_false();
            if (kids.size() == 1) return kids.front();
            return make(f->kind, {}, std::move(kids));
        }
    }
    return f;
}

std::vector<PosBool> pb_disjuncts(const PosBool& f) {
    std::vector<PosBool> out;
    if (f->kind == PbKind::Or) {
        for (const auto& k : f->kids) {
            auto sub = pb_disjuncts(k);
            out.insert(out.end(), sub.begin(), sub.end());
        }
    } else {
        out.push_back(f);
    }
    return out;
}

std::vector<std::set<PbAtom>> pb_models(const PosBool& f, std::size_t cap) {
    std::set<std::set<PbAtom>> out;
    switch (f->kind) {
        case PbKind::True:
            out.emplace();
            break;
        case PbKind::False:
            break;
        case PbKind::Atom:
            out.insert({f->atom});
            break;
        case PbKind::Or:
            for (const auto& k : f->kids) {
                auto sub = pb_models(k, cap);
                out.insert(sub.begin(), sub.end());
                if (out.size() > cap) fail_budget("transition formula has too many models");
            }
            break;
        case PbKind::And: {
            out.emplace();
            for (const auto& k : f->kids) {
                auto sub = pb_models(k, cap);
                std::set<std::set<PbAtom>> next;
                for (const auto& left : out)
                    for (const auto& right : sub) {
                        std::set<PbAtom> merged = left;
                        merged.insert(right.begin(), right.end());
                        next.insert(std::move(merged));
                        if (next.size() > cap) fail_budget("transition formula has too many models");
                    }
                out = std::move(next);
            }
            break;
        }
    }
    return {out.begin(), out.end()};
}

std::optional<std::vector<PbAtom>> pb_conjunct_atoms(const PosBool& f) {
    std::vector<PbAtom> atoms;
    bool ok = true;
    std::function<void(const PosBool&)> walk = [&](const PosBool& g) {
        if (!ok) return;
        switch (g->kind) {
            case PbKind::Atom:
                atoms.push_back(g->atom);
                return;
            case PbKind::And:
                for (const auto& k : g->kids) walk(k);
                return;
            default:
                ok = false;
                return;
        }
    };
    walk(f);
    if (!ok) return std::nullopt;
    return atoms;
}

}  // namespace sliver
