#include "sliver/nbw.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace sliver {

std::uint32_t Nbw::letter_mask(const std::set<std::string>& letter) const {
    std::uint32_t mask = 0;
    for (const auto& p : letter) {
        auto it = std::find(atoms.begin(), atoms.end(), p);
        if (it == atoms.end()) fail_internal("letter atom '" + p + "' outside the automaton alphabet");
        mask |= std::uint32_t{1} << static_cast<std::uint32_t>(it - atoms.begin());
    }
    return mask;
}

namespace {

enum class ItemKind { True, False, Atom, Not, Or, Next, Until };

// One closure item per distinct path subformula; State leaves become Atom
// items keyed by their printed form. Items refer to each other by index.
struct Item {
    ItemKind kind = ItemKind::Atom;
    std::string atom;
    std::size_t lhs = 0;
    std::size_t rhs = 0;
};

struct Closure {
    std::vector<Item> items;
    std::map<std::string, std::size_t> index;
    std::vector<std::string> atoms;

    std::size_t add(const std::string& key, Item item) {
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        std::size_t id = items.size();
        items.push_back(std::move(item));
        index.emplace(key, id);
        return id;
    }

    std::size_t visit(const QctlPathRef& f) {
        const std::string key = to_string(f);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        Item item;
        switch (f->kind) {
            case QctlPathKind::State:
                if (f->state->kind == QctlStateKind::Atom && f->state->atom == kTrueAtom) {
                    item.kind = ItemKind::True;
                } else if (f->state->kind == QctlStateKind::Atom && f->state->atom == kFalseAtom) {
                    item.kind = ItemKind::False;
                } else {
                    item.kind = ItemKind::Atom;
                    item.atom = key;
                }
                break;
            case QctlPathKind::Not:
                item.kind = ItemKind::Not;
                item.lhs = visit(f->lhs);
                break;
            case QctlPathKind::Or:
                item.kind = ItemKind::Or;
                item.lhs = visit(f->lhs);
                item.rhs = visit(f->rhs);
                break;
            case QctlPathKind::Next:
                item.kind = ItemKind::Next;
                item.lhs = visit(f->lhs);
                break;
            case QctlPathKind::Until:
                item.kind = ItemKind::Until;
                item.lhs = visit(f->lhs);
                item.rhs = visit(f->rhs);
                break;
        }
        return add(key, std::move(item));
    }
};

using SetMask = std::uint64_t;

bool holds(SetMask m, std::size_t item) { return (m >> item) & 1u; }

}  // namespace

Nbw ltl_to_nbw(const QctlPathRef& psi, const Budget& budget) {
    if (!psi) fail_internal("ltl_to_nbw: null formula");
    Closure cl;
    const std::size_t top = cl.visit(psi);
    if (cl.items.size() > 62) fail_budget("path formula closure exceeds 62 items");

    // Atom alphabet in sorted order for deterministic letter encoding.
    std::vector<std::string> atoms;
    for (const auto& item : cl.items)
        if (item.kind == ItemKind::Atom) atoms.push_back(item.atom);
    std::sort(atoms.begin(), atoms.end());

    auto atom_bit = [&](const std::string& name) {
        return static_cast<std::uint32_t>(
            std::find(atoms.begin(), atoms.end(), name) - atoms.begin());
    };

    // Enumerate the locally consistent subsets of the closure.
    std::vector<SetMask> sets;
    const SetMask limit = SetMask{1} << cl.items.size();
    for (SetMask m = 0; m < limit; ++m) {
        bool ok = true;
        for (std::size_t i = 0; ok && i < cl.items.size(); ++i) {
            const Item& it = cl.items[i];
            switch (it.kind) {
                case ItemKind::True: ok = holds(m, i); break;
                case ItemKind::False: ok = !holds(m, i); break;
                case ItemKind::Atom: break;
                case ItemKind::Not: ok = holds(m, i) != holds(m, it.lhs); break;
                case ItemKind::Or: ok = holds(m, i) == (holds(m, it.lhs) || holds(m, it.rhs)); break;
                case ItemKind::Next: break;
                case ItemKind::Until:
                    // Local part of the expansion law; the rest is dynamic.
                    if (holds(m, it.rhs) && !holds(m, i)) ok = false;
                    if (holds(m, i) && !holds(m, it.rhs) && !holds(m, it.lhs)) ok = false;
                    break;
            }
        }
        if (ok) sets.push_back(m);
    }

    // Dynamic compatibility between consecutive positions.
    auto compatible = [&](SetMask m, SetMask n) {
        for (std::size_t i = 0; i < cl.items.size(); ++i) {
            const Item& it = cl.items[i];
            if (it.kind == ItemKind::Next) {
                if (holds(m, i) != holds(n, it.lhs)) return false;
            } else if (it.kind == ItemKind::Until) {
                const bool expanded = holds(m, it.rhs) || (holds(m, it.lhs) && holds(n, i));
                if (holds(m, i) != expanded) return false;
            }
        }
        return true;
    };

    auto letter_of = [&](SetMask m) {
        std::uint32_t a = 0;
        for (std::size_t i = 0; i < cl.items.size(); ++i)
            if (cl.items[i].kind == ItemKind::Atom && holds(m, i)) a |= std::uint32_t{1} << atom_bit(cl.items[i].atom);
        return a;
    };

    // Fairness families, one per Until item: sets where the Until is
    // discharged or not pending. With no Until a single all-state family
    // keeps the counter construction uniform.
    std::vector<std::size_t> untils;
    for (std::size_t i = 0; i < cl.items.size(); ++i)
        if (cl.items[i].kind == ItemKind::Until) untils.push_back(i);
    const std::size_t k = untils.empty() ? 1 : untils.size();
    auto in_family = [&](SetMask m, std::size_t fi) {
        if (untils.empty()) return true;
        return !holds(m, untils[fi]) || holds(m, cl.items[untils[fi]].rhs);
    };

    Nbw out;
    out.atoms = atoms;
    out.state_count = sets.size() * k;
    Budget b = budget;
    b.charge_states(out.state_count);
    auto id_of = [&](std::size_t set_index, std::size_t counter) {
        return set_index * k + counter;
    };

    for (std::size_t si = 0; si < sets.size(); ++si) {
        if (holds(sets[si], top)) out.initials.insert(id_of(si, 0));
        if (in_family(sets[si], 0)) out.accepting.insert(id_of(si, 0));
        const std::uint32_t a = letter_of(sets[si]);
        for (std::size_t ci = 0; ci < k; ++ci) {
            const std::size_t next_counter = in_family(sets[si], ci) ? (ci + 1) % k : ci;
            auto& row = out.delta[{id_of(si, ci), a}];
            for (std::size_t sj = 0; sj < sets.size(); ++sj)
                if (compatible(sets[si], sets[sj])) row.insert(id_of(sj, next_counter));
        }
    }
    return out;
}

bool nbw_accepts_lasso(const Nbw& a, const std::vector<std::uint32_t>& prefix,
                       const std::vector<std::uint32_t>& loop) {
    if (loop.empty()) fail_internal("nbw_accepts_lasso: empty loop");
    const std::size_t offsets = prefix.size() + loop.size();
    auto letter_at = [&](std::size_t pos) {
        return pos < prefix.size() ? prefix[pos]
                                   : loop[(pos - prefix.size()) % loop.size()];
    };
    auto advance = [&](std::size_t pos) {
        std::size_t next = pos + 1;
        if (next >= offsets) next = prefix.size() + (next - prefix.size()) % loop.size();
        return next;
    };

    // Product of the automaton with the lasso shape, then look for a cycle
    // through an accepting state inside the reachable loop region.
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<std::pair<std::size_t, std::size_t>> queue;
    for (std::size_t q : a.initials)
        if (seen.insert({q, 0}).second) queue.push_back({q, 0});
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto [q, pos] = queue[head];
        auto it = a.delta.find({q, letter_at(pos)});
        if (it == a.delta.end()) continue;
        for (std::size_t q2 : it->second)
            if (seen.insert({q2, advance(pos)}).second) queue.push_back({q2, advance(pos)});
    }

    for (const auto& node : seen) {
        if (node.second < prefix.size() || !a.accepting.count(node.first)) continue;
        // BFS from the accepting node back to itself.
        std::set<std::pair<std::size_t, std::size_t>> vis;
        std::vector<std::pair<std::size_t, std::size_t>> q2{node};
        for (std::size_t head = 0; head < q2.size(); ++head) {
            auto [q, pos] = q2[head];
            auto it = a.delta.find({q, letter_at(pos)});
            if (it == a.delta.end()) continue;
            for (std::size_t s : it->second) {
                std::pair<std::size_t, std::size_t> nxt{s, advance(pos)};
                if (nxt == node) return true;
                if (vis.insert(nxt).second) q2.push_back(nxt);
            }
        }
    }
    return false;
}

}  // namespace sliver
