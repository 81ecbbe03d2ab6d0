#include "sliver/omega_det.hpp"

#include <algorithm>
#include <set>

namespace sliver {

namespace {

void join(std::string& out, std::size_t v) {
    out += std::to_string(v);
    out += ',';
}

}  // namespace

// Trace automaton state encoding over the tracked parity automaton with n
// states: 0 seeks a starting layer, 1 + q follows a trace at q without a
// colour bound yet, and 1 + n + ci * n + q follows it at q having committed
// to odd maximal colour odd_[ci]. Accepting states are the committed ones
// sitting exactly at their colour; an accepting run of this Büchi automaton
// is precisely a trace whose maximal recurring colour is odd.
TraceMonitor::TraceMonitor(std::vector<int> colours, Budget budget)
    : colours_(std::move(colours)), budget_(budget) {
    std::set<int> odds;
    for (int c : colours_)
        if (c % 2 != 0) odds.insert(c);
    odd_.assign(odds.begin(), odds.end());
    trace_states_ = 1 + colours_.size() * (1 + odd_.size());
    name_cap_ = 4 * trace_states_ + 2;

    State init;
    init.root.name = 1;
    init.root.label = {0};
    init.perm.resize(name_cap_);
    for (std::size_t i = 0; i < name_cap_; ++i) init.perm[i] = i + 1;
    init.colour = 0;
    intern(std::move(init));
}

int TraceMonitor::colour(std::size_t state) const {
    if (state >= states_.size()) fail_internal("trace monitor: state id out of range");
    return states_[state].colour;
}

bool TraceMonitor::trace_accepting(std::size_t b) const {
    const std::size_t n = colours_.size();
    if (b < 1 + n) return false;
    const std::size_t ci = (b - 1 - n) / n;
    const std::size_t q = (b - 1 - n) % n;
    return colours_[q] == odd_[ci];
}

std::vector<std::size_t> TraceMonitor::trace_post(
    const std::vector<std::size_t>& label,
    const std::vector<std::vector<std::size_t>>& adj) const {
    const std::size_t n = colours_.size();
    std::set<std::size_t> out;
    auto commit_targets = [&](std::size_t q2) {
        out.insert(1 + q2);
        for (std::size_t ci = 0; ci < odd_.size(); ++ci)
            if (colours_[q2] <= odd_[ci]) out.insert(1 + n + ci * n + q2);
    };
    for (std::size_t b : label) {
        if (b == 0) {
            out.insert(0);
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t q2 : adj[q]) commit_targets(q2);
        } else if (b < 1 + n) {
            for (std::size_t q2 : adj[b - 1]) commit_targets(q2);
        } else {
            const std::size_t ci = (b - 1 - n) / n;
            const std::size_t q = (b - 1 - n) % n;
            for (std::size_t q2 : adj[q])
                if (colours_[q2] <= odd_[ci]) out.insert(1 + n + ci * n + q2);
        }
    }
    return {out.begin(), out.end()};
}

std::size_t TraceMonitor::intern(State state) {
    std::string key;
    {
        // Canonical form: preorder tree dump, then the permutation and colour.
        struct Ser {
            static void node(const Node& v, std::string& out) {
                out += '(';
                join(out, v.name);
                out += v.marked ? 'm' : 'u';
                out += '[';
                for (std::size_t q : v.label) join(out, q);
                out += ']';
                for (const Node& k : v.kids) node(k, out);
                out += ')';
            }
        };
        Ser::node(state.root, key);
        key += '|';
        for (std::size_t nm : state.perm) join(key, nm);
        key += '|';
        key += std::to_string(state.colour);
    }
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    states_.push_back(std::move(state));
    budget_.charge_states(states_.size());
    index_.emplace(std::move(key), states_.size() - 1);
    return states_.size() - 1;
}

std::size_t TraceMonitor::step(std::size_t state, const Relation& rel) {
    if (state >= states_.size()) fail_internal("trace monitor: state id out of range");
    std::string rel_key;
    for (const auto& [a, b] : rel) {
        join(rel_key, a);
        join(rel_key, b);
    }
    auto hit = memo_.find({state, rel_key});
    if (hit != memo_.end()) return hit->second;

    std::vector<std::vector<std::size_t>> adj(colours_.size());
    for (const auto& [a, b] : rel) {
        if (a >= colours_.size() || b >= colours_.size())
            fail_internal("trace monitor: relation pair out of range");
        adj[a].push_back(b);
    }

    State next = states_[state];

    // Unmark, then split off the accepting part of every pre-existing node
    // as its youngest child.
    std::set<std::size_t> used;
    struct Walk {
        static void names(const Node& v, std::set<std::size_t>& used) {
            used.insert(v.name);
            for (const Node& k : v.kids) names(k, used);
        }
    };
    Walk::names(next.root, used);
    auto fresh_name = [&]() {
        for (std::size_t nm = 1; nm <= name_cap_; ++nm)
            if (!used.count(nm)) {
                used.insert(nm);
                return nm;
            }
        fail_internal("trace monitor: name pool exhausted");
    };
    auto spawn = [&](auto&& self, Node& v) -> void {
        v.marked = false;
        const std::size_t old_kids = v.kids.size();
        std::vector<std::size_t> acc;
        for (std::size_t q : v.label)
            if (trace_accepting(q)) acc.push_back(q);
        for (std::size_t i = 0; i < old_kids; ++i) self(self, v.kids[i]);
        if (!acc.empty()) {
            Node kid;
            kid.name = fresh_name();
            kid.label = std::move(acc);
            v.kids.push_back(std::move(kid));
        }
    };
    spawn(spawn, next.root);

    auto transit = [&](auto&& self, Node& v) -> void {
        v.label = trace_post(v.label, adj);
        for (Node& k : v.kids) self(self, k);
    };
    transit(transit, next.root);

    // Horizontal cleanup: a state claimed by an older sibling leaves the
    // younger sibling's whole subtree.
    auto horizontal = [&](auto&& self, Node& v, std::set<std::size_t>& banned) -> void {
        std::vector<std::size_t> kept;
        for (std::size_t q : v.label)
            if (!banned.count(q)) kept.push_back(q);
        v.label = std::move(kept);
        std::set<std::size_t> acc = banned;
        for (Node& k : v.kids) {
            self(self, k, acc);
            acc.insert(k.label.begin(), k.label.end());
        }
    };
    std::set<std::size_t> no_bans;
    horizontal(horizontal, next.root, no_bans);

    // Drop empty nodes. The seeking state survives every transition, so the
    // root itself can never die.
    auto prune = [&](auto&& self, Node& v) -> bool {
        std::vector<Node> kept;
        for (Node& k : v.kids)
            if (self(self, k)) kept.push_back(std::move(k));
        v.kids = std::move(kept);
        return !v.label.empty();
    };
    if (!prune(prune, next.root)) fail_internal("trace monitor: root label became empty");

    // Vertical merge: a node fully covered by its children absorbs them and
    // is marked. Sibling labels are disjoint subsets of the parent label, so
    // a size comparison decides coverage.
    auto vertical = [&](auto&& self, Node& v) -> void {
        std::size_t covered = 0;
        for (const Node& k : v.kids) covered += k.label.size();
        if (!v.kids.empty() && covered == v.label.size()) {
            v.kids.clear();
            v.marked = true;
        } else {
            for (Node& k : v.kids) self(self, k);
        }
    };
    vertical(vertical, next.root);

    // Index appearance record over node names: a name marked now is an
    // obligation hit, a name absent now is its discharge. The emitted colour
    // compares the deepest positions touched in the current name order; then
    // discharged names move to the front.
    std::set<std::size_t> present;
    std::set<std::size_t> marked;
    auto collect = [&](auto&& self, const Node& v) -> void {
        present.insert(v.name);
        if (v.marked) marked.insert(v.name);
        for (const Node& k : v.kids) self(self, k);
    };
    collect(collect, next.root);

    std::size_t r = 0;
    std::size_t d = 0;
    for (std::size_t pos = 0; pos < next.perm.size(); ++pos) {
        const std::size_t nm = next.perm[pos];
        if (!present.count(nm)) r = pos + 1;
        if (marked.count(nm)) d = pos + 1;
    }
    next.colour = (r == 0 && d == 0) ? 0
                : (r >= d) ? static_cast<int>(2 * r + 2)
                           : static_cast<int>(2 * d + 1);

    std::vector<std::size_t> reordered;
    reordered.reserve(next.perm.size());
    for (std::size_t nm : next.perm)
        if (!present.count(nm)) reordered.push_back(nm);
    for (std::size_t nm : next.perm)
        if (present.count(nm)) reordered.push_back(nm);
    next.perm = std::move(reordered);

    const std::size_t id = intern(std::move(next));
    memo_.emplace(std::make_pair(state, std::move(rel_key)), id);
    return id;
}

bool monitor_accepts_lasso(TraceMonitor& m, const std::vector<Relation>& prefix,
                           const std::vector<Relation>& loop) {
    if (loop.empty()) fail_internal("monitor_accepts_lasso: empty loop");
    std::size_t s = m.initial();
    for (const Relation& r : prefix) s = m.step(s, r);
    std::map<std::size_t, std::size_t> seen;  // state at loop start -> pass
    std::vector<int> pass_max;
    for (std::size_t pass = 0;; ++pass) {
        auto it = seen.find(s);
        if (it != seen.end()) {
            int top = 0;
            for (std::size_t p = it->second; p < pass; ++p) top = std::max(top, pass_max[p]);
            return top % 2 == 0;
        }
        seen.emplace(s, pass);
        int mx = 0;
        for (const Relation& r : loop) {
            s = m.step(s, r);
            mx = std::max(mx, m.colour(s));
        }
        pass_max.push_back(mx);
    }
}

}  // namespace sliver
