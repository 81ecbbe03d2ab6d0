#include "sliver/games_finite.hpp"

#include <algorithm>
#include <deque>

namespace sliver {

Player opponent(Player p) { return p == Player::Eve ? Player::Adam : Player::Eve; }

std::vector<std::string> validate_fpg(const Fpg& g) {
    std::vector<std::string> out;
    std::size_t n = g.names.size();
    if (n == 0) out.push_back("no vertices");
    if (g.owner.size() != n) out.push_back("owner table size mismatch");
    if (g.colour.size() != n) out.push_back("colour table size mismatch");
    if (g.edges.size() != n) out.push_back("edge table size mismatch");
    if (g.initial >= n) out.push_back("initial vertex out of range");
    for (std::size_t v = 0; v < g.edges.size(); ++v)
        for (std::size_t w : g.edges[v])
            if (w >= n)
                out.push_back("edge target out of range from " +
                              (v < n ? g.names[v] : std::to_string(v)));
    for (std::size_t v = 0; v < g.colour.size(); ++v)
        if (g.colour[v] < 0) out.push_back("negative colour");
    return out;
}

Player lasso_winner(const std::vector<int>& prefix_colours,
                    const std::vector<int>& loop_colours) {
    (void)prefix_colours;  // only the loop decides under max-parity
    int top = 0;
    for (std::size_t i = 0; i < loop_colours.size(); ++i)
        top = i == 0 ? loop_colours[i] : std::max(top, loop_colours[i]);
    return top % 2 == 0 ? Player::Eve : Player::Adam;
}

namespace {

struct Solver {
    // The input game augmented with two sinks so that every vertex has a
    // move; a deadlocked vertex gets an edge to the sink losing for its
    // owner.
    std::vector<Player> owner;
    std::vector<int> colour;
    std::vector<std::vector<std::size_t>> succ;
    std::vector<std::vector<std::size_t>> pred;
    std::size_t real;  // vertices below this index come from the input

    std::vector<Player> winner;
    std::vector<std::optional<std::size_t>> moves[2];

    explicit Solver(const Fpg& g) {
        std::size_t n = g.names.size();
        real = n;
        owner = g.owner;
        colour = g.colour;
        succ = g.edges;
        // sink won by Eve (even self-loop), sink won by Adam (odd self-loop)
        std::size_t sink_eve = n;
        std::size_t sink_adam = n + 1;
        owner.push_back(Player::Adam);
        colour.push_back(0);
        succ.push_back({sink_eve});
        owner.push_back(Player::Eve);
        colour.push_back(1);
        succ.push_back({sink_adam});
        for (std::size_t v = 0; v < n; ++v)
            if (succ[v].empty())
                succ[v].push_back(g.owner[v] == Player::Eve ? sink_adam : sink_eve);
        pred.assign(succ.size(), {});
        for (std::size_t v = 0; v < succ.size(); ++v)
            for (std::size_t w : succ[v]) pred[w].push_back(v);
        winner.assign(succ.size(), Player::Eve);
        moves[0].assign(succ.size(), std::nullopt);
        moves[1].assign(succ.size(), std::nullopt);
    }

    std::vector<std::optional<std::size_t>>& move_table(Player p) {
        return moves[p == Player::Eve ? 0 : 1];
    }

    // Attractor of `target` for p within `alive`; records p's pulling moves
    // into `move_out` for p-owned vertices newly attracted (not for the
    // target itself).
    std::vector<std::size_t> attractor(Player p, const std::vector<std::size_t>& target,
                                       const std::vector<char>& alive,
                                       std::vector<std::optional<std::size_t>>& move_out) {
        std::vector<char> in(succ.size(), 0);
        std::vector<std::size_t> degree(succ.size(), 0);
        for (std::size_t v = 0; v < succ.size(); ++v) {
            if (!alive[v]) continue;
            for (std::size_t w : succ[v])
                if (alive[w]) ++degree[v];
        }
        std::deque<std::size_t> work;
        std::vector<std::size_t> out;
        for (std::size_t v : target)
            if (alive[v] && !in[v]) {
                in[v] = 1;
                work.push_back(v);
                out.push_back(v);
            }
        while (!work.empty()) {
            std::size_t w = work.front();
            work.pop_front();
            for (std::size_t v : pred[w]) {
                if (!alive[v] || in[v]) continue;
                if (owner[v] == p) {
                    move_out[v] = w;
                    in[v] = 1;
                    work.push_back(v);
                    out.push_back(v);
                } else {
                    if (--degree[v] == 0) {
                        in[v] = 1;
                        work.push_back(v);
                        out.push_back(v);
                    }
                }
            }
        }
        return out;
    }

    // Zielonka over the subgame `alive`; fills winner and the move tables.
    void solve(std::vector<char> alive) {
        int top = -1;
        for (std::size_t v = 0; v < succ.size(); ++v)
            if (alive[v]) top = std::max(top, colour[v]);
        if (top < 0) return;
        Player p = top % 2 == 0 ? Player::Eve : Player::Adam;
        Player q = opponent(p);

        std::vector<std::size_t> tops;
        for (std::size_t v = 0; v < succ.size(); ++v)
            if (alive[v] && colour[v] == top) tops.push_back(v);

        std::vector<std::optional<std::size_t>> pull(succ.size(), std::nullopt);
        auto a = attractor(p, tops, alive, pull);
        std::vector<char> rest = alive;
        for (std::size_t v : a) rest[v] = 0;

        solve(rest);
        bool opponent_wins_some = false;
        for (std::size_t v = 0; v < succ.size(); ++v)
            if (rest[v] && winner[v] == q) opponent_wins_some = true;

        if (!opponent_wins_some) {
            // p wins the whole subgame. Keep recursive strategies on the
            // remainder, attractor moves inside a, and for p-owned top
            // vertices any move staying alive.
            for (std::size_t v = 0; v < succ.size(); ++v) {
                if (!alive[v]) continue;
                winner[v] = p;
                if (!rest[v] && owner[v] == p) {
                    if (pull[v]) {
                        move_table(p)[v] = pull[v];
                    } else {
                        for (std::size_t w : succ[v])
                            if (alive[w]) {
                                move_table(p)[v] = w;
                                break;
                            }
                    }
                }
            }
            return;
        }

        std::vector<std::size_t> opp_region;
        for (std::size_t v = 0; v < succ.size(); ++v)
            if (rest[v] && winner[v] == q) opp_region.push_back(v);
        std::vector<std::optional<std::size_t>> pull_q(succ.size(), std::nullopt);
        auto b = attractor(q, opp_region, alive, pull_q);
        std::vector<char> remaining = alive;
        for (std::size_t v : b) {
            remaining[v] = 0;
            winner[v] = q;
            if (owner[v] == q && pull_q[v]) move_table(q)[v] = pull_q[v];
        }
        solve(remaining);
    }
};

}  // namespace

FpgSolution solve_finite_parity(const Fpg& g, const Budget& budget) {
    auto problems = validate_fpg(g);
    if (!problems.empty()) fail_precondition("invalid parity game: " + problems.front());
    budget.charge_vertices(g.names.size());

    Solver s(g);
    std::vector<char> alive(s.succ.size(), 1);
    s.solve(std::move(alive));

    FpgSolution sol;
    sol.winner.assign(g.names.size(), Player::Eve);
    sol.eve_moves.assign(g.names.size(), std::nullopt);
    sol.adam_moves.assign(g.names.size(), std::nullopt);
    for (std::size_t v = 0; v < g.names.size(); ++v) {
        sol.winner[v] = s.winner[v];
        // Strip artificial moves into the sinks.
        auto keep = [&](std::optional<std::size_t> m) -> std::optional<std::size_t> {
            if (m && *m < g.names.size()) return m;
            return std::nullopt;
        };
        if (g.owner[v] == Player::Eve && s.winner[v] == Player::Eve)
            sol.eve_moves[v] = keep(s.moves[0][v]);
        if (g.owner[v] == Player::Adam && s.winner[v] == Player::Adam)
            sol.adam_moves[v] = keep(s.moves[1][v]);
    }
    return sol;
}

namespace {

// True if the restricted graph contains a cycle whose maximal colour has the
// given parity. Restriction: winner-owned vertices follow the strategy,
// opponent-owned keep all region-internal edges.
bool has_bad_cycle(const std::vector<std::vector<std::size_t>>& adj,
                   const std::vector<int>& colour, const std::vector<char>& region,
                   int bad_parity) {
    int top = -1;
    for (std::size_t v = 0; v < adj.size(); ++v)
        if (region[v]) top = std::max(top, colour[v]);
    for (int c = bad_parity; c <= top; c += 2) {
        // Subgraph of colours <= c; look for a cycle through colour c.
        std::vector<char> keep(adj.size(), 0);
        for (std::size_t v = 0; v < adj.size(); ++v)
            if (region[v] && colour[v] <= c) keep[v] = 1;
        // Iteratively strip vertices with no kept successor, then check
        // whether a colour-c vertex survives in the cyclic core.
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t v = 0; v < adj.size(); ++v) {
                if (!keep[v]) continue;
                bool has = false;
                for (std::size_t w : adj[v])
                    if (keep[w]) has = true;
                if (!has) {
                    keep[v] = 0;
                    changed = true;
                }
            }
        }
        // Also strip vertices unreachable from any kept vertex loop: after
        // pruning, every kept vertex has a successor, so every kept vertex
        // lies on or reaches a cycle; a colour-c vertex must lie ON a cycle.
        // Check by walking: from each colour-c kept vertex, can we return?
        for (std::size_t v = 0; v < adj.size(); ++v) {
            if (!keep[v] || colour[v] != c) continue;
            std::deque<std::size_t> work{v};
            std::vector<char> seen(adj.size(), 0);
            while (!work.empty()) {
                std::size_t u = work.front();
                work.pop_front();
                for (std::size_t w : adj[u]) {
                    if (!keep[w]) continue;
                    if (w == v) return true;
                    if (!seen[w]) {
                        seen[w] = 1;
                        work.push_back(w);
                    }
                }
            }
        }
    }
    return false;
}

}  // namespace

std::vector<std::string> check_parity_solution(const Fpg& g, const FpgSolution& sol) {
    std::vector<std::string> out;
    std::size_t n = g.names.size();
    if (sol.winner.size() != n || sol.eve_moves.size() != n || sol.adam_moves.size() != n) {
        out.push_back("solution tables have wrong size");
        return out;
    }
    for (Player p : {Player::Eve, Player::Adam}) {
        const auto& moves = p == Player::Eve ? sol.eve_moves : sol.adam_moves;
        std::vector<char> region(n, 0);
        for (std::size_t v = 0; v < n; ++v) region[v] = sol.winner[v] == p;
        std::vector<std::vector<std::size_t>> adj(n);
        for (std::size_t v = 0; v < n; ++v) {
            if (!region[v]) continue;
            const char* who = p == Player::Eve ? "Eve" : "Adam";
            if (g.owner[v] == p) {
                if (!moves[v]) {
                    out.push_back(std::string(who) + " lacks a move at won vertex " + g.names[v]);
                    continue;
                }
                if (*moves[v] >= n ||
                    std::find(g.edges[v].begin(), g.edges[v].end(), *moves[v]) ==
                        g.edges[v].end()) {
                    out.push_back(std::string(who) + " strategy uses a non-edge at " +
                                  g.names[v]);
                    continue;
                }
                if (!region[*moves[v]]) {
                    out.push_back(std::string(who) + " strategy leaves the region at " +
                                  g.names[v]);
                    continue;
                }
                adj[v].push_back(*moves[v]);
            } else {
                if (g.edges[v].empty()) continue;  // opponent deadlock: wins for p
                for (std::size_t w : g.edges[v]) {
                    if (!region[w]) {
                        out.push_back("region not closed under opponent moves at " + g.names[v]);
                        break;
                    }
                    adj[v].push_back(w);
                }
                if (adj[v].size() != g.edges[v].size()) continue;
            }
        }
        if (!out.empty()) continue;
        int bad = p == Player::Eve ? 1 : 0;
        if (has_bad_cycle(adj, g.colour, region, bad))
            out.push_back(std::string(p == Player::Eve ? "Eve" : "Adam") +
                          " region contains a losing cycle");
    }
    return out;
}

}  // namespace sliver
