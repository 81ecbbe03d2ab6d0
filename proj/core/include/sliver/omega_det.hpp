#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sliver/error.hpp"

namespace sliver {

// Edge set between two consecutive layers of a run graph: sorted unique pairs
// (source state, target state) over the states of some parity automaton.
using Relation = std::vector<std::pair<std::size_t, std::size_t>>;

// Deterministic max-parity word automaton over relation letters. It accepts
// exactly the relation words all of whose traces carry an even maximal
// recurring colour, where a trace is an infinite path through the layered
// graph spelled out by the word (started at any layer).
//
// Built as: a Büchi automaton guessing one bad trace, determinized with
// Safra trees, read complemented as a Streett condition over node names
// (name marked infinitely often implies name absent infinitely often), and
// flattened to parity with an index appearance record. Since the letter
// space is exponential in the tracked automaton, states are interned on
// demand: `step` may grow the monitor and charges the state budget.
class TraceMonitor {
 public:
    explicit TraceMonitor(std::vector<int> colours, Budget budget = {});

    std::size_t initial() const { return 0; }
    int colour(std::size_t state) const;
    std::size_t step(std::size_t state, const Relation& rel);
    std::size_t size() const { return states_.size(); }

 private:
    struct Node {
        std::size_t name = 0;
        bool marked = false;
        std::vector<std::size_t> label;  // sorted states of the trace automaton
        std::vector<Node> kids;          // oldest first
    };
    struct State {
        Node root;
        std::vector<std::size_t> perm;  // name order, recent discharges in front
        int colour = 0;
    };

    bool trace_accepting(std::size_t b) const;
    std::vector<std::size_t> trace_post(const std::vector<std::size_t>& label,
                                        const std::vector<std::vector<std::size_t>>& adj) const;
    std::size_t intern(State state);

    std::vector<int> colours_;       // colours of the tracked automaton
    std::vector<int> odd_;           // distinct odd colours, ascending
    std::size_t trace_states_ = 0;   // seek + track(q) + bounded(q, c)
    std::size_t name_cap_ = 0;
    Budget budget_;
    std::vector<State> states_;
    std::map<std::string, std::size_t> index_;
    std::map<std::pair<std::size_t, std::string>, std::size_t> memo_;
};

// Verdict of the monitor on the eventually periodic word prefix . loop^omega:
// true when every trace of that word has an even maximal recurring colour.
bool monitor_accepts_lasso(TraceMonitor& m, const std::vector<Relation>& prefix,
                           const std::vector<Relation>& loop);

}  // namespace sliver
