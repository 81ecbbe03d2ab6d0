#include "sliver/error.hpp"

namespace sliver {

void fail_schema(const std::string& msg) { throw Error(ErrorKind::Schema, msg); }
void fail_precondition(const std::string& msg) { throw Error(ErrorKind::Precondition, msg); }
void fail_budget(const std::string& msg) { throw Error(ErrorKind::Budget, msg); }
void fail_internal(const std::string& msg) { throw Error(ErrorKind::Internal, msg); }

void Budget::charge_vertices(std::size_t n) const {
  if (max_game_vertices && n > max_game_vertices)
    fail_budget("game vertex budget exceeded (" + std::to_string(n) + " > " +
                std::to_string(max_game_vertices) + ")");
}

void Budget::charge_states(std::size_t n) const {
  if (max_automaton_states && n > max_automaton_states)
    fail_budget("automaton state budget exceeded (" + std::to_string(n) + " > " +
                std::to_string(max_automaton_states) + ")");
}

}  // namespace sliver
