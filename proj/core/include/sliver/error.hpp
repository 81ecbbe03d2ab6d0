#pragma once

#include <stdexcept>
#include <string>

namespace sliver {

// Error taxonomy shared by library and CLI; the CLI maps categories to
// process exit codes (schema 4, precondition/hierarchy 2, budget 3).
enum class ErrorKind {
  Schema,        // malformed input document or concrete-syntax error
  Precondition,  // operation called outside its contract (incl. hierarchy)
  Budget,        // configured resource cap exceeded; never a wrong answer
  Internal,      // invariant breach inside the library, always a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail_schema(const std::string& msg);
[[noreturn]] void fail_precondition(const std::string& msg);
[[noreturn]] void fail_budget(const std::string& msg);
[[noreturn]] void fail_internal(const std::string& msg);

// Budgets threaded through game/automaton constructions. Zero disables a cap.
struct Budget {
  std::size_t max_game_vertices = 5'000'000;
  std::size_t max_automaton_states = 200'000;

  void charge_vertices(std::size_t n) const;
  void charge_states(std::size_t n) const;
};

}  // namespace sliver
