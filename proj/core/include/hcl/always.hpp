#ifndef HCL_ALWAYS_HPP
#define HCL_ALWAYS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hcl/signal.hpp"

namespace hcl::always {

struct StatementNode;

// Guarded-assignment statement; built with assignments, if_/when_/switch_
// and compiled into mux trees with last-assignment-wins semantics. There is
// no blocking assignment: register variables commit at the clock edge.
struct Statement {
  std::shared_ptr<const StatementNode> node;
};

// A variable readable through value() and assignable inside compile().
// Wire variables take a declared default when no assignment fires; register
// variables hold their current value.
class Variable {
 public:
  static Variable wire_var(Signal default_value);
  static Variable reg_var(const RegSpec& spec, unsigned width);

  Signal value() const;
  unsigned width() const;
  // The `<--` of the guarded-assignment style.
  Statement set(Signal expr) const;

  struct State;  // opaque; owned by the compile machinery

 private:
  std::shared_ptr<State> state_;
};

Statement if_(Signal cond, std::vector<Statement> then_branch,
              std::vector<Statement> else_branch);
Statement when_(Signal cond, std::vector<Statement> body);
// Match constants must have the subject's width and be distinct; unmatched
// values fall through to the default body (or hold/default when absent).
Statement switch_(Signal subject, std::vector<std::pair<BitVec, std::vector<Statement>>> cases,
                  std::vector<Statement> default_body = {});

// Installs drivers on every variable assigned under `statements`: for each,
// a mux tree selecting the last assignment along the taken control path.
// A variable may be driven by exactly one compile call.
void compile(const std::vector<Statement>& statements);

// Binary-encoded state machine over a register variable: states are encoded
// in declaration order and the register starts in (and clears to) the first
// state.
class StateMachine {
 public:
  StateMachine(const RegSpec& spec, std::vector<std::string> state_names);

  Signal is(size_t state) const;
  Statement set_next(size_t state) const;
  Statement switch_(std::vector<std::pair<size_t, std::vector<Statement>>> cases) const;

  const Variable& state_var() const { return var_; }
  size_t state_count() const { return names_.size(); }
  unsigned encoding_width() const;
  const std::vector<std::string>& state_names() const { return names_; }
  size_t index_of(const std::string& name) const;

 private:
  BitVec encoding(size_t state) const;
  std::vector<std::string> names_;
  Variable var_;
};

}  // namespace hcl::always

#endif  // HCL_ALWAYS_HPP
