#include "hcl/always.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hcl::always {

struct Variable::State {
  enum class Kind { WireVar, RegVar };
  Kind kind;
  Builder* builder = nullptr;
  unsigned width = 0;
  Signal value_wire;           // what value() reads
  Signal wire_default;         // WireVar
  std::optional<RegSpec> spec; // RegVar
  bool compiled = false;
};

struct StatementNode {
  enum class Kind { Assign, If, Switch };
  Kind kind;
  // Assign
  std::shared_ptr<Variable::State> var;
  Signal expr;
  // If
  Signal cond;
  std::vector<Statement> then_b, else_b;
  // Switch
  Signal subject;
  std::vector<std::pair<BitVec, std::vector<Statement>>> cases;
  std::vector<Statement> default_b;
};

Variable Variable::wire_var(Signal default_value) {
  if (!default_value.valid()) throw Error("wire_var: invalid default");
  Variable v;
  v.state_ = std::make_shared<State>();
  v.state_->kind = State::Kind::WireVar;
  v.state_->builder = default_value.builder();
  v.state_->width = default_value.width();
  v.state_->value_wire = default_value.builder()->wire(default_value.width());
  v.state_->wire_default = default_value;
  return v;
}

Variable Variable::reg_var(const RegSpec& spec, unsigned width) {
  if (!spec.clock.valid()) throw Error("reg_var: invalid clock");
  if (width == 0) throw WidthError("reg_var width must be at least 1");
  Variable v;
  v.state_ = std::make_shared<State>();
  v.state_->kind = State::Kind::RegVar;
  v.state_->builder = spec.clock.builder();
  v.state_->width = width;
  v.state_->value_wire = spec.clock.builder()->wire(width);
  v.state_->spec = spec;
  return v;
}

Signal Variable::value() const {
  if (!state_) throw Error("use of default-constructed variable");
  return state_->value_wire;
}

unsigned Variable::width() const {
  if (!state_) throw Error("use of default-constructed variable");
  return state_->width;
}

Statement Variable::set(Signal expr) const {
  if (!state_) throw Error("assignment to default-constructed variable");
  if (!expr.valid()) throw Error("assignment of invalid signal");
  if (expr.width() != state_->width)
    throw WidthError("assignment is " + std::to_string(expr.width()) +
                     " bits, variable takes " + std::to_string(state_->width));
  if (expr.builder() != state_->builder)
    throw ElabError(ElabError::Kind::CrossBuilder, "assignment from another builder");
  auto n = std::make_shared<StatementNode>();
  n->kind = StatementNode::Kind::Assign;
  n->var = state_;
  n->expr = expr;
  return Statement{n};
}

Statement if_(Signal cond, std::vector<Statement> then_branch,
              std::vector<Statement> else_branch) {
  if (!cond.valid()) throw Error("if_: invalid condition");
  if (cond.width() != 1) throw WidthError("if_ condition must be 1 bit");
  auto n = std::make_shared<StatementNode>();
  n->kind = StatementNode::Kind::If;
  n->cond = cond;
  n->then_b = std::move(then_branch);
  n->else_b = std::move(else_branch);
  return Statement{n};
}

Statement when_(Signal cond, std::vector<Statement> body) {
  return if_(cond, std::move(body), {});
}

Statement switch_(Signal subject, std::vector<std::pair<BitVec, std::vector<Statement>>> cases,
                  std::vector<Statement> default_body) {
  if (!subject.valid()) throw Error("switch_: invalid subject");
  std::set<std::string> seen;
  for (const auto& [match, body] : cases) {
    if (match.width() != subject.width())
      throw WidthError("switch case " + match.to_string() + " does not match subject width " +
                       std::to_string(subject.width()));
    if (!seen.insert(match.to_binary_string()).second)
      throw Error("duplicate switch case " + match.to_string());
  }
  auto n = std::make_shared<StatementNode>();
  n->kind = StatementNode::Kind::Switch;
  n->subject = subject;
  n->cases = std::move(cases);
  n->default_b = std::move(default_body);
  return Statement{n};
}

namespace {

using VarState = Variable::State;
using Env = std::map<std::shared_ptr<VarState>, Signal>;

void collect_vars(const std::vector<Statement>& stmts,
                  std::vector<std::shared_ptr<VarState>>& order,
                  std::set<VarState*>& seen) {
  for (const Statement& s : stmts) {
    if (!s.node) throw Error("empty statement");
    const StatementNode& n = *s.node;
    switch (n.kind) {
      case StatementNode::Kind::Assign:
        if (seen.insert(n.var.get()).second) order.push_back(n.var);
        break;
      case StatementNode::Kind::If:
        collect_vars(n.then_b, order, seen);
        collect_vars(n.else_b, order, seen);
        break;
      case StatementNode::Kind::Switch:
        for (const auto& [match, body] : n.cases) collect_vars(body, order, seen);
        collect_vars(n.default_b, order, seen);
        break;
    }
  }
}

// Forward fold: later statements shadow earlier ones along the taken path.
void apply_statements(const std::vector<Statement>& stmts, Env& env);

void merge_branch(Signal cond, const Env& taken, const Env& not_taken, Env& out) {
  for (const auto& [var, base] : out) {
    Signal t = taken.at(var);
    Signal f = not_taken.at(var);
    out[var] = (t.uid() == f.uid()) ? t : mux2(cond, t, f);
  }
}

void apply_statements(const std::vector<Statement>& stmts, Env& env) {
  for (const Statement& s : stmts) {
    const StatementNode& n = *s.node;
    switch (n.kind) {
      case StatementNode::Kind::Assign:
        env[n.var] = n.expr;
        break;
      case StatementNode::Kind::If: {
        Env t = env, f = env;
        apply_statements(n.then_b, t);
        apply_statements(n.else_b, f);
        merge_branch(n.cond, t, f, env);
        break;
      }
      case StatementNode::Kind::Switch: {
        Env result = env;
        apply_statements(n.default_b, result);
        // Later matches in the source order do not shadow earlier ones here:
        // match constants are distinct, so at most one case body applies.
        for (auto it = n.cases.rbegin(); it != n.cases.rend(); ++it) {
          Env c = env;
          apply_statements(it->second, c);
          Signal hit = eq(n.subject, n.subject.builder()->constant(it->first));
          merge_branch(hit, c, result, result);
        }
        env = std::move(result);
        break;
      }
    }
  }
}

}  // namespace

void compile(const std::vector<Statement>& statements) {
  std::vector<std::shared_ptr<VarState>> vars;
  std::set<VarState*> seen;
  collect_vars(statements, vars, seen);
  if (vars.empty()) throw Error("compile: no variable is assigned");
  Builder* b = vars[0]->builder;
  for (const auto& v : vars) {
    if (v->builder != b)
      throw ElabError(ElabError::Kind::CrossBuilder, "compile: variables from different builders");
    if (v->compiled) throw Error("variable driven by two compile calls");
  }

  Env env;
  for (const auto& v : vars)
    env[v] = v->kind == VarState::Kind::RegVar ? v->value_wire : v->wire_default;
  apply_statements(statements, env);

  for (const auto& v : vars) {
    Signal result = env.at(v);
    if (v->kind == VarState::Kind::RegVar) {
      Signal q = reg(*v->spec, result);
      b->assign(v->value_wire, q);
    } else {
      b->assign(v->value_wire, result);
    }
    v->compiled = true;
  }
}

// ---- StateMachine ----

StateMachine::StateMachine(const RegSpec& spec, std::vector<std::string> state_names)
    : names_(std::move(state_names)) {
  if (names_.size() < 2) throw Error("state machine needs at least 2 states");
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) throw Error("duplicate state name");
  unsigned w = std::max(1u, ceil_log2(names_.size()));
  RegSpec s = spec;
  // The register starts in the first state and clears back to it unless the
  // caller overrode those values.
  if (!s.initial) s.initial = BitVec::zero(w);
  if (!s.clear_to) s.clear_to = BitVec::zero(w);
  var_ = Variable::reg_var(s, w);
  var_.value().named("state");
}

unsigned StateMachine::encoding_width() const { return std::max(1u, ceil_log2(names_.size())); }

BitVec StateMachine::encoding(size_t state) const {
  if (state >= names_.size())
    throw Error("unknown state " + std::to_string(state) + " (machine has " +
                std::to_string(names_.size()) + ")");
  return BitVec::of_int(encoding_width(), static_cast<long long>(state));
}

size_t StateMachine::index_of(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw Error("unknown state '" + name + "'");
}

Signal StateMachine::is(size_t state) const {
  return eq(var_.value(), var_.value().builder()->constant(encoding(state)));
}

Statement StateMachine::set_next(size_t state) const {
  return var_.set(var_.value().builder()->constant(encoding(state)));
}

Statement StateMachine::switch_(
    std::vector<std::pair<size_t, std::vector<Statement>>> cases) const {
  std::set<size_t> covered;
  std::vector<std::pair<BitVec, std::vector<Statement>>> lowered;
  for (auto& [state, body] : cases) {
    if (!covered.insert(state).second)
      throw Error("state " + std::to_string(state) + " appears twice in switch");
    lowered.emplace_back(encoding(state), std::move(body));
  }
  if (covered.size() != names_.size())
    throw Error("state machine switch must cover every state");
  return always::switch_(var_.value(), std::move(lowered));
}

}  // namespace hcl::always
