#ifndef HCL_VERIFY_HPP
#define HCL_VERIFY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hcl/circuit.hpp"
#include "hcl/cyclesim.hpp"

namespace hcl::verify {

// A concrete input assignment (or per-cycle sequence) that makes two
// circuits disagree. Every counterexample this module returns has been
// replayed before being handed out.
struct Counterexample {
  // Combinational checks fill `inputs`; BMC fills `cycles` instead.
  std::map<std::string, BitVec> inputs;
  std::vector<std::map<std::string, BitVec>> cycle_inputs;
  std::string output;
  size_t cycle = 0;  // cycle() calls completed when the divergence showed
  BitVec lhs_value, rhs_value;

  // Poke-script form, replayable through the CLI.
  std::string to_poke_script() const;
};

struct EquivResult {
  enum class Verdict { Equivalent, NoCounterexampleFound, Inequivalent };
  Verdict verdict = Verdict::Equivalent;
  size_t checked = 0;  // assignments, trials or sequences examined
  std::string mode;
  std::optional<Counterexample> cex;

  bool equivalent_or_unfalsified() const { return verdict != Verdict::Inequivalent; }
};

// Shared-input composite whose single output "neq" is 1 exactly when the two
// circuits disagree on some output bit. Both circuits must be combinational
// with identical interfaces (names, widths, order).
std::shared_ptr<const Circuit> build_miter(std::shared_ptr<const Circuit> lhs,
                                           std::shared_ptr<const Circuit> rhs);

// Exact verdict by enumerating every assignment; refuses more than
// max_input_bits total input bits.
EquivResult equiv_exhaustive(std::shared_ptr<const Circuit> lhs,
                             std::shared_ptr<const Circuit> rhs, unsigned max_input_bits = 20);

// Seeded random search; counterexamples are minimized by greedy bit
// clearing. Deterministic for a given seed.
EquivResult equiv_random(std::shared_ptr<const Circuit> lhs, std::shared_ptr<const Circuit> rhs,
                         size_t n_trials, uint64_t seed);

enum class BmcMode { ExhaustiveSequences, Random };

// Co-simulates both circuits from reset for `cycles` steps per input
// sequence, comparing outputs after every cycle. Exhaustive mode requires
// (non-clock input bits x cycles) <= 20; random mode runs `trials` seeded
// sequences.
EquivResult bmc(std::shared_ptr<const Circuit> lhs, std::shared_ptr<const Circuit> rhs,
                size_t cycles, BmcMode mode, uint64_t seed = 0, size_t trials = 1000);

// ---- CNF export ----

struct Cnf {
  size_t var_count = 0;
  std::vector<std::vector<int>> clauses;
  // 1-based variable -> "signal[bit]" label; helper variables introduced by
  // arithmetic lowering stay unlabeled.
  std::map<int, std::string> var_names;

  std::string to_dimacs() const;
};

// Tseitin encoding of a combinational circuit with a single 1-bit output:
// one variable per node bit plus lowering helpers, a final unit clause
// asserting the output, so the formula is satisfiable exactly when the
// miter can raise its flag.
Cnf to_cnf(const Circuit& miter);

struct SatResult {
  bool satisfiable = false;
  std::map<int, bool> assignment;  // populated when satisfiable
};

// Naive brute-force model search over a DIMACS text; refuses instances with
// more than max_vars variables.
SatResult solve_dimacs(const std::string& dimacs_text, unsigned max_vars = 20);

}  // namespace hcl::verify

#endif  // HCL_VERIFY_HPP
