#ifndef HCL_CYCLESIM_HPP
#define HCL_CYCLESIM_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hcl/circuit.hpp"

namespace hcl {

// Width-checked handle onto a simulator port.
struct PortHandle {
  std::string name;
  uint32_t uid = 0;
  unsigned width = 0;
  bool is_input = false;
};

// Levelized cycle-accurate simulator. One cycle() is one rising clock edge:
//   1. evaluate the combinational schedule with current inputs and state,
//   2. sample any attached trace (pre-edge values),
//   3. compute every register next-value and memory write from phase-1
//      values,
//   4. commit them all at once,
//   5. re-evaluate the schedule so peeks observe the committed state.
// Traces therefore hold pre-edge samples (outputs change the cycle after
// their inputs), while peek() after cycle() returns post-edge values.
//
// One instance is single-threaded; independent instances may run in
// parallel threads.
class Simulator {
 public:
  // Instances are inlined up front; every register and memory write clock
  // must trace to the same input (one global clock per simulator).
  explicit Simulator(std::shared_ptr<const Circuit> circuit);

  // The inlined circuit the simulator runs (ports match the source).
  const Circuit& circuit() const { return *flat_; }

  PortHandle input(const std::string& name) const;
  PortHandle output(const std::string& name) const;

  // Takes effect from the next evaluation.
  void poke(const PortHandle& h, const BitVec& v);
  void poke(const std::string& input_name, const BitVec& v);
  BitVec peek(const PortHandle& h) const;
  BitVec peek(const std::string& output_name) const;
  // Reads any port or naming-hinted signal; hierarchy-internal signals are
  // reachable as "inst$name".
  BitVec peek_named(const std::string& name) const;

  void cycle();
  void cycle(size_t n);
  // Back to the post-create state without rebuilding the schedule.
  void reset();

  size_t cycle_count() const { return cycle_count_; }

  // Uid of the global clock input, or -1 for purely combinational circuits.
  int64_t clock_uid() const { return clock_uid_; }

  const BitVec& value_of(uint32_t uid) const { return values_[uid]; }

  // Phase-2 observer (waveform capture) and reset notification.
  void set_cycle_observer(std::function<void(const Simulator&)> obs) {
    cycle_observer_ = std::move(obs);
  }
  void set_reset_observer(std::function<void()> obs) { reset_observer_ = std::move(obs); }

 private:
  void eval_comb();
  void init_state();

  std::shared_ptr<const Circuit> source_;
  std::shared_ptr<const Circuit> flat_;
  std::vector<BitVec> values_;
  int64_t clock_uid_ = -1;
  size_t cycle_count_ = 0;

  struct RegTask {
    uint32_t uid = 0;
    uint32_t d = 0;
    int64_t clear = -1;
    int64_t enable = -1;
    BitVec clear_to;
    BitVec initial;
    BitVec next;  // scratch, computed in phase 3
  };
  std::vector<RegTask> regs_;

  struct MemTask {
    uint32_t uid = 0;
    uint64_t size = 0;
    unsigned width = 0;
    uint32_t enable = 0, address = 0, data = 0;
    std::vector<BitVec> cells;
    // phase-3 samples
    bool do_write = false;
    uint64_t waddr = 0;
    BitVec wdata;
  };
  std::vector<MemTask> mems_;
  std::map<uint32_t, size_t> mem_index_;

  std::map<std::string, uint32_t> name_to_uid_;  // unambiguous hints + ports

  std::function<void(const Simulator&)> cycle_observer_;
  std::function<void()> reset_observer_;
};

}  // namespace hcl

#endif  // HCL_CYCLESIM_HPP
