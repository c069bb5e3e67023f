#ifndef HCL_WAVEFORM_HPP
#define HCL_WAVEFORM_HPP

#include <string>
#include <vector>

#include "hcl/cyclesim.hpp"

namespace hcl {

enum class Radix { Hex, Dec, Bin };

struct RenderConfig {
  // Each cycle occupies wave_width + 1 character columns.
  unsigned wave_width = 1;
  unsigned display_width = 80;
  // 0 means "as many lines as the trace needs".
  unsigned display_height = 0;
  Radix radix = Radix::Hex;
  size_t start_cycle = 0;
};

// Per-cycle sample history for a simulator: inputs, outputs, then naming-
// hinted internals (each group alphabetical). Samples are taken during the
// simulator's pre-edge phase, so a register output appears in the wave one
// cycle after its input changed.
//
// The trace registers itself as the simulator's cycle observer and must
// outlive the simulation it records.
class WaveTrace {
 public:
  // Requires a fresh (or just reset) simulator.
  explicit WaveTrace(Simulator& sim);
  WaveTrace(const WaveTrace&) = delete;
  WaveTrace& operator=(const WaveTrace&) = delete;

  struct Row {
    std::string name;
    unsigned width = 0;
    uint32_t uid = 0;
    std::vector<BitVec> samples;
  };

  const std::vector<Row>& rows() const { return rows_; }
  size_t cycles() const { return rows_.empty() ? 0 : rows_[0].samples.size(); }
  // Cycle indices at which the simulator was reset.
  const std::vector<size_t>& reset_markers() const { return resets_; }
  const std::string& circuit_name() const { return circuit_name_; }

  // Deterministic ASCII rendering: 1-bit signals as two-row square waves,
  // wider signals as value lanes with '|' transition marks over a rail.
  std::string render(const RenderConfig& cfg = RenderConfig{}) const;

  // IEEE 1364 textual subset: 1ns timescale, one timestep per cycle,
  // identifiers assigned in trace order.
  std::string export_vcd() const;

 private:
  std::string circuit_name_;
  std::vector<Row> rows_;
  std::vector<size_t> resets_;
};

struct ExpectResult {
  bool pass = false;
  bool updated = false;
  std::string diff;  // unified diff on mismatch
};

// Byte-exact snapshot comparison of render(trace, cfg) against a golden
// file. Update mode (explicit flag or GOLDEN_UPDATE=1 in the environment)
// rewrites the golden and passes. A missing golden outside update mode is
// an error.
ExpectResult expect(const WaveTrace& trace, const RenderConfig& cfg,
                    const std::string& golden_path, bool update = false);
bool golden_update_from_env();

std::string unified_diff(const std::string& expected, const std::string& actual);

// Minimal VCD reader for round-trip checks of export_vcd output.
struct VcdSignal {
  std::string name;
  unsigned width = 0;
  std::string id;
};
struct VcdData {
  std::vector<VcdSignal> signals;
  std::vector<std::vector<BitVec>> samples;  // [signal][cycle]
  size_t cycles = 0;
};
VcdData parse_vcd(const std::string& text);

}  // namespace hcl

#endif  // HCL_WAVEFORM_HPP
