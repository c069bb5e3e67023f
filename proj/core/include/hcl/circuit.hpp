#ifndef HCL_CIRCUIT_HPP
#define HCL_CIRCUIT_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hcl/signal.hpp"

namespace hcl {

struct Port {
  std::string name;
  uint32_t uid = 0;
  unsigned width = 0;
};

struct OutputPort {
  std::string name;
  Signal signal;
};

struct CircuitStats {
  std::string name;
  std::vector<std::pair<std::string, unsigned>> inputs;
  std::vector<std::pair<std::string, unsigned>> outputs;
  std::map<std::string, size_t> node_counts;  // by kind name, reachable nodes only
  size_t total_nodes = 0;
  size_t register_count = 0;
  size_t register_bits = 0;
  size_t memory_count = 0;
  size_t memory_bits = 0;
  size_t max_comb_depth = 0;
  std::vector<CircuitStats> subcircuits;
};

// Identifier rules shared by elaboration and RTL emission: ports are checked
// here so code generation can never fail late.
bool is_legal_identifier(const std::string& s);
bool is_verilog_keyword(const std::string& s);

// A validated, closed netlist: named ports, no floating wires, no
// combinational cycles, and a deterministic topological schedule.
// Immutable after create; safe to share between threads.
class Circuit : public std::enable_shared_from_this<Circuit> {
 public:
  // Closes the graph. Input signals must be Input nodes (the port name is
  // the node's name); outputs may reference any driven node. Port names are
  // unique across both directions. Throws ElabError on validation failure.
  // A builder closes into exactly one circuit.
  static std::shared_ptr<Circuit> create(const std::string& name,
                                         const std::vector<Signal>& inputs,
                                         const std::vector<OutputPort>& outputs);

  const std::string& name() const { return name_; }
  const std::vector<Port>& inputs() const { return inputs_; }
  const std::vector<Port>& outputs() const { return outputs_; }
  const Port* find_input(const std::string& name) const;
  const Port* find_output(const std::string& name) const;

  const NodeStore& store() const { return *store_; }
  const Node& node(uint32_t uid) const { return store_->nodes[uid]; }
  size_t node_count() const { return store_->nodes.size(); }

  // Combinational nodes in evaluation order; every node appears after its
  // combinational operands. Stable with respect to uids.
  const std::vector<uint32_t>& schedule() const { return schedule_; }
  // Registers and memories, in uid order.
  const std::vector<uint32_t>& sequential() const { return sequential_; }
  bool is_reachable(uint32_t uid) const { return reachable_[uid]; }
  const std::vector<uint32_t>& reachable_uids() const { return reachable_uids_; }

  // First naming hint per reachable uid.
  const std::map<uint32_t, std::string>& names() const { return names_; }
  // Pruned-signal notices collected during elaboration.
  const std::vector<std::string>& warnings() const { return warnings_; }

  const std::map<std::string, std::shared_ptr<const Circuit>>& subcircuits() const {
    return store_->subcircuits;
  }
  bool has_instances() const { return has_instances_; }
  // True when no register or memory exists anywhere, including inside
  // instantiated sub-circuits.
  bool is_combinational() const;

  // For each output port, which input ports feed it through a purely
  // combinational path (indexed [output][input]).
  const std::vector<std::vector<bool>>& comb_matrix() const { return comb_matrix_; }

  // Inlines every instance; hierarchy-internal names become "inst$name".
  // Returns this circuit when there is nothing to inline.
  std::shared_ptr<const Circuit> flatten() const;

  CircuitStats stats() const;

 private:
  Circuit() = default;
  void validate_and_schedule();

  std::string name_;
  std::vector<Port> inputs_;
  std::vector<Port> outputs_;
  std::shared_ptr<const NodeStore> store_;
  std::vector<uint32_t> schedule_;
  std::vector<uint32_t> sequential_;
  std::vector<bool> reachable_;
  std::vector<uint32_t> reachable_uids_;
  std::map<uint32_t, std::string> names_;
  std::vector<std::string> warnings_;
  std::vector<std::vector<bool>> comb_matrix_;
  bool has_instances_ = false;
};

// Instantiates a sub-circuit inside the builder's graph. `connections` maps
// every sub-circuit input port to a parent signal; the result maps each
// output port to a signal. Sub-circuit names must be stable: instantiating
// two different circuits under one name is an error.
std::map<std::string, Signal> instantiate(Builder& b, std::shared_ptr<const Circuit> sub,
                                          const std::string& instance_name,
                                          const std::map<std::string, Signal>& connections);

// Copies a circuit's logic into another builder, substituting `input_map`
// for its input ports and inlining any instances. Naming hints are carried
// over with `name_prefix` prepended. Returns the output port signals.
std::map<std::string, Signal> import_circuit(Builder& dst, const Circuit& src,
                                             const std::map<std::string, Signal>& input_map,
                                             const std::string& name_prefix = "");

}  // namespace hcl

#endif  // HCL_CIRCUIT_HPP
