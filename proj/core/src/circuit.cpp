#include "hcl/circuit.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <unordered_set>

namespace hcl {

namespace {

const std::set<std::string>& verilog_keywords() {
  static const std::set<std::string> kw = {
      "always", "and", "assign", "automatic", "begin", "buf", "bufif0", "bufif1", "case",
      "casex", "casez", "cell", "cmos", "config", "deassign", "default", "defparam", "design",
      "disable", "edge", "else", "end", "endcase", "endconfig", "endfunction", "endgenerate",
      "endmodule", "endprimitive", "endspecify", "endtable", "endtask", "event", "for", "force",
      "forever", "fork", "function", "generate", "genvar", "highz0", "highz1", "if", "ifnone",
      "incdir", "include", "initial", "inout", "input", "instance", "integer", "join", "large",
      "liblist", "library", "localparam", "macromodule", "medium", "module", "nand", "negedge",
      "nmos", "nor", "noshowcancelled", "not", "notif0", "notif1", "or", "output", "parameter",
      "pmos", "posedge", "primitive", "pull0", "pull1", "pulldown", "pullup",
      "pulsestyle_ondetect", "pulsestyle_onevent", "rcmos", "real", "realtime", "reg", "release",
      "repeat", "rnmos", "rpmos", "rtran", "rtranif0", "rtranif1", "scalared", "showcancelled",
      "signed", "small", "specify", "specparam", "strong0", "strong1", "supply0", "supply1",
      "table", "task", "time", "tran", "tranif0", "tranif1", "tri", "tri0", "tri1", "triand",
      "trior", "trireg", "unsigned", "use", "vectored", "wait", "wand", "weak0", "weak1",
      "while", "wire", "wor", "xnor", "xor"};
  return kw;
}

// All uids a node refers to, for reachability.
void all_deps(const Node& n, std::vector<uint32_t>& out) {
  out.clear();
  switch (n.kind) {
    case NodeKind::Input:
    case NodeKind::Const:
      break;
    case NodeKind::Wire:
      if (n.wire_driver >= 0) out.push_back(static_cast<uint32_t>(n.wire_driver));
      break;
    case NodeKind::Reg:
      out.push_back(n.operands[0]);
      out.push_back(n.reg->clock);
      if (n.reg->clear >= 0) out.push_back(static_cast<uint32_t>(n.reg->clear));
      if (n.reg->enable >= 0) out.push_back(static_cast<uint32_t>(n.reg->enable));
      break;
    case NodeKind::Memory:
      out.push_back(n.mem->clock);
      out.push_back(n.mem->enable);
      out.push_back(n.mem->address);
      out.push_back(n.mem->data);
      break;
    default:
      out.assign(n.operands.begin(), n.operands.end());
      break;
  }
}

bool is_comb_node(const Node& n) {
  switch (n.kind) {
    case NodeKind::Input:
    case NodeKind::Const:
    case NodeKind::Reg:
    case NodeKind::Memory:
    case NodeKind::Instance:
      return false;
    default:
      return true;
  }
}

}  // namespace

bool is_legal_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

bool is_verilog_keyword(const std::string& s) { return verilog_keywords().count(s) != 0; }

const Port* Circuit::find_input(const std::string& name) const {
  for (const Port& p : inputs_)
    if (p.name == name) return &p;
  return nullptr;
}

const Port* Circuit::find_output(const std::string& name) const {
  for (const Port& p : outputs_)
    if (p.name == name) return &p;
  return nullptr;
}

std::shared_ptr<Circuit> Circuit::create(const std::string& name,
                                         const std::vector<Signal>& inputs,
                                         const std::vector<OutputPort>& outputs) {
  if (outputs.empty()) throw Error("circuit '" + name + "' needs at least one output");
  Builder* b = nullptr;
  for (Signal s : inputs) {
    if (!s.valid()) throw Error("circuit '" + name + "': invalid input signal");
    if (!b) b = s.builder();
    if (s.builder() != b)
      throw ElabError(ElabError::Kind::CrossBuilder, "inputs from different builders");
  }
  for (const OutputPort& o : outputs) {
    if (!o.signal.valid()) throw Error("circuit '" + name + "': invalid output signal");
    if (!b) b = o.signal.builder();
    if (o.signal.builder() != b)
      throw ElabError(ElabError::Kind::CrossBuilder, "outputs from different builders");
  }
  b->check_open();
  b->closed_ = true;

  auto c = std::shared_ptr<Circuit>(new Circuit());
  c->name_ = name;
  c->store_ = b->store_;
  for (Signal s : inputs) {
    const Node& n = c->store_->nodes[s.uid()];
    if (n.kind != NodeKind::Input)
      throw ElabError(ElabError::Kind::Other,
                      "circuit '" + name + "': input port signal is not an input node");
    c->inputs_.push_back(Port{n.name, s.uid(), n.width});
  }
  for (const OutputPort& o : outputs)
    c->outputs_.push_back(Port{o.name, o.signal.uid(), o.signal.width()});
  c->validate_and_schedule();
  return c;
}

void Circuit::validate_and_schedule() {
  const auto& nodes = store_->nodes;

  // Port names: legal identifiers, no keywords, unique across directions.
  std::set<std::string> seen;
  auto check_port = [&](const Port& p, const char* dir) {
    if (!is_legal_identifier(p.name) || is_verilog_keyword(p.name))
      throw ElabError(ElabError::Kind::BadPortName,
                      std::string(dir) + " port '" + p.name + "' is not a legal identifier");
    if (!seen.insert(p.name).second)
      throw ElabError(ElabError::Kind::DuplicatePortName, "duplicate port name '" + p.name + "'");
  };
  for (const Port& p : inputs_) check_port(p, "input");
  for (const Port& p : outputs_) check_port(p, "output");

  // Declared inputs by uid, to detect undeclared ones in the fan-in.
  std::set<uint32_t> declared_inputs;
  for (const Port& p : inputs_) declared_inputs.insert(p.uid);

  // Reachability from the outputs through every dependency edge.
  reachable_.assign(nodes.size(), false);
  std::vector<uint32_t> stack, deps;
  for (const Port& p : outputs_) {
    if (!reachable_[p.uid]) {
      reachable_[p.uid] = true;
      stack.push_back(p.uid);
    }
  }
  while (!stack.empty()) {
    uint32_t uid = stack.back();
    stack.pop_back();
    const Node& n = nodes[uid];
    if (n.kind == NodeKind::Wire && n.wire_driver < 0)
      throw ElabError(ElabError::Kind::FloatingWire,
                      "wire " + std::to_string(uid) + " has no driver", {uid});
    if (n.kind == NodeKind::Input && !declared_inputs.count(uid))
      throw ElabError(ElabError::Kind::Other,
                      "input '" + n.name + "' is used but not declared as a port");
    all_deps(n, deps);
    for (uint32_t d : deps) {
      if (!reachable_[d]) {
        reachable_[d] = true;
        stack.push_back(d);
      }
    }
  }
  // Declared inputs always stay part of the circuit.
  for (const Port& p : inputs_) reachable_[p.uid] = true;
  for (uint32_t uid = 0; uid < nodes.size(); ++uid)
    if (reachable_[uid]) reachable_uids_.push_back(uid);

  // First naming hint per reachable uid; pruned names get a warning.
  std::set<std::string> warned;
  for (const auto& [uid, hint] : store_->names) {
    if (reachable_[uid]) {
      names_.emplace(uid, hint);
    } else if (warned.insert(hint).second) {
      warnings_.push_back("pruned unreachable signal '" + hint + "' (uid " + std::to_string(uid) +
                          ")");
    }
  }

  // Instance port widths, re-checked as the elaboration gate.
  for (uint32_t uid : reachable_uids_) {
    const Node& n = nodes[uid];
    if (n.kind != NodeKind::Instance) continue;
    has_instances_ = true;
    auto it = store_->subcircuits.find(n.inst->circuit_name);
    if (it == store_->subcircuits.end())
      throw ElabError(ElabError::Kind::Other, "unknown sub-circuit '" + n.inst->circuit_name + "'");
    const Circuit& sub = *it->second;
    for (size_t i = 0; i < n.inst->port_names.size(); ++i) {
      const Port* sp = sub.find_input(n.inst->port_names[i]);
      if (!sp)
        throw ElabError(ElabError::Kind::Other,
                        "instance '" + n.inst->instance_name + "': no input port '" +
                            n.inst->port_names[i] + "'");
      unsigned actual = nodes[n.operands[i]].width;
      if (sp->width != actual)
        throw ElabError(ElabError::Kind::PortWidthMismatch,
                        "instance '" + n.inst->instance_name + "' port '" + sp->name +
                            "': expected " + std::to_string(sp->width) + " bits, got " +
                            std::to_string(actual),
                        {uid});
    }
  }

  // Combinational dependencies; instances contribute the edges implied by
  // the sub-circuit's input-to-output combinational paths.
  auto comb_deps = [&](uint32_t uid, std::vector<uint32_t>& out) {
    out.clear();
    const Node& n = nodes[uid];
    switch (n.kind) {
      case NodeKind::Input:
      case NodeKind::Const:
      case NodeKind::Reg:
      case NodeKind::Memory:
      case NodeKind::Instance:
        break;
      case NodeKind::Wire:
        out.push_back(static_cast<uint32_t>(n.wire_driver));
        break;
      case NodeKind::MemRead:
        out.push_back(n.operands[1]);
        break;
      case NodeKind::InstOut: {
        const Node& inst = nodes[n.operands[0]];
        const Circuit& sub = *store_->subcircuits.at(inst.inst->circuit_name);
        const auto& row = sub.comb_matrix()[n.port_index];
        for (size_t i = 0; i < inst.inst->port_names.size(); ++i) {
          const Port* sp = sub.find_input(inst.inst->port_names[i]);
          size_t idx = sp - sub.inputs().data();
          if (row[idx]) out.push_back(inst.operands[i]);
        }
        break;
      }
      default:
        out.assign(n.operands.begin(), n.operands.end());
        break;
    }
  };

  // Kahn's algorithm with a min-uid heap: deterministic and stable.
  std::vector<uint32_t> indeg(nodes.size(), 0);
  std::vector<std::vector<uint32_t>> succ(nodes.size());
  std::vector<uint32_t> comb_nodes;
  for (uint32_t uid : reachable_uids_) {
    const Node& n = nodes[uid];
    if (n.kind == NodeKind::Reg || n.kind == NodeKind::Memory) sequential_.push_back(uid);
    if (!is_comb_node(n)) continue;
    comb_nodes.push_back(uid);
    comb_deps(uid, deps);
    for (uint32_t d : deps) {
      if (is_comb_node(nodes[d])) {
        ++indeg[uid];
        succ[d].push_back(uid);
      }
    }
  }
  std::priority_queue<uint32_t, std::vector<uint32_t>, std::greater<uint32_t>> ready;
  for (uint32_t uid : comb_nodes)
    if (indeg[uid] == 0) ready.push(uid);
  while (!ready.empty()) {
    uint32_t uid = ready.top();
    ready.pop();
    schedule_.push_back(uid);
    for (uint32_t s : succ[uid])
      if (--indeg[s] == 0) ready.push(s);
  }
  if (schedule_.size() < comb_nodes.size()) {
    // Walk dependencies among the unscheduled nodes until one repeats.
    std::vector<bool> remaining(nodes.size(), false);
    uint32_t start = 0;
    bool found = false;
    for (uint32_t uid : comb_nodes)
      if (indeg[uid] > 0) {
        remaining[uid] = true;
        if (!found) {
          start = uid;
          found = true;
        }
      }
    std::vector<uint32_t> path;
    std::map<uint32_t, size_t> pos;
    uint32_t cur = start;
    while (!pos.count(cur)) {
      pos[cur] = path.size();
      path.push_back(cur);
      comb_deps(cur, deps);
      uint32_t next = cur;
      for (uint32_t d : deps)
        if (remaining[d]) {
          next = d;
          break;
        }
      cur = next;
    }
    std::vector<uint32_t> cycle(path.begin() + pos[cur], path.end());
    std::string msg = "combinational loop:";
    for (uint32_t uid : cycle) {
      msg += " " + std::to_string(uid);
      auto it = names_.find(uid);
      if (it != names_.end()) msg += "('" + it->second + "')";
    }
    throw ElabError(ElabError::Kind::CombinationalLoop, msg, cycle);
  }

  // Input-to-output combinational dependency matrix (used by parents when
  // this circuit is instantiated).
  std::map<uint32_t, size_t> input_index;
  for (size_t i = 0; i < inputs_.size(); ++i) input_index[inputs_[i].uid] = i;
  comb_matrix_.assign(outputs_.size(), std::vector<bool>(inputs_.size(), false));
  for (size_t o = 0; o < outputs_.size(); ++o) {
    std::vector<bool> visited(nodes.size(), false);
    std::vector<uint32_t> st{outputs_[o].uid};
    visited[outputs_[o].uid] = true;
    while (!st.empty()) {
      uint32_t uid = st.back();
      st.pop_back();
      const Node& n = nodes[uid];
      if (n.kind == NodeKind::Input) {
        auto it = input_index.find(uid);
        if (it != input_index.end()) comb_matrix_[o][it->second] = true;
        continue;
      }
      comb_deps(uid, deps);
      for (uint32_t d : deps)
        if (!visited[d]) {
          visited[d] = true;
          st.push_back(d);
        }
    }
  }
}

bool Circuit::is_combinational() const {
  if (has_instances_) return flatten()->is_combinational();
  return sequential_.empty();
}

std::shared_ptr<const Circuit> Circuit::flatten() const {
  if (!has_instances_) return shared_from_this();
  Builder b;
  std::map<std::string, Signal> input_map;
  std::vector<Signal> ins;
  for (const Port& p : inputs_) {
    Signal s = b.input(p.name, p.width);
    input_map[p.name] = s;
    ins.push_back(s);
  }
  auto outs = import_circuit(b, *this, input_map);
  std::vector<OutputPort> os;
  for (const Port& p : outputs_) os.push_back(OutputPort{p.name, outs.at(p.name)});
  return Circuit::create(name_, ins, os);
}

CircuitStats Circuit::stats() const {
  if (has_instances_) {
    CircuitStats s = flatten()->stats();
    // One breakdown entry per distinct sub-circuit, recursively.
    for (const auto& [nm, sub] : store_->subcircuits) s.subcircuits.push_back(sub->stats());
    return s;
  }
  CircuitStats s;
  s.name = name_;
  for (const Port& p : inputs_) s.inputs.emplace_back(p.name, p.width);
  for (const Port& p : outputs_) s.outputs.emplace_back(p.name, p.width);
  const auto& nodes = store_->nodes;
  std::vector<size_t> depth(nodes.size(), 0);
  for (uint32_t uid : reachable_uids_) {
    const Node& n = nodes[uid];
    ++s.node_counts[node_kind_name(n.kind)];
    ++s.total_nodes;
    if (n.kind == NodeKind::Reg) {
      ++s.register_count;
      s.register_bits += n.width;
    } else if (n.kind == NodeKind::Memory) {
      ++s.memory_count;
      s.memory_bits += n.mem->size * static_cast<size_t>(n.width);
    }
  }
  for (uint32_t uid : schedule_) {
    const Node& n = nodes[uid];
    size_t d = 0;
    if (n.kind == NodeKind::Wire) {
      d = depth[n.wire_driver];
    } else {
      std::vector<uint32_t> src;
      if (n.kind == NodeKind::MemRead)
        src.push_back(n.operands[1]);
      else
        src = n.operands;
      for (uint32_t op : src) d = std::max(d, depth[op]);
      d += 1;
    }
    depth[uid] = d;
    s.max_comb_depth = std::max(s.max_comb_depth, d);
  }
  return s;
}

std::map<std::string, Signal> instantiate(Builder& b, std::shared_ptr<const Circuit> sub,
                                          const std::string& instance_name,
                                          const std::map<std::string, Signal>& connections) {
  if (!sub) throw Error("instantiate: null sub-circuit");
  if (!is_legal_identifier(instance_name) || is_verilog_keyword(instance_name))
    throw Error("instantiate: '" + instance_name + "' is not a legal instance name");

  Node n;
  n.kind = NodeKind::Instance;
  n.width = 1;
  n.inst = std::make_shared<Node::InstInfo>();
  n.inst->circuit_name = sub->name();
  n.inst->instance_name = instance_name;
  for (const Port& p : sub->inputs()) {
    auto it = connections.find(p.name);
    if (it == connections.end())
      throw ElabError(ElabError::Kind::Other,
                      "instance '" + instance_name + "': missing connection for input '" +
                          p.name + "'");
    Signal s = it->second;
    if (!s.valid() || s.builder() != &b)
      throw ElabError(ElabError::Kind::CrossBuilder,
                      "instance '" + instance_name + "': connection from another builder");
    if (s.width() != p.width)
      throw ElabError(ElabError::Kind::PortWidthMismatch,
                      "instance '" + instance_name + "' port '" + p.name + "': expected " +
                          std::to_string(p.width) + " bits, got " + std::to_string(s.width()));
    n.inst->port_names.push_back(p.name);
    n.operands.push_back(s.uid());
  }
  for (const auto& [name, sig] : connections) {
    (void)sig;
    if (!sub->find_input(name))
      throw ElabError(ElabError::Kind::Other,
                      "instance '" + instance_name + "': no input port '" + name + "'");
  }

  // Register the sub-circuit; one definition per name.
  auto& subs = b.store_->subcircuits;
  auto it = subs.find(sub->name());
  if (it != subs.end() && it->second != sub)
    throw Error("two different circuits named '" + sub->name() + "'");
  subs.emplace(sub->name(), sub);

  Signal inst_sig = make_op(&b, std::move(n));
  std::map<std::string, Signal> outs;
  const auto& oports = sub->outputs();
  for (size_t i = 0; i < oports.size(); ++i) {
    Node o;
    o.kind = NodeKind::InstOut;
    o.width = oports[i].width;
    o.operands = {inst_sig.uid()};
    o.name = oports[i].name;
    o.port_index = static_cast<uint32_t>(i);
    outs.emplace(oports[i].name, make_op(&b, std::move(o)));
  }
  return outs;
}

std::map<std::string, Signal> import_circuit(Builder& dst, const Circuit& src,
                                             const std::map<std::string, Signal>& input_map,
                                             const std::string& name_prefix) {
  for (const Port& p : src.inputs()) {
    auto it = input_map.find(p.name);
    if (it == input_map.end())
      throw Error("import: missing input '" + p.name + "'");
    if (it->second.width() != p.width)
      throw WidthError("import: input '" + p.name + "' expects " + std::to_string(p.width) +
                       " bits, got " + std::to_string(it->second.width()));
  }

  const auto& nodes = src.store().nodes;
  std::vector<Signal> mapped(nodes.size());
  std::vector<std::pair<uint32_t, Signal>> wire_fixups;  // src wire uid -> dst wire
  std::map<uint32_t, std::map<std::string, Signal>> inst_outputs;

  auto remap = [&](uint32_t uid) -> Signal {
    Signal s = mapped[uid];
    if (!s.valid()) throw Error("import: dangling reference to uid " + std::to_string(uid));
    return s;
  };

  for (uint32_t uid = 0; uid < nodes.size(); ++uid) {
    const Node& n = nodes[uid];
    if (n.kind == NodeKind::Input) {
      auto it = input_map.find(n.name);
      if (it != input_map.end()) mapped[uid] = it->second;
      continue;
    }
    if (!src.is_reachable(uid)) continue;
    switch (n.kind) {
      case NodeKind::Const:
        mapped[uid] = dst.constant(n.value);
        break;
      case NodeKind::Wire: {
        Signal w = dst.wire(n.width);
        mapped[uid] = w;
        wire_fixups.emplace_back(uid, w);
        break;
      }
      case NodeKind::Instance: {
        const auto& sub = src.subcircuits().at(n.inst->circuit_name);
        std::map<std::string, Signal> sub_inputs;
        for (size_t i = 0; i < n.inst->port_names.size(); ++i)
          sub_inputs[n.inst->port_names[i]] = remap(n.operands[i]);
        inst_outputs[uid] = import_circuit(dst, *sub, sub_inputs,
                                           name_prefix + n.inst->instance_name + "$");
        break;
      }
      case NodeKind::InstOut:
        mapped[uid] = inst_outputs.at(n.operands[0]).at(n.name);
        break;
      default: {
        Node copy;
        copy.kind = n.kind;
        copy.width = n.width;
        copy.hi = n.hi;
        copy.lo = n.lo;
        copy.value = n.value;
        for (uint32_t op : n.operands) copy.operands.push_back(remap(op).uid());
        if (n.reg) {
          Node::RegInfo ri = *n.reg;
          ri.clock = remap(n.reg->clock).uid();
          if (n.reg->clear >= 0) ri.clear = remap(static_cast<uint32_t>(n.reg->clear)).uid();
          if (n.reg->enable >= 0) ri.enable = remap(static_cast<uint32_t>(n.reg->enable)).uid();
          copy.reg = ri;
        }
        if (n.mem) {
          Node::MemInfo mi = *n.mem;
          mi.clock = remap(n.mem->clock).uid();
          mi.enable = remap(n.mem->enable).uid();
          mi.address = remap(n.mem->address).uid();
          mi.data = remap(n.mem->data).uid();
          copy.mem = mi;
        }
        mapped[uid] = make_op(&dst, std::move(copy));
        break;
      }
    }
  }

  for (const auto& [uid, hint] : src.store().names) {
    if (mapped[uid].valid() && src.is_reachable(uid)) dst.add_name(mapped[uid].uid(), name_prefix + hint);
  }
  for (const auto& [src_uid, w] : wire_fixups)
    dst.assign(w, remap(static_cast<uint32_t>(nodes[src_uid].wire_driver)));

  std::map<std::string, Signal> outs;
  for (const Port& p : src.outputs()) outs[p.name] = remap(p.uid);
  return outs;
}

}  // namespace hcl
