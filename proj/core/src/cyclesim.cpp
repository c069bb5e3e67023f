#include "hcl/cyclesim.hpp"

#include <algorithm>
#include <set>

namespace hcl {

namespace {

// Clamps an address-sized value to uint64; anything wider saturates, which
// lands in the out-of-range path.
uint64_t value_as_index(const BitVec& v) {
  const auto& w = v.words();
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i] != 0) return UINT64_MAX;
  return w[0];
}

}  // namespace

Simulator::Simulator(std::shared_ptr<const Circuit> circuit) : source_(std::move(circuit)) {
  if (!source_) throw SimError("null circuit");
  flat_ = source_->flatten();
  const auto& nodes = flat_->store().nodes;

  values_.reserve(nodes.size());
  for (const Node& n : nodes) values_.emplace_back(std::max(1u, n.width));

  // Sequential state and the single-clock rule.
  auto trace_to_input = [&](uint32_t uid) -> uint32_t {
    while (nodes[uid].kind == NodeKind::Wire) uid = static_cast<uint32_t>(nodes[uid].wire_driver);
    if (nodes[uid].kind != NodeKind::Input)
      throw SimError("clock does not trace to an input (uid " + std::to_string(uid) + ")");
    return uid;
  };
  for (uint32_t uid : flat_->sequential()) {
    const Node& n = nodes[uid];
    uint32_t clk = n.kind == NodeKind::Reg ? n.reg->clock : n.mem->clock;
    uint32_t clk_input = trace_to_input(clk);
    if (clock_uid_ >= 0 && clock_uid_ != clk_input)
      throw SimError("multiple clocks: this simulator supports one global clock");
    clock_uid_ = clk_input;
    if (n.kind == NodeKind::Reg) {
      RegTask t;
      t.uid = uid;
      t.d = n.operands[0];
      t.clear = n.reg->clear;
      t.enable = n.reg->enable;
      t.clear_to = n.reg->clear_to;
      t.initial = n.reg->initial;
      t.next = BitVec(n.width);
      regs_.push_back(std::move(t));
    } else {
      MemTask t;
      t.uid = uid;
      t.size = n.mem->size;
      t.width = n.width;
      t.enable = n.mem->enable;
      t.address = n.mem->address;
      t.data = n.mem->data;
      t.cells.assign(t.size, BitVec(n.width));
      t.wdata = BitVec(n.width);
      mem_index_[uid] = mems_.size();
      mems_.push_back(std::move(t));
    }
  }

  // Name table: ports first (always unambiguous), then naming hints that
  // resolve to a unique signal.
  std::map<std::string, std::set<uint32_t>> hint_uids;
  for (const auto& [uid, hint] : flat_->names()) hint_uids[hint].insert(uid);
  for (const auto& [hint, uids] : hint_uids)
    if (uids.size() == 1) name_to_uid_[hint] = *uids.begin();
  for (const Port& p : flat_->inputs()) name_to_uid_[p.name] = p.uid;
  for (const Port& p : flat_->outputs()) name_to_uid_[p.name] = p.uid;

  init_state();
  eval_comb();
}

void Simulator::init_state() {
  const auto& nodes = flat_->store().nodes;
  for (uint32_t uid = 0; uid < nodes.size(); ++uid) {
    const Node& n = nodes[uid];
    if (n.kind == NodeKind::Const)
      values_[uid] = n.value;
    else if (n.kind == NodeKind::Input)
      values_[uid].clear_bits();
  }
  for (RegTask& r : regs_) values_[r.uid] = r.initial;
  for (MemTask& m : mems_)
    for (BitVec& cell : m.cells) cell.clear_bits();
}

PortHandle Simulator::input(const std::string& name) const {
  const Port* p = flat_->find_input(name);
  if (!p) throw SimError("no input port '" + name + "'");
  return PortHandle{p->name, p->uid, p->width, true};
}

PortHandle Simulator::output(const std::string& name) const {
  const Port* p = flat_->find_output(name);
  if (!p) throw SimError("no output port '" + name + "'");
  return PortHandle{p->name, p->uid, p->width, false};
}

void Simulator::poke(const PortHandle& h, const BitVec& v) {
  if (!h.is_input) throw SimError("poke of non-input port '" + h.name + "'");
  if (v.width() != h.width)
    throw SimError("poke '" + h.name + "': expected " + std::to_string(h.width) +
                   " bits, got " + std::to_string(v.width()));
  values_[h.uid] = v;
}

void Simulator::poke(const std::string& input_name, const BitVec& v) { poke(input(input_name), v); }

BitVec Simulator::peek(const PortHandle& h) const { return values_[h.uid]; }

BitVec Simulator::peek(const std::string& output_name) const { return peek(output(output_name)); }

BitVec Simulator::peek_named(const std::string& name) const {
  auto it = name_to_uid_.find(name);
  if (it == name_to_uid_.end()) throw SimError("no signal named '" + name + "'");
  return values_[it->second];
}

void Simulator::eval_comb() {
  const auto& nodes = flat_->store().nodes;
  for (uint32_t uid : flat_->schedule()) {
    const Node& n = nodes[uid];
    BitVec& dst = values_[uid];
    switch (n.kind) {
      case NodeKind::Wire:
        dst.assign_copy(values_[static_cast<uint32_t>(n.wire_driver)]);
        break;
      case NodeKind::Add:
        dst.assign_add(values_[n.operands[0]], values_[n.operands[1]]);
        break;
      case NodeKind::Sub:
        dst.assign_sub(values_[n.operands[0]], values_[n.operands[1]]);
        break;
      case NodeKind::Mul:
        dst.assign_mul(values_[n.operands[0]], values_[n.operands[1]]);
        break;
      case NodeKind::MulSigned:
        dst.assign_mul_signed(values_[n.operands[0]], values_[n.operands[1]]);
        break;
      case NodeKind::And:
        dst.assign_and(values_[n.operands[0]], values_[n.operands[1]]);
        break;
      case NodeKind::Or:
        dst.assign_or(values_[n.operands[0]], values_[n.operands[1]]);
        break;
      case NodeKind::Xor:
        dst.assign_xor(values_[n.operands[0]], values_[n.operands[1]]);
        break;
      case NodeKind::Eq:
        dst.assign_bool(BitVec::equal_values(values_[n.operands[0]], values_[n.operands[1]]));
        break;
      case NodeKind::Lt:
        dst.assign_bool(BitVec::ult(values_[n.operands[0]], values_[n.operands[1]]));
        break;
      case NodeKind::LtSigned:
        dst.assign_bool(BitVec::slt(values_[n.operands[0]], values_[n.operands[1]]));
        break;
      case NodeKind::Not:
        dst.assign_not(values_[n.operands[0]]);
        break;
      case NodeKind::Mux: {
        size_t ncases = n.operands.size() - 1;
        uint64_t idx = value_as_index(values_[n.operands[0]]);
        if (idx >= ncases) idx = ncases - 1;  // select past the end: last case
        dst.assign_copy(values_[n.operands[1 + idx]]);
        break;
      }
      case NodeKind::Cat: {
        unsigned offset = 0;
        for (size_t i = n.operands.size(); i-- > 0;) {
          const BitVec& part = values_[n.operands[i]];
          dst.write_bits(offset, part);
          offset += part.width();
        }
        break;
      }
      case NodeKind::Select:
        dst.assign_select(values_[n.operands[0]], n.hi, n.lo);
        break;
      case NodeKind::MemRead: {
        const MemTask& m = mems_[mem_index_.at(n.operands[0])];
        uint64_t addr = value_as_index(values_[n.operands[1]]);
        if (addr < m.size)
          dst.assign_copy(m.cells[addr]);
        else
          dst.clear_bits();
        break;
      }
      default:
        throw SimError(std::string("unexpected node in schedule: ") + node_kind_name(n.kind));
    }
  }
}

void Simulator::cycle() {
  eval_comb();
  if (cycle_observer_) cycle_observer_(*this);
  // All next-values are computed before anything commits, so register
  // chains exchange values correctly regardless of order.
  for (RegTask& r : regs_) {
    if (r.clear >= 0 && values_[static_cast<uint32_t>(r.clear)].get_bit(0)) {
      r.next.assign_copy(r.clear_to);
    } else if (r.enable >= 0 && !values_[static_cast<uint32_t>(r.enable)].get_bit(0)) {
      r.next.assign_copy(values_[r.uid]);  // hold
    } else {
      r.next.assign_copy(values_[r.d]);
    }
  }
  for (MemTask& m : mems_) {
    m.do_write = values_[m.enable].get_bit(0);
    if (m.do_write) {
      m.waddr = value_as_index(values_[m.address]);
      m.wdata.assign_copy(values_[m.data]);
    }
  }
  for (RegTask& r : regs_) values_[r.uid].assign_copy(r.next);
  for (MemTask& m : mems_) {
    if (m.do_write && m.waddr < m.size) m.cells[m.waddr].assign_copy(m.wdata);
  }
  // Post-edge settle so peeks observe the committed state.
  eval_comb();
  ++cycle_count_;
}

void Simulator::cycle(size_t n) {
  for (size_t i = 0; i < n; ++i) cycle();
}

void Simulator::reset() {
  init_state();
  cycle_count_ = 0;
  if (reset_observer_) reset_observer_();
  eval_comb();
}

}  // namespace hcl
