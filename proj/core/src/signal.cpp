#include "hcl/signal.hpp"

#include <algorithm>

namespace hcl {

const char* node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Input: return "input";
    case NodeKind::Const: return "const";
    case NodeKind::Wire: return "wire";
    case NodeKind::Add: return "add";
    case NodeKind::Sub: return "sub";
    case NodeKind::Mul: return "mul";
    case NodeKind::MulSigned: return "mul_signed";
    case NodeKind::And: return "and";
    case NodeKind::Or: return "or";
    case NodeKind::Xor: return "xor";
    case NodeKind::Eq: return "eq";
    case NodeKind::Lt: return "lt";
    case NodeKind::LtSigned: return "lt_signed";
    case NodeKind::Not: return "not";
    case NodeKind::Mux: return "mux";
    case NodeKind::Cat: return "cat";
    case NodeKind::Select: return "select";
    case NodeKind::Reg: return "reg";
    case NodeKind::Memory: return "memory";
    case NodeKind::MemRead: return "mem_read";
    case NodeKind::Instance: return "instance";
    case NodeKind::InstOut: return "inst_out";
  }
  return "?";
}

namespace {

void require_valid(Signal s, const char* what) {
  if (!s.valid()) throw Error(std::string(what) + ": default-constructed signal");
}

Builder* same_builder(std::initializer_list<Signal> sigs, const char* what) {
  Builder* b = nullptr;
  for (Signal s : sigs) {
    require_valid(s, what);
    if (b == nullptr) b = s.builder();
    if (s.builder() != b)
      throw ElabError(ElabError::Kind::CrossBuilder,
                      std::string(what) + ": signals belong to different builders");
  }
  return b;
}

void require_same_width(Signal a, Signal b, const char* what) {
  if (a.width() != b.width())
    throw WidthError(std::string(what) + ": operand widths differ (" +
                     std::to_string(a.width()) + " vs " + std::to_string(b.width()) + ")");
}

bool literal_fits(unsigned width, long long v) {
  if (v >= 0) {
    if (width >= 63) return true;
    return static_cast<unsigned long long>(v) < (1ull << width);
  }
  if (width >= 64) return true;
  return v >= -(1ll << (width - 1));
}

// Builds a same-width constant for the `op_int` combinator family, failing
// fast when the literal cannot be represented.
Signal sized_literal(Signal a, long long v, const char* what) {
  require_valid(a, what);
  if (!literal_fits(a.width(), v))
    throw WidthError(std::string(what) + ": literal " + std::to_string(v) +
                     " does not fit in " + std::to_string(a.width()) + " bits");
  return a.builder()->constant(BitVec::of_int(a.width(), v));
}

}  // namespace

Signal make_op(Builder* b, Node n) { return Signal(b, b->push(std::move(n))); }

// ---- Signal methods ----

unsigned Signal::width() const {
  require_valid(*this, "width");
  return builder_->node(uid_).width;
}

Signal Signal::named(const std::string& name) const {
  require_valid(*this, "named");
  builder_->add_name(uid_, name);
  return *this;
}

Signal Signal::select(unsigned hi, unsigned lo) const { return hcl::select(*this, hi, lo); }
Signal Signal::bit(unsigned i) const { return hcl::bit(*this, i); }
Signal Signal::lsbs() const { return hcl::lsbs(*this); }
Signal Signal::msb() const { return hcl::msb(*this); }
Signal Signal::msbs() const { return hcl::msbs(*this); }
Signal Signal::uresize(unsigned w) const { return hcl::uresize(*this, w); }
Signal Signal::sresize(unsigned w) const { return hcl::sresize(*this, w); }

// ---- MemoryHandle ----

uint64_t MemoryHandle::size() const { return builder_->node(uid_).mem->size; }
unsigned MemoryHandle::data_width() const { return builder_->node(uid_).width; }
unsigned MemoryHandle::address_width() const { return builder_->node(uid_).mem->address_width; }

// ---- Builder ----

void Builder::check_open() const {
  if (closed_) throw Error("builder already closed into a circuit");
}

uint32_t Builder::push(Node n) {
  check_open();
  store_->nodes.push_back(std::move(n));
  return static_cast<uint32_t>(store_->nodes.size() - 1);
}

Signal Builder::input(const std::string& name, unsigned width) {
  if (width == 0) throw WidthError("input '" + name + "': width must be at least 1");
  if (name.empty()) throw Error("input name must be nonempty");
  Node n;
  n.kind = NodeKind::Input;
  n.width = width;
  n.name = name;
  return Signal(this, push(std::move(n)));
}

Signal Builder::constant(BitVec v) {
  Node n;
  n.kind = NodeKind::Const;
  n.width = v.width();
  n.value = std::move(v);
  return Signal(this, push(std::move(n)));
}

Signal Builder::wire(unsigned width) {
  if (width == 0) throw WidthError("wire width must be at least 1");
  Node n;
  n.kind = NodeKind::Wire;
  n.width = width;
  return Signal(this, push(std::move(n)));
}

void Builder::assign(Signal wire, Signal driver) {
  same_builder({wire, driver}, "assign");
  if (wire.builder() != this) throw Error("assign: wire from another builder");
  check_open();
  Node& n = store_->nodes[wire.uid()];
  if (n.kind != NodeKind::Wire) throw Error("assign: target is not a wire");
  if (n.wire_driver >= 0)
    throw ElabError(ElabError::Kind::MultipleDrivers,
                    "wire " + std::to_string(wire.uid()) + " already has a driver",
                    {wire.uid()});
  if (n.width != driver.width())
    throw WidthError("assign: wire is " + std::to_string(n.width) + " bits, driver is " +
                     std::to_string(driver.width()));
  n.wire_driver = driver.uid();
}

MemoryHandle Builder::memory(uint64_t size, const WritePort& port) {
  if (size == 0) throw Error("memory size must be at least 1");
  Builder* b = same_builder({port.clock, port.enable, port.address, port.data}, "memory");
  if (b != this) throw Error("memory: write port from another builder");
  unsigned addr_width = std::max(1u, ceil_log2(size));
  if (port.clock.width() != 1) throw WidthError("memory: clock must be 1 bit");
  if (port.enable.width() != 1) throw WidthError("memory: write enable must be 1 bit");
  if (port.address.width() != addr_width)
    throw WidthError("memory: address must be " + std::to_string(addr_width) + " bits for size " +
                     std::to_string(size) + ", got " + std::to_string(port.address.width()));
  Node n;
  n.kind = NodeKind::Memory;
  n.width = port.data.width();
  Node::MemInfo mi;
  mi.size = size;
  mi.address_width = addr_width;
  mi.clock = port.clock.uid();
  mi.enable = port.enable.uid();
  mi.address = port.address.uid();
  mi.data = port.data.uid();
  n.mem = mi;
  return MemoryHandle(this, push(std::move(n)));
}

void Builder::add_name(uint32_t uid, const std::string& name) {
  if (name.empty()) throw Error("signal name must be nonempty");
  store_->names.emplace_back(uid, name);
}

// ---- binary/unary combinators ----

namespace {

Signal op2(NodeKind kind, Signal a, Signal b, unsigned width, const char* what) {
  Builder* bld = same_builder({a, b}, what);
  Node n;
  n.kind = kind;
  n.width = width;
  n.operands = {a.uid(), b.uid()};
  return make_op(bld, std::move(n));
}

}  // namespace

Signal add(Signal a, Signal b) {
  require_same_width(a, b, "add");
  return op2(NodeKind::Add, a, b, a.width(), "add");
}
Signal add_int(Signal a, long long v) { return add(a, sized_literal(a, v, "add_int")); }

Signal sub(Signal a, Signal b) {
  require_same_width(a, b, "sub");
  return op2(NodeKind::Sub, a, b, a.width(), "sub");
}
Signal sub_int(Signal a, long long v) { return sub(a, sized_literal(a, v, "sub_int")); }

Signal mul(Signal a, Signal b) { return op2(NodeKind::Mul, a, b, a.width() + b.width(), "mul"); }
Signal mul_signed(Signal a, Signal b) {
  return op2(NodeKind::MulSigned, a, b, a.width() + b.width(), "mul_signed");
}

Signal and_(Signal a, Signal b) {
  require_same_width(a, b, "and");
  return op2(NodeKind::And, a, b, a.width(), "and");
}
Signal or_(Signal a, Signal b) {
  require_same_width(a, b, "or");
  return op2(NodeKind::Or, a, b, a.width(), "or");
}
Signal xor_(Signal a, Signal b) {
  require_same_width(a, b, "xor");
  return op2(NodeKind::Xor, a, b, a.width(), "xor");
}

Signal not_(Signal a) {
  Builder* bld = same_builder({a}, "not");
  Node n;
  n.kind = NodeKind::Not;
  n.width = a.width();
  n.operands = {a.uid()};
  return make_op(bld, std::move(n));
}

Signal eq(Signal a, Signal b) {
  require_same_width(a, b, "eq");
  return op2(NodeKind::Eq, a, b, 1, "eq");
}
Signal eq_int(Signal a, long long v) { return eq(a, sized_literal(a, v, "eq_int")); }
Signal neq(Signal a, Signal b) { return not_(eq(a, b)); }
Signal neq_int(Signal a, long long v) { return not_(eq_int(a, v)); }

Signal lt(Signal a, Signal b) {
  require_same_width(a, b, "lt");
  return op2(NodeKind::Lt, a, b, 1, "lt");
}
Signal lt_int(Signal a, long long v) { return lt(a, sized_literal(a, v, "lt_int")); }
Signal gt(Signal a, Signal b) { return lt(b, a); }
Signal gt_int(Signal a, long long v) { return lt(sized_literal(a, v, "gt_int"), a); }
Signal lte(Signal a, Signal b) { return not_(lt(b, a)); }
Signal lte_int(Signal a, long long v) { return not_(lt(sized_literal(a, v, "lte_int"), a)); }
Signal gte(Signal a, Signal b) { return not_(lt(a, b)); }
Signal gte_int(Signal a, long long v) { return not_(lt(a, sized_literal(a, v, "gte_int"))); }

Signal lt_signed(Signal a, Signal b) {
  require_same_width(a, b, "lt_signed");
  return op2(NodeKind::LtSigned, a, b, 1, "lt_signed");
}
Signal gt_signed(Signal a, Signal b) { return lt_signed(b, a); }
Signal lte_signed(Signal a, Signal b) { return not_(lt_signed(b, a)); }
Signal gte_signed(Signal a, Signal b) { return not_(lt_signed(a, b)); }

Signal mux(Signal select, const std::vector<Signal>& cases) {
  if (cases.size() < 2) throw Error("mux needs at least 2 cases");
  std::vector<Signal> all{select};
  all.insert(all.end(), cases.begin(), cases.end());
  Builder* bld = nullptr;
  for (Signal s : all) {
    require_valid(s, "mux");
    if (!bld) bld = s.builder();
    if (s.builder() != bld)
      throw ElabError(ElabError::Kind::CrossBuilder, "mux: signals from different builders");
  }
  if (select.width() < 32 && cases.size() > (size_t{1} << select.width()))
    throw Error("mux: " + std::to_string(cases.size()) + " cases exceed 2^" +
                std::to_string(select.width()) + " select values");
  unsigned w = cases[0].width();
  for (const Signal& c : cases)
    if (c.width() != w)
      throw WidthError("mux: case widths differ (" + std::to_string(w) + " vs " +
                       std::to_string(c.width()) + ")");
  Node n;
  n.kind = NodeKind::Mux;
  n.width = w;
  n.operands.push_back(select.uid());
  for (const Signal& c : cases) n.operands.push_back(c.uid());
  return make_op(bld, std::move(n));
}

Signal mux2(Signal sel, Signal t, Signal f) {
  if (sel.width() != 1) throw WidthError("mux2: select must be 1 bit");
  return mux(sel, {f, t});
}

Signal concat_msb(const std::vector<Signal>& parts) {
  if (parts.empty()) throw Error("concat of empty list");
  Builder* bld = nullptr;
  unsigned total = 0;
  for (Signal s : parts) {
    require_valid(s, "concat");
    if (!bld) bld = s.builder();
    if (s.builder() != bld)
      throw ElabError(ElabError::Kind::CrossBuilder, "concat: signals from different builders");
    total += s.width();
  }
  if (parts.size() == 1) return parts[0];
  Node n;
  n.kind = NodeKind::Cat;
  n.width = total;
  for (Signal s : parts) n.operands.push_back(s.uid());
  return make_op(bld, std::move(n));
}

Signal concat_lsb(const std::vector<Signal>& parts) {
  std::vector<Signal> rev(parts.rbegin(), parts.rend());
  return concat_msb(rev);
}

Signal cat(Signal a, Signal b) { return concat_msb({a, b}); }

Signal select(Signal v, unsigned hi, unsigned lo) {
  Builder* bld = same_builder({v}, "select");
  if (lo > hi || hi >= v.width())
    throw WidthError("select [" + std::to_string(hi) + ":" + std::to_string(lo) +
                     "] out of range for width " + std::to_string(v.width()));
  Node n;
  n.kind = NodeKind::Select;
  n.width = hi - lo + 1;
  n.operands = {v.uid()};
  n.hi = hi;
  n.lo = lo;
  return make_op(bld, std::move(n));
}

Signal bit(Signal v, unsigned i) { return select(v, i, i); }

Signal lsbs(Signal v) {
  if (v.width() < 2) throw WidthError("lsbs of width-1 signal");
  return select(v, v.width() - 2, 0);
}

Signal msb(Signal v) { return select(v, v.width() - 1, v.width() - 1); }

Signal msbs(Signal v) {
  if (v.width() < 2) throw WidthError("msbs of width-1 signal");
  return select(v, v.width() - 1, 1);
}

Signal uresize(Signal v, unsigned w) {
  if (w == 0) throw WidthError("uresize to width 0");
  require_valid(v, "uresize");
  if (w == v.width()) return v;
  if (w < v.width()) return select(v, w - 1, 0);
  return cat(v.builder()->zero(w - v.width()), v);
}

Signal sresize(Signal v, unsigned w) {
  if (w == 0) throw WidthError("sresize to width 0");
  require_valid(v, "sresize");
  if (w == v.width()) return v;
  if (w < v.width()) return select(v, w - 1, 0);
  Signal sign = msb(v);
  std::vector<Signal> parts(w - v.width(), sign);
  parts.push_back(v);
  return concat_msb(parts);
}

Signal reg(const RegSpec& spec, Signal d) {
  std::vector<Signal> involved{spec.clock, d};
  if (spec.clear) involved.push_back(*spec.clear);
  if (spec.enable) involved.push_back(*spec.enable);
  Builder* bld = nullptr;
  for (Signal s : involved) {
    require_valid(s, "reg");
    if (!bld) bld = s.builder();
    if (s.builder() != bld)
      throw ElabError(ElabError::Kind::CrossBuilder, "reg: signals from different builders");
  }
  if (spec.clock.width() != 1) throw WidthError("reg: clock must be 1 bit");
  if (spec.clear && spec.clear->width() != 1) throw WidthError("reg: clear must be 1 bit");
  if (spec.enable && spec.enable->width() != 1) throw WidthError("reg: enable must be 1 bit");
  if (spec.clear_to && spec.clear_to->width() != d.width())
    throw WidthError("reg: clear_to width " + std::to_string(spec.clear_to->width()) +
                     " does not match data width " + std::to_string(d.width()));
  if (spec.initial && spec.initial->width() != d.width())
    throw WidthError("reg: initial width " + std::to_string(spec.initial->width()) +
                     " does not match data width " + std::to_string(d.width()));
  Node n;
  n.kind = NodeKind::Reg;
  n.width = d.width();
  n.operands = {d.uid()};
  Node::RegInfo ri;
  ri.clock = spec.clock.uid();
  ri.clear = spec.clear ? static_cast<int64_t>(spec.clear->uid()) : -1;
  ri.enable = spec.enable ? static_cast<int64_t>(spec.enable->uid()) : -1;
  ri.clear_to = spec.clear_to ? *spec.clear_to : BitVec::zero(d.width());
  ri.initial = spec.initial ? *spec.initial : BitVec::zero(d.width());
  n.reg = ri;
  return make_op(bld, std::move(n));
}

Signal reg_fb(const RegSpec& spec, unsigned width, const std::function<Signal(Signal)>& f) {
  Builder* bld = spec.clock.builder();
  if (!bld) throw Error("reg_fb: invalid clock");
  Signal w = bld->wire(width);
  Signal next = f(w);
  if (next.width() != width)
    throw WidthError("reg_fb: feedback function returned " + std::to_string(next.width()) +
                     " bits, expected " + std::to_string(width));
  Signal q = reg(spec, next);
  bld->assign(w, q);
  return w;
}

Signal read_async(MemoryHandle mem, Signal address) {
  if (mem.builder() == nullptr) throw Error("read_async: invalid memory");
  Builder* bld = same_builder({address}, "read_async");
  if (bld != mem.builder())
    throw ElabError(ElabError::Kind::CrossBuilder, "read_async: address from another builder");
  if (address.width() != mem.address_width())
    throw WidthError("read_async: address must be " + std::to_string(mem.address_width()) +
                     " bits, got " + std::to_string(address.width()));
  Node n;
  n.kind = NodeKind::MemRead;
  n.width = mem.data_width();
  n.operands = {mem.uid(), address.uid()};
  return make_op(bld, std::move(n));
}

Signal read_sync(const RegSpec& spec, MemoryHandle mem, Signal address) {
  return reg(spec, read_async(mem, address));
}

Signal rom(Builder& b, const std::function<BitVec(size_t)>& f, size_t size, Signal read_address,
           const RegSpec& spec) {
  if (size == 0) throw Error("rom size must be at least 1");
  std::vector<BitVec> table;
  table.reserve(size);
  for (size_t i = 0; i < size; ++i) table.push_back(f(i));
  for (const BitVec& v : table)
    if (v.width() != table[0].width())
      throw WidthError("rom: table entries have inconsistent widths");
  if (size == 1) return reg(spec, b.constant(table[0]));
  if (read_address.width() < 32 && size > (size_t{1} << read_address.width()))
    throw WidthError("rom: address width " + std::to_string(read_address.width()) +
                     " cannot address " + std::to_string(size) + " entries");
  std::vector<Signal> cases;
  cases.reserve(size);
  for (BitVec& v : table) cases.push_back(b.constant(std::move(v)));
  return reg(spec, mux(read_address, cases));
}

Signal reduce(const std::vector<Signal>& xs, const std::function<Signal(Signal, Signal)>& op) {
  if (xs.empty()) throw Error("reduce of empty list");
  Signal acc = xs[0];
  for (size_t i = 1; i < xs.size(); ++i) acc = op(acc, xs[i]);
  return acc;
}

Signal tree_op(const std::function<Signal(Signal, Signal)>& op, std::vector<Signal> xs) {
  if (xs.empty()) throw Error("tree_op of empty list");
  while (xs.size() > 1) {
    std::vector<Signal> next;
    for (size_t i = 0; i < xs.size(); i += 2) {
      if (i + 1 < xs.size())
        next.push_back(op(xs[i], xs[i + 1]));
      else
        next.push_back(xs[i]);
    }
    xs = std::move(next);
  }
  return xs[0];
}

Signal tree(size_t arity, const std::function<Signal(std::vector<Signal>)>& f,
            std::vector<Signal> xs) {
  if (arity < 2) throw Error("tree arity must be at least 2");
  if (xs.empty()) throw Error("tree of empty list");
  while (xs.size() > 1) {
    std::vector<Signal> next;
    for (size_t i = 0; i < xs.size(); i += arity) {
      std::vector<Signal> chunk(xs.begin() + i, xs.begin() + std::min(i + arity, xs.size()));
      next.push_back(chunk.size() == 1 ? chunk[0] : f(std::move(chunk)));
    }
    xs = std::move(next);
  }
  return xs[0];
}

}  // namespace hcl
