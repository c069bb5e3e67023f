#ifndef HCL_SIGNAL_HPP
#define HCL_SIGNAL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hcl/bitvec.hpp"
#include "hcl/errors.hpp"

namespace hcl {

class Builder;
class Circuit;
struct Node;

enum class NodeKind : uint8_t {
  Input,
  Const,
  Wire,
  Add,
  Sub,
  Mul,
  MulSigned,
  And,
  Or,
  Xor,
  Eq,
  Lt,
  LtSigned,
  Not,
  Mux,
  Cat,
  Select,
  Reg,
  Memory,
  MemRead,
  Instance,
  InstOut,
};

const char* node_kind_name(NodeKind kind);

// Handle into a builder's append-only node store. Cheap to copy; all
// combinators return one. Signals from different builders must not be mixed.
class Signal {
 public:
  Signal() = default;

  unsigned width() const;
  uint32_t uid() const { return uid_; }
  Builder* builder() const { return builder_; }
  bool valid() const { return builder_ != nullptr; }

  // Attaches a naming hint (waveform label / RTL identifier) and returns
  // the same signal.
  Signal named(const std::string& name) const;

  Signal select(unsigned hi, unsigned lo) const;
  Signal bit(unsigned i) const;
  Signal lsbs() const;
  Signal msb() const;
  Signal msbs() const;
  Signal uresize(unsigned w) const;
  Signal sresize(unsigned w) const;

 private:
  friend class Builder;
  friend Signal make_op(Builder*, Node);
  Signal(Builder* b, uint32_t uid) : builder_(b), uid_(uid) {}
  Builder* builder_ = nullptr;
  uint32_t uid_ = 0;
};

// Clock/clear/enable specification for registers. clear beats enable beats
// hold; clear_to and initial default to zero of the registered width.
struct RegSpec {
  Signal clock;
  std::optional<Signal> clear;
  std::optional<BitVec> clear_to;
  std::optional<Signal> enable;
  std::optional<BitVec> initial;
};

inline RegSpec reg_spec(Signal clock) { return RegSpec{clock, {}, {}, {}, {}}; }

// Handle to a memory primitive; values are read through read ports.
class MemoryHandle {
 public:
  MemoryHandle() = default;
  uint32_t uid() const { return uid_; }
  Builder* builder() const { return builder_; }
  uint64_t size() const;
  unsigned data_width() const;
  unsigned address_width() const;

 private:
  friend class Builder;
  MemoryHandle(Builder* b, uint32_t uid) : builder_(b), uid_(uid) {}
  Builder* builder_ = nullptr;
  uint32_t uid_ = 0;
};

struct Node {
  NodeKind kind;
  unsigned width = 0;
  std::vector<uint32_t> operands;

  // Per-kind payloads.
  BitVec value;                 // Const
  unsigned hi = 0, lo = 0;      // Select
  std::string name;             // Input port name; InstOut port name
  int64_t wire_driver = -1;     // Wire

  struct RegInfo {
    uint32_t clock = 0;
    int64_t clear = -1;
    int64_t enable = -1;
    BitVec clear_to;
    BitVec initial;
  };
  std::optional<RegInfo> reg;

  struct MemInfo {
    uint64_t size = 0;
    unsigned address_width = 0;
    uint32_t clock = 0, enable = 0, address = 0, data = 0;
  };
  std::optional<MemInfo> mem;

  struct InstInfo {
    std::string circuit_name;
    std::string instance_name;
    // Sub-circuit input port names, in the same order as `operands`.
    std::vector<std::string> port_names;
  };
  std::shared_ptr<InstInfo> inst;

  // InstOut: index of `name` within the sub-circuit's output ports.
  uint32_t port_index = 0;
};

// Appends a fully-formed node; internal plumbing shared with the circuit
// importer.
Signal make_op(Builder* b, Node n);

// Immutable once the builder is closed into a circuit.
struct NodeStore {
  std::vector<Node> nodes;
  // Naming hints in recording order; the first hint per uid wins.
  std::vector<std::pair<uint32_t, std::string>> names;
  std::map<std::string, std::shared_ptr<const Circuit>> subcircuits;
};

// Single-threaded construction context for one signal graph. The graph is
// append-only: every combinator's operands already exist, so the only
// back-edges are wire drivers.
class Builder {
 public:
  Builder() : store_(std::make_shared<NodeStore>()) {}
  Builder(const Builder&) = delete;
  Builder& operator=(const Builder&) = delete;

  Signal input(const std::string& name, unsigned width);
  Signal constant(BitVec v);
  Signal zero(unsigned width) { return constant(BitVec::zero(width)); }
  Signal one(unsigned width) { return constant(BitVec::one(width)); }
  Signal ones(unsigned width) { return constant(BitVec::ones(width)); }
  Signal wire(unsigned width);
  // The `<==` of the source DSL: permanently drives a wire. A wire accepts
  // exactly one driver.
  void assign(Signal wire, Signal driver);

  struct WritePort {
    Signal clock;
    Signal enable;
    Signal address;
    Signal data;
  };
  // One write port; reads are added with read_async/read_sync. The address
  // is max(1, ceil_log2(size)) bits. Writes at or beyond `size` are dropped
  // and out-of-range reads return zero.
  MemoryHandle memory(uint64_t size, const WritePort& port);

  size_t node_count() const { return store_->nodes.size(); }
  const Node& node(uint32_t uid) const { return store_->nodes[uid]; }
  const NodeStore& store() const { return *store_; }

  void add_name(uint32_t uid, const std::string& name);

  bool closed() const { return closed_; }

 private:
  friend class Circuit;
  friend Signal make_op(Builder*, Node);
  friend std::map<std::string, Signal> instantiate(Builder&, std::shared_ptr<const Circuit>,
                                                   const std::string&,
                                                   const std::map<std::string, Signal>&);
  void check_open() const;
  uint32_t push(Node n);
  std::shared_ptr<NodeStore> store_;
  bool closed_ = false;
};

// ---- Combinators ----
// Arithmetic/logic require equal operand widths and keep that width; mul
// widens to the sum; comparisons produce one bit. The *_int forms size the
// integer literal to the left operand's width and reject literals that do
// not fit.
Signal add(Signal a, Signal b);
Signal add_int(Signal a, long long v);
Signal sub(Signal a, Signal b);
Signal sub_int(Signal a, long long v);
Signal mul(Signal a, Signal b);
Signal mul_signed(Signal a, Signal b);
Signal and_(Signal a, Signal b);
Signal or_(Signal a, Signal b);
Signal xor_(Signal a, Signal b);
Signal not_(Signal a);

Signal eq(Signal a, Signal b);
Signal eq_int(Signal a, long long v);
Signal neq(Signal a, Signal b);
Signal neq_int(Signal a, long long v);
Signal lt(Signal a, Signal b);
Signal lt_int(Signal a, long long v);
Signal gt(Signal a, Signal b);
Signal gt_int(Signal a, long long v);
Signal lte(Signal a, Signal b);
Signal lte_int(Signal a, long long v);
Signal gte(Signal a, Signal b);
Signal gte_int(Signal a, long long v);
Signal lt_signed(Signal a, Signal b);
Signal gt_signed(Signal a, Signal b);
Signal lte_signed(Signal a, Signal b);
Signal gte_signed(Signal a, Signal b);

// Unsigned index select; an index at or past the last case yields the last
// case. Requires 2 <= |cases| <= 2^select_width and equal case widths.
Signal mux(Signal select, const std::vector<Signal>& cases);
// mux2(sel, t, f) == sel ? t : f.
Signal mux2(Signal sel, Signal t, Signal f);

Signal cat(Signal a, Signal b);
Signal concat_msb(const std::vector<Signal>& parts);
Signal concat_lsb(const std::vector<Signal>& parts);

Signal select(Signal v, unsigned hi, unsigned lo);
Signal bit(Signal v, unsigned i);
Signal lsbs(Signal v);
Signal msb(Signal v);
Signal msbs(Signal v);
Signal uresize(Signal v, unsigned w);
Signal sresize(Signal v, unsigned w);

// Edge-triggered register. Per cycle: clear beats enable beats hold.
Signal reg(const RegSpec& spec, Signal d);
// Register with feedback: output = reg(spec, f(output)), closed through an
// internal wire.
Signal reg_fb(const RegSpec& spec, unsigned width, const std::function<Signal(Signal)>& f);

// Asynchronous read returns the pre-edge contents (read-old on a same-cycle
// write); the synchronous variant registers it.
Signal read_async(MemoryHandle mem, Signal address);
Signal read_sync(const RegSpec& spec, MemoryHandle mem, Signal address);

// Lookup table built from an elaboration-time function: mux over constants,
// registered (one cycle of latency). size == 1 degenerates to a constant
// register.
Signal rom(Builder& b, const std::function<BitVec(size_t)>& f, size_t size, Signal read_address,
           const RegSpec& spec);

// Balanced reduction combinators. `op` must be associative for the result
// to equal the linear fold (not checked).
Signal reduce(const std::vector<Signal>& xs, const std::function<Signal(Signal, Signal)>& op);
Signal tree_op(const std::function<Signal(Signal, Signal)>& op, std::vector<Signal> xs);
Signal tree(size_t arity, const std::function<Signal(std::vector<Signal>)>& f,
            std::vector<Signal> xs);

inline Signal operator+(Signal a, Signal b) { return add(a, b); }
inline Signal operator+(Signal a, long long v) { return add_int(a, v); }
inline Signal operator-(Signal a, Signal b) { return sub(a, b); }
inline Signal operator-(Signal a, long long v) { return sub_int(a, v); }
inline Signal operator*(Signal a, Signal b) { return mul(a, b); }
inline Signal operator&(Signal a, Signal b) { return and_(a, b); }
inline Signal operator|(Signal a, Signal b) { return or_(a, b); }
inline Signal operator^(Signal a, Signal b) { return xor_(a, b); }
inline Signal operator~(Signal a) { return not_(a); }
inline Signal operator==(Signal a, Signal b) { return eq(a, b); }
inline Signal operator==(Signal a, long long v) { return eq_int(a, v); }
inline Signal operator!=(Signal a, Signal b) { return neq(a, b); }
inline Signal operator!=(Signal a, long long v) { return neq_int(a, v); }
inline Signal operator<(Signal a, Signal b) { return lt(a, b); }
inline Signal operator<(Signal a, long long v) { return lt_int(a, v); }
inline Signal operator>(Signal a, Signal b) { return gt(a, b); }
inline Signal operator>(Signal a, long long v) { return gt_int(a, v); }
inline Signal operator<=(Signal a, Signal b) { return lte(a, b); }
inline Signal operator<=(Signal a, long long v) { return lte_int(a, v); }
inline Signal operator>=(Signal a, Signal b) { return gte(a, b); }
inline Signal operator>=(Signal a, long long v) { return gte_int(a, v); }

}  // namespace hcl

#endif  // HCL_SIGNAL_HPP
