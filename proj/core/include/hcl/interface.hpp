#ifndef HCL_INTERFACE_HPP
#define HCL_INTERFACE_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hcl/circuit.hpp"
#include "hcl/signal.hpp"

namespace hcl {

class InterfaceSpec;
using SpecPtr = std::shared_ptr<const InterfaceSpec>;

// Shape of one interface field: a plain width, a nested record, or a fixed
// length array of a shape.
struct Shape {
  enum class Kind { Width, Record, Array };
  Kind kind = Kind::Width;
  unsigned bits = 0;
  SpecPtr record;
  std::shared_ptr<const Shape> element;
  size_t length = 0;

  static Shape width(unsigned bits);
  static Shape record(SpecPtr spec);
  static Shape array(Shape element, size_t length);
};

// Named, width-annotated port record. Specs are runtime values; field names
// are unique per level, widths and array lengths are at least 1.
class InterfaceSpec {
 public:
  static SpecPtr make(std::vector<std::pair<std::string, Shape>> fields);

  const std::vector<std::pair<std::string, Shape>>& fields() const { return fields_; }
  // Flattened (path, width) pairs in declaration order, depth first; path
  // segments are joined with '_' (arrays contribute their index).
  const std::vector<std::pair<std::string, unsigned>>& leaves() const { return leaves_; }
  size_t leaf_count() const { return leaves_.size(); }
  size_t leaf_index(const std::string& path) const;  // throws on unknown path

  bool equals(const InterfaceSpec& other) const;
  std::string to_json() const;

 private:
  InterfaceSpec() = default;
  std::vector<std::pair<std::string, Shape>> fields_;
  std::vector<std::pair<std::string, unsigned>> leaves_;
};

// Structure-congruent value tree over an InterfaceSpec. Leaves are stored
// flat in declaration order; T is Signal in circuits and BitVec in
// testbenches.
template <typename T>
class BundleOf {
 public:
  BundleOf() = default;
  BundleOf(SpecPtr spec, std::vector<T> leaves) : spec_(std::move(spec)), leaves_(std::move(leaves)) {
    if (!spec_) throw Error("bundle without a spec");
    if (leaves_.size() != spec_->leaf_count())
      throw Error("bundle has " + std::to_string(leaves_.size()) + " leaves, spec expects " +
                  std::to_string(spec_->leaf_count()));
    for (size_t i = 0; i < leaves_.size(); ++i) {
      if (leaves_[i].width() != spec_->leaves()[i].second)
        throw WidthError("bundle leaf '" + spec_->leaves()[i].first + "' is " +
                         std::to_string(leaves_[i].width()) + " bits, spec says " +
                         std::to_string(spec_->leaves()[i].second));
    }
  }

  const SpecPtr& spec() const { return spec_; }
  const std::vector<T>& leaves() const { return leaves_; }
  const T& leaf(const std::string& path) const { return leaves_[spec_->leaf_index(path)]; }

  // Applies f to every leaf, preserving structure.
  BundleOf map(const std::function<T(const T&)>& f) const {
    std::vector<T> out;
    out.reserve(leaves_.size());
    for (const T& v : leaves_) out.push_back(f(v));
    return BundleOf(spec_, std::move(out));
  }

  static BundleOf map2(const BundleOf& a, const BundleOf& b,
                       const std::function<T(const T&, const T&)>& f) {
    check_same_spec(a, b, "map2");
    std::vector<T> out;
    out.reserve(a.leaves_.size());
    for (size_t i = 0; i < a.leaves_.size(); ++i) out.push_back(f(a.leaves_[i], b.leaves_[i]));
    return BundleOf(a.spec_, std::move(out));
  }

  static std::vector<std::pair<T, T>> zip(const BundleOf& a, const BundleOf& b) {
    check_same_spec(a, b, "zip");
    std::vector<std::pair<T, T>> out;
    for (size_t i = 0; i < a.leaves_.size(); ++i) out.emplace_back(a.leaves_[i], b.leaves_[i]);
    return out;
  }

  std::vector<T> to_flat_list() const { return leaves_; }
  static BundleOf of_flat_list(SpecPtr spec, std::vector<T> leaves) {
    return BundleOf(std::move(spec), std::move(leaves));
  }

 private:
  static void check_same_spec(const BundleOf& a, const BundleOf& b, const char* what) {
    if (a.spec_ == b.spec_) return;
    if (!a.spec_ || !b.spec_ || !a.spec_->equals(*b.spec_))
      throw Error(std::string(what) + ": bundles have different specs");
  }
  SpecPtr spec_;
  std::vector<T> leaves_;
};

using Bundle = BundleOf<Signal>;
using ValueBundle = BundleOf<BitVec>;

// Creates one input port per leaf, named by the leaf path.
Bundle input_bundle(Builder& b, const SpecPtr& spec);
std::vector<Signal> bundle_signals(const Bundle& bundle);
// Output ports named by leaf path.
std::vector<OutputPort> to_output_ports(const Bundle& bundle);
// Bundle-level circuit closing: ports come from the two specs.
std::shared_ptr<Circuit> create_circuit(const std::string& name, const Bundle& inputs,
                                        const Bundle& outputs);

// Field-wise mux over whole bundles.
Bundle mux_bundle(Signal select, const std::vector<Bundle>& cases);
// Registers every field.
Bundle reg_bundle(const RegSpec& spec, const Bundle& d);

// A bundle tagged with a single validity bit.
struct WithValid {
  Signal valid;
  Bundle value;
};

// Combinational priority select: the first item with valid set wins; when
// none is valid the result carries the last item's value with valid low.
// The result valid is the OR of all item valids.
WithValid priority_select(const std::vector<WithValid>& items);

// Bit vector with a logical meaning: mixing two scalar types is caught at
// run time by spec identity (port name + width), the library analogue of a
// compile-time type error.
struct ScalarSpec {
  std::string port_name;
  unsigned port_width = 0;
};

class Scalar {
 public:
  Scalar(const ScalarSpec& spec, Signal s);
  static Scalar of_int(Builder& b, const ScalarSpec& spec, long long v);
  static Scalar input(Builder& b, const ScalarSpec& spec);

  Signal signal() const { return sig_; }
  const ScalarSpec& spec() const { return spec_; }

  // Unsigned, so constant 1 by construction; kept for parity with the
  // scalar-type idiom it reproduces.
  Signal is_gte_zero() const;
  static Scalar min_(const Scalar& a, const Scalar& b);
  static Scalar max_(const Scalar& a, const Scalar& b);

 private:
  static void check_same_spec(const Scalar& a, const Scalar& b, const char* what);
  ScalarSpec spec_;
  Signal sig_;
};

}  // namespace hcl

#endif  // HCL_INTERFACE_HPP
