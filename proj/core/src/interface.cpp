#include "hcl/interface.hpp"

#include <set>

#include "json.hpp"

namespace hcl {

Shape Shape::width(unsigned bits) {
  if (bits == 0) throw WidthError("interface field width must be at least 1");
  Shape s;
  s.kind = Kind::Width;
  s.bits = bits;
  return s;
}

Shape Shape::record(SpecPtr spec) {
  if (!spec) throw Error("nested interface spec is null");
  Shape s;
  s.kind = Kind::Record;
  s.record = std::move(spec);
  return s;
}

Shape Shape::array(Shape element, size_t length) {
  if (length == 0) throw Error("interface array length must be at least 1");
  Shape s;
  s.kind = Kind::Array;
  s.element = std::make_shared<Shape>(std::move(element));
  s.length = length;
  return s;
}

namespace {

void flatten_shape(const std::string& path, const Shape& shape,
                   std::vector<std::pair<std::string, unsigned>>& out) {
  switch (shape.kind) {
    case Shape::Kind::Width:
      out.emplace_back(path, shape.bits);
      break;
    case Shape::Kind::Record:
      for (const auto& [name, sub] : shape.record->fields())
        flatten_shape(path + "_" + name, sub, out);
      break;
    case Shape::Kind::Array:
      for (size_t i = 0; i < shape.length; ++i)
        flatten_shape(path + "_" + std::to_string(i), *shape.element, out);
      break;
  }
}

bool shapes_equal(const Shape& a, const Shape& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Shape::Kind::Width:
      return a.bits == b.bits;
    case Shape::Kind::Record:
      return a.record->equals(*b.record);
    case Shape::Kind::Array:
      return a.length == b.length && shapes_equal(*a.element, *b.element);
  }
  return false;
}

nlohmann::ordered_json shape_to_json(const Shape& shape);

nlohmann::ordered_json fields_to_json(const InterfaceSpec& spec) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [name, shape] : spec.fields()) {
    nlohmann::ordered_json f = shape_to_json(shape);
    f["name"] = name;
    // keep "name" first for readability
    nlohmann::ordered_json ordered;
    ordered["name"] = name;
    for (auto& [k, v] : f.items())
      if (k != "name") ordered[k] = v;
    arr.push_back(ordered);
  }
  return arr;
}

nlohmann::ordered_json shape_to_json(const Shape& shape) {
  nlohmann::ordered_json j;
  switch (shape.kind) {
    case Shape::Kind::Width:
      j["width"] = shape.bits;
      break;
    case Shape::Kind::Record:
      j["fields"] = fields_to_json(*shape.record);
      break;
    case Shape::Kind::Array:
      j["length"] = shape.length;
      j["element"] = shape_to_json(*shape.element);
      break;
  }
  return j;
}

}  // namespace

SpecPtr InterfaceSpec::make(std::vector<std::pair<std::string, Shape>> fields) {
  auto spec = std::shared_ptr<InterfaceSpec>(new InterfaceSpec());
  std::set<std::string> seen;
  for (const auto& [name, shape] : fields) {
    if (name.empty()) throw Error("interface field name must be nonempty");
    if (!seen.insert(name).second) throw Error("duplicate interface field '" + name + "'");
    flatten_shape(name, shape, spec->leaves_);
  }
  spec->fields_ = std::move(fields);
  if (spec->leaves_.empty()) throw Error("interface spec has no fields");
  return spec;
}

size_t InterfaceSpec::leaf_index(const std::string& path) const {
  for (size_t i = 0; i < leaves_.size(); ++i)
    if (leaves_[i].first == path) return i;
  throw Error("no interface leaf '" + path + "'");
}

bool InterfaceSpec::equals(const InterfaceSpec& other) const {
  if (this == &other) return true;
  if (fields_.size() != other.fields_.size()) return false;
  for (size_t i = 0; i < fields_.size(); ++i) {
    if (fields_[i].first != other.fields_[i].first) return false;
    if (!shapes_equal(fields_[i].second, other.fields_[i].second)) return false;
  }
  return true;
}

std::string InterfaceSpec::to_json() const {
  nlohmann::ordered_json j;
  j["fields"] = fields_to_json(*this);
  return j.dump();
}

Bundle input_bundle(Builder& b, const SpecPtr& spec) {
  if (!spec) throw Error("input_bundle: null spec");
  std::vector<Signal> leaves;
  leaves.reserve(spec->leaf_count());
  for (const auto& [path, width] : spec->leaves()) leaves.push_back(b.input(path, width));
  return Bundle(spec, std::move(leaves));
}

std::vector<Signal> bundle_signals(const Bundle& bundle) { return bundle.leaves(); }

std::vector<OutputPort> to_output_ports(const Bundle& bundle) {
  std::vector<OutputPort> out;
  for (size_t i = 0; i < bundle.leaves().size(); ++i)
    out.push_back(OutputPort{bundle.spec()->leaves()[i].first, bundle.leaves()[i]});
  return out;
}

std::shared_ptr<Circuit> create_circuit(const std::string& name, const Bundle& inputs,
                                        const Bundle& outputs) {
  return Circuit::create(name, bundle_signals(inputs), to_output_ports(outputs));
}

Bundle mux_bundle(Signal select, const std::vector<Bundle>& cases) {
  if (cases.empty()) throw Error("mux_bundle of empty list");
  for (const Bundle& c : cases)
    if (!c.spec()->equals(*cases[0].spec())) throw Error("mux_bundle: bundles have different specs");
  if (cases.size() == 1) return cases[0];
  std::vector<Signal> leaves;
  for (size_t i = 0; i < cases[0].leaves().size(); ++i) {
    std::vector<Signal> field_cases;
    field_cases.reserve(cases.size());
    for (const Bundle& c : cases) field_cases.push_back(c.leaves()[i]);
    leaves.push_back(mux(select, field_cases));
  }
  return Bundle(cases[0].spec(), std::move(leaves));
}

Bundle reg_bundle(const RegSpec& spec, const Bundle& d) {
  return d.map([&](const Signal& s) { return reg(spec, s); });
}

WithValid priority_select(const std::vector<WithValid>& items) {
  if (items.empty()) throw Error("priority_select of empty list");
  for (const WithValid& item : items) {
    if (item.valid.width() != 1) throw WidthError("priority_select: valid must be 1 bit");
    if (!item.value.spec()->equals(*items[0].value.spec()))
      throw Error("priority_select: bundles have different specs");
  }
  // Fold from the back: earlier items take priority, and when nothing is
  // valid the last value falls through.
  Bundle acc = items.back().value;
  Signal any = items.back().valid;
  for (size_t i = items.size() - 1; i-- > 0;) {
    const WithValid& item = items[i];
    acc = Bundle::map2(item.value, acc,
                       [&](const Signal& t, const Signal& f) { return mux2(item.valid, t, f); });
    any = or_(item.valid, any);
  }
  return WithValid{any, acc};
}

Scalar::Scalar(const ScalarSpec& spec, Signal s) : spec_(spec), sig_(s) {
  if (spec.port_width == 0) throw WidthError("scalar width must be at least 1");
  if (!s.valid()) throw Error("scalar from invalid signal");
  if (s.width() != spec.port_width)
    throw WidthError("scalar '" + spec.port_name + "' expects " +
                     std::to_string(spec.port_width) + " bits, got " + std::to_string(s.width()));
}

Scalar Scalar::of_int(Builder& b, const ScalarSpec& spec, long long v) {
  return Scalar(spec, b.constant(BitVec::of_int(spec.port_width, v)));
}

Scalar Scalar::input(Builder& b, const ScalarSpec& spec) {
  return Scalar(spec, b.input(spec.port_name, spec.port_width));
}

void Scalar::check_same_spec(const Scalar& a, const Scalar& b, const char* what) {
  if (a.spec_.port_name != b.spec_.port_name || a.spec_.port_width != b.spec_.port_width)
    throw Error(std::string(what) + ": scalar type mismatch ('" + a.spec_.port_name + "'[" +
                std::to_string(a.spec_.port_width) + "] vs '" + b.spec_.port_name + "'[" +
                std::to_string(b.spec_.port_width) + "])");
}

Signal Scalar::is_gte_zero() const { return gte_int(sig_, 0); }

Scalar Scalar::min_(const Scalar& a, const Scalar& b) {
  check_same_spec(a, b, "min");
  return Scalar(a.spec_, mux2(lt(a.sig_, b.sig_), a.sig_, b.sig_));
}

Scalar Scalar::max_(const Scalar& a, const Scalar& b) {
  check_same_spec(a, b, "max");
  return Scalar(a.spec_, mux2(gt(a.sig_, b.sig_), a.sig_, b.sig_));
}

}  // namespace hcl
