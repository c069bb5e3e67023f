#ifndef HCL_RTLGEN_HPP
#define HCL_RTLGEN_HPP

#include <string>
#include <vector>

#include "hcl/circuit.hpp"

namespace hcl {

enum class RtlStyle { Flat, Hierarchical };

// Deterministic Verilog-2001 emission: identical circuits produce
// byte-identical text. Flat style inlines instances; hierarchical style
// emits one module per instance, named "<subcircuit>_<instance>" with
// collision uniquification, definitions before uses.
std::string emit_verilog(const Circuit& circuit, RtlStyle style = RtlStyle::Flat);

// [A-Za-z_][A-Za-z0-9_]*, keywords escaped with a trailing '_', other
// characters replaced by '_'. Uniquification against a scope is the
// emitter's job; this is the single-name rule.
std::string legalize_name(const std::string& hint);

// Checks the emitted text's own invariants: every identifier declared
// exactly once and declared before use. Returns problems; empty means clean.
std::vector<std::string> lint_verilog(const std::string& text);

}  // namespace hcl

#endif  // HCL_RTLGEN_HPP
