#ifndef HCL_ERRORS_HPP
#define HCL_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcl {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bit-width violations: mismatched operand widths, zero widths,
// literals that do not fit, out-of-range selects.
class WidthError : public Error {
 public:
  explicit WidthError(const std::string& msg) : Error(msg) {}
};

// Structural problems detected while closing a graph into a circuit.
class ElabError : public Error {
 public:
  enum class Kind {
    FloatingWire,
    MultipleDrivers,
    CombinationalLoop,
    PortWidthMismatch,
    DuplicatePortName,
    BadPortName,
    CrossBuilder,
    Other,
  };

  ElabError(Kind kind, const std::string& msg, std::vector<uint32_t> uids = {})
      : Error(msg), kind_(kind), uids_(std::move(uids)) {}

  Kind kind() const { return kind_; }
  // Offending node uids; for CombinationalLoop this is the cycle path.
  const std::vector<uint32_t>& uids() const { return uids_; }

 private:
  Kind kind_;
  std::vector<uint32_t> uids_;
};

// Simulation-time misuse: bad poke widths, unknown port names.
class SimError : public Error {
 public:
  explicit SimError(const std::string& msg) : Error(msg) {}
};

// Verification preconditions: sequential nodes in a combinational check,
// interface mismatches, exceeded enumeration bounds.
class VerifyError : public Error {
 public:
  explicit VerifyError(const std::string& msg) : Error(msg) {}
};

}  // namespace hcl

#endif  // HCL_ERRORS_HPP
