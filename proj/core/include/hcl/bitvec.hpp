#ifndef HCL_BITVEC_HPP
#define HCL_BITVEC_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hcl/errors.hpp"

namespace hcl {

// Smallest k such that 2^k >= n. ceil_log2(1) == 0.
unsigned ceil_log2(uint64_t n);

// Arbitrary-width two-state bit vector. The value is an unsigned magnitude
// stored modulo 2^width; negative integers wrap two's-complement on entry.
// Widths well beyond 64 bits are supported; semantics never depend on the
// machine word size.
//
// BitVec is a pure value: freely copyable and shareable across threads.
class BitVec {
 public:
  // Width 1, value 0. Mostly for containers.
  BitVec() : width_(1), words_(1, 0) {}

  // Zero of the given width.
  explicit BitVec(unsigned width);

  static BitVec of_int(unsigned width, long long v);
  static BitVec zero(unsigned width) { return BitVec(width); }
  static BitVec one(unsigned width) { return of_int(width, 1); }
  static BitVec ones(unsigned width) { return of_int(width, -1); }
  // Parses an MSB-first string of '0'/'1'; width = string length.
  static BitVec of_binary_string(std::string_view s);
  // Little-endian 64-bit words, masked to width.
  static BitVec of_words(unsigned width, std::vector<uint64_t> words);

  unsigned width() const { return width_; }
  size_t word_count() const { return words_.size(); }
  const std::vector<uint64_t>& words() const { return words_; }

  bool get_bit(unsigned i) const;
  void set_bit(unsigned i, bool v);
  bool is_zero() const;
  bool sign_bit() const { return get_bit(width_ - 1); }
  // Throws if the value does not fit in 64 bits.
  uint64_t to_uint64() const;

  // MSB-first, exactly width() characters.
  std::string to_binary_string() const;
  // Lowercase, exactly ceil(width/4) digits.
  std::string to_hex_string() const;
  // Unsigned decimal, no padding; works at any width.
  std::string to_decimal_string() const;
  // "<width>'h<hex>", the form used in messages and poke scripts.
  std::string to_string() const;

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.width_ == b.width_ && a.words_ == b.words_;
  }
  friend bool operator!=(const BitVec& a, const BitVec& b) { return !(a == b); }

  // ---- In-place kernels ----
  // These write into *this, which must already have the result width; the
  // cycle simulator evaluates through them to keep the value store free of
  // allocation. The value-returning operations below are thin wrappers.
  void assign_copy(const BitVec& a);
  void assign_add(const BitVec& a, const BitVec& b);
  void assign_sub(const BitVec& a, const BitVec& b);
  void assign_mul(const BitVec& a, const BitVec& b);
  void assign_mul_signed(const BitVec& a, const BitVec& b);
  void assign_and(const BitVec& a, const BitVec& b);
  void assign_or(const BitVec& a, const BitVec& b);
  void assign_xor(const BitVec& a, const BitVec& b);
  void assign_not(const BitVec& a);
  void assign_bool(bool v);
  void assign_select(const BitVec& src, unsigned hi, unsigned lo);
  // Writes all of src into *this starting at bit `offset` (for concats).
  void write_bits(unsigned offset, const BitVec& src);
  void assign_uresize(const BitVec& a);
  void assign_sresize(const BitVec& a);
  void clear_bits();

  // Exact relational kernels.
  static bool equal_values(const BitVec& a, const BitVec& b);
  static bool ult(const BitVec& a, const BitVec& b);
  static bool slt(const BitVec& a, const BitVec& b);

 private:
  void mask_top();
  unsigned width_;
  std::vector<uint64_t> words_;
};

// ---- Value-returning operations ----
// Binary arithmetic and logic require equal widths and keep that width;
// mul widens to the sum of widths; comparisons return a 1-bit vector.
BitVec add(const BitVec& a, const BitVec& b);
BitVec sub(const BitVec& a, const BitVec& b);
BitVec mul(const BitVec& a, const BitVec& b);
BitVec mul_signed(const BitVec& a, const BitVec& b);
BitVec and_(const BitVec& a, const BitVec& b);
BitVec or_(const BitVec& a, const BitVec& b);
BitVec xor_(const BitVec& a, const BitVec& b);
BitVec not_(const BitVec& a);

BitVec eq(const BitVec& a, const BitVec& b);
BitVec neq(const BitVec& a, const BitVec& b);
BitVec lt(const BitVec& a, const BitVec& b);
BitVec gt(const BitVec& a, const BitVec& b);
BitVec lte(const BitVec& a, const BitVec& b);
BitVec gte(const BitVec& a, const BitVec& b);
BitVec lt_signed(const BitVec& a, const BitVec& b);
BitVec gt_signed(const BitVec& a, const BitVec& b);
BitVec lte_signed(const BitVec& a, const BitVec& b);
BitVec gte_signed(const BitVec& a, const BitVec& b);

inline BitVec operator+(const BitVec& a, const BitVec& b) { return add(a, b); }
inline BitVec operator-(const BitVec& a, const BitVec& b) { return sub(a, b); }
inline BitVec operator*(const BitVec& a, const BitVec& b) { return mul(a, b); }
inline BitVec operator&(const BitVec& a, const BitVec& b) { return and_(a, b); }
inline BitVec operator|(const BitVec& a, const BitVec& b) { return or_(a, b); }
inline BitVec operator^(const BitVec& a, const BitVec& b) { return xor_(a, b); }
inline BitVec operator~(const BitVec& a) { return not_(a); }

// First element of concat_msb lands in the most-significant bits.
BitVec concat_msb(const std::vector<BitVec>& parts);
BitVec concat_lsb(const std::vector<BitVec>& parts);
// cat(a, b) places a in the MSBs.
BitVec cat(const BitVec& a, const BitVec& b);

// Bits [hi..lo] inclusive; 0 <= lo <= hi < width.
BitVec select(const BitVec& v, unsigned hi, unsigned lo);
BitVec bit(const BitVec& v, unsigned i);
BitVec lsbs(const BitVec& v);
BitVec msb(const BitVec& v);
BitVec msbs(const BitVec& v);

BitVec uresize(const BitVec& v, unsigned w);
BitVec sresize(const BitVec& v, unsigned w);

}  // namespace hcl

#endif  // HCL_BITVEC_HPP
