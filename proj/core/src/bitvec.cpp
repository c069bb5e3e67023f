#include "hcl/bitvec.hpp"

#include <algorithm>

namespace hcl {

namespace {

size_t words_for(unsigned width) { return (static_cast<size_t>(width) + 63) / 64; }

uint64_t top_mask(unsigned width) {
  unsigned rem = width % 64;
  return rem == 0 ? ~uint64_t{0} : ((uint64_t{1} << rem) - 1);
}

void check_width_nonzero(unsigned width) {
  if (width == 0) throw WidthError("bit vector width must be at least 1");
}

void check_same_width(const BitVec& a, const BitVec& b, const char* op) {
  if (a.width() != b.width()) {
    throw WidthError(std::string(op) + ": operand widths differ (" +
                     std::to_string(a.width()) + " vs " + std::to_string(b.width()) + ")");
  }
}

}  // namespace

unsigned ceil_log2(uint64_t n) {
  if (n == 0) throw Error("ceil_log2 of 0");
  unsigned k = 0;
  while ((uint64_t{1} << k) < n) {
    ++k;
    if (k == 64) break;  // n > 2^63
  }
  return k;
}

BitVec::BitVec(unsigned width) : width_(width) {
  check_width_nonzero(width);
  words_.assign(words_for(width), 0);
}

void BitVec::mask_top() { words_.back() &= top_mask(width_); }

BitVec BitVec::of_int(unsigned width, long long v) {
  check_width_nonzero(width);
  BitVec r(width);
  // Sign-extend across all words, then mask: negatives wrap two's-complement.
  uint64_t fill = v < 0 ? ~uint64_t{0} : 0;
  for (auto& w : r.words_) w = fill;
  r.words_[0] = static_cast<uint64_t>(v);
  if (r.words_.size() > 1 && v >= 0) {
    // already zero-filled
  }
  r.mask_top();
  return r;
}

BitVec BitVec::of_binary_string(std::string_view s) {
  if (s.empty()) throw WidthError("empty binary string");
  BitVec r(static_cast<unsigned>(s.size()));
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c != '0' && c != '1') throw Error("bad binary digit '" + std::string(1, c) + "'");
    if (c == '1') r.set_bit(static_cast<unsigned>(s.size() - 1 - i), true);
  }
  return r;
}

BitVec BitVec::of_words(unsigned width, std::vector<uint64_t> words) {
  check_width_nonzero(width);
  BitVec r(width);
  for (size_t i = 0; i < r.words_.size() && i < words.size(); ++i) r.words_[i] = words[i];
  r.mask_top();
  return r;
}

bool BitVec::get_bit(unsigned i) const {
  if (i >= width_) throw WidthError("bit index " + std::to_string(i) + " out of range for width " +
                                    std::to_string(width_));
  return (words_[i / 64] >> (i % 64)) & 1;
}

void BitVec::set_bit(unsigned i, bool v) {
  if (i >= width_) throw WidthError("bit index " + std::to_string(i) + " out of range for width " +
                                    std::to_string(width_));
  uint64_t m = uint64_t{1} << (i % 64);
  if (v)
    words_[i / 64] |= m;
  else
    words_[i / 64] &= ~m;
}

bool BitVec::is_zero() const {
  for (uint64_t w : words_)
    if (w != 0) return false;
  return true;
}

uint64_t BitVec::to_uint64() const {
  for (size_t i = 1; i < words_.size(); ++i)
    if (words_[i] != 0) throw Error("value does not fit in 64 bits");
  return words_[0];
}

std::string BitVec::to_binary_string() const {
  std::string s(width_, '0');
  for (unsigned i = 0; i < width_; ++i)
    if (get_bit(i)) s[width_ - 1 - i] = '1';
  return s;
}

std::string BitVec::to_hex_string() const {
  static const char* digits = "0123456789abcdef";
  unsigned ndigits = (width_ + 3) / 4;
  std::string s(ndigits, '0');
  for (unsigned d = 0; d < ndigits; ++d) {
    unsigned v = 0;
    for (unsigned b = 0; b < 4; ++b) {
      unsigned i = d * 4 + b;
      if (i < width_ && get_bit(i)) v |= 1u << b;
    }
    s[ndigits - 1 - d] = digits[v];
  }
  return s;
}

std::string BitVec::to_decimal_string() const {
  std::vector<uint64_t> w = words_;
  std::string digits;
  bool nonzero = true;
  while (nonzero) {
    nonzero = false;
    unsigned __int128 rem = 0;
    for (size_t i = w.size(); i-- > 0;) {
      unsigned __int128 cur = (rem << 64) | w[i];
      w[i] = static_cast<uint64_t>(cur / 10);
      rem = cur % 10;
      if (w[i] != 0) nonzero = true;
    }
    digits.push_back(static_cast<char>('0' + static_cast<unsigned>(rem)));
  }
  return std::string(digits.rbegin(), digits.rend());
}

std::string BitVec::to_string() const {
  return std::to_string(width_) + "'h" + to_hex_string();
}

void BitVec::assign_copy(const BitVec& a) {
  check_same_width(*this, a, "copy");
  words_ = a.words_;
}

void BitVec::assign_bool(bool v) {
  clear_bits();
  if (v) words_[0] = 1;
}

void BitVec::clear_bits() { std::fill(words_.begin(), words_.end(), 0); }

void BitVec::assign_add(const BitVec& a, const BitVec& b) {
  check_same_width(a, b, "add");
  check_same_width(*this, a, "add");
  uint64_t carry = 0;
  for (size_t i = 0; i < words_.size(); ++i) {
    uint64_t s = a.words_[i] + carry;
    uint64_t c1 = s < carry;
    uint64_t t = s + b.words_[i];
    uint64_t c2 = t < s;
    words_[i] = t;
    carry = c1 | c2;
  }
  mask_top();
}

void BitVec::assign_sub(const BitVec& a, const BitVec& b) {
  check_same_width(a, b, "sub");
  check_same_width(*this, a, "sub");
  uint64_t borrow = 0;
  for (size_t i = 0; i < words_.size(); ++i) {
    uint64_t bi = b.words_[i];
    uint64_t t = a.words_[i] - bi;
    uint64_t b1 = a.words_[i] < bi;
    uint64_t u = t - borrow;
    uint64_t b2 = t < borrow;
    words_[i] = u;
    borrow = b1 | b2;
  }
  mask_top();
}

void BitVec::assign_mul(const BitVec& a, const BitVec& b) {
  if (width_ != a.width() + b.width())
    throw WidthError("mul: result width must be " + std::to_string(a.width() + b.width()));
  std::vector<uint64_t> acc(words_.size(), 0);
  for (size_t i = 0; i < a.words_.size(); ++i) {
    if (a.words_[i] == 0) continue;
    uint64_t carry = 0;
    for (size_t j = 0; j < b.words_.size() && i + j < acc.size(); ++j) {
      unsigned __int128 p = static_cast<unsigned __int128>(a.words_[i]) * b.words_[j];
      p += acc[i + j];
      p += carry;
      acc[i + j] = static_cast<uint64_t>(p);
      carry = static_cast<uint64_t>(p >> 64);
    }
    size_t k = i + b.words_.size();
    while (carry != 0 && k < acc.size()) {
      unsigned __int128 p = static_cast<unsigned __int128>(acc[k]) + carry;
      acc[k] = static_cast<uint64_t>(p);
      carry = static_cast<uint64_t>(p >> 64);
      ++k;
    }
  }
  words_ = std::move(acc);
  mask_top();
}

void BitVec::assign_mul_signed(const BitVec& a, const BitVec& b) {
  // Two's-complement product: sign-extend both operands to the result width
  // and multiply modulo 2^(wa+wb).
  unsigned rw = a.width() + b.width();
  if (width_ != rw) throw WidthError("mul_signed: result width must be " + std::to_string(rw));
  BitVec ea(rw), eb(rw);
  ea.assign_sresize(a);
  eb.assign_sresize(b);
  std::vector<uint64_t> acc(words_.size(), 0);
  for (size_t i = 0; i < ea.words_.size(); ++i) {
    if (ea.words_[i] == 0) continue;
    uint64_t carry = 0;
    for (size_t j = 0; j + i < acc.size(); ++j) {
      uint64_t bw = j < eb.words_.size() ? eb.words_[j] : 0;
      unsigned __int128 p = static_cast<unsigned __int128>(ea.words_[i]) * bw;
      p += acc[i + j];
      p += carry;
      acc[i + j] = static_cast<uint64_t>(p);
      carry = static_cast<uint64_t>(p >> 64);
    }
  }
  words_ = std::move(acc);
  mask_top();
}

void BitVec::assign_and(const BitVec& a, const BitVec& b) {
  check_same_width(a, b, "and");
  check_same_width(*this, a, "and");
  for (size_t i = 0; i < words_.size(); ++i) words_[i] = a.words_[i] & b.words_[i];
}

void BitVec::assign_or(const BitVec& a, const BitVec& b) {
  check_same_width(a, b, "or");
  check_same_width(*this, a, "or");
  for (size_t i = 0; i < words_.size(); ++i) words_[i] = a.words_[i] | b.words_[i];
}

void BitVec::assign_xor(const BitVec& a, const BitVec& b) {
  check_same_width(a, b, "xor");
  check_same_width(*this, a, "xor");
  for (size_t i = 0; i < words_.size(); ++i) words_[i] = a.words_[i] ^ b.words_[i];
}

void BitVec::assign_not(const BitVec& a) {
  check_same_width(*this, a, "not");
  for (size_t i = 0; i < words_.size(); ++i) words_[i] = ~a.words_[i];
  mask_top();
}

void BitVec::assign_select(const BitVec& src, unsigned hi, unsigned lo) {
  if (lo > hi || hi >= src.width())
    throw WidthError("select [" + std::to_string(hi) + ":" + std::to_string(lo) +
                     "] out of range for width " + std::to_string(src.width()));
  if (width_ != hi - lo + 1) throw WidthError("select: bad destination width");
  unsigned wshift = lo / 64;
  unsigned bshift = lo % 64;
  for (size_t i = 0; i < words_.size(); ++i) {
    uint64_t w = 0;
    size_t s = i + wshift;
    if (s < src.words_.size()) w = src.words_[s] >> bshift;
    if (bshift != 0 && s + 1 < src.words_.size()) w |= src.words_[s + 1] << (64 - bshift);
    words_[i] = w;
  }
  mask_top();
}

void BitVec::write_bits(unsigned offset, const BitVec& src) {
  if (offset + src.width() > width_)
    throw WidthError("write_bits: range exceeds destination width");
  unsigned wshift = offset / 64;
  unsigned bshift = offset % 64;
  // Bits above src within the affected words must be preserved; go bitwise
  // only at the boundaries, word-wise in the middle.
  if (bshift == 0) {
    unsigned full = src.width() / 64;
    for (unsigned i = 0; i < full; ++i) words_[wshift + i] = src.words_[i];
    unsigned rem = src.width() % 64;
    if (rem != 0) {
      uint64_t m = (uint64_t{1} << rem) - 1;
      words_[wshift + full] = (words_[wshift + full] & ~m) | (src.words_[full] & m);
    }
  } else {
    for (unsigned i = 0; i < src.width(); ++i) set_bit(offset + i, src.get_bit(i));
  }
}

void BitVec::assign_uresize(const BitVec& a) {
  if (width_ <= a.width()) {
    assign_select(a, width_ - 1, 0);
  } else {
    clear_bits();
    for (size_t i = 0; i < a.words_.size(); ++i) words_[i] = a.words_[i];
  }
}

void BitVec::assign_sresize(const BitVec& a) {
  if (width_ <= a.width()) {
    assign_select(a, width_ - 1, 0);
    return;
  }
  bool sign = a.sign_bit();
  uint64_t fill = sign ? ~uint64_t{0} : 0;
  for (auto& w : words_) w = fill;
  for (size_t i = 0; i < a.words_.size(); ++i) words_[i] = a.words_[i];
  if (sign) {
    // Re-set the fill bits the source words overwrote above its top bit.
    unsigned rem = a.width() % 64;
    if (rem != 0) words_[a.words_.size() - 1] |= ~((uint64_t{1} << rem) - 1);
  }
  mask_top();
}

bool BitVec::equal_values(const BitVec& a, const BitVec& b) {
  check_same_width(a, b, "eq");
  return a.words_ == b.words_;
}

bool BitVec::ult(const BitVec& a, const BitVec& b) {
  check_same_width(a, b, "lt");
  for (size_t i = a.words_.size(); i-- > 0;) {
    if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
  }
  return false;
}

bool BitVec::slt(const BitVec& a, const BitVec& b) {
  check_same_width(a, b, "lt_signed");
  bool an = a.sign_bit(), bn = b.sign_bit();
  if (an != bn) return an;
  // Same sign: two's-complement order matches unsigned order.
  return ult(a, b);
}

// ---- wrappers ----

BitVec add(const BitVec& a, const BitVec& b) {
  BitVec r(a.width());
  r.assign_add(a, b);
  return r;
}

BitVec sub(const BitVec& a, const BitVec& b) {
  BitVec r(a.width());
  r.assign_sub(a, b);
  return r;
}

BitVec mul(const BitVec& a, const BitVec& b) {
  BitVec r(a.width() + b.width());
  r.assign_mul(a, b);
  return r;
}

BitVec mul_signed(const BitVec& a, const BitVec& b) {
  BitVec r(a.width() + b.width());
  r.assign_mul_signed(a, b);
  return r;
}

BitVec and_(const BitVec& a, const BitVec& b) {
  BitVec r(a.width());
  r.assign_and(a, b);
  return r;
}

BitVec or_(const BitVec& a, const BitVec& b) {
  BitVec r(a.width());
  r.assign_or(a, b);
  return r;
}

BitVec xor_(const BitVec& a, const BitVec& b) {
  BitVec r(a.width());
  r.assign_xor(a, b);
  return r;
}

BitVec not_(const BitVec& a) {
  BitVec r(a.width());
  r.assign_not(a);
  return r;
}

namespace {
BitVec bool_bit(bool v) {
  BitVec r(1);
  r.assign_bool(v);
  return r;
}
}  // namespace

BitVec eq(const BitVec& a, const BitVec& b) { return bool_bit(BitVec::equal_values(a, b)); }
BitVec neq(const BitVec& a, const BitVec& b) { return bool_bit(!BitVec::equal_values(a, b)); }
BitVec lt(const BitVec& a, const BitVec& b) { return bool_bit(BitVec::ult(a, b)); }
BitVec gt(const BitVec& a, const BitVec& b) { return bool_bit(BitVec::ult(b, a)); }
BitVec lte(const BitVec& a, const BitVec& b) { return bool_bit(!BitVec::ult(b, a)); }
BitVec gte(const BitVec& a, const BitVec& b) { return bool_bit(!BitVec::ult(a, b)); }
BitVec lt_signed(const BitVec& a, const BitVec& b) { return bool_bit(BitVec::slt(a, b)); }
BitVec gt_signed(const BitVec& a, const BitVec& b) { return bool_bit(BitVec::slt(b, a)); }
BitVec lte_signed(const BitVec& a, const BitVec& b) { return bool_bit(!BitVec::slt(b, a)); }
BitVec gte_signed(const BitVec& a, const BitVec& b) { return bool_bit(!BitVec::slt(a, b)); }

BitVec concat_msb(const std::vector<BitVec>& parts) {
  if (parts.empty()) throw WidthError("concat of empty list");
  unsigned total = 0;
  for (const auto& p : parts) total += p.width();
  BitVec r(total);
  // Last element of a msb-first list occupies the low bits.
  unsigned offset = 0;
  for (size_t i = parts.size(); i-- > 0;) {
    r.write_bits(offset, parts[i]);
    offset += parts[i].width();
  }
  return r;
}

BitVec concat_lsb(const std::vector<BitVec>& parts) {
  if (parts.empty()) throw WidthError("concat of empty list");
  std::vector<BitVec> rev(parts.rbegin(), parts.rend());
  return concat_msb(rev);
}

BitVec cat(const BitVec& a, const BitVec& b) { return concat_msb({a, b}); }

BitVec select(const BitVec& v, unsigned hi, unsigned lo) {
  if (lo > hi || hi >= v.width())
    throw WidthError("select [" + std::to_string(hi) + ":" + std::to_string(lo) +
                     "] out of range for width " + std::to_string(v.width()));
  BitVec r(hi - lo + 1);
  r.assign_select(v, hi, lo);
  return r;
}

BitVec bit(const BitVec& v, unsigned i) { return select(v, i, i); }

BitVec lsbs(const BitVec& v) {
  if (v.width() < 2) throw WidthError("lsbs of width-1 vector");
  return select(v, v.width() - 2, 0);
}

BitVec msb(const BitVec& v) { return select(v, v.width() - 1, v.width() - 1); }

BitVec msbs(const BitVec& v) {
  if (v.width() < 2) throw WidthError("msbs of width-1 vector");
  return select(v, v.width() - 1, 1);
}

BitVec uresize(const BitVec& v, unsigned w) {
  if (w == 0) throw WidthError("uresize to width 0");
  BitVec r(w);
  r.assign_uresize(v);
  return r;
}

BitVec sresize(const BitVec& v, unsigned w) {
  if (w == 0) throw WidthError("sresize to width 0");
  BitVec r(w);
  r.assign_sresize(v);
  return r;
}

}  // namespace hcl
