#pragma once

#include <string>

#include "torbound/rational.hpp"

namespace torbound {

// Positive reals carried as binary logarithms on a fixed dyadic grid.
//
// Certificate constants reach sizes far beyond any float format (c1 alone
// can exceed 10^(10^20)), but every formula that produces them is a product
// or a power, i.e. linear in log2. Each irrational logarithm is evaluated in
// 100-digit floats and then quantized outward onto the grid k / 2^64, so a
// stored constant never under-estimates the real it stands for and replays
// reproduce it bit-for-bit.
class Log2Value {
 public:
  Log2Value() = default;
  explicit Log2Value(Rational log2) : log2_(std::move(log2)) {}

  static Log2Value one() { return Log2Value(Rational(0)); }
  // 2^k for integer k (exact).
  static Log2Value pow2(long k) { return Log2Value(Rational(k)); }

  const Rational& log2() const { return log2_; }

  Log2Value operator*(const Log2Value& o) const { return Log2Value(log2_ + o.log2_); }
  Log2Value operator/(const Log2Value& o) const { return Log2Value(log2_ - o.log2_); }
  // Exact on the stored logarithm (rational scaling).
  Log2Value pow(const Rational& exponent) const { return Log2Value(log2_ * exponent); }

  bool operator<(const Log2Value& o) const { return log2_ < o.log2_; }
  bool operator==(const Log2Value& o) const { return log2_ == o.log2_; }

  // +inf on overflow.
  double to_double() const;
  // Human-readable magnitude: "1.234568e+120", or "10^(6.78e+25)" once the
  // decimal exponent itself leaves integer range.
  std::string approx_decimal() const;
  // Exact serialization of the stored logarithm ("num/den").
  std::string log2_string() const { return rational_to_string(log2_); }
  static Log2Value from_log2_string(const std::string& s);

 private:
  Rational log2_ = 0;
};

inline constexpr unsigned kLog2GridBits = 64;

// Outward quantization onto the 2^-64 grid. "up" rounds toward +infinity.
Rational quantize_up(const Rational& x);
Rational quantize_down(const Rational& x);

// Directed log2 of exact inputs: the result is guaranteed >= (up) or
// <= (down) the true logarithm, already grid-quantized.
Rational log2_up(const BigInt& x);
Rational log2_down(const BigInt& x);
Rational log2_up(const Rational& x);
Rational log2_down(const Rational& x);

// Directed evaluation of log(a)/log(b) for exact rationals a, b > 1
// (the certificate's log_base quantities).
Rational log_ratio_up(const Rational& numerator_arg, const Rational& base_arg);

// Smallest integer whose p-th power strictly exceeds x (x >= 1, p >= 1).
BigInt smallest_integer_above_root(const BigInt& x, unsigned p);

// Certified upper bound on the prime counting function:
// pi(x) <= x/ln x * (1 + 1.2762/ln x) for x > 1, rounded up to an integer.
BigInt prime_pi_upper_bound(const BigInt& x);

}  // namespace torbound
