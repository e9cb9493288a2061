#include "torbound/log2value.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace torbound {

namespace mp = boost::multiprecision;
using BinFloat = mp::cpp_bin_float_100;

namespace {

const BigInt kGridDen = BigInt(1) << kLog2GridBits;

// Safety slack applied before quantization: generously above the ~1e-98
// relative error of 100-digit evaluation, far below the 2^-64 grid except
// for astronomically large logs (where certificate quality is moot anyway).
BinFloat directed(const BinFloat& y, bool up) {
  const BinFloat slack = abs(y) * BinFloat("1e-90") + BinFloat("1e-30");
  return up ? y + slack : y - slack;
}

Rational quantize(const BinFloat& y, bool up) {
  // floor/ceil of y * 2^64 as a big integer.
  const BinFloat scaled = y * BinFloat(kGridDen);
  BigInt k = scaled.convert_to<BigInt>();  // truncation toward zero
  const BinFloat back(k);
  if (up && back < scaled) k += 1;
  if (!up && back > scaled) k -= 1;
  return Rational(k, kGridDen);
}

Rational directed_log2(const BinFloat& x, bool up) {
  if (x <= 0) throw std::domain_error("log2 of non-positive value");
  const BinFloat y = log(x) / log(BinFloat(2));
  return quantize(directed(y, up), up);
}

BinFloat to_binfloat(const Rational& x) {
  return BinFloat(boost::multiprecision::numerator(x)) /
         BinFloat(boost::multiprecision::denominator(x));
}

}  // namespace

Rational quantize_up(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x) * kGridDen;
  const BigInt den = boost::multiprecision::denominator(x);
  BigInt q = num / den;
  if (q * den < num) q += 1;  // ceil for positive remainder
  return Rational(q, kGridDen);
}

Rational quantize_down(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x) * kGridDen;
  const BigInt den = boost::multiprecision::denominator(x);
  BigInt q = num / den;
  if (q * den > num) q -= 1;  // floor for negative remainder
  return Rational(q, kGridDen);
}

namespace {

// Exact logarithm for powers of two, so that e.g. evaluating a bound at
// degree 1 returns the constant itself.
bool exact_pow2_log(const BigInt& x, Rational& out) {
  if (x <= 0) throw std::domain_error("log2 of non-positive value");
  const unsigned b = mp::msb(x);
  if (BigInt(1) << b == x) {
    out = Rational(b);
    return true;
  }
  return false;
}

}  // namespace

Rational log2_up(const BigInt& x) {
  if (Rational r; exact_pow2_log(x, r)) return r;
  return directed_log2(BinFloat(x), true);
}
Rational log2_down(const BigInt& x) {
  if (Rational r; exact_pow2_log(x, r)) return r;
  return directed_log2(BinFloat(x), false);
}
Rational log2_up(const Rational& x) {
  Rational rn, rd;
  if (exact_pow2_log(boost::multiprecision::numerator(x), rn) &&
      exact_pow2_log(boost::multiprecision::denominator(x), rd))
    return rn - rd;
  return directed_log2(to_binfloat(x), true);
}
Rational log2_down(const Rational& x) {
  Rational rn, rd;
  if (exact_pow2_log(boost::multiprecision::numerator(x), rn) &&
      exact_pow2_log(boost::multiprecision::denominator(x), rd))
    return rn - rd;
  return directed_log2(to_binfloat(x), false);
}

Rational log_ratio_up(const Rational& numerator_arg, const Rational& base_arg) {
  if (numerator_arg <= 1 || base_arg <= 1)
    throw std::domain_error("log_ratio_up: arguments must exceed 1");
  const BinFloat y = log(to_binfloat(numerator_arg)) / log(to_binfloat(base_arg));
  return quantize(directed(y, true), true);
}

double Log2Value::to_double() const {
  const double l = log2_.convert_to<double>();
  return std::exp2(l);  // overflows to +inf past ~2^1024
}

std::string Log2Value::approx_decimal() const {
  static const BinFloat log10_2 = log(BinFloat(2)) / log(BinFloat(10));
  const BinFloat l10 = to_binfloat(log2_) * log10_2;
  char buf[64];
  if (abs(l10) < BinFloat("1e15")) {
    const BinFloat fl = floor(l10);
    const long long exp10 = fl.convert_to<long long>();
    const double mant = mp::pow(BinFloat(10), l10 - fl).convert_to<double>();
    std::snprintf(buf, sizeof buf, "%.6fe%+lld", mant, exp10);
  } else {
    std::snprintf(buf, sizeof buf, "10^(%.6g)", l10.convert_to<double>());
  }
  return buf;
}

Log2Value Log2Value::from_log2_string(const std::string& s) {
  return Log2Value(rational_from_string(s));
}

BigInt smallest_integer_above_root(const BigInt& x, unsigned p) {
  if (x < 1 || p == 0) throw std::domain_error("smallest_integer_above_root: bad input");
  if (p == 1) return x + 1;
  // Newton iteration for the integer floor root, then step up.
  const unsigned bits = static_cast<unsigned>(mp::msb(x)) + 1;
  BigInt r = BigInt(1) << (bits / p + 1);
  while (true) {
    // next = ((p-1)*r + x / r^(p-1)) / p
    BigInt rp1 = mp::pow(r, p - 1);
    BigInt next = ((p - 1) * r + x / rp1) / p;
    if (next >= r) break;
    r = next;
  }
  while (mp::pow(r, p) > x) r -= 1;
  while (mp::pow(r + 1, p) <= x) r += 1;
  // Now r = floor(x^(1/p)); the answer is the least integer with z^p > x.
  return r + 1;
}

BigInt prime_pi_upper_bound(const BigInt& x) {
  if (x < 2) return BigInt(1);
  if (x < 11) return BigInt(5);  // tiny cases: crude but safe
  const BinFloat xf(x);
  const BinFloat lx = log(xf);
  BinFloat bound = xf / lx * (1 + BinFloat("1.2762") / lx);
  bound = directed(bound, true);
  BigInt k = bound.convert_to<BigInt>();
  return k + 1;  // ceil with margin
}

}  // namespace torbound
