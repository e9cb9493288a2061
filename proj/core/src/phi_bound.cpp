#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "torbound/arith.hpp"

namespace torbound {

namespace {

// e^gamma rounded up; used only in the denominator bound, where rounding up
// makes the certified tail minimum smaller (safe direction).
constexpr double kExpGammaUp = 1.7810724179901980;

// Denominator of the classical totient bound, as a function of u = lnln n.
double tail_denominator(double u) { return kExpGammaUp * u + 3.0 / u; }

// Certified lower bound of inf over real n > scan_limit of
//   f(n) = n^eps / (e^gamma*lnln n + 3/lnln n),
// working in x = ln n to avoid overflow. The function is increasing once
// eps*x*ln(x) >= 1 (and n >= 39); the stretch before that point is covered
// by a fine multiplicative grid using the monotone envelope
//   f >= exp(eps*x_lo) / denom(ln x_hi)  on each cell [x_lo, x_hi].
double tail_infimum_lower_bound(double eps, std::uint64_t scan_limit) {
  const double margin = 1.0 - 1e-11;
  const double x_start = std::log(static_cast<double>(scan_limit) + 1.0);

  double x_mono = std::max(x_start, std::log(39.0));
  while (eps * x_mono * std::log(x_mono) < 1.000001) {
    x_mono *= 1.25;
    if (x_mono > 1e9)
      throw std::domain_error("phi_lower_constant: epsilon too small to certify tail");
  }

  double best = std::exp(eps * x_mono) / tail_denominator(std::log(x_mono));
  const double step = 1e-3;
  for (double x = x_start; x < x_mono; x += step) {
    const double x_hi = std::min(x + step, x_mono);
    const double cell = std::exp(eps * x) / tail_denominator(std::log(x_hi));
    best = std::min(best, cell);
  }
  return best * margin;
}

}  // namespace

bool phi_bound_holds_exact(const Rational& b, const Rational& epsilon,
                           std::uint64_t n, std::uint64_t phi_n) {
  // b * n^(1-eps) < phi  <=>  num(b)^q * n^(q-p) < den(b)^q * phi^q
  // with eps = p/q in lowest terms.
  const BigInt p = boost::multiprecision::numerator(epsilon);
  const BigInt q = boost::multiprecision::denominator(epsilon);
  const unsigned qe = q.convert_to<unsigned>();
  const unsigned pe = p.convert_to<unsigned>();
  if (pe > qe) throw std::domain_error("phi_bound_holds_exact: epsilon must be < 1");

  using boost::multiprecision::pow;
  const BigInt lhs = pow(boost::multiprecision::numerator(b), qe) * pow(BigInt(n), qe - pe);
  const BigInt rhs = pow(boost::multiprecision::denominator(b), qe) * pow(BigInt(phi_n), qe);
  return lhs < rhs;
}

PhiBoundConstant phi_lower_constant(const Rational& epsilon,
                                    std::uint64_t scan_limit) {
  if (epsilon <= 0 || epsilon >= 1)
    throw std::domain_error("phi_lower_constant: epsilon must lie in (0, 1)");
  if (scan_limit < 100 || scan_limit > 100'000'000)
    throw std::domain_error("phi_lower_constant: scan_limit out of supported range");
  if (boost::multiprecision::denominator(epsilon) > 100'000)
    throw std::domain_error("phi_lower_constant: epsilon denominator too large");
  const double eps = epsilon.convert_to<double>();
  if (eps < 1e-4)
    throw std::domain_error("phi_lower_constant: epsilon below certifiable range");

  const auto phi = totients_up_to(static_cast<std::uint32_t>(scan_limit));

  // Exhaustive scan of phi(n) / n^(1-eps) over [2, scan_limit].
  double scan_min = 1.0;  // n = 1 gives ratio 1
  std::uint64_t argmin = 1;
  const double one_minus_eps = 1.0 - eps;
  for (std::uint64_t n = 2; n <= scan_limit; ++n) {
    const double ratio =
        static_cast<double>(phi[n]) *
        std::exp(-one_minus_eps * std::log(static_cast<double>(n)));
    if (ratio < scan_min) {
      scan_min = ratio;
      argmin = n;
    }
  }

  const double tail_min = tail_infimum_lower_bound(eps, scan_limit);

  const std::uint64_t grid = std::uint64_t(1) << kPhiBoundGridBits;
  const std::int64_t k_tail =
      static_cast<std::int64_t>(std::floor(tail_min * static_cast<double>(grid)));
  // Start one notch above the float scan minimum (covers ulp error in the
  // scan) and walk down to the largest grid value that verifies exactly.
  std::int64_t k = static_cast<std::int64_t>(
                       std::floor(scan_min * static_cast<double>(grid))) +
                   1;
  k = std::min({k, k_tail, static_cast<std::int64_t>(grid) - 1});  // n=1 forces b < 1

  for (; k > 0; --k) {
    const Rational b{BigInt(k), BigInt(grid)};
    const double bd = static_cast<double>(k) / static_cast<double>(grid);
    bool ok = true;
    for (std::uint64_t n = 2; n <= scan_limit && ok; ++n) {
      const double lhs = bd * std::exp(one_minus_eps * std::log(static_cast<double>(n)));
      if (lhs < static_cast<double>(phi[n]) * (1.0 - 1e-9)) continue;
      if (!phi_bound_holds_exact(b, epsilon, n, phi[n])) ok = false;
    }
    if (ok) break;
  }
  if (k <= 0)
    throw std::domain_error("phi_lower_constant: no positive grid constant certifiable");

  PhiBoundConstant out;
  out.epsilon = epsilon;
  out.b = Rational(BigInt(k), BigInt(grid));
  out.scan_limit = scan_limit;
  out.tail_certified =
      static_cast<double>(k) / static_cast<double>(grid) <= tail_min;
  out.min_scan_n = argmin;
  if (!out.tail_certified)
    throw std::domain_error("phi_lower_constant: tail not certified at this scan_limit");
  return out;
}

}  // namespace torbound
