#include "torbound/bounds.hpp"

#include <stdexcept>

namespace torbound {

namespace mp = boost::multiprecision;

DivisibilityRequirement divisibility_requirement(std::uint64_t l, std::uint32_t k,
                                                 std::uint32_t r,
                                                 std::uint64_t threshold) {
  if (!is_prime(l)) throw std::invalid_argument("divisibility_requirement: l must be prime");
  if (l <= threshold)
    throw std::invalid_argument("divisibility_requirement: requires l > threshold");
  if (k == 0) throw std::invalid_argument("divisibility_requirement: k must be >= 1");

  // phi(l^k) = l^(k-1) (l-1), even for odd l, so the half is exact.
  BigInt phi = mp::pow(BigInt(l), k - 1) * (l - 1);
  BigInt divisor = phi / 2 * (l + 1);
  if (r >= 1) divisor *= mp::pow(BigInt(l), r - 1);

  return DivisibilityRequirement{l, k, r, divisor};
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> admissible_large_torsion(
    std::uint64_t d, std::uint64_t threshold) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  if (d == 0) throw std::invalid_argument("admissible_large_torsion: d must be positive");
  // The k = 1 requirement is (l^2 - 1)/2, so only primes with l^2 <= 2d + 1
  // can appear at all.
  for (std::uint64_t l = threshold + 1;; ++l) {
    if (l > 2 && (l * l - 1) / 2 > d) break;
    if (!is_prime(l)) continue;
    std::uint32_t k_max = 0;
    for (std::uint32_t k = 1;; ++k) {
      const auto req = divisibility_requirement(l, k, 0, threshold);
      if (req.required_divisor > d || BigInt(d) % req.required_divisor != 0) break;
      k_max = k;
    }
    if (k_max >= 1) out.emplace_back(l, k_max);
  }
  return out;
}

namespace {

void require_large_support(const FactoredInt& n, std::uint32_t k_bad) {
  for (const auto& pp : n.factors)
    if (pp.prime <= 37)
      throw std::invalid_argument("degree bound: n must be supported on primes > 37");
  if (k_bad > n.factors.size())
    throw std::invalid_argument("degree bound: k_bad exceeds the number of primes of n");
}

}  // namespace

Rational degree_lower_bound_x1(const FactoredInt& n, std::uint32_t k_bad) {
  require_large_support(n, k_bad);
  // n^2 prod (1 - 1/l^2) = prod l^(2e-2) (l^2 - 1), an integer.
  BigInt numerator = 1;
  for (const auto& pp : n.factors) {
    numerator *= mp::pow(BigInt(pp.prime), 2 * pp.exponent - 2);
    numerator *= BigInt(pp.prime) * pp.prime - 1;
  }
  BigInt denominator = 2 * mp::pow(BigInt(24), k_bad);
  return Rational(numerator, denominator);
}

Rational degree_lower_bound_x0(const FactoredInt& n, std::uint32_t k_bad) {
  require_large_support(n, k_bad);
  // n prod (1 + 1/l) = prod l^(e-1) (l + 1), an integer.
  BigInt numerator = 1;
  for (const auto& pp : n.factors) {
    numerator *= mp::pow(BigInt(pp.prime), pp.exponent - 1);
    numerator *= BigInt(pp.prime) + 1;
  }
  return Rational(numerator, mp::pow(BigInt(24), k_bad));
}

FiniteSupportVerdict finite_support_bound(const FactoredInt& n, std::uint64_t d0,
                                          const AraiConfig& config,
                                          std::uint64_t d) {
  if (d0 == 0 || d == 0)
    throw std::invalid_argument("finite_support_bound: d0 and d must be positive");

  BigInt rhs = 2;
  for (const auto& pp : n.factors) {
    std::uint32_t a;
    if (auto it = config.entries.find(pp.prime); it != config.entries.end())
      a = it->second;
    else if (config.default_a)
      a = *config.default_a;
    else
      throw std::invalid_argument("finite_support_bound: missing a(d0, l) entry for l = " +
                                  std::to_string(pp.prime));
    rhs *= mp::pow(BigInt(pp.prime), 2 + a);
  }
  for (std::uint64_t i = 2; i < d0; ++i) rhs *= i;  // (d0 - 1)!
  rhs *= d;

  FiniteSupportVerdict v;
  v.cap = mp::sqrt(rhs);  // floor sqrt
  v.pass = BigInt(n.value) * n.value <= rhs;
  v.detail = v.pass ? "n^2 divides the permitted bound" : "n exceeds the finite-support cap";
  return v;
}

ExponentSplit assemble_exponent_split(const FactoredInt& N,
                                      const FactoredInt& deg_phi,
                                      std::uint64_t threshold) {
  ExponentSplit s;
  auto [M, m] = threshold_split(N, threshold);
  s.M = std::move(M);
  s.m = std::move(m);
  auto [m1, m2] = squarefull_split(s.m);
  s.m1 = std::move(m1);
  s.m2 = std::move(m2);

  std::vector<PrimePower> n1, n2;
  for (const auto& pp : s.m2.factors) {
    if (deg_phi.value % pp.prime == 0)
      n1.push_back(pp);
    else
      n2.push_back(pp);
  }
  s.n1 = factored_from_factors(std::move(n1));
  s.n2 = factored_from_factors(std::move(n2));
  return s;
}

}  // namespace torbound
