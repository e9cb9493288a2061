#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "torbound/rational.hpp"

namespace torbound {

struct PrimePower {
  std::uint64_t prime = 0;
  std::uint32_t exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// A positive integer together with its canonical factorization.
// Primes are strictly increasing, exponents >= 1, and the product of
// prime^exponent equals value. factorize(1) has an empty factor list.
struct FactoredInt {
  std::uint64_t value = 1;
  std::vector<PrimePower> factors;

  friend bool operator==(const FactoredInt&, const FactoredInt&) = default;
};

FactoredInt factorize(std::uint64_t n);

// Rebuilds a FactoredInt from a factor list (validates the invariants).
FactoredInt factored_from_factors(std::vector<PrimePower> factors);

std::uint64_t euler_phi(const FactoredInt& n);

// n = A*B where A collects the prime powers with prime <= threshold and B
// the rest.
std::pair<FactoredInt, FactoredInt> threshold_split(const FactoredInt& n,
                                                    std::uint64_t threshold);

// m = m1*m2 with m1 square-full (all exponents >= 2), m2 square-free and
// coprime to m1.
std::pair<FactoredInt, FactoredInt> squarefull_split(const FactoredInt& m);

bool is_prime(std::uint64_t n);

// Smallest g >= 2 generating (Z/pZ)^x. Throws std::invalid_argument unless p
// is an odd prime.
std::uint64_t least_primitive_root(std::uint64_t p);

// Exact prime counting by segmented sieve. Supported up to
// kPrimePiExactLimit; throws std::domain_error beyond it.
inline constexpr std::uint64_t kPrimePiExactLimit = std::uint64_t(1) << 31;
std::uint64_t prime_pi(std::uint64_t x);

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

// phi(0..limit) by linear sieve; index 0 is 0.
std::vector<std::uint32_t> totients_up_to(std::uint32_t limit);

// Generators of (Z/nZ)^x via the prime-power decomposition (primitive roots
// at odd prime powers, {-1, 5} at 2^k for k >= 3).
std::vector<std::uint64_t> unit_group_generators(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
// Multiplicative order of a mod m (gcd(a, m) must be 1).
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

// A certified constant b with b * n^(1-eps) < phi(n) for every n >= 1.
// The finite range [1, scan_limit] is checked exhaustively; the tail is
// covered by the explicit bound phi(n) > n / (e^gamma*lnln n + 3/lnln n)
// for n >= 3, minimized analytically over (scan_limit, infinity).
struct PhiBoundConstant {
  Rational epsilon;
  Rational b;  // grid value k / 2^20
  std::uint64_t scan_limit = 0;
  bool tail_certified = false;
  // n attaining the minimum of phi(n)/n^(1-eps) over the scanned range.
  std::uint64_t min_scan_n = 1;
};

inline constexpr std::uint32_t kPhiBoundGridBits = 20;

// Largest grid value b = k/2^20 passing both the exhaustive scan and the
// analytic tail certificate. Requires 0 < eps < 1 and scan_limit >= 100;
// throws std::domain_error when the tail cannot be certified.
PhiBoundConstant phi_lower_constant(const Rational& epsilon,
                                    std::uint64_t scan_limit);

// Exact check of b * n^(1-eps) < phi_n for one n (big-integer cross
// multiplication). Used by the scan's near-miss verification and by tests.
bool phi_bound_holds_exact(const Rational& b, const Rational& epsilon,
                           std::uint64_t n, std::uint64_t phi_n);

}  // namespace torbound
