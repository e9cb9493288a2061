#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torbound/arith.hpp"
#include "torbound/rational.hpp"

namespace torbound {

inline constexpr std::uint64_t kDefaultPrimeThreshold = 37;

// The divisor that a torsion point of order l^k (with an l^r geometric
// isogeny to a rational curve in the class) forces into the field degree:
// (1/2) phi(l^k) * l^max(r-1,0) * (l+1).
struct DivisibilityRequirement {
  std::uint64_t l = 0;
  std::uint32_t k = 0;
  std::uint32_t r = 0;
  BigInt required_divisor;
};

// Requires l prime and l > threshold, k >= 1.
DivisibilityRequirement divisibility_requirement(
    std::uint64_t l, std::uint32_t k, std::uint32_t r,
    std::uint64_t threshold = kDefaultPrimeThreshold);

// All primes l > threshold and the maximal k such that the (r = 0)
// requirement divides d. Empty means no point of prime order > threshold can
// exist over a degree-d field for curves in the family.
std::vector<std::pair<std::uint64_t, std::uint32_t>> admissible_large_torsion(
    std::uint64_t d, std::uint64_t threshold = kDefaultPrimeThreshold);

// (1/2) * 24^-k_bad * n^2 * prod_{l | n} (1 - 1/l^2); every prime of n must
// exceed 37 and k_bad cannot exceed the number of primes of n.
Rational degree_lower_bound_x1(const FactoredInt& n, std::uint32_t k_bad);

// 24^-k_bad * n * prod_{l | n} (1 + 1/l); same preconditions.
Rational degree_lower_bound_x0(const FactoredInt& n, std::uint32_t k_bad);

// Table of index-valuation caps a(d0, l), an external input (the values are
// not derivable here). default_a, when set, stands in for missing primes.
struct AraiConfig {
  std::uint64_t d0 = 1;
  std::map<std::uint64_t, std::uint32_t> entries;  // prime -> a(d0, l)
  std::optional<std::uint32_t> default_a;
  std::string provenance;
};

struct FiniteSupportVerdict {
  bool pass = false;
  BigInt cap;  // the largest n the divisibility allows (floor of the sqrt)
  std::string detail;
};

// Evaluates n^2 | 2 * prod_{l|n} l^(2+a(d0,l)) * (d0-1)! * d as the cap
// n <= sqrt(RHS). Throws std::invalid_argument when an a(d0, l) entry is
// missing and no default is configured.
FiniteSupportVerdict finite_support_bound(const FactoredInt& n,
                                          std::uint64_t d0,
                                          const AraiConfig& config,
                                          std::uint64_t d);

// The threshold / square-full / isogeny-degree decomposition
// N = M*m, m = m1*m2, m2 = n1*n2 (n1 | deg_phi, n2 coprime to it).
struct ExponentSplit {
  FactoredInt M, m, m1, m2, n1, n2;
};

ExponentSplit assemble_exponent_split(const FactoredInt& N,
                                      const FactoredInt& deg_phi,
                                      std::uint64_t threshold = kDefaultPrimeThreshold);

}  // namespace torbound
