#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "torbound/arith.hpp"

using namespace torbound;

namespace {

// Independent trial-division oracle.
std::vector<PrimePower> factor_oracle(std::uint64_t n) {
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::uint64_t phi_oracle(std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t a = 1; a <= n; ++a)
    if (std::gcd(a, n) == 1) ++count;
  return count;
}

std::vector<bool> sieve_oracle(std::uint32_t limit) {
  std::vector<bool> is_prime(limit + 1, true);
  is_prime[0] = false;
  if (limit >= 1) is_prime[1] = false;
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (is_prime[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) is_prime[j] = false;
  return is_prime;
}

}  // namespace

TEST_CASE("parse_decimal") {
  CHECK(parse_decimal("0.25") == Rational(1, 4));
  CHECK(parse_decimal("0.05") == Rational(1, 20));
  CHECK(parse_decimal("3") == Rational(3));
  CHECK(parse_decimal("1e-3") == Rational(1, 1000));
  CHECK(parse_decimal("2.5e2") == Rational(250));
  CHECK(parse_decimal(".5") == Rational(1, 2));
  CHECK(parse_decimal("0.4") == Rational(2, 5));
  CHECK_THROWS_AS(parse_decimal("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal(""), std::invalid_argument);
}

TEST_CASE("rational round trip") {
  const Rational r(35, 12);
  CHECK(rational_to_string(r) == "35/12");
  CHECK(rational_from_string("35/12") == r);
  CHECK(rational_from_string("840") == Rational(840));
  CHECK(rational_to_string(Rational(840)) == "840");
}

TEST_CASE("factorize examples") {
  CHECK(factorize(1).factors.empty());
  CHECK(factorize(1).value == 1);

  const auto f840 = factorize(840);
  CHECK(f840.factors == factor_oracle(840));
  CHECK(f840.factors == std::vector<PrimePower>{{2, 3}, {3, 1}, {5, 1}, {7, 1}});

  const auto f1681 = factorize(1681);
  CHECK(f1681.factors == factor_oracle(1681));
  CHECK(f1681.factors == std::vector<PrimePower>{{41, 2}});
}

TEST_CASE("factorize agrees with the oracle") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = 1 + rng() % 100000;
    const auto f = factorize(n);
    CHECK(f.value == n);
    CHECK(f.factors == factor_oracle(n));
  }
  // Past the small-prime sieve: a semiprime with ~1e6-scale factors.
  const std::uint64_t a = 1000003, b = 1000033;
  const auto f = factorize(a * b);
  CHECK(f.factors == std::vector<PrimePower>{{a, 1}, {b, 1}});
}

TEST_CASE("factored_from_factors validates invariants") {
  CHECK(factored_from_factors({{2, 1}, {3, 2}}).value == 18);
  CHECK_THROWS_AS(factored_from_factors({{3, 1}, {2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(factored_from_factors({{4, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(factored_from_factors({{2, 0}}), std::invalid_argument);
}

TEST_CASE("euler_phi examples and exhaustive check") {
  CHECK(euler_phi(factorize(1)) == 1);
  CHECK(euler_phi(factorize(41)) == phi_oracle(41));
  CHECK(euler_phi(factorize(41)) == 40);
  CHECK(euler_phi(factorize(1681)) == phi_oracle(1681));
  CHECK(euler_phi(factorize(1681)) == 1640);

  for (std::uint64_t n = 1; n <= 10000; ++n)
    REQUIRE(euler_phi(factorize(n)) == phi_oracle(n));
}

TEST_CASE("threshold_split") {
  auto [a, b] = threshold_split(factorize(840), 37);
  CHECK(a.value == 840);
  CHECK(b.value == 1);

  std::tie(a, b) = threshold_split(factorize(2 * 41), 37);
  CHECK(a.value == 2);
  CHECK(b.value == 41);

  const std::uint64_t big = 41ull * 41 * 41 * 43;
  std::tie(a, b) = threshold_split(factorize(big), 37);
  CHECK(a.value == 1);
  CHECK(b.value == big);

  // Recombination and radical separation, on a small sweep.
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    auto [x, y] = threshold_split(factorize(n), 7);
    CHECK(x.value * y.value == n);
    for (const auto& pp : x.factors) CHECK(pp.prime <= 7);
    for (const auto& pp : y.factors) CHECK(pp.prime > 7);
  }
}

TEST_CASE("squarefull_split") {
  auto [m1, m2] = squarefull_split(factorize(41 * 43 * 43));
  CHECK(m1.value == 43 * 43);
  CHECK(m2.value == 41);

  std::tie(m1, m2) = squarefull_split(factorize(1));
  CHECK(m1.value == 1);
  CHECK(m2.value == 1);

  std::tie(m1, m2) = squarefull_split(factorize(41ull * 41 * 43 * 43 * 47));
  CHECK(m1.value == 41ull * 41 * 43 * 43);
  CHECK(m2.value == 47);

  for (std::uint64_t n = 1; n <= 2000; ++n) {
    auto [x, y] = squarefull_split(factorize(n));
    CHECK(x.value * y.value == n);
    CHECK(std::gcd(x.value, y.value) == 1);
    for (const auto& pp : x.factors) CHECK(pp.exponent >= 2);
    for (const auto& pp : y.factors) CHECK(pp.exponent == 1);
  }
}

TEST_CASE("least_primitive_root") {
  CHECK(least_primitive_root(5) == 2);
  CHECK(least_primitive_root(7) == 3);
  CHECK(least_primitive_root(41) == 6);
  CHECK_THROWS_AS(least_primitive_root(2), std::invalid_argument);
  CHECK_THROWS_AS(least_primitive_root(9), std::invalid_argument);
  CHECK_THROWS_AS(least_primitive_root(15), std::invalid_argument);

  // Output property: g generates, and nothing smaller does.
  for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 41ull, 97ull}) {
    const std::uint64_t g = least_primitive_root(p);
    CHECK(multiplicative_order(g, p) == p - 1);
    for (std::uint64_t h = 2; h < g; ++h) CHECK(multiplicative_order(h, p) != p - 1);
  }
}

TEST_CASE("prime_pi examples and oracle sweep") {
  CHECK(prime_pi(1) == 0);
  CHECK(prime_pi(37) == 12);

  const auto is_prime_table = sieve_oracle(5000);
  std::uint64_t count = 0;
  for (std::uint32_t x = 1; x <= 5000; ++x) {
    if (is_prime_table[x]) ++count;
    REQUIRE(prime_pi(x) == count);
  }
  CHECK(prime_pi(577) == count_if(is_prime_table.begin(), is_prime_table.begin() + 578,
                                  [](bool b) { return b; }));

  // Larger segmented-sieve spot check against a direct sieve.
  const auto big = sieve_oracle(1000000);
  std::uint64_t big_count = 0;
  for (std::uint32_t x = 2; x <= 1000000; ++x)
    if (big[x]) ++big_count;
  CHECK(prime_pi(1000000) == big_count);

  CHECK_THROWS_AS(prime_pi(kPrimePiExactLimit + 1), std::domain_error);
}

TEST_CASE("prime_pi is a step function with unit jumps at primes") {
  const auto is_prime_table = sieve_oracle(600);
  for (std::uint32_t x = 2; x <= 600; ++x) {
    const auto delta = prime_pi(x) - prime_pi(x - 1);
    CHECK(delta == (is_prime_table[x] ? 1u : 0u));
  }
}

TEST_CASE("unit_group_generators generate the full unit group") {
  for (std::uint32_t n : {3u, 4u, 5u, 8u, 12u, 15u, 16u, 36u, 41u, 60u, 97u}) {
    const auto gens = unit_group_generators(n);
    // Close the generated set under multiplication.
    std::vector<char> in_set(n, 0);
    std::vector<std::uint64_t> frontier{1 % n};
    in_set[1 % n] = 1;
    while (!frontier.empty()) {
      const auto x = frontier.back();
      frontier.pop_back();
      for (auto g : gens) {
        const auto y = x * (g % n) % n;
        if (!in_set[y]) {
          in_set[y] = 1;
          frontier.push_back(y);
        }
      }
    }
    std::uint64_t generated = 0;
    for (std::uint32_t u = 0; u < n; ++u)
      if (in_set[u]) ++generated;
    CHECK(generated == euler_phi(factorize(n)));
  }
}

TEST_CASE("multiplicative_order") {
  CHECK(multiplicative_order(2, 41) == 20);  // 2^10 = -1 mod 41
  CHECK(multiplicative_order(6, 41) == 40);
  CHECK(multiplicative_order(2, 7) == 3);
  CHECK_THROWS_AS(multiplicative_order(2, 8), std::invalid_argument);
}

TEST_CASE("phi_lower_constant at eps = 1/2") {
  const Rational eps(1, 2);
  const auto c = phi_lower_constant(eps, 10000);
  CHECK(c.tail_certified);
  CHECK(c.b > 0);
  CHECK(c.b < 1);

  // The scan minimum of phi(n)/sqrt(n) sits at n = 2 (ratio 1/sqrt(2)).
  CHECK(c.min_scan_n == 2);
  const double b = c.b.convert_to<double>();
  CHECK(b < 1.0 / std::sqrt(2.0));
  CHECK(b > 1.0 / std::sqrt(2.0) - 3.0 / (1 << kPhiBoundGridBits));

  // Exhaustive independent re-check over the scanned range.
  const auto phis = totients_up_to(10000);
  for (std::uint64_t n = 1; n <= 10000; ++n)
    REQUIRE(phi_bound_holds_exact(c.b, eps, n, phis[n]));
}

TEST_CASE("phi_lower_constant at eps = 9/10") {
  const auto c = phi_lower_constant(Rational(9, 10), 10000);
  CHECK(c.tail_certified);
  const auto phis = totients_up_to(10000);
  for (std::uint64_t n = 1; n <= 10000; ++n)
    REQUIRE(phi_bound_holds_exact(c.b, Rational(9, 10), n, phis[n]));
}

TEST_CASE("phi_lower_constant small-eps tail limiting") {
  // At eps = 1/80 the true minimizer of phi(n)/n^(1-eps) lies beyond any
  // scannable range, so b must come from the analytic tail.
  const auto c = phi_lower_constant(Rational(1, 80), 100000);
  CHECK(c.tail_certified);
  CHECK(c.b > 0);

  // Spot check random n far beyond the scan range.
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t n = 1 + rng() % 1000000000ull;
    const std::uint64_t phi = euler_phi(factorize(n));
    REQUIRE(phi_bound_holds_exact(c.b, Rational(1, 80), n, phi));
  }
}

TEST_CASE("phi_lower_constant rejects bad input") {
  CHECK_THROWS_AS(phi_lower_constant(Rational(1), 10000), std::domain_error);
  CHECK_THROWS_AS(phi_lower_constant(Rational(1, 2), 10), std::domain_error);
  CHECK_THROWS_AS(phi_lower_constant(Rational(1, 100000), 10000), std::domain_error);
}
