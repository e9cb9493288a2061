#include "torbound/arith.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace torbound {

namespace {

// cpp_int's string constructor treats a leading 0 as an octal prefix;
// datasets and decimal literals are always base 10.
BigInt bigint_from_decimal(std::string_view text) {
  bool negative = false;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  while (pos + 1 < text.size() && text[pos] == '0') ++pos;
  if (pos >= text.size()) throw std::invalid_argument("empty integer literal");
  for (std::size_t i = pos; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("malformed integer literal: " + std::string(text));
  BigInt v{std::string(text.substr(pos))};
  return negative ? -v : v;
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty decimal literal");
  std::size_t pos = 0;
  if (s[pos] == '+') ++pos;

  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      break;
    } else {
      throw std::invalid_argument("malformed decimal literal: " + s);
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed decimal literal: " + s);

  long exp10 = 0;
  if (pos < s.size()) {  // exponent part
    ++pos;
    exp10 = std::stol(s.substr(pos));
  }

  BigInt numerator = bigint_from_decimal(digits.empty() ? "0" : digits);
  long net = exp10 - frac_digits;
  BigInt den = 1;
  if (net >= 0) {
    numerator *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(net));
  } else {
    den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-net));
  }
  return Rational(numerator, den);
}

std::string rational_to_string(const Rational& r) {
  std::string s = boost::multiprecision::numerator(r).str();
  if (boost::multiprecision::denominator(r) != 1)
    s += "/" + boost::multiprecision::denominator(r).str();
  return s;
}

Rational rational_from_string(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (text.find('.') != std::string_view::npos ||
        text.find('e') != std::string_view::npos ||
        text.find('E') != std::string_view::npos)
      return parse_decimal(text);
    return Rational(bigint_from_decimal(text));
  }
  BigInt num = bigint_from_decimal(text.substr(0, slash));
  BigInt den = bigint_from_decimal(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(num, den);
}

namespace {

// Base primes for trial division, built once.
const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = primes_up_to(1u << 16);
  return primes;
}

}  // namespace

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

FactoredInt factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  FactoredInt out;
  out.value = n;
  std::uint64_t rest = n;
  for (std::uint32_t p : small_primes()) {
    if (std::uint64_t(p) * p > rest) break;
    if (rest % p == 0) {
      std::uint32_t e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      out.factors.push_back({p, e});
    }
  }
  // Continue past the sieve with a 2/4-step wheel from 65537 = 6k-1:
  // +2 reaches 6k+1, +4 the next 6k-1.
  std::uint64_t cand = 65537;
  static constexpr std::uint64_t steps[2] = {2, 4};
  int parity = 0;
  while (cand * cand <= rest) {
    if (rest % cand == 0) {
      std::uint32_t e = 0;
      while (rest % cand == 0) {
        rest /= cand;
        ++e;
      }
      out.factors.push_back({cand, e});
    }
    cand += steps[parity];
    parity ^= 1;
  }
  if (rest > 1) out.factors.push_back({rest, 1});
  return out;
}

FactoredInt factored_from_factors(std::vector<PrimePower> factors) {
  FactoredInt out;
  out.factors = std::move(factors);
  unsigned __int128 v = 1;
  std::uint64_t prev = 0;
  for (const auto& pp : out.factors) {
    if (pp.prime <= prev || pp.exponent == 0 || !is_prime(pp.prime))
      throw std::invalid_argument("factored_from_factors: invalid factor list");
    prev = pp.prime;
    for (std::uint32_t i = 0; i < pp.exponent; ++i) {
      v *= pp.prime;
      if (v > ~std::uint64_t(0)) throw std::overflow_error("factored value overflow");
    }
  }
  out.value = static_cast<std::uint64_t>(v);
  return out;
}

std::uint64_t euler_phi(const FactoredInt& n) {
  std::uint64_t phi = 1;
  for (const auto& pp : n.factors) {
    phi *= pp.prime - 1;
    for (std::uint32_t i = 1; i < pp.exponent; ++i) phi *= pp.prime;
  }
  return phi;
}

std::pair<FactoredInt, FactoredInt> threshold_split(const FactoredInt& n,
                                                    std::uint64_t threshold) {
  FactoredInt a, b;
  for (const auto& pp : n.factors) {
    if (pp.prime <= threshold)
      a.factors.push_back(pp);
    else
      b.factors.push_back(pp);
  }
  a = factored_from_factors(std::move(a.factors));
  b = factored_from_factors(std::move(b.factors));
  return {a, b};
}

std::pair<FactoredInt, FactoredInt> squarefull_split(const FactoredInt& m) {
  FactoredInt full, free_part;
  for (const auto& pp : m.factors) {
    if (pp.exponent >= 2)
      full.factors.push_back(pp);
    else
      free_part.factors.push_back(pp);
  }
  full = factored_from_factors(std::move(full.factors));
  free_part = factored_from_factors(std::move(free_part.factors));
  return {full, free_part};
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint32_t p : small_primes()) {
    if (std::uint64_t(p) * p > n) return true;
    if (n % p == 0) return n == p;
  }
  std::uint64_t cand = 65537;
  static constexpr std::uint64_t steps[2] = {2, 4};
  int parity = 0;
  while (cand * cand <= n) {
    if (n % cand == 0) return false;
    cand += steps[parity];
    parity ^= 1;
  }
  return true;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  if (m < 2 || std::gcd(a % m, m) != 1)
    throw std::invalid_argument("multiplicative_order: a must be a unit mod m");
  std::uint64_t order = euler_phi(factorize(m));
  for (const auto& pp : factorize(order).factors) {
    for (std::uint32_t i = 0; i < pp.exponent; ++i) {
      if (pow_mod(a, order / pp.prime, m) == 1)
        order /= pp.prime;
      else
        break;
    }
  }
  return order;
}

std::uint64_t least_primitive_root(std::uint64_t p) {
  if (p < 3 || !is_prime(p))
    throw std::invalid_argument("least_primitive_root: argument must be an odd prime");
  const FactoredInt pm1 = factorize(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool generates = true;
    for (const auto& pp : pm1.factors) {
      if (pow_mod(g, (p - 1) / pp.prime, p) == 1) {
        generates = false;
        break;
      }
    }
    if (generates) return g;
  }
  throw std::logic_error("least_primitive_root: no generator found");  // unreachable
}

std::uint64_t prime_pi(std::uint64_t x) {
  if (x > kPrimePiExactLimit)
    throw std::domain_error("prime_pi: argument exceeds the exact-sieve limit");
  if (x < 2) return 0;
  if (x == 2) return 1;

  const std::uint32_t root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(x))) + 1;
  const std::vector<std::uint32_t> base = primes_up_to(root);

  // Segmented sieve over odd numbers only.
  constexpr std::uint64_t kSegment = 1u << 20;
  std::vector<bool> sieve;
  std::uint64_t count = 1;  // the prime 2
  for (std::uint64_t low = 3; low <= x; low += 2 * kSegment) {
    const std::uint64_t high = std::min(x, low + 2 * kSegment - 2);
    const std::uint64_t n_odd = (high - low) / 2 + 1;
    sieve.assign(n_odd, true);
    for (std::uint32_t p : base) {
      if (p == 2) continue;
      std::uint64_t p2 = std::uint64_t(p) * p;
      if (p2 > high) break;
      std::uint64_t start = p2 >= low ? p2 : ((low + p - 1) / p) * p;
      if (start % 2 == 0) start += p;
      for (std::uint64_t j = start; j <= high; j += 2 * p)
        sieve[(j - low) / 2] = false;
    }
    for (std::uint64_t i = 0; i < n_odd; ++i)
      if (sieve[i]) ++count;
  }
  return count;
}

std::vector<std::uint32_t> totients_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> phi(static_cast<std::size_t>(limit) + 1);
  std::vector<std::uint32_t> primes;
  phi[0] = 0;
  if (limit >= 1) phi[1] = 1;
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (phi[i] == 0) {
      phi[i] = i - 1;
      primes.push_back(i);
    }
    for (std::uint32_t p : primes) {
      std::uint64_t ip = std::uint64_t(i) * p;
      if (ip > limit) break;
      if (i % p == 0) {
        phi[ip] = phi[i] * p;
        break;
      }
      phi[ip] = phi[i] * (p - 1);
    }
  }
  // The linear sieve above leaves phi[p]=0 unset ordering issues only if
  // phi[i] was used as the "unvisited" marker; primes got phi=p-1 directly.
  return phi;
}

namespace {

std::uint64_t crt_pair(std::uint64_t r1, std::uint64_t m1, std::uint64_t r2,
                       std::uint64_t m2) {
  // x = r1 mod m1, x = r2 mod m2 with coprime moduli.
  std::uint64_t m1_inv = pow_mod(m1 % m2, euler_phi(factorize(m2)) - 1, m2);
  std::uint64_t diff = (r2 + m2 - r1 % m2) % m2;
  return (r1 + static_cast<std::uint64_t>(
                   static_cast<unsigned __int128>(diff) * m1_inv % m2 * m1)) %
         (m1 * m2);
}

// Generator of (Z/p^k Z)^x for odd prime p.
std::uint64_t odd_prime_power_generator(std::uint64_t p, std::uint32_t k,
                                        std::uint64_t pk) {
  std::uint64_t g = least_primitive_root(p);
  if (k == 1) return g;
  if (pow_mod(g, p - 1, p * p) == 1) g += p;
  return g % pk;
}

}  // namespace

std::vector<std::uint64_t> unit_group_generators(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("unit_group_generators: n must be positive");
  if (n <= 2) return {};
  const FactoredInt f = factorize(n);
  std::vector<std::uint64_t> gens;
  for (const auto& pp : f.factors) {
    std::uint64_t pk = 1;
    for (std::uint32_t i = 0; i < pp.exponent; ++i) pk *= pp.prime;
    const std::uint64_t cofactor = n / pk;

    std::vector<std::uint64_t> local;
    if (pp.prime == 2) {
      if (pp.exponent == 2) local = {3};
      if (pp.exponent >= 3) local = {pk - 1, 5};
    } else {
      local = {odd_prime_power_generator(pp.prime, pp.exponent, pk)};
    }
    for (std::uint64_t g : local) {
      if (cofactor == 1)
        gens.push_back(g);
      else
        gens.push_back(crt_pair(g, pk, 1, cofactor));
    }
  }
  return gens;
}

}  // namespace torbound
