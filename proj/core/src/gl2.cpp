#include "torbound/gl2.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <unordered_set>

namespace torbound {

namespace {

void require_modulus(std::uint32_t n) {
  if (n < 2 || n > (1u << 16))
    throw std::invalid_argument("modulus must lie in [2, 65536]");
}

std::uint32_t inv_unit(std::uint32_t u, std::uint32_t n) {
  // Extended Euclid; u must be a unit mod n.
  std::int64_t t = 0, new_t = 1, r = n, new_r = u % n;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("not a unit");
  return static_cast<std::uint32_t>(t < 0 ? t + n : t);
}

std::vector<std::uint32_t> units_mod(std::uint32_t n) {
  std::vector<std::uint32_t> units;
  for (std::uint32_t u = 1; u < n; ++u)
    if (std::gcd(u, n) == 1) units.push_back(u);
  return units;
}

}  // namespace

std::uint32_t Mat2::det() const {
  const std::uint64_t ad = std::uint64_t(e[0]) * e[3] % modulus;
  const std::uint64_t bc = std::uint64_t(e[1]) * e[2] % modulus;
  return static_cast<std::uint32_t>((ad + modulus - bc) % modulus);
}

bool Mat2::is_invertible() const { return std::gcd<std::uint64_t>(det(), modulus) == 1; }

std::uint64_t Mat2::pack() const {
  return (std::uint64_t(e[0]) << 48) | (std::uint64_t(e[1]) << 32) |
         (std::uint64_t(e[2]) << 16) | std::uint64_t(e[3]);
}

Mat2 Mat2::unpack(std::uint32_t modulus, std::uint64_t packed) {
  Mat2 m;
  m.modulus = modulus;
  m.e = {static_cast<std::uint32_t>(packed >> 48),
         static_cast<std::uint32_t>((packed >> 32) & 0xffff),
         static_cast<std::uint32_t>((packed >> 16) & 0xffff),
         static_cast<std::uint32_t>(packed & 0xffff)};
  return m;
}

Mat2 mat2_identity(std::uint32_t modulus) {
  require_modulus(modulus);
  return Mat2{modulus, {1, 0, 0, 1}};
}

Mat2 mat2_scalar(std::uint32_t unit, std::uint32_t modulus) {
  require_modulus(modulus);
  const std::uint32_t u = unit % modulus;
  return Mat2{modulus, {u, 0, 0, u}};
}

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  if (x.modulus != y.modulus)
    throw std::invalid_argument("mat_mul: modulus mismatch");
  const std::uint64_t n = x.modulus;
  Mat2 r;
  r.modulus = x.modulus;
  r.e[0] = static_cast<std::uint32_t>((std::uint64_t(x.e[0]) * y.e[0] + std::uint64_t(x.e[1]) * y.e[2]) % n);
  r.e[1] = static_cast<std::uint32_t>((std::uint64_t(x.e[0]) * y.e[1] + std::uint64_t(x.e[1]) * y.e[3]) % n);
  r.e[2] = static_cast<std::uint32_t>((std::uint64_t(x.e[2]) * y.e[0] + std::uint64_t(x.e[3]) * y.e[2]) % n);
  r.e[3] = static_cast<std::uint32_t>((std::uint64_t(x.e[2]) * y.e[1] + std::uint64_t(x.e[3]) * y.e[3]) % n);
  return r;
}

Mat2 mat_inv(const Mat2& x) {
  const std::uint32_t n = x.modulus;
  const std::uint32_t d = x.det();
  if (std::gcd<std::uint64_t>(d, n) != 1)
    throw std::domain_error("mat_inv: determinant is not a unit");
  const std::uint64_t di = inv_unit(d, n);
  Mat2 r;
  r.modulus = n;
  r.e[0] = static_cast<std::uint32_t>(di * x.e[3] % n);
  r.e[1] = static_cast<std::uint32_t>(di * (n - x.e[1] % n) % n);
  r.e[2] = static_cast<std::uint32_t>(di * (n - x.e[2] % n) % n);
  r.e[3] = static_cast<std::uint32_t>(di * x.e[0] % n);
  return r;
}

Mat2 mat_pow(Mat2 x, std::uint64_t k) {
  Mat2 acc = mat2_identity(x.modulus);
  while (k > 0) {
    if (k & 1) acc = mat_mul(acc, x);
    x = mat_mul(x, x);
    k >>= 1;
  }
  return acc;
}

std::uint64_t gl2_order(const FactoredInt& n) {
  if (n.value < 2) throw std::invalid_argument("gl2_order: n must be >= 2");
  unsigned __int128 total = 1;
  for (const auto& pp : n.factors) {
    const std::uint64_t l = pp.prime;
    unsigned __int128 part = (l - 1) * (l * l - 1);
    for (std::uint32_t i = 0; i < 4 * pp.exponent - 3; ++i) part *= l;
    total *= part;
    if (total > ~std::uint64_t(0)) throw std::overflow_error("gl2_order overflow");
  }
  return static_cast<std::uint64_t>(total);
}

std::string subgroup_kind_name(SubgroupKind kind) {
  switch (kind) {
    case SubgroupKind::Full: return "FULL";
    case SubgroupKind::SL2: return "SL2";
    case SubgroupKind::Borel0: return "BOREL0";
    case SubgroupKind::Borel1: return "BOREL1";
    case SubgroupKind::CartanNsPlus: return "CARTAN_NS_PLUS";
    case SubgroupKind::Scalars: return "SCALARS";
  }
  return "?";
}

std::optional<SubgroupKind> subgroup_kind_from_name(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  std::replace(up.begin(), up.end(), '-', '_');
  if (up == "FULL" || up == "GL2") return SubgroupKind::Full;
  if (up == "SL2") return SubgroupKind::SL2;
  if (up == "BOREL0" || up == "B0") return SubgroupKind::Borel0;
  if (up == "BOREL1" || up == "B1") return SubgroupKind::Borel1;
  if (up == "CARTAN_NS_PLUS" || up == "CARTAN_NS+" || up == "CNS+")
    return SubgroupKind::CartanNsPlus;
  if (up == "SCALARS" || up == "Z") return SubgroupKind::Scalars;
  return std::nullopt;
}

MatrixGroup::MatrixGroup(std::uint32_t modulus, std::vector<Mat2> generators,
                         std::vector<std::uint64_t> packed_elements,
                         std::optional<SubgroupKind> kind)
    : modulus_(modulus),
      kind_(kind),
      generators_(std::move(generators)),
      elements_(std::move(packed_elements)) {
  require_modulus(modulus_);
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (elements_.empty()) throw std::invalid_argument("MatrixGroup: empty element set");
}

bool MatrixGroup::contains(const Mat2& m) const {
  if (m.modulus != modulus_) return false;
  return std::binary_search(elements_.begin(), elements_.end(), m.pack());
}

namespace {

Mat2 cartan_ns_generator(std::uint32_t l, std::uint32_t eps) {
  // The matrices [[a, b*eps], [b, a]] form a cyclic group of order l^2-1
  // (the multiplicative group of the field with l^2 elements). Search for a
  // generator by order checks against the prime factors of l^2-1.
  const std::uint64_t order = std::uint64_t(l) * l - 1;
  const FactoredInt fo = factorize(order);
  for (std::uint32_t b = 1; b < l; ++b) {
    for (std::uint32_t a = 0; a < l; ++a) {
      const Mat2 m{l, {a, static_cast<std::uint32_t>(std::uint64_t(b) * eps % l), b, a}};
      if (!m.is_invertible()) continue;
      bool primitive = true;
      for (const auto& pp : fo.factors) {
        if (mat_pow(m, order / pp.prime) == mat2_identity(l)) {
          primitive = false;
          break;
        }
      }
      if (primitive) return m;
    }
  }
  throw std::logic_error("cartan_ns_generator: no generator found");
}

}  // namespace

std::vector<Mat2> standard_generators(SubgroupKind kind, std::uint32_t n) {
  require_modulus(n);
  const auto unit_gens = unit_group_generators(n);
  std::vector<Mat2> gens;
  const Mat2 lower{n, {1, 0, 1, 1}};
  const Mat2 upper{n, {1, 1, 0, 1}};

  switch (kind) {
    case SubgroupKind::Full:
      // SL2 is generated by the two transvections for every n; adding the
      // diagonal torus det-section gives all of GL2.
      gens = {upper, lower};
      for (auto u : unit_gens)
        gens.push_back(Mat2{n, {static_cast<std::uint32_t>(u), 0, 0, 1}});
      break;
    case SubgroupKind::SL2:
      gens = {upper, lower};
      break;
    case SubgroupKind::Borel0:
      gens = {upper};
      for (auto u : unit_gens) {
        gens.push_back(Mat2{n, {static_cast<std::uint32_t>(u), 0, 0, 1}});
        gens.push_back(Mat2{n, {1, 0, 0, static_cast<std::uint32_t>(u)}});
      }
      break;
    case SubgroupKind::Borel1:
      gens = {upper};
      for (auto u : unit_gens)
        gens.push_back(Mat2{n, {1, 0, 0, static_cast<std::uint32_t>(u)}});
      break;
    case SubgroupKind::Scalars:
      for (auto u : unit_gens) gens.push_back(mat2_scalar(static_cast<std::uint32_t>(u), n));
      if (gens.empty()) gens.push_back(mat2_identity(n));  // n = 2
      break;
    case SubgroupKind::CartanNsPlus: {
      if (!is_prime(n) || n == 2)
        throw std::invalid_argument("CARTAN_NS_PLUS requires an odd prime level");
      const auto eps = static_cast<std::uint32_t>(least_primitive_root(n));
      gens.push_back(cartan_ns_generator(n, eps));
      gens.push_back(Mat2{n, {1, 0, 0, n - 1}});  // the normalizing reflection
      break;
    }
  }
  return gens;
}

std::uint64_t standard_subgroup_order(SubgroupKind kind, std::uint32_t n) {
  require_modulus(n);
  const FactoredInt f = factorize(n);
  const std::uint64_t phi = euler_phi(f);
  switch (kind) {
    case SubgroupKind::Full: return gl2_order(f);
    case SubgroupKind::SL2: return gl2_order(f) / phi;
    case SubgroupKind::Borel0: return std::uint64_t(n) * phi * phi;
    case SubgroupKind::Borel1: return std::uint64_t(n) * phi;
    case SubgroupKind::Scalars: return phi;
    case SubgroupKind::CartanNsPlus:
      if (!is_prime(n) || n == 2)
        throw std::invalid_argument("CARTAN_NS_PLUS requires an odd prime level");
      return 2 * (std::uint64_t(n) * n - 1);
  }
  throw std::logic_error("unknown kind");
}

MatrixGroup standard_subgroup(SubgroupKind kind, std::uint32_t n, std::uint64_t cap) {
  require_modulus(n);
  const std::uint64_t expected = standard_subgroup_order(kind, n);
  if (expected > cap) throw EnumerationCapExceeded(cap, expected);

  std::vector<std::uint64_t> packed;
  packed.reserve(expected);
  const auto push = [&](const Mat2& m) { packed.push_back(m.pack()); };

  switch (kind) {
    case SubgroupKind::Full:
    case SubgroupKind::SL2: {
      const bool det_one = (kind == SubgroupKind::SL2);
      std::vector<char> is_unit(n, 0);
      for (std::uint32_t u = 0; u < n; ++u) is_unit[u] = std::gcd(u, n) == 1;
      for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
          for (std::uint32_t c = 0; c < n; ++c) {
            const std::uint64_t bc = std::uint64_t(b) * c % n;
            for (std::uint32_t d = 0; d < n; ++d) {
              const auto det = static_cast<std::uint32_t>(
                  (std::uint64_t(a) * d % n + n - bc) % n);
              if (det_one ? det == 1 : is_unit[det]) push(Mat2{n, {a, b, c, d}});
            }
          }
      break;
    }
    case SubgroupKind::Borel0:
      for (std::uint32_t a : units_mod(n))
        for (std::uint32_t d : units_mod(n))
          for (std::uint32_t b = 0; b < n; ++b) push(Mat2{n, {a, b, 0, d}});
      break;
    case SubgroupKind::Borel1:
      for (std::uint32_t d : units_mod(n))
        for (std::uint32_t b = 0; b < n; ++b) push(Mat2{n, {1, b, 0, d}});
      break;
    case SubgroupKind::Scalars:
      for (std::uint32_t u : units_mod(n)) push(mat2_scalar(u, n));
      break;
    case SubgroupKind::CartanNsPlus: {
      const auto eps = static_cast<std::uint32_t>(least_primitive_root(n));
      for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b) {
          const auto be = static_cast<std::uint32_t>(std::uint64_t(b) * eps % n);
          const Mat2 cartan{n, {a, be, b, a}};
          if (cartan.is_invertible()) push(cartan);
          const Mat2 twisted{n, {a, be, (n - b) % n, (n - a) % n}};
          if (twisted.is_invertible()) push(twisted);
        }
      break;
    }
  }

  MatrixGroup g(n, standard_generators(kind, n), std::move(packed), kind);
  if (g.order() != expected)
    throw std::logic_error("standard_subgroup: enumerated order disagrees with closed form");
  return g;
}

MatrixGroup generate(std::span<const Mat2> generators, std::uint64_t cap) {
  if (generators.empty())
    throw std::invalid_argument("generate: at least one generator required");
  const std::uint32_t n = generators.front().modulus;
  require_modulus(n);
  for (const auto& g : generators) {
    if (g.modulus != n) throw std::invalid_argument("generate: modulus mismatch");
    if (!g.is_invertible())
      throw std::domain_error("generate: generator is not invertible");
  }

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(1024);
  std::vector<std::uint64_t> frontier{mat2_identity(n).pack()};
  seen.insert(frontier.front());

  std::vector<std::uint64_t> next;
  while (!frontier.empty()) {
    next.clear();
    for (std::uint64_t packed : frontier) {
      const Mat2 x = Mat2::unpack(n, packed);
      for (const auto& g : generators) {
        const std::uint64_t y = mat_mul(x, g).pack();
        if (seen.insert(y).second) {
          if (seen.size() > cap) throw EnumerationCapExceeded(cap, seen.size());
          next.push_back(y);
        }
      }
    }
    frontier.swap(next);
  }

  std::vector<std::uint64_t> packed(seen.begin(), seen.end());
  return MatrixGroup(n, std::vector<Mat2>(generators.begin(), generators.end()),
                     std::move(packed));
}

bool contains_scalars(const MatrixGroup& g) {
  const std::uint32_t n = g.modulus();
  for (std::uint32_t u = 1; u < n; ++u)
    if (std::gcd(u, n) == 1 && !g.contains(mat2_scalar(u, n))) return false;
  return true;
}

std::uint64_t subgroup_index(const MatrixGroup& g) {
  const std::uint64_t ambient = gl2_order(factorize(g.modulus()));
  if (ambient % g.order() != 0)
    throw std::logic_error("subgroup_index: order does not divide #GL2 (enumeration bug)");
  return ambient / g.order();
}

}  // namespace torbound
