#include "torbound/orbits.hpp"

#include <algorithm>
#include <numeric>

namespace torbound {

namespace {

inline std::uint64_t key_of(std::uint32_t n, std::uint32_t u, std::uint32_t v) {
  return std::uint64_t(u) * n + v;
}

std::vector<std::uint32_t> units_mod(std::uint32_t n) {
  std::vector<std::uint32_t> units;
  for (std::uint32_t u = 1; u < n; ++u)
    if (std::gcd(u, n) == 1) units.push_back(u);
  return units;
}

}  // namespace

std::uint32_t TorsionVector::additive_order() const {
  const std::uint32_t g = std::gcd(std::gcd(u, v), modulus);
  return modulus / g;
}

TorsionVector apply(const Mat2& g, const TorsionVector& x) {
  if (g.modulus != x.modulus)
    throw std::invalid_argument("apply: modulus mismatch");
  const std::uint64_t n = x.modulus;
  TorsionVector y;
  y.modulus = x.modulus;
  y.u = static_cast<std::uint32_t>((std::uint64_t(g.e[0]) * x.u + std::uint64_t(g.e[1]) * x.v) % n);
  y.v = static_cast<std::uint32_t>((std::uint64_t(g.e[2]) * x.u + std::uint64_t(g.e[3]) * x.v) % n);
  return y;
}

CyclicSubgroupLabel canonical_label(const TorsionVector& generator) {
  const std::uint32_t n = generator.modulus;
  if (generator.additive_order() != n)
    throw std::invalid_argument("canonical_label: generator must have exact order n");
  TorsionVector best = generator;
  for (std::uint32_t a : units_mod(n)) {
    TorsionVector cand{n, static_cast<std::uint32_t>(std::uint64_t(a) * generator.u % n),
                       static_cast<std::uint32_t>(std::uint64_t(a) * generator.v % n)};
    if (cand.u < best.u || (cand.u == best.u && cand.v < best.v)) best = cand;
  }
  return CyclicSubgroupLabel{best};
}

std::vector<TorsionVector> exact_order_vectors(std::uint32_t n, std::uint64_t cap) {
  if (n < 2) throw std::invalid_argument("exact_order_vectors: n must be >= 2");
  if (std::uint64_t(n) * n > cap) throw EnumerationCapExceeded(cap, std::uint64_t(n) * n);
  std::vector<TorsionVector> out;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = 0; v < n; ++v)
      if (std::gcd(std::gcd(u, v), n) == 1) out.push_back(TorsionVector{n, u, v});
  return out;
}

std::vector<CyclicSubgroupLabel> cyclic_subgroups(std::uint32_t n, std::uint64_t cap) {
  const auto vectors = exact_order_vectors(n, cap);
  std::vector<CyclicSubgroupLabel> out;
  const auto units = units_mod(n);
  std::vector<char> seen(std::size_t(n) * n, 0);
  for (const auto& x : vectors) {
    if (seen[key_of(n, x.u, x.v)]) continue;
    // Mark the whole unit-multiple class and keep its least member.
    TorsionVector best = x;
    for (std::uint32_t a : units) {
      TorsionVector cand{n, static_cast<std::uint32_t>(std::uint64_t(a) * x.u % n),
                         static_cast<std::uint32_t>(std::uint64_t(a) * x.v % n)};
      seen[key_of(n, cand.u, cand.v)] = 1;
      if (cand.u < best.u || (cand.u == best.u && cand.v < best.v)) best = cand;
    }
    out.push_back(CyclicSubgroupLabel{best});
  }
  return out;
}

namespace {

// Generic orbit closure over packed states indexed by u*n+v.
std::uint64_t orbit_closure(const GroupAction& action, std::uint64_t start_key,
                            std::vector<char>& visited,
                            const std::vector<std::uint32_t>* canonical_map) {
  const std::uint32_t n = action.modulus;
  std::vector<std::uint64_t> stack{start_key};
  visited[start_key] = 1;
  std::uint64_t size = 0;
  while (!stack.empty()) {
    const std::uint64_t key = stack.back();
    stack.pop_back();
    ++size;
    const TorsionVector x{n, static_cast<std::uint32_t>(key / n),
                          static_cast<std::uint32_t>(key % n)};
    for (const auto& g : action.generators) {
      TorsionVector y = apply(g, x);
      std::uint64_t yk = key_of(n, y.u, y.v);
      if (canonical_map) yk = (*canonical_map)[yk];
      if (!visited[yk]) {
        visited[yk] = 1;
        stack.push_back(yk);
      }
    }
  }
  return size;
}

// Maps every exact-order vector key to the key of its canonical label.
std::vector<std::uint32_t> build_canonical_map(std::uint32_t n) {
  std::vector<std::uint32_t> map(std::size_t(n) * n, 0);
  const auto units = units_mod(n);
  std::vector<char> done(std::size_t(n) * n, 0);
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = 0; v < n; ++v) {
      if (std::gcd(std::gcd(u, v), n) != 1) continue;
      const auto k = key_of(n, u, v);
      if (done[k]) continue;
      TorsionVector best{n, u, v};
      std::vector<std::uint64_t> cls;
      for (std::uint32_t a : units) {
        TorsionVector cand{n, static_cast<std::uint32_t>(std::uint64_t(a) * u % n),
                           static_cast<std::uint32_t>(std::uint64_t(a) * v % n)};
        cls.push_back(key_of(n, cand.u, cand.v));
        if (cand.u < best.u || (cand.u == best.u && cand.v < best.v)) best = cand;
      }
      const auto best_key = static_cast<std::uint32_t>(key_of(n, best.u, best.v));
      for (auto ck : cls) {
        map[ck] = best_key;
        done[ck] = 1;
      }
    }
  return map;
}

void check_modulus(const GroupAction& action, std::uint32_t x_modulus) {
  if (action.modulus != x_modulus)
    throw std::invalid_argument("orbit: modulus mismatch between group and point");
}

}  // namespace

std::uint64_t orbit_size(const GroupAction& action, const TorsionVector& x) {
  check_modulus(action, x.modulus);
  const std::uint32_t n = action.modulus;
  if (std::uint64_t(n) * n > kDefaultEnumerationCap)
    throw EnumerationCapExceeded(kDefaultEnumerationCap, std::uint64_t(n) * n);
  std::vector<char> visited(std::size_t(n) * n, 0);
  return orbit_closure(action, key_of(n, x.u, x.v), visited, nullptr);
}

std::uint64_t orbit_size(const GroupAction& action, const CyclicSubgroupLabel& x) {
  check_modulus(action, x.generator.modulus);
  const std::uint32_t n = action.modulus;
  if (std::uint64_t(n) * n > kDefaultEnumerationCap)
    throw EnumerationCapExceeded(kDefaultEnumerationCap, std::uint64_t(n) * n);
  const auto canonical = build_canonical_map(n);
  std::vector<char> visited(std::size_t(n) * n, 0);
  const auto start = canonical[key_of(n, x.generator.u, x.generator.v)];
  return orbit_closure(action, start, visited, &canonical);
}

std::uint64_t OrbitReport::orbit_count() const {
  std::uint64_t c = 0;
  for (const auto& [size, count] : orbit_sizes) c += count;
  return c;
}

OrbitReport orbit_partition(const GroupAction& action, ActionKind kind,
                            std::uint64_t cap,
                            std::optional<bool> contains_scalars_hint) {
  const std::uint32_t n = action.modulus;
  if (std::uint64_t(n) * n > cap) throw EnumerationCapExceeded(cap, std::uint64_t(n) * n);

  OrbitReport report;
  report.modulus = n;
  report.kind = kind;
  report.group_order = action.order;

  std::vector<std::uint64_t> starts;
  std::vector<std::uint32_t> canonical;
  if (kind == ActionKind::Point) {
    for (const auto& x : exact_order_vectors(n, cap))
      starts.push_back(key_of(n, x.u, x.v));
  } else {
    canonical = build_canonical_map(n);
    for (const auto& s : cyclic_subgroups(n, cap))
      starts.push_back(key_of(n, s.generator.u, s.generator.v));
  }

  std::vector<char> visited(std::size_t(n) * n, 0);
  for (std::uint64_t start : starts) {
    if (visited[start]) continue;
    const std::uint64_t size = orbit_closure(
        action, start, visited, kind == ActionKind::Subgroup ? &canonical : nullptr);
    ++report.orbit_sizes[size];
    report.total_points += size;
  }

  // phi(n) | orbit size whenever the scalars act (each scalar class inside a
  // group orbit has exactly phi(n) distinct points).
  bool has_scalars = false;
  if (contains_scalars_hint.has_value()) {
    has_scalars = *contains_scalars_hint;
  } else if (action.kind) {
    has_scalars = *action.kind == SubgroupKind::Full ||
                  *action.kind == SubgroupKind::Borel0 ||
                  *action.kind == SubgroupKind::CartanNsPlus ||
                  *action.kind == SubgroupKind::Scalars;
  }
  if (kind == ActionKind::Point && has_scalars) {
    const std::uint64_t phi = euler_phi(factorize(n));
    bool ok = true;
    std::string detail;
    for (const auto& [size, count] : report.orbit_sizes) {
      if (size % phi != 0) {
        ok = false;
        detail = "orbit size " + std::to_string(size) + " not divisible by phi(n) = " +
                 std::to_string(phi);
        break;
      }
    }
    report.checks.push_back({"SCALAR_DIV", ok, ok ? "phi(n) divides every point-orbit size" : detail});
  }

  if (action.kind == SubgroupKind::CartanNsPlus && is_prime(n)) {
    const std::uint64_t expected =
        kind == ActionKind::Point ? std::uint64_t(n) * n - 1 : std::uint64_t(n) + 1;
    bool ok = true;
    for (const auto& [size, count] : report.orbit_sizes)
      if (size != expected) ok = false;
    report.checks.push_back({"CARTAN_DEG", ok,
                             "every orbit has size " + std::to_string(expected)});
  }

  return report;
}

OrbitReport orbit_partition(const MatrixGroup& g, ActionKind kind, std::uint64_t cap) {
  return orbit_partition(GroupAction(g), kind, cap, contains_scalars(g));
}

ScalarDivisibilityVerdict verify_scalar_divisibility(const MatrixGroup& g) {
  ScalarDivisibilityVerdict verdict;
  if (!contains_scalars(g)) {
    verdict.status = VerdictStatus::PreconditionUnmet;
    verdict.detail = "group does not contain all scalar matrices (hypothesis unmet)";
    return verdict;
  }
  const std::uint32_t n = g.modulus();
  const std::uint64_t phi = euler_phi(factorize(n));

  const GroupAction action(g);
  std::vector<char> visited(std::size_t(n) * n, 0);
  for (const auto& x : exact_order_vectors(n)) {
    const auto key = key_of(n, x.u, x.v);
    if (visited[key]) continue;
    // Recompute this orbit alone so a failing witness can be reported.
    std::vector<char> local(std::size_t(n) * n, 0);
    const std::uint64_t size = orbit_closure(action, key, local, nullptr);
    for (std::size_t i = 0; i < local.size(); ++i)
      if (local[i]) visited[i] = 1;
    if (size % phi != 0) {
      verdict.status = VerdictStatus::Fail;
      verdict.witness = x;
      verdict.detail = "orbit of (" + std::to_string(x.u) + "," + std::to_string(x.v) +
                       ") has size " + std::to_string(size) +
                       ", not divisible by phi(n) = " + std::to_string(phi);
      return verdict;
    }
  }
  verdict.status = VerdictStatus::Pass;
  verdict.detail = "phi(n) = " + std::to_string(phi) + " divides every point-orbit size";
  return verdict;
}

}  // namespace torbound
