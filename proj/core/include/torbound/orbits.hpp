#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "torbound/gl2.hpp"

namespace torbound {

// A vector in (Z/nZ)^2. Its additive order is n / gcd(n, u, v); "exact order
// n" means gcd(n, u, v) = 1.
struct TorsionVector {
  std::uint32_t modulus = 0;
  std::uint32_t u = 0, v = 0;

  std::uint32_t additive_order() const;
  friend bool operator==(const TorsionVector&, const TorsionVector&) = default;
};

// A cyclic order-n subgroup of (Z/nZ)^2, identified by its canonical
// generator: the lexicographically least unit multiple of any generator.
struct CyclicSubgroupLabel {
  TorsionVector generator;
  friend bool operator==(const CyclicSubgroupLabel&, const CyclicSubgroupLabel&) = default;
};

enum class ActionKind { Point, Subgroup };

TorsionVector apply(const Mat2& g, const TorsionVector& x);
CyclicSubgroupLabel canonical_label(const TorsionVector& generator);

// All (u, v) of exact additive order n; count is n^2 * prod(1 - 1/l^2).
std::vector<TorsionVector> exact_order_vectors(std::uint32_t n,
                                               std::uint64_t cap = kDefaultEnumerationCap);

// One label per cyclic order-n subgroup; count is n * prod(1 + 1/l).
std::vector<CyclicSubgroupLabel> cyclic_subgroups(std::uint32_t n,
                                                  std::uint64_t cap = kDefaultEnumerationCap);

// The source of a group action: a modulus plus generator list. Orbits are
// closed under the generators only, so enumerating the group is never
// required; a fully enumerated MatrixGroup converts implicitly.
struct GroupAction {
  std::uint32_t modulus = 0;
  std::vector<Mat2> generators;
  std::optional<std::uint64_t> order;       // known group order, if any
  std::optional<SubgroupKind> kind;

  GroupAction() = default;
  GroupAction(std::uint32_t n, std::vector<Mat2> gens)
      : modulus(n), generators(std::move(gens)) {}
  GroupAction(const MatrixGroup& g)  // NOLINT(google-explicit-constructor)
      : modulus(g.modulus()),
        generators(g.generators()),
        order(g.order()),
        kind(g.kind()) {}
};

std::uint64_t orbit_size(const GroupAction& action, const TorsionVector& x);
std::uint64_t orbit_size(const GroupAction& action, const CyclicSubgroupLabel& x);

struct DivisibilityCheck {
  std::string statement_id;
  bool pass = false;
  std::string detail;
};

struct OrbitReport {
  std::uint32_t modulus = 0;
  ActionKind kind = ActionKind::Point;
  // orbit size -> number of orbits of that size
  std::map<std::uint64_t, std::uint64_t> orbit_sizes;
  std::uint64_t total_points = 0;
  std::optional<std::uint64_t> group_order;
  std::vector<DivisibilityCheck> checks;

  std::uint64_t orbit_count() const;
};

// Complete orbit decomposition of the action on exact-order-n vectors
// (Point) or on cyclic order-n subgroups (Subgroup). When the action is
// known to contain the scalars, a SCALAR_DIV check is recorded; for the
// non-split Cartan normalizer at prime level a CARTAN_DEG check is recorded.
// contains_scalars_hint: pass the known scalar-containment status for
// generator-only actions (checked from the element set when available).
OrbitReport orbit_partition(const GroupAction& action, ActionKind kind,
                            std::uint64_t cap = kDefaultEnumerationCap,
                            std::optional<bool> contains_scalars_hint = std::nullopt);

// Convenience overload: checks scalar containment against the element set.
OrbitReport orbit_partition(const MatrixGroup& g, ActionKind kind,
                            std::uint64_t cap = kDefaultEnumerationCap);

enum class VerdictStatus { Pass, Fail, PreconditionUnmet };

struct ScalarDivisibilityVerdict {
  VerdictStatus status = VerdictStatus::Pass;
  std::optional<TorsionVector> witness;  // a vector whose orbit violates
  std::string detail;
};

// Checks that phi(n) divides every exact-order-n point-orbit size. Requires
// contains_scalars(G); reports PreconditionUnmet (not Fail) otherwise.
ScalarDivisibilityVerdict verify_scalar_divisibility(const MatrixGroup& g);

}  // namespace torbound
