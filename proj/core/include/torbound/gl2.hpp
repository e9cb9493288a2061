#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "torbound/arith.hpp"

namespace torbound {

// An invertible 2x2 matrix over Z/nZ, entries reduced to [0, n).
// Layout: [[a, b], [c, d]] stored as {a, b, c, d}.
struct Mat2 {
  std::uint32_t modulus = 0;
  std::array<std::uint32_t, 4> e{};

  std::uint32_t det() const;
  bool is_invertible() const;

  // Canonical packing for hashing/sorting; requires modulus <= 2^16.
  std::uint64_t pack() const;
  static Mat2 unpack(std::uint32_t modulus, std::uint64_t packed);

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 mat2_identity(std::uint32_t modulus);
Mat2 mat2_scalar(std::uint32_t unit, std::uint32_t modulus);
// Throws std::invalid_argument on mismatched moduli.
Mat2 mat_mul(const Mat2& x, const Mat2& y);
// Adjugate times det-inverse. Throws std::domain_error on non-unit det.
Mat2 mat_inv(const Mat2& x);
Mat2 mat_pow(Mat2 x, std::uint64_t k);

// #GL2(Z/nZ) = prod over l^k || n of l^(4k-3) (l-1)(l^2-1).
std::uint64_t gl2_order(const FactoredInt& n);

enum class SubgroupKind {
  Full,          // all of GL2(Z/nZ)
  SL2,           // determinant 1
  Borel0,        // upper triangular
  Borel1,        // upper triangular with top-left entry 1
  CartanNsPlus,  // normalizer of a non-split Cartan subgroup (prime level)
  Scalars,       // (Z/nZ)^x . Id
};

std::string subgroup_kind_name(SubgroupKind kind);
std::optional<SubgroupKind> subgroup_kind_from_name(std::string_view name);

inline constexpr std::uint64_t kDefaultEnumerationCap = 5'000'000;

// Thrown when a closure or enumeration would exceed its element cap; carries
// the number of elements found so far.
class EnumerationCapExceeded : public std::runtime_error {
 public:
  EnumerationCapExceeded(std::uint64_t cap, std::uint64_t partial)
      : std::runtime_error("enumeration cap " + std::to_string(cap) +
                           " exceeded (partial size " + std::to_string(partial) + ")"),
        cap_(cap),
        partial_(partial) {}
  std::uint64_t cap() const { return cap_; }
  std::uint64_t partial_size() const { return partial_; }

 private:
  std::uint64_t cap_;
  std::uint64_t partial_;
};

// A fully enumerated subgroup of GL2(Z/nZ). Immutable once built; element
// membership is by binary search over the packed, sorted element list.
class MatrixGroup {
 public:
  MatrixGroup(std::uint32_t modulus, std::vector<Mat2> generators,
              std::vector<std::uint64_t> packed_elements,
              std::optional<SubgroupKind> kind = std::nullopt);

  std::uint32_t modulus() const { return modulus_; }
  std::uint64_t order() const { return elements_.size(); }
  const std::vector<Mat2>& generators() const { return generators_; }
  const std::vector<std::uint64_t>& packed_elements() const { return elements_; }
  std::optional<SubgroupKind> kind() const { return kind_; }

  bool contains(const Mat2& m) const;
  Mat2 element(std::size_t i) const { return Mat2::unpack(modulus_, elements_[i]); }

 private:
  std::uint32_t modulus_;
  std::optional<SubgroupKind> kind_;
  std::vector<Mat2> generators_;
  std::vector<std::uint64_t> elements_;  // sorted packed values
};

// A small generating set for each named subgroup (transvections, diagonal
// torus generators, a non-split Cartan generator plus its normalizing
// reflection). These provably generate the corresponding subgroup and are
// what the orbit machinery applies.
std::vector<Mat2> standard_generators(SubgroupKind kind, std::uint32_t n);

// Closed-form order of a named subgroup (what direct enumeration must match).
std::uint64_t standard_subgroup_order(SubgroupKind kind, std::uint32_t n);

// Builds the named subgroup by direct enumeration of its defining family.
// CartanNsPlus requires odd prime n; everything else requires n >= 2.
MatrixGroup standard_subgroup(SubgroupKind kind, std::uint32_t n,
                              std::uint64_t cap = kDefaultEnumerationCap);

// Breadth-first closure of a generator list (right multiplication from the
// identity). Throws EnumerationCapExceeded past the cap.
MatrixGroup generate(std::span<const Mat2> generators,
                     std::uint64_t cap = kDefaultEnumerationCap);

// True iff u*Id lies in G for every unit u mod n.
bool contains_scalars(const MatrixGroup& g);

// [GL2(Z/nZ) : G]; throws std::logic_error if the division is inexact
// (which would signal an enumeration bug).
std::uint64_t subgroup_index(const MatrixGroup& g);

}  // namespace torbound
