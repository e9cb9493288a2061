#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "torbound/gl2.hpp"

using namespace torbound;

namespace {

// Counts invertible 2x2 matrices mod n the slow way.
std::uint64_t gl2_count_oracle(std::uint32_t n) {
  std::uint64_t count = 0;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t d = 0; d < n; ++d) {
          const std::uint64_t det =
              (std::uint64_t(a) * d % n + n - std::uint64_t(b) * c % n) % n;
          if (std::gcd(det, std::uint64_t(n)) == 1) ++count;
        }
  return count;
}

std::uint64_t sl2_count_oracle(std::uint32_t n) {
  std::uint64_t count = 0;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t d = 0; d < n; ++d) {
          const std::uint64_t det =
              (std::uint64_t(a) * d % n + n - std::uint64_t(b) * c % n) % n;
          if (det == 1) ++count;
        }
  return count;
}

Mat2 random_invertible(std::mt19937_64& rng, std::uint32_t n) {
  while (true) {
    Mat2 m{n,
           {static_cast<std::uint32_t>(rng() % n), static_cast<std::uint32_t>(rng() % n),
            static_cast<std::uint32_t>(rng() % n), static_cast<std::uint32_t>(rng() % n)}};
    if (m.is_invertible()) return m;
  }
}

}  // namespace

TEST_CASE("mat_mul basics") {
  const auto id = mat2_identity(7);
  CHECK(mat_mul(id, id) == id);

  const Mat2 u{5, {1, 1, 0, 1}};
  CHECK(mat_mul(u, u) == Mat2{5, {1, 2, 0, 1}});

  CHECK_THROWS_AS(mat_mul(mat2_identity(5), mat2_identity(7)), std::invalid_argument);
}

TEST_CASE("mat_inv examples and random inverse oracle") {
  CHECK(mat_inv(mat2_identity(9)) == mat2_identity(9));

  const Mat2 swap{11, {0, 1, 1, 0}};
  CHECK(mat_inv(swap) == swap);

  CHECK(mat_inv(Mat2{7, {1, 1, 0, 1}}) == Mat2{7, {1, 6, 0, 1}});

  const Mat2 singular{6, {2, 0, 0, 1}};  // det 2, not a unit mod 6
  CHECK_THROWS_AS(mat_inv(singular), std::domain_error);

  std::mt19937_64 rng(3);
  for (std::uint32_t n : {5u, 12u, 41u}) {
    for (int i = 0; i < 100; ++i) {
      const Mat2 x = random_invertible(rng, n);
      CHECK(mat_mul(x, mat_inv(x)) == mat2_identity(n));
      CHECK(mat_mul(mat_inv(x), x) == mat2_identity(n));
    }
  }
}

TEST_CASE("pack round trip") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const std::uint32_t n = 2 + rng() % 60;
    const Mat2 m = random_invertible(rng, n);
    CHECK(Mat2::unpack(n, m.pack()) == m);
  }
}

TEST_CASE("gl2_order examples and oracle sweep") {
  CHECK(gl2_order(factorize(2)) == 6);
  CHECK(gl2_order(factorize(5)) == 480);
  CHECK(gl2_order(factorize(9)) == 3888);

  for (std::uint32_t n = 2; n <= 12; ++n)
    CHECK(gl2_order(factorize(n)) == gl2_count_oracle(n));
}

TEST_CASE("standard subgroup orders match their families") {
  CHECK(standard_subgroup(SubgroupKind::Scalars, 5).order() == 4);
  CHECK(standard_subgroup(SubgroupKind::Borel0, 9).order() == 324);
  CHECK(standard_subgroup(SubgroupKind::CartanNsPlus, 5).order() == 48);
  CHECK(standard_subgroup(SubgroupKind::Borel1, 9).order() == 54);
  CHECK(standard_subgroup(SubgroupKind::SL2, 5).order() == sl2_count_oracle(5));
  CHECK(standard_subgroup(SubgroupKind::Full, 6).order() == gl2_count_oracle(6));

  // Cartan order closed form across odd primes.
  for (std::uint32_t l : {3u, 5u, 7u, 11u, 13u, 41u, 43u, 47u, 53u})
    CHECK(standard_subgroup(SubgroupKind::CartanNsPlus, l).order() ==
          2 * (std::uint64_t(l) * l - 1));

  CHECK_THROWS_AS(standard_subgroup(SubgroupKind::CartanNsPlus, 9),
                  std::invalid_argument);
  CHECK_THROWS_AS(standard_subgroup(SubgroupKind::CartanNsPlus, 2),
                  std::invalid_argument);
}

TEST_CASE("standard generators close onto the enumerated subgroup") {
  const std::pair<SubgroupKind, std::uint32_t> cases[] = {
      {SubgroupKind::Full, 5},       {SubgroupKind::Full, 8},
      {SubgroupKind::Full, 12},      {SubgroupKind::SL2, 9},
      {SubgroupKind::Borel0, 12},    {SubgroupKind::Borel1, 15},
      {SubgroupKind::Scalars, 16},   {SubgroupKind::CartanNsPlus, 13},
      {SubgroupKind::CartanNsPlus, 41}};
  for (const auto& [kind, n] : cases) {
    const auto direct = standard_subgroup(kind, n);
    const auto closed = generate(direct.generators());
    CHECK(closed.order() == direct.order());
    CHECK(closed.packed_elements() == direct.packed_elements());
  }
}

TEST_CASE("generate examples") {
  const auto trivial = generate(std::vector<Mat2>{mat2_identity(9)});
  CHECK(trivial.order() == 1);

  // The two transvections generate SL2 for any modulus.
  const std::vector<Mat2> transvections{{5, {1, 1, 0, 1}}, {5, {1, 0, 1, 1}}};
  const auto sl2 = generate(transvections);
  CHECK(sl2.order() == 120);
  CHECK(sl2.order() == sl2_count_oracle(5));

  // A scalar generates a cyclic group of its multiplicative order.
  const auto cyc = generate(std::vector<Mat2>{mat2_scalar(2, 41)});
  CHECK(cyc.order() == multiplicative_order(2, 41));
  const auto cyc6 = generate(std::vector<Mat2>{mat2_scalar(6, 41)});
  CHECK(cyc6.order() == 40);
}

TEST_CASE("generate enforces its cap and input checks") {
  const std::vector<Mat2> transvections{{5, {1, 1, 0, 1}}, {5, {1, 0, 1, 1}}};
  CHECK_THROWS_AS(generate(transvections, 50), EnumerationCapExceeded);
  try {
    generate(transvections, 50);
  } catch (const EnumerationCapExceeded& e) {
    CHECK(e.cap() == 50);
    CHECK(e.partial_size() > 50);
  }

  const std::vector<Mat2> mixed{mat2_identity(5), mat2_identity(7)};
  CHECK_THROWS_AS(generate(mixed), std::invalid_argument);
  const std::vector<Mat2> singular{Mat2{6, {2, 0, 0, 1}}};
  CHECK_THROWS_AS(generate(singular), std::domain_error);
}

TEST_CASE("contains_scalars") {
  CHECK(contains_scalars(standard_subgroup(SubgroupKind::Scalars, 12)));
  CHECK(contains_scalars(standard_subgroup(SubgroupKind::Full, 8)));
  CHECK(contains_scalars(standard_subgroup(SubgroupKind::CartanNsPlus, 41)));
  CHECK_FALSE(contains_scalars(standard_subgroup(SubgroupKind::Borel1, 5)));
  CHECK_FALSE(contains_scalars(standard_subgroup(SubgroupKind::Borel1, 9)));

  // SL2 joined with the scalars contains them by construction.
  auto gens = standard_generators(SubgroupKind::SL2, 7);
  const auto scalar_gens = standard_generators(SubgroupKind::Scalars, 7);
  gens.insert(gens.end(), scalar_gens.begin(), scalar_gens.end());
  CHECK(contains_scalars(generate(gens)));
}

TEST_CASE("non-split Cartan structure: abelian index-2 part, nonabelian whole") {
  for (std::uint32_t l : {3u, 5u, 7u, 11u, 41u}) {
    const auto group = standard_subgroup(SubgroupKind::CartanNsPlus, l);
    // The first displayed family (the Cartan itself) is the subgroup
    // generated by the primitive element; it is cyclic, hence abelian.
    const auto cartan_gen = group.generators().at(0);
    const auto cartan = generate(std::vector<Mat2>{cartan_gen});
    CHECK(cartan.order() == std::uint64_t(l) * l - 1);
    for (std::size_t i = 0; i < std::min<std::size_t>(cartan.order(), 40); ++i)
      for (std::size_t j = i + 1; j < std::min<std::size_t>(cartan.order(), 40); ++j) {
        const auto x = cartan.element(i), y = cartan.element(j);
        CHECK(mat_mul(x, y) == mat_mul(y, x));
      }

    // The normalizer is nonabelian for every odd prime: the reflection does
    // not commute with a non-scalar Cartan element.
    bool commutes_everywhere = true;
    const auto refl = group.generators().at(1);
    for (std::size_t i = 0; i < cartan.order() && commutes_everywhere; ++i) {
      const auto x = cartan.element(i);
      commutes_everywhere = mat_mul(x, refl) == mat_mul(refl, x);
    }
    CHECK_FALSE(commutes_everywhere);
  }
}

TEST_CASE("Borel1 lacks scalars for every level >= 3") {
  for (std::uint32_t n = 3; n <= 20; ++n)
    CHECK_FALSE(contains_scalars(standard_subgroup(SubgroupKind::Borel1, n)));
}

TEST_CASE("subgroup_index") {
  CHECK(subgroup_index(standard_subgroup(SubgroupKind::Full, 9)) == 1);
  CHECK(subgroup_index(standard_subgroup(SubgroupKind::Borel1, 9)) == 72);
  CHECK(subgroup_index(standard_subgroup(SubgroupKind::Borel0, 25)) == 30);

  // Lagrange: closures of random generator sets divide #GL2 exactly.
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    std::vector<Mat2> gens{random_invertible(rng, 6), random_invertible(rng, 6)};
    const auto g = generate(gens);
    CHECK(gl2_order(factorize(6)) % g.order() == 0);
    CHECK(subgroup_index(g) * g.order() == gl2_order(factorize(6)));
  }
}

TEST_CASE("kind names round trip") {
  for (auto kind : {SubgroupKind::Full, SubgroupKind::SL2, SubgroupKind::Borel0,
                    SubgroupKind::Borel1, SubgroupKind::CartanNsPlus,
                    SubgroupKind::Scalars})
    CHECK(subgroup_kind_from_name(subgroup_kind_name(kind)) == kind);
  CHECK(subgroup_kind_from_name("borel0") == SubgroupKind::Borel0);
  CHECK_FALSE(subgroup_kind_from_name("weird").has_value());
}
