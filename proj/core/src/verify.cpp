#include "torbound/verify.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <random>

#include "torbound/orbits.hpp"

namespace torbound {

namespace {

using Clock = std::chrono::steady_clock;

std::string rat_str(const Rational& r) { return rational_to_string(r); }

Mat2 random_invertible(std::mt19937_64& rng, std::uint32_t n) {
  while (true) {
    Mat2 m{n,
           {static_cast<std::uint32_t>(rng() % n), static_cast<std::uint32_t>(rng() % n),
            static_cast<std::uint32_t>(rng() % n), static_cast<std::uint32_t>(rng() % n)}};
    if (m.is_invertible()) return m;
  }
}

SuiteResult group_orders_suite(const SuiteOptions& opts) {
  SuiteResult suite;
  suite.name = suite_name_string(SuiteName::GroupOrders);

  for (std::uint32_t l : primes_up_to(4096)) {
    for (std::uint32_t k = 1;; ++k) {
      unsigned __int128 order = (std::uint64_t(l) - 1) * (std::uint64_t(l) * l - 1);
      for (std::uint32_t i = 0; i < 4 * k - 3; ++i) order *= l;
      if (order > opts.cap) break;
      const std::uint64_t n64 = [&] {
        std::uint64_t v = 1;
        for (std::uint32_t i = 0; i < k; ++i) v *= l;
        return v;
      }();
      const auto n = static_cast<std::uint32_t>(n64);
      const std::string tag = std::to_string(l) + "^" + std::to_string(k);

      const FactoredInt nf = factorize(n);
      const std::uint64_t closed_full = gl2_order(nf);
      const std::uint64_t phi = euler_phi(nf);
      const std::uint64_t closed_b0 = std::uint64_t(n) * phi * phi;
      const std::uint64_t closed_b1 = std::uint64_t(n) * phi;

      const auto full = standard_subgroup(SubgroupKind::Full, n, opts.cap);
      const auto b0 = standard_subgroup(SubgroupKind::Borel0, n, opts.cap);
      const auto b1 = standard_subgroup(SubgroupKind::Borel1, n, opts.cap);

      suite.add("gl2_order." + tag, full.order() == closed_full,
                "enumerated " + std::to_string(full.order()) + ", closed form " +
                    std::to_string(closed_full));
      suite.add("borel0_order." + tag, b0.order() == closed_b0,
                "enumerated " + std::to_string(b0.order()));
      suite.add("borel1_order." + tag, b1.order() == closed_b1,
                "enumerated " + std::to_string(b1.order()));

      // Index closed forms: l^(k-1)(l+1) for B0, l^(2k-2)(l^2-1) for B1.
      std::uint64_t lk1 = 1, l2k2 = 1;
      for (std::uint32_t i = 0; i + 1 < k; ++i) lk1 *= l;
      for (std::uint32_t i = 0; i < 2 * (k - 1); ++i) l2k2 *= l;
      const std::uint64_t idx_b0 = subgroup_index(b0);
      const std::uint64_t idx_b1 = subgroup_index(b1);
      suite.add("borel0_index." + tag, idx_b0 == lk1 * (std::uint64_t(l) + 1),
                "index " + std::to_string(idx_b0));
      suite.add("borel1_index." + tag,
                idx_b1 == l2k2 * (std::uint64_t(l) * l - 1),
                "index " + std::to_string(idx_b1));
      suite.add("full_index." + tag, subgroup_index(full) == 1, "");
    }
  }
  return suite;
}

SuiteResult cartan_deg_suite(const SuiteOptions& opts) {
  SuiteResult suite;
  suite.name = suite_name_string(SuiteName::CartanDeg);

  for (std::uint32_t l : opts.cartan_levels) {
    const std::string tag = std::to_string(l);
    const auto group = standard_subgroup(SubgroupKind::CartanNsPlus, l, opts.cap);
    const std::uint64_t expected_order = 2 * (std::uint64_t(l) * l - 1);
    suite.add("cartan_order." + tag, group.order() == expected_order,
              "enumerated " + std::to_string(group.order()) + ", closed form " +
                  std::to_string(expected_order));

    const auto points = orbit_partition(group, ActionKind::Point, opts.cap);
    bool point_ok = points.orbit_sizes.size() == 1 &&
                    points.orbit_sizes.begin()->first == std::uint64_t(l) * l - 1;
    suite.add("cartan_point_orbits." + tag, point_ok,
              "want every orbit of size " + std::to_string(std::uint64_t(l) * l - 1));

    const auto subs = orbit_partition(group, ActionKind::Subgroup, opts.cap);
    bool sub_ok = subs.orbit_sizes.size() == 1 &&
                  subs.orbit_sizes.begin()->first == std::uint64_t(l) + 1;
    suite.add("cartan_subgroup_orbits." + tag, sub_ok,
              "want every orbit of size " + std::to_string(l + 1));
  }
  return suite;
}

// phi(n) must divide every exact-order point-orbit size for any action
// containing the scalars.
bool phi_divides_all(const OrbitReport& report, std::uint64_t phi) {
  for (const auto& [size, count] : report.orbit_sizes)
    if (size % phi != 0) return false;
  return true;
}

SuiteResult scalar_div_suite(const SuiteOptions& opts) {
  SuiteResult suite;
  suite.name = suite_name_string(SuiteName::ScalarDiv);

  for (std::uint32_t n = 2; n <= opts.scalar_div_max_level; ++n) {
    const std::uint64_t phi = euler_phi(factorize(n));
    const auto scalar_gens = standard_generators(SubgroupKind::Scalars, n);

    const GroupAction scalars(n, scalar_gens);
    const auto scalars_report =
        orbit_partition(scalars, ActionKind::Point, opts.cap, true);
    suite.add("scalars." + std::to_string(n),
              phi_divides_all(scalars_report, phi),
              "phi = " + std::to_string(phi));

    const GroupAction full(n, standard_generators(SubgroupKind::Full, n));
    const auto full_report = orbit_partition(full, ActionKind::Point, opts.cap, true);
    suite.add("full." + std::to_string(n), phi_divides_all(full_report, phi),
              "phi = " + std::to_string(phi));

    std::mt19937_64 rng(opts.seed ^ (0x9e3779b97f4a7c15ULL * n));
    bool all_ok = true;
    std::string first_fail;
    for (std::uint32_t trial = 0; trial < opts.scalar_div_random_groups; ++trial) {
      std::vector<Mat2> gens = scalar_gens;
      const std::uint32_t extra = 1 + static_cast<std::uint32_t>(rng() % 2);
      for (std::uint32_t j = 0; j < extra; ++j) gens.push_back(random_invertible(rng, n));
      const GroupAction action(n, std::move(gens));
      const auto report = orbit_partition(action, ActionKind::Point, opts.cap, true);
      if (!phi_divides_all(report, phi)) {
        all_ok = false;
        first_fail = "trial " + std::to_string(trial);
        break;
      }
    }
    suite.add("random_supergroups." + std::to_string(n), all_ok, first_fail);
  }
  return suite;
}

SuiteResult cert_replay_suite(const SuiteOptions& opts) {
  SuiteResult suite;
  suite.name = suite_name_string(SuiteName::CertReplay);

  std::vector<Rational> epsilons = opts.cert_epsilons;
  if (epsilons.empty())
    epsilons = {Rational(2, 5), Rational(1, 4), Rational(1, 10), Rational(1, 20)};

  for (const auto& eps : epsilons) {
    const std::string tag = rat_str(eps);
    try {
      const auto b = phi_lower_constant(eps / 20, opts.phi_scan_limit);
      const auto cert = synthesize_certificate(eps, b);

      // Z is the smallest integer whose defining condition holds.
      const bool z_min = z_condition_holds(cert.Z, eps) &&
                         !z_condition_holds(cert.Z - 1, eps);
      suite.add("z_selection." + tag, z_min, "Z = " + cert.Z.str());

      const auto mismatches = replay_certificate(cert);
      suite.add("trace_replay." + tag, mismatches.empty(),
                mismatches.empty() ? "all steps replay"
                                   : "first mismatch: " + mismatches.front());

      const auto at1 = evaluate_bound(cert, 1);
      const auto at2 = evaluate_bound(cert, 2);
      const auto at3 = evaluate_bound(cert, 3);
      suite.add("evaluate_identity_at_1." + tag,
                at1.exp_bound == cert.c_exp && at1.order_bound == cert.c_order, "");
      suite.add("evaluate_monotone." + tag,
                at1.exp_bound < at2.exp_bound && at2.exp_bound < at3.exp_bound &&
                    at1.order_bound < at2.order_bound && at2.order_bound < at3.order_bound,
                "");
      suite.add("exponents." + tag,
                cert.exp_exponent == Rational(4) + eps &&
                    cert.order_exponent == Rational(5) + eps,
                "exp " + rat_str(cert.exp_exponent) + ", order " +
                    rat_str(cert.order_exponent));
      suite.add("constant_positivity." + tag,
                cert.c1.log2() > 1 && cert.c_point.log2() > 0,
                "c1 > 2 and c_point > 1");
    } catch (const std::exception& e) {
      suite.add("synthesis." + tag, false, e.what());
    }
  }
  return suite;
}

}  // namespace

void SuiteResult::add(std::string id, bool ok, std::string detail) {
  pass = pass && ok;
  properties.push_back({std::move(id), ok, std::move(detail)});
}

std::size_t SuiteResult::failures() const {
  return static_cast<std::size_t>(
      std::count_if(properties.begin(), properties.end(),
                    [](const PropertyResult& p) { return !p.pass; }));
}

std::string suite_name_string(SuiteName name) {
  switch (name) {
    case SuiteName::GroupOrders: return "GROUP_ORDERS";
    case SuiteName::ScalarDiv: return "SCALAR_DIV";
    case SuiteName::CartanDeg: return "CARTAN_DEG";
    case SuiteName::CertReplay: return "CERT_REPLAY";
    case SuiteName::All: return "ALL";
  }
  return "?";
}

std::optional<SuiteName> suite_from_name(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (up == "GROUP_ORDERS") return SuiteName::GroupOrders;
  if (up == "SCALAR_DIV") return SuiteName::ScalarDiv;
  if (up == "CARTAN_DEG") return SuiteName::CartanDeg;
  if (up == "CERT_REPLAY") return SuiteName::CertReplay;
  if (up == "ALL") return SuiteName::All;
  return std::nullopt;
}

SuiteResult run_suite(SuiteName name, const SuiteOptions& opts) {
  const auto start = Clock::now();
  SuiteResult result;
  switch (name) {
    case SuiteName::GroupOrders: result = group_orders_suite(opts); break;
    case SuiteName::CartanDeg: result = cartan_deg_suite(opts); break;
    case SuiteName::ScalarDiv: result = scalar_div_suite(opts); break;
    case SuiteName::CertReplay: result = cert_replay_suite(opts); break;
    case SuiteName::All:
      throw std::invalid_argument("run_suite: use run_all_suites for ALL");
  }
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

std::vector<SuiteResult> run_all_suites(const SuiteOptions& opts) {
  return {run_suite(SuiteName::GroupOrders, opts), run_suite(SuiteName::CartanDeg, opts),
          run_suite(SuiteName::ScalarDiv, opts), run_suite(SuiteName::CertReplay, opts)};
}

}  // namespace torbound
