#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torbound/certificate.hpp"
#include "torbound/gl2.hpp"

namespace torbound {

enum class SuiteName { GroupOrders, ScalarDiv, CartanDeg, CertReplay, All };

std::string suite_name_string(SuiteName name);
std::optional<SuiteName> suite_from_name(std::string_view name);

struct PropertyResult {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::vector<PropertyResult> properties;
  double seconds = 0.0;

  void add(std::string id, bool ok, std::string detail = {});
  std::size_t failures() const;
};

struct SuiteOptions {
  std::uint64_t cap = kDefaultEnumerationCap;
  std::uint64_t seed = 0x7024ULL;
  // SCALAR_DIV sweep: all levels n in [2, max_level], this many random
  // scalar-containing generated subgroups per level.
  std::uint32_t scalar_div_max_level = 60;
  std::uint32_t scalar_div_random_groups = 100;
  // CERT_REPLAY epsilons; empty means the default {2/5, 1/4, 1/10, 1/20}.
  std::vector<Rational> cert_epsilons;
  std::uint64_t phi_scan_limit = 1'000'000;
  std::vector<std::uint32_t> cartan_levels = {41, 43, 47, 53};
};

SuiteResult run_suite(SuiteName name, const SuiteOptions& opts = {});
// Runs every suite (the ALL entry point); order: GROUP_ORDERS, CARTAN_DEG,
// SCALAR_DIV, CERT_REPLAY.
std::vector<SuiteResult> run_all_suites(const SuiteOptions& opts = {});

}  // namespace torbound
