// torbound: exact GL2(Z/nZ) subgroup and orbit computations, divisibility
// requirements, and epsilon-indexed torsion bound certificates.
//
// Exit codes: 0 success, 1 property/audit failure, 2 usage error,
// 3 I/O or schema error.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "torbound/audit.hpp"
#include "torbound/bounds.hpp"
#include "torbound/certificate.hpp"
#include "torbound/dataset.hpp"
#include "torbound/orbits.hpp"
#include "torbound/verify.hpp"

namespace {

using nlohmann::json;
using namespace torbound;

constexpr int kReportSchemaVersion = 1;

struct GlobalOptions {
  bool as_json = false;
  bool no_timestamp = false;
  std::uint64_t cap = kDefaultEnumerationCap;
  std::uint64_t threshold = kDefaultPrimeThreshold;
};

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json report_shell(const GlobalOptions& g, const std::string& kind) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["report"] = kind;
  if (!g.no_timestamp) j["generated_at"] = timestamp_now();
  return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int run_group(const GlobalOptions& g, const std::string& kind_name, std::uint32_t n) {
  const auto kind = subgroup_kind_from_name(kind_name);
  if (!kind) {
    std::cerr << "unknown subgroup kind: " << kind_name << "\n";
    return 2;
  }
  const auto group = standard_subgroup(*kind, n, g.cap);
  const bool scalars = contains_scalars(group);
  const std::uint64_t index = subgroup_index(group);

  if (g.as_json) {
    json j = report_shell(g, "group");
    j["kind"] = subgroup_kind_name(*kind);
    j["modulus"] = n;
    j["order"] = group.order();
    j["index_in_gl2"] = index;
    j["contains_scalars"] = scalars;
    j["gl2_order"] = gl2_order(factorize(n));
    j["generators"] = json::array();
    for (const auto& m : group.generators())
      j["generators"].push_back({m.e[0], m.e[1], m.e[2], m.e[3]});
    emit(j);
  } else {
    std::cout << subgroup_kind_name(*kind) << "(" << n << ")\n"
              << "  order            " << group.order() << "\n"
              << "  index in GL2     " << index << "\n"
              << "  contains scalars " << (scalars ? "yes" : "no") << "\n"
              << "  #GL2(Z/" << n << "Z)    " << gl2_order(factorize(n)) << "\n";
  }
  return 0;
}

int run_orbit(const GlobalOptions& g, const std::string& kind_name, std::uint32_t n,
              bool subgroups) {
  const auto kind = subgroup_kind_from_name(kind_name);
  if (!kind) {
    std::cerr << "unknown subgroup kind: " << kind_name << "\n";
    return 2;
  }
  const auto group = standard_subgroup(*kind, n, g.cap);
  const auto report = orbit_partition(
      group, subgroups ? ActionKind::Subgroup : ActionKind::Point, g.cap);

  if (g.as_json) {
    json j = report_shell(g, "orbit");
    j["kind"] = subgroup_kind_name(*kind);
    j["modulus"] = n;
    j["action"] = subgroups ? "SUBGROUP" : "POINT";
    j["group_order"] = group.order();
    j["total_points"] = report.total_points;
    j["orbit_count"] = report.orbit_count();
    json sizes = json::array();
    for (const auto& [size, count] : report.orbit_sizes)
      sizes.push_back({{"size", size}, {"count", count}});
    j["orbit_sizes"] = sizes;
    json checks = json::array();
    for (const auto& c : report.checks)
      checks.push_back({{"id", c.statement_id}, {"pass", c.pass}, {"detail", c.detail}});
    j["divisibility_checks"] = checks;
    emit(j);
  } else {
    std::cout << subgroup_kind_name(*kind) << "(" << n << ") acting on "
              << (subgroups ? "cyclic order-n subgroups" : "exact order-n points") << "\n"
              << "  group order  " << group.order() << "\n"
              << "  total acted  " << report.total_points << "\n"
              << "  orbits       " << report.orbit_count() << "\n";
    for (const auto& [size, count] : report.orbit_sizes)
      std::cout << "    " << count << " orbit(s) of size " << size << "\n";
    for (const auto& c : report.checks)
      std::cout << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.statement_id << ": "
                << c.detail << "\n";
  }
  for (const auto& c : report.checks)
    if (!c.pass) return 1;
  return 0;
}

json suite_to_json(const SuiteResult& s) {
  json j;
  j["suite"] = s.name;
  j["pass"] = s.pass;
  j["seconds"] = s.seconds;
  j["properties"] = json::array();
  for (const auto& p : s.properties)
    j["properties"].push_back({{"id", p.id}, {"pass", p.pass}, {"detail", p.detail}});
  return j;
}

void print_suite(const SuiteResult& s, bool verbose) {
  std::cout << (s.pass ? "[PASS] " : "[FAIL] ") << s.name << " (" << s.properties.size()
            << " properties, " << s.failures() << " failures, " << s.seconds << "s)\n";
  for (const auto& p : s.properties)
    if (!p.pass || verbose)
      std::cout << "  [" << (p.pass ? "ok" : "FAIL") << "] " << p.id
                << (p.detail.empty() ? "" : ": " + p.detail) << "\n";
}

int run_verify(const GlobalOptions& g, const std::string& suite_name,
               const SuiteOptions& opts, bool verbose) {
  const auto name = suite_from_name(suite_name);
  if (!name) {
    std::cerr << "unknown suite: " << suite_name
              << " (want GROUP_ORDERS, SCALAR_DIV, CARTAN_DEG, CERT_REPLAY or ALL)\n";
    return 2;
  }
  std::vector<SuiteResult> results;
  if (*name == SuiteName::All)
    results = run_all_suites(opts);
  else
    results.push_back(run_suite(*name, opts));

  bool all_pass = true;
  if (g.as_json) {
    json j = report_shell(g, "verify");
    j["suites"] = json::array();
    for (const auto& s : results) {
      j["suites"].push_back(suite_to_json(s));
      all_pass = all_pass && s.pass;
    }
    j["pass"] = all_pass;
    emit(j);
  } else {
    for (const auto& s : results) {
      print_suite(s, verbose);
      all_pass = all_pass && s.pass;
    }
  }
  return all_pass ? 0 : 1;
}

int run_bound(const GlobalOptions& g, const std::string& epsilon_text,
              const std::string& emit_path, std::uint64_t scan_limit,
              const std::vector<std::uint64_t>& eval_degrees) {
  Rational eps;
  try {
    eps = parse_decimal(epsilon_text);
  } catch (const std::exception& e) {
    std::cerr << "bad --epsilon: " << e.what() << "\n";
    return 2;
  }
  const auto b = phi_lower_constant(eps / 20, scan_limit);
  const auto cert = synthesize_certificate(eps, b);

  if (!emit_path.empty()) {
    std::ofstream out(emit_path);
    if (!out) {
      std::cerr << "cannot write " << emit_path << "\n";
      return 3;
    }
    out << certificate_to_json(cert) << "\n";
  }

  if (g.as_json) {
    json j = report_shell(g, "bound");
    j["certificate"] = json::parse(certificate_to_json(cert));
    json evals = json::array();
    for (auto d : eval_degrees) {
      const auto e = evaluate_bound(cert, d);
      evals.push_back({{"degree", d},
                       {"exp_bound", e.exp_bound.approx_decimal()},
                       {"order_bound", e.order_bound.approx_decimal()}});
    }
    j["evaluations"] = evals;
    emit(j);
  } else {
    std::cout << "certificate for epsilon = " << rational_to_string(cert.epsilon) << "\n"
              << "  Z          " << cert.Z.str() << "\n"
              << "  pi(Z)      " << cert.pi_Z.str()
              << (cert.pi_z_exact ? " (exact)" : " (certified upper bound)") << "\n"
              << "  b          " << rational_to_string(cert.b) << " at epsilon_b = "
              << rational_to_string(cert.b_epsilon) << "\n"
              << "  c1         " << cert.c1.approx_decimal() << "\n"
              << "  c_point    " << cert.c_point.approx_decimal() << "\n";
    if (cert.c_cyclic)
      std::cout << "  c_cyclic   " << cert.c_cyclic->approx_decimal() << "\n";
    std::cout << "  c_exp      " << cert.c_exp.approx_decimal() << "  (exponent "
              << rational_to_string(cert.exp_exponent) << ")\n"
              << "  c_order    " << cert.c_order.approx_decimal() << "  (exponent "
              << rational_to_string(cert.order_exponent) << ")\n"
              << "  trace      " << cert.trace.size() << " steps\n";
    for (auto d : eval_degrees) {
      const auto e = evaluate_bound(cert, d);
      std::cout << "  at degree " << d << ": exp <= " << e.exp_bound.approx_decimal()
                << ", order <= " << e.order_bound.approx_decimal() << "\n";
    }
    if (!emit_path.empty()) std::cout << "  written to " << emit_path << "\n";
  }
  return 0;
}

int run_audit(const GlobalOptions& g, const std::string& dataset_path,
              const std::string& cert_path, const std::string& arai_path) {
  DatasetParseResult parsed;
  BoundCertificate cert;
  try {
    parsed = parse_dataset(dataset_path);
    std::ifstream in(cert_path);
    if (!in) throw std::runtime_error("cannot open certificate: " + cert_path);
    std::stringstream ss;
    ss << in.rdbuf();
    cert = certificate_from_json(ss.str());
  } catch (const std::exception& e) {
    std::cerr << "audit: " << e.what() << "\n";
    return 3;
  }
  if (!parsed.ok()) {
    for (const auto& issue : parsed.issues)
      std::cerr << dataset_path << ":" << issue.line << ": " << issue.message << "\n";
    return 3;
  }

  std::optional<AraiConfig> arai;
  if (!arai_path.empty()) {
    try {
      std::ifstream in(arai_path);
      if (!in) throw std::runtime_error("cannot open arai table: " + arai_path);
      json j = json::parse(in);
      AraiConfig cfg;
      cfg.d0 = j.at("d0").get<std::uint64_t>();
      if (j.contains("default_a")) cfg.default_a = j["default_a"].get<std::uint32_t>();
      if (j.contains("provenance")) cfg.provenance = j["provenance"].get<std::string>();
      for (auto it = j.at("entries").begin(); it != j.at("entries").end(); ++it)
        cfg.entries[std::stoull(it.key())] = it.value().get<std::uint32_t>();
      arai = std::move(cfg);
    } catch (const std::exception& e) {
      std::cerr << "audit: " << e.what() << "\n";
      return 3;
    }
  }

  const auto reports = audit(parsed.records, cert, g.threshold, arai);
  bool any_fail = false;
  if (g.as_json) {
    json j = report_shell(g, "audit");
    j["dataset"] = dataset_path;
    j["records"] = reports.size();
    j["reports"] = json::array();
    for (const auto& r : reports) {
      json checks = json::array();
      for (const auto& c : r.checks)
        checks.push_back({{"rule", c.rule_id},
                          {"verdict", rule_verdict_name(c.verdict)},
                          {"detail", c.detail}});
      j["reports"].push_back({{"id", r.record_id}, {"checks", checks}});
      any_fail = any_fail || r.any_fail();
    }
    j["any_fail"] = any_fail;
    emit(j);
  } else {
    for (const auto& r : reports) {
      any_fail = any_fail || r.any_fail();
      std::cout << r.record_id << ":";
      for (const auto& c : r.checks)
        std::cout << " " << c.rule_id << "=" << rule_verdict_name(c.verdict);
      std::cout << "\n";
      for (const auto& c : r.checks)
        if (c.verdict == RuleVerdict::Fail)
          std::cout << "    " << c.rule_id << ": " << c.detail << "\n";
    }
    std::cout << (any_fail ? "FAIL" : "PASS") << " (" << reports.size() << " records)\n";
  }
  return any_fail ? 1 : 0;
}

int run_admissible(const GlobalOptions& g, std::uint64_t degree) {
  const auto list = admissible_large_torsion(degree, g.threshold);
  if (g.as_json) {
    json j = report_shell(g, "admissible");
    j["degree"] = degree;
    j["threshold"] = g.threshold;
    j["admissible"] = json::array();
    for (const auto& [l, k] : list)
      j["admissible"].push_back({{"l", l}, {"k_max", k}});
    emit(j);
  } else {
    std::cout << "degree " << degree << ": ";
    if (list.empty()) {
      std::cout << "no prime order above " << g.threshold << " is admissible\n";
    } else {
      for (const auto& [l, k] : list) std::cout << "(" << l << ", k<=" << k << ") ";
      std::cout << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact GL2(Z/nZ) engine and polynomial torsion bound certificates"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_flag("--json", g.as_json, "machine-readable JSON output");
  app.add_flag("--no-timestamp", g.no_timestamp, "omit the generated_at field from reports");
  app.add_option("--cap", g.cap, "enumeration cap (elements)");
  app.add_option("--threshold", g.threshold, "prime threshold T (default 37)");

  std::string kind_name;
  std::uint32_t modulus = 0;
  auto* group_cmd = app.add_subcommand("group", "inspect a named subgroup of GL2(Z/nZ)");
  group_cmd->add_option("kind", kind_name,
                        "FULL | SL2 | BOREL0 | BOREL1 | CARTAN_NS_PLUS | SCALARS")
      ->required();
  group_cmd->add_option("n", modulus, "modulus")->required();

  bool orbit_subgroups = false;
  auto* orbit_cmd = app.add_subcommand("orbit", "orbit partition of a named subgroup");
  orbit_cmd->add_option("kind", kind_name, "subgroup kind")->required();
  orbit_cmd->add_option("n", modulus, "modulus")->required();
  orbit_cmd->add_flag("--subgroups", orbit_subgroups,
                      "act on cyclic order-n subgroups instead of points");

  std::string suite_name;
  SuiteOptions suite_opts;
  bool verify_verbose = false;
  std::vector<std::string> suite_epsilons;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("suite", suite_name,
                         "GROUP_ORDERS | SCALAR_DIV | CARTAN_DEG | CERT_REPLAY | ALL")
      ->required();
  verify_cmd->add_option("--seed", suite_opts.seed, "seed for randomized properties");
  verify_cmd->add_option("--max-level", suite_opts.scalar_div_max_level,
                         "largest level for the SCALAR_DIV sweep");
  verify_cmd->add_option("--random-groups", suite_opts.scalar_div_random_groups,
                         "random scalar-containing groups per level");
  verify_cmd->add_option("--scan-limit", suite_opts.phi_scan_limit,
                         "phi lower-bound scan limit");
  verify_cmd->add_option("--epsilon", suite_epsilons, "CERT_REPLAY epsilons (repeatable)");
  verify_cmd->add_flag("-v,--verbose", verify_verbose, "print passing properties too");

  std::string epsilon_text, emit_path;
  std::uint64_t bound_scan_limit = 1'000'000;
  std::vector<std::uint64_t> eval_degrees;
  auto* bound_cmd = app.add_subcommand("bound", "synthesize a bound certificate");
  bound_cmd->add_option("--epsilon", epsilon_text, "epsilon in (0, 1/2), e.g. 0.25")
      ->required();
  bound_cmd->add_option("--emit", emit_path, "write the certificate JSON here");
  bound_cmd->add_option("--scan-limit", bound_scan_limit, "phi lower-bound scan limit");
  bound_cmd->add_option("--evaluate", eval_degrees, "evaluate the bound at these degrees");

  std::string dataset_path, cert_path, arai_path;
  auto* audit_cmd = app.add_subcommand("audit", "audit a dataset against a certificate");
  audit_cmd->add_option("dataset", dataset_path, "CSV or JSON-lines dataset")->required();
  audit_cmd->add_option("--cert", cert_path, "certificate JSON")->required();
  audit_cmd->add_option("--arai", arai_path, "Arai-constant table JSON");

  std::uint64_t degree = 0;
  auto* adm_cmd = app.add_subcommand("admissible", "large prime orders admissible at a degree");
  adm_cmd->add_option("--degree", degree, "field degree d")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  suite_opts.cap = g.cap;
  for (const auto& s : suite_epsilons) suite_opts.cert_epsilons.push_back(parse_decimal(s));

  try {
    if (group_cmd->parsed()) return run_group(g, kind_name, modulus);
    if (orbit_cmd->parsed()) return run_orbit(g, kind_name, modulus, orbit_subgroups);
    if (verify_cmd->parsed()) return run_verify(g, suite_name, suite_opts, verify_verbose);
    if (bound_cmd->parsed())
      return run_bound(g, epsilon_text, emit_path, bound_scan_limit, eval_degrees);
    if (audit_cmd->parsed()) return run_audit(g, dataset_path, cert_path, arai_path);
    if (adm_cmd->parsed()) return run_admissible(g, degree);
  } catch (const EnumerationCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
