#pragma once

#include <span>
#include <string>
#include <vector>

#include "torbound/bounds.hpp"
#include "torbound/certificate.hpp"
#include "torbound/dataset.hpp"

namespace torbound {

enum class RuleVerdict { Pass, Fail, Inconclusive };

std::string rule_verdict_name(RuleVerdict v);

struct RuleResult {
  std::string rule_id;
  RuleVerdict verdict = RuleVerdict::Pass;
  std::string detail;  // a FAIL carries both evaluated sides
};

struct AuditReport {
  std::string record_id;
  std::vector<RuleResult> checks;

  bool any_fail() const;
};

// Audits each record against the necessary conditions the certificate and
// the divisibility theory impose:
//   RULE_DIV   - every l^k || torsion_N with l > threshold must force
//                (1/2) phi(l^k) l^max(r-1,0) (l+1) | field_degree, with r the
//                l-valuation of isogeny_degree;
//   RULE_WEIL  - phi(torsion_d) | field_degree (full d-torsion puts a
//                primitive d-th root of unity in the field);
//   RULE_EXP   - torsion_N <= c_exp * d^(4+eps);
//   RULE_ORDER - torsion_d * torsion_N <= c_order * d^(5+eps).
// Records with isogeny_degree = 0 do not assert membership in the family,
// so the membership-dependent rules report INCONCLUSIVE for them. Reports
// come back sorted by record id.
//
// When an Arai table is supplied, an additional RULE_FINITE_SUPPORT check
// evaluates the n^2 divisibility cap for records whose j_degree matches the
// table's d0 (others are INCONCLUSIVE: the constants depend on d0).
std::vector<AuditReport> audit(std::span<const CurveRecord> records,
                               const BoundCertificate& cert,
                               std::uint64_t threshold = kDefaultPrimeThreshold,
                               const std::optional<AraiConfig>& arai = std::nullopt);

}  // namespace torbound
