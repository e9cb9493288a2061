#include "torbound/audit.hpp"

#include <algorithm>

namespace torbound {

namespace {

// N <= 2^bound_log2, decided through the directed-rounded logarithm: the
// upward-rounded log2 of N is compared against the certificate's stored
// (already upward-rounded) bound.
bool within_bound(const BigInt& value, const Rational& bound_log2) {
  if (value <= 0) return true;
  return log2_up(value) <= bound_log2;
}

std::string approx(const Rational& log2_bound) {
  return Log2Value(log2_bound).approx_decimal();
}

}  // namespace

std::string rule_verdict_name(RuleVerdict v) {
  switch (v) {
    case RuleVerdict::Pass: return "PASS";
    case RuleVerdict::Fail: return "FAIL";
    case RuleVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

bool AuditReport::any_fail() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const RuleResult& r) { return r.verdict == RuleVerdict::Fail; });
}

std::vector<AuditReport> audit(std::span<const CurveRecord> records,
                               const BoundCertificate& cert,
                               std::uint64_t threshold,
                               const std::optional<AraiConfig>& arai) {
  std::vector<AuditReport> reports;
  reports.reserve(records.size());

  for (const auto& rec : records) {
    AuditReport report;
    report.record_id = rec.id;
    const bool member = rec.isogeny_degree >= 1;

    // RULE_DIV: each l^k || torsion_N with l > threshold forces its
    // divisor into the field degree.
    {
      RuleResult r{"RULE_DIV", RuleVerdict::Pass, "no prime above threshold divides torsion_N"};
      if (!member) {
        r.verdict = RuleVerdict::Inconclusive;
        r.detail = "isogeny_degree = 0: record does not assert family membership";
      } else {
        const FactoredInt n = factorize(rec.torsion_N);
        for (const auto& pp : n.factors) {
          if (pp.prime <= threshold) continue;
          std::uint32_t r_val = 0;
          for (std::uint64_t iso = rec.isogeny_degree; iso % pp.prime == 0; iso /= pp.prime)
            ++r_val;
          const auto req =
              divisibility_requirement(pp.prime, pp.exponent, r_val, threshold);
          if (BigInt(rec.field_degree) % req.required_divisor != 0) {
            r.verdict = RuleVerdict::Fail;
            r.detail = "required divisor " + req.required_divisor.str() + " (l = " +
                       std::to_string(pp.prime) + ", k = " + std::to_string(pp.exponent) +
                       ", r = " + std::to_string(r_val) + ") does not divide field_degree " +
                       std::to_string(rec.field_degree);
            break;
          }
          r.detail = "all large-prime requirements divide field_degree";
        }
      }
      report.checks.push_back(std::move(r));
    }

    // RULE_WEIL: full torsion_d-torsion puts a primitive root of unity in
    // the field, for any elliptic curve; always definitive.
    {
      RuleResult r{"RULE_WEIL", RuleVerdict::Pass, ""};
      const std::uint64_t phi_d = euler_phi(factorize(rec.torsion_d));
      if (rec.field_degree % phi_d == 0) {
        r.detail = "phi(" + std::to_string(rec.torsion_d) + ") = " + std::to_string(phi_d) +
                   " divides field_degree " + std::to_string(rec.field_degree);
      } else {
        r.verdict = RuleVerdict::Fail;
        r.detail = "phi(" + std::to_string(rec.torsion_d) + ") = " + std::to_string(phi_d) +
                   " does not divide field_degree " + std::to_string(rec.field_degree);
      }
      report.checks.push_back(std::move(r));
    }

    const auto bounds = evaluate_bound(cert, rec.field_degree);

    // RULE_EXP: torsion_N <= c_exp * d^(4+eps).
    {
      RuleResult r{"RULE_EXP", RuleVerdict::Pass, ""};
      if (!member) {
        r.verdict = RuleVerdict::Inconclusive;
        r.detail = "isogeny_degree = 0: record does not assert family membership";
      } else if (within_bound(BigInt(rec.torsion_N), bounds.exp_bound.log2())) {
        r.detail = "torsion_N = " + std::to_string(rec.torsion_N) +
                   " <= " + approx(bounds.exp_bound.log2());
      } else {
        r.verdict = RuleVerdict::Fail;
        r.detail = "torsion_N = " + std::to_string(rec.torsion_N) + " exceeds bound " +
                   approx(bounds.exp_bound.log2());
      }
      report.checks.push_back(std::move(r));
    }

    // RULE_ORDER: torsion_d * torsion_N <= c_order * d^(5+eps).
    {
      RuleResult r{"RULE_ORDER", RuleVerdict::Pass, ""};
      const BigInt order = BigInt(rec.torsion_d) * rec.torsion_N;
      if (!member) {
        r.verdict = RuleVerdict::Inconclusive;
        r.detail = "isogeny_degree = 0: record does not assert family membership";
      } else if (within_bound(order, bounds.order_bound.log2())) {
        r.detail = "group order " + order.str() + " <= " + approx(bounds.order_bound.log2());
      } else {
        r.verdict = RuleVerdict::Fail;
        r.detail = "group order " + order.str() + " exceeds bound " +
                   approx(bounds.order_bound.log2());
      }
      report.checks.push_back(std::move(r));
    }

    // RULE_FINITE_SUPPORT (only when a table is supplied): the n^2 cap from
    // the index-valuation constants.
    if (arai) {
      RuleResult r{"RULE_FINITE_SUPPORT", RuleVerdict::Pass, ""};
      if (!member) {
        r.verdict = RuleVerdict::Inconclusive;
        r.detail = "isogeny_degree = 0: record does not assert family membership";
      } else if (rec.j_degree != arai->d0) {
        r.verdict = RuleVerdict::Inconclusive;
        r.detail = "table is for d0 = " + std::to_string(arai->d0) +
                   ", record has j_degree " + std::to_string(rec.j_degree);
      } else {
        try {
          const auto v = finite_support_bound(factorize(rec.torsion_N), rec.j_degree,
                                              *arai, rec.field_degree);
          r.verdict = v.pass ? RuleVerdict::Pass : RuleVerdict::Fail;
          r.detail = "torsion_N = " + std::to_string(rec.torsion_N) +
                     " against cap " + v.cap.str();
        } catch (const std::invalid_argument& e) {
          r.verdict = RuleVerdict::Inconclusive;
          r.detail = e.what();
        }
      }
      report.checks.push_back(std::move(r));
    }

    reports.push_back(std::move(report));
  }

  std::sort(reports.begin(), reports.end(),
            [](const AuditReport& a, const AuditReport& b) {
              return a.record_id < b.record_id;
            });
  return reports;
}

}  // namespace torbound
