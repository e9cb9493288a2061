#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torbound/arith.hpp"
#include "torbound/log2value.hpp"

namespace torbound {

struct TraceStep {
  std::string id;  // formula identifier, e.g. "headline.Z_SELECT"
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string output;
};

// One instantiation of the order-bound machinery at a working epsilon:
// Z (smallest integer with log_{Z/24} 24 < eps), a prime count at Z, and the
// constants derived from them.
struct CertificateLayer {
  std::string name;
  Rational epsilon;
  BigInt Z;
  BigInt pi_Z;
  bool pi_exact = false;
  Log2Value c1;                        // 2^(1 + log_{Z/24} 24) * 24^pi_Z
  Log2Value c_point;                   // (c1 / b)^(1/(2 - eps))
  std::optional<Log2Value> c_cyclic;   // c_point^(1/(1/2 - eps))
};

// A machine-checkable record of every synthesized constant, with the full
// derivation trace. All real constants are directed-rounded upward, so the
// certificate never claims a smaller bound than the recipe justifies.
struct BoundCertificate {
  int schema_version = 1;
  Rational epsilon;

  // Headline constants at the input epsilon.
  BigInt Z;
  BigInt pi_Z;
  bool pi_z_exact = false;
  Log2Value c1;
  Rational b;            // phi lower-bound grid constant
  Rational b_epsilon;    // epsilon the constant b is certified at
  std::uint64_t b_scan_limit = 0;
  bool b_tail_certified = false;
  Log2Value c_point;
  std::optional<Log2Value> c_cyclic;  // present only when epsilon < 1/10

  // Assembled degree-bound constants: exp order bound uses exponent
  // 4 + epsilon, group order bound 5 + epsilon.
  Log2Value c_exp;
  Rational exp_exponent;
  Log2Value c_order;
  Rational order_exponent;
  // True while the square-root ingredient constant defaults to 1 (its real
  // value needs an externally supplied index-valuation table).
  bool finite_support_conditional = true;

  std::vector<CertificateLayer> layers;
  std::vector<TraceStep> trace;
};

// The smallest integer strictly greater than 24^(1 + 1/eps).
BigInt select_z(const Rational& epsilon);

// Exact form of the defining condition log_{Z/24}(24) < eps:
// 24^(p+q) < Z^p for eps = p/q in lowest terms (requires Z > 24).
bool z_condition_holds(const BigInt& z, const Rational& epsilon);

// Builds the certificate. Requires 0 < eps < 1/2 and b_source certified at
// an epsilon <= eps/20 (the deepest inner layer's working epsilon); throws
// std::domain_error otherwise.
BoundCertificate synthesize_certificate(const Rational& epsilon,
                                        const PhiBoundConstant& b_source);

struct EvaluatedBound {
  Log2Value exp_bound;    // c_exp * d^(4 + eps)
  Log2Value order_bound;  // c_order * d^(5 + eps)
};

EvaluatedBound evaluate_bound(const BoundCertificate& cert, std::uint64_t degree);

// Re-runs every trace step from its recorded inputs. Returns the ids of
// steps whose outputs disagree; empty means the certificate replays exactly.
// Steps that re-run a scan (the b constant) are included unless
// skip_expensive is set.
std::vector<std::string> replay_certificate(const BoundCertificate& cert,
                                            bool skip_expensive = false);

std::string certificate_to_json(const BoundCertificate& cert, int indent = 2);
BoundCertificate certificate_from_json(const std::string& json_text);

}  // namespace torbound
