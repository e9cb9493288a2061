#include "torbound/certificate.hpp"

#include <stdexcept>

namespace torbound {

namespace mp = boost::multiprecision;

namespace {

const Rational& log2_24_up() {
  static const Rational v = log2_up(BigInt(24));
  return v;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

Rational parse_rat(const std::string& s) { return rational_from_string(s); }

// Shared by synthesis and replay so the two paths cannot drift apart.
Rational c1_log2_formula(const Rational& lambda, const BigInt& pi_z) {
  return quantize_up(Rational(1) + lambda + Rational(pi_z) * log2_24_up());
}

Rational c_point_log2_formula(const Rational& c1_log2, const Rational& b,
                              const Rational& eps) {
  return quantize_up((c1_log2 - log2_down(b)) / (Rational(2) - eps));
}

Rational c_cyclic_log2_formula(const Rational& c_point_log2, const Rational& eps) {
  return quantize_up(c_point_log2 / (Rational(1, 2) - eps));
}

Rational weil_log2_formula(const Rational& b, const Rational& eps) {
  // B = (1/b)^(1/(1 - eps_w)) with eps_w = eps/(2+eps), so the exponent is
  // exactly (2+eps)/2.
  return quantize_up(-log2_down(b) * (Rational(2) + eps) / 2);
}

struct LayerBuilder {
  const Rational& b;
  std::vector<TraceStep>& trace;

  CertificateLayer build(const std::string& name, const Rational& eps,
                         bool want_cyclic) {
    CertificateLayer layer;
    layer.name = name;
    layer.epsilon = eps;

    layer.Z = select_z(eps);
    trace.push_back({name + ".Z_SELECT",
                     {{"epsilon", rational_to_string(eps)}},
                     layer.Z.str()});
    if (!z_condition_holds(layer.Z, eps))
      throw std::logic_error("certificate: selected Z fails its defining condition");
    trace.push_back({name + ".Z_CONDITION",
                     {{"epsilon", rational_to_string(eps)}, {"Z", layer.Z.str()}},
                     "true"});

    if (layer.Z <= kPrimePiExactLimit) {
      layer.pi_Z = prime_pi(layer.Z.convert_to<std::uint64_t>());
      layer.pi_exact = true;
    } else {
      layer.pi_Z = prime_pi_upper_bound(layer.Z);
      layer.pi_exact = false;
    }
    trace.push_back({name + ".PI_Z",
                     {{"Z", layer.Z.str()},
                      {"method", layer.pi_exact ? "exact_sieve" : "dusart_upper"}},
                     layer.pi_Z.str()});

    const Rational lambda = log_ratio_up(Rational(24), Rational(layer.Z, 24));
    trace.push_back({name + ".LAMBDA", {{"Z", layer.Z.str()}}, rational_to_string(lambda)});

    const Rational c1 = c1_log2_formula(lambda, layer.pi_Z);
    layer.c1 = Log2Value(c1);
    trace.push_back({name + ".C1",
                     {{"lambda", rational_to_string(lambda)}, {"pi_Z", layer.pi_Z.str()}},
                     rational_to_string(c1)});

    const Rational cp = c_point_log2_formula(c1, b, eps);
    layer.c_point = Log2Value(cp);
    trace.push_back({name + ".C_POINT",
                     {{"c1_log2", rational_to_string(c1)},
                      {"b", rational_to_string(b)},
                      {"epsilon", rational_to_string(eps)}},
                     rational_to_string(cp)});

    if (want_cyclic) {
      const Rational cc = c_cyclic_log2_formula(cp, eps);
      layer.c_cyclic = Log2Value(cc);
      trace.push_back({name + ".C_CYCLIC",
                       {{"c_point_log2", rational_to_string(cp)},
                        {"epsilon", rational_to_string(eps)}},
                       rational_to_string(cc)});
    }
    return layer;
  }
};

}  // namespace

BigInt select_z(const Rational& epsilon) {
  if (epsilon <= 0) throw std::domain_error("select_z: epsilon must be positive");
  const BigInt p = mp::numerator(epsilon);
  const BigInt q = mp::denominator(epsilon);
  if (p + q > 200'000)
    throw std::domain_error("select_z: epsilon precision beyond supported range");
  // Z > 24^(1 + 1/eps) = 24^((p+q)/p): smallest integer whose p-th power
  // exceeds 24^(p+q).
  const unsigned pe = p.convert_to<unsigned>();
  const unsigned sum = (p + q).convert_to<unsigned>();
  return smallest_integer_above_root(mp::pow(BigInt(24), sum), pe);
}

bool z_condition_holds(const BigInt& z, const Rational& epsilon) {
  if (z <= 24) return false;
  const BigInt p = mp::numerator(epsilon);
  const BigInt q = mp::denominator(epsilon);
  const unsigned pe = p.convert_to<unsigned>();
  const unsigned sum = (p + q).convert_to<unsigned>();
  // log_{Z/24}(24) < p/q  <=>  24^(p+q) < Z^p  (both sides exact integers)
  return mp::pow(BigInt(24), sum) < mp::pow(z, pe);
}

BoundCertificate synthesize_certificate(const Rational& epsilon,
                                        const PhiBoundConstant& b_source) {
  if (epsilon <= 0 || epsilon >= Rational(1, 2))
    throw std::domain_error("synthesize_certificate: epsilon must lie in (0, 1/2)");
  if (b_source.b <= 0 || b_source.b >= 1)
    throw std::domain_error("synthesize_certificate: b must lie in (0, 1)");
  if (!b_source.tail_certified)
    throw std::domain_error("synthesize_certificate: b constant lacks a tail certificate");
  if (b_source.epsilon > epsilon / 20)
    throw std::domain_error(
        "synthesize_certificate: b must be certified at an epsilon <= eps/20");

  BoundCertificate cert;
  cert.epsilon = epsilon;
  cert.b = b_source.b;
  cert.b_epsilon = b_source.epsilon;
  cert.b_scan_limit = b_source.scan_limit;
  cert.b_tail_certified = b_source.tail_certified;

  cert.trace.push_back({"B_SOURCE",
                        {{"epsilon_b", rational_to_string(b_source.epsilon)},
                         {"scan_limit", std::to_string(b_source.scan_limit)}},
                        rational_to_string(b_source.b)});

  LayerBuilder builder{cert.b, cert.trace};

  // Headline layer at the input epsilon; the cyclic constant is only
  // admissible below 1/10.
  CertificateLayer headline = builder.build("headline", epsilon, epsilon < Rational(1, 10));
  cert.Z = headline.Z;
  cert.pi_Z = headline.pi_Z;
  cert.pi_z_exact = headline.pi_exact;
  cert.c1 = headline.c1;
  cert.c_point = headline.c_point;
  cert.c_cyclic = headline.c_cyclic;

  // Exponent-bound assembly: the epsilon budget is split in half between the
  // two epsilon-carrying ingredients, so the reported exponent is 4 + eps.
  // The cyclic ingredient runs at eps/10 (its relaxed exponent 1 + 5*(eps/10)
  // is 1 + eps/2) and the point ingredient at eps/2 (exponent 1/2 + eps/2).
  CertificateLayer exp_point = builder.build("exp.point", epsilon / 2, false);
  CertificateLayer exp_cyclic = builder.build("exp.cyclic", epsilon / 10, true);
  {
    // [K:Q] <= 2[F:Q] doubles the degree in both ingredients.
    const Rational slack = Rational(3, 2) + epsilon;
    const Rational c_exp = exp_point.c_point.log2() +
                           exp_cyclic.c_cyclic->log2() + slack;
    cert.c_exp = Log2Value(c_exp);
    cert.exp_exponent = Rational(4) + epsilon;
    cert.trace.push_back({"C_EXP",
                          {{"point_log2", rational_to_string(exp_point.c_point.log2())},
                           {"cyclic_log2", rational_to_string(exp_cyclic.c_cyclic->log2())},
                           {"epsilon", rational_to_string(epsilon)}},
                          rational_to_string(c_exp)});
    cert.trace.push_back({"EXP_EXPONENT",
                          {{"epsilon", rational_to_string(epsilon)}},
                          rational_to_string(cert.exp_exponent)});
  }

  // Order-bound assembly: exponent machinery re-run at eps/2 plus the Weil
  // diagonal factor at eps_w = eps/(2+eps), totalling 5 + eps.
  CertificateLayer ord_point = builder.build("order.point", epsilon / 4, false);
  CertificateLayer ord_cyclic = builder.build("order.cyclic", epsilon / 20, true);
  {
    const Rational slack = Rational(3, 2) + epsilon / 2;
    const Rational c_exp_half = ord_point.c_point.log2() +
                                ord_cyclic.c_cyclic->log2() + slack;
    cert.trace.push_back({"C_EXP_HALF",
                          {{"point_log2", rational_to_string(ord_point.c_point.log2())},
                           {"cyclic_log2", rational_to_string(ord_cyclic.c_cyclic->log2())},
                           {"epsilon", rational_to_string(epsilon)}},
                          rational_to_string(c_exp_half)});

    const Rational weil = weil_log2_formula(cert.b, epsilon);
    cert.trace.push_back({"WEIL_B",
                          {{"b", rational_to_string(cert.b)},
                           {"epsilon", rational_to_string(epsilon)}},
                          rational_to_string(weil)});

    const Rational c_order = weil + c_exp_half;
    cert.c_order = Log2Value(c_order);
    cert.order_exponent = Rational(5) + epsilon;
    cert.trace.push_back({"C_ORDER",
                          {{"weil_log2", rational_to_string(weil)},
                           {"c_exp_half_log2", rational_to_string(c_exp_half)}},
                          rational_to_string(c_order)});
    cert.trace.push_back({"ORDER_EXPONENT",
                          {{"epsilon", rational_to_string(epsilon)}},
                          rational_to_string(cert.order_exponent)});
  }

  cert.finite_support_conditional = true;
  cert.layers = {std::move(headline), std::move(exp_point), std::move(exp_cyclic),
                 std::move(ord_point), std::move(ord_cyclic)};
  return cert;
}

EvaluatedBound evaluate_bound(const BoundCertificate& cert, std::uint64_t degree) {
  if (degree == 0) throw std::invalid_argument("evaluate_bound: degree must be >= 1");
  const Rational log2_d = log2_up(BigInt(degree));
  EvaluatedBound out;
  out.exp_bound = Log2Value(cert.c_exp.log2() + cert.exp_exponent * log2_d);
  out.order_bound = Log2Value(cert.c_order.log2() + cert.order_exponent * log2_d);
  return out;
}

std::vector<std::string> replay_certificate(const BoundCertificate& cert,
                                            bool skip_expensive) {
  std::vector<std::string> mismatches;

  const auto input = [](const TraceStep& step, const std::string& name) -> std::string {
    for (const auto& [k, v] : step.inputs)
      if (k == name) return v;
    throw std::invalid_argument("trace step " + step.id + " lacks input " + name);
  };

  for (const auto& step : cert.trace) {
    const auto dot = step.id.rfind('.');
    const std::string op = dot == std::string::npos ? step.id : step.id.substr(dot + 1);
    std::string recomputed;

    if (op == "B_SOURCE") {
      if (skip_expensive) continue;
      const auto again = phi_lower_constant(parse_rat(input(step, "epsilon_b")),
                                            std::stoull(input(step, "scan_limit")));
      recomputed = rational_to_string(again.b);
    } else if (op == "Z_SELECT") {
      recomputed = select_z(parse_rat(input(step, "epsilon"))).str();
    } else if (op == "Z_CONDITION") {
      recomputed = bool_str(
          z_condition_holds(BigInt(input(step, "Z")), parse_rat(input(step, "epsilon"))));
    } else if (op == "PI_Z") {
      const BigInt z(input(step, "Z"));
      if (input(step, "method") == "exact_sieve")
        recomputed = BigInt(prime_pi(z.convert_to<std::uint64_t>())).str();
      else
        recomputed = prime_pi_upper_bound(z).str();
    } else if (op == "LAMBDA") {
      const BigInt z(input(step, "Z"));
      recomputed = rational_to_string(log_ratio_up(Rational(24), Rational(z, 24)));
    } else if (op == "C1") {
      recomputed = rational_to_string(
          c1_log2_formula(parse_rat(input(step, "lambda")), BigInt(input(step, "pi_Z"))));
    } else if (op == "C_POINT") {
      recomputed = rational_to_string(c_point_log2_formula(
          parse_rat(input(step, "c1_log2")), parse_rat(input(step, "b")),
          parse_rat(input(step, "epsilon"))));
    } else if (op == "C_CYCLIC") {
      recomputed = rational_to_string(c_cyclic_log2_formula(
          parse_rat(input(step, "c_point_log2")), parse_rat(input(step, "epsilon"))));
    } else if (op == "C_EXP") {
      const Rational eps = parse_rat(input(step, "epsilon"));
      recomputed = rational_to_string(parse_rat(input(step, "point_log2")) +
                                      parse_rat(input(step, "cyclic_log2")) +
                                      Rational(3, 2) + eps);
    } else if (op == "C_EXP_HALF") {
      const Rational eps = parse_rat(input(step, "epsilon"));
      recomputed = rational_to_string(parse_rat(input(step, "point_log2")) +
                                      parse_rat(input(step, "cyclic_log2")) +
                                      Rational(3, 2) + eps / 2);
    } else if (op == "WEIL_B") {
      recomputed = rational_to_string(
          weil_log2_formula(parse_rat(input(step, "b")), parse_rat(input(step, "epsilon"))));
    } else if (op == "C_ORDER") {
      recomputed = rational_to_string(parse_rat(input(step, "weil_log2")) +
                                      parse_rat(input(step, "c_exp_half_log2")));
    } else if (op == "EXP_EXPONENT") {
      recomputed = rational_to_string(Rational(4) + parse_rat(input(step, "epsilon")));
    } else if (op == "ORDER_EXPONENT") {
      recomputed = rational_to_string(Rational(5) + parse_rat(input(step, "epsilon")));
    } else {
      mismatches.push_back(step.id + " (unknown op)");
      continue;
    }

    if (recomputed != step.output) mismatches.push_back(step.id);
  }
  return mismatches;
}

}  // namespace torbound
