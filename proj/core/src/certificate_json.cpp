#include <json.hpp>

#include "torbound/certificate.hpp"

namespace torbound {

using nlohmann::json;

namespace {

json log2_value_to_json(const Log2Value& v) {
  return json{{"log2", v.log2_string()}, {"approx", v.approx_decimal()}};
}

Log2Value log2_value_from_json(const json& j) {
  return Log2Value::from_log2_string(j.at("log2").get<std::string>());
}

json layer_to_json(const CertificateLayer& layer) {
  json j{{"name", layer.name},
         {"epsilon", rational_to_string(layer.epsilon)},
         {"Z", layer.Z.str()},
         {"pi_Z", layer.pi_Z.str()},
         {"pi_exact", layer.pi_exact},
         {"c1", log2_value_to_json(layer.c1)},
         {"c_point", log2_value_to_json(layer.c_point)}};
  j["c_cyclic"] = layer.c_cyclic ? log2_value_to_json(*layer.c_cyclic) : json(nullptr);
  return j;
}

CertificateLayer layer_from_json(const json& j) {
  CertificateLayer layer;
  layer.name = j.at("name").get<std::string>();
  layer.epsilon = rational_from_string(j.at("epsilon").get<std::string>());
  layer.Z = BigInt(j.at("Z").get<std::string>());
  layer.pi_Z = BigInt(j.at("pi_Z").get<std::string>());
  layer.pi_exact = j.at("pi_exact").get<bool>();
  layer.c1 = log2_value_from_json(j.at("c1"));
  layer.c_point = log2_value_from_json(j.at("c_point"));
  if (!j.at("c_cyclic").is_null()) layer.c_cyclic = log2_value_from_json(j.at("c_cyclic"));
  return layer;
}

}  // namespace

std::string certificate_to_json(const BoundCertificate& cert, int indent) {
  json j;
  j["schema_version"] = cert.schema_version;
  j["epsilon"] = rational_to_string(cert.epsilon);
  j["Z"] = cert.Z.str();
  j["pi_Z"] = cert.pi_Z.str();
  j["pi_z_exact"] = cert.pi_z_exact;
  j["c1"] = log2_value_to_json(cert.c1);
  j["b"] = rational_to_string(cert.b);
  j["b_epsilon"] = rational_to_string(cert.b_epsilon);
  j["b_scan_limit"] = cert.b_scan_limit;
  j["b_tail_certified"] = cert.b_tail_certified;
  j["c_point"] = log2_value_to_json(cert.c_point);
  j["c_cyclic"] = cert.c_cyclic ? log2_value_to_json(*cert.c_cyclic) : json(nullptr);
  j["c_exp"] = log2_value_to_json(cert.c_exp);
  j["exp_exponent"] = rational_to_string(cert.exp_exponent);
  j["c_order"] = log2_value_to_json(cert.c_order);
  j["order_exponent"] = rational_to_string(cert.order_exponent);
  j["finite_support_conditional"] = cert.finite_support_conditional;

  j["layers"] = json::array();
  for (const auto& layer : cert.layers) j["layers"].push_back(layer_to_json(layer));

  j["trace"] = json::array();
  for (const auto& step : cert.trace) {
    json inputs = json::array();
    for (const auto& [k, v] : step.inputs) inputs.push_back(json{{"name", k}, {"value", v}});
    j["trace"].push_back(json{{"id", step.id}, {"inputs", inputs}, {"output", step.output}});
  }
  return indent >= 0 ? j.dump(indent) : j.dump();
}

BoundCertificate certificate_from_json(const std::string& json_text) {
  const json j = json::parse(json_text);
  BoundCertificate cert;
  cert.schema_version = j.at("schema_version").get<int>();
  if (cert.schema_version != 1)
    throw std::invalid_argument("unsupported certificate schema_version");
  cert.epsilon = rational_from_string(j.at("epsilon").get<std::string>());
  cert.Z = BigInt(j.at("Z").get<std::string>());
  cert.pi_Z = BigInt(j.at("pi_Z").get<std::string>());
  cert.pi_z_exact = j.at("pi_z_exact").get<bool>();
  cert.c1 = log2_value_from_json(j.at("c1"));
  cert.b = rational_from_string(j.at("b").get<std::string>());
  cert.b_epsilon = rational_from_string(j.at("b_epsilon").get<std::string>());
  cert.b_scan_limit = j.at("b_scan_limit").get<std::uint64_t>();
  cert.b_tail_certified = j.at("b_tail_certified").get<bool>();
  cert.c_point = log2_value_from_json(j.at("c_point"));
  if (!j.at("c_cyclic").is_null()) cert.c_cyclic = log2_value_from_json(j.at("c_cyclic"));
  cert.c_exp = log2_value_from_json(j.at("c_exp"));
  cert.exp_exponent = rational_from_string(j.at("exp_exponent").get<std::string>());
  cert.c_order = log2_value_from_json(j.at("c_order"));
  cert.order_exponent = rational_from_string(j.at("order_exponent").get<std::string>());
  cert.finite_support_conditional = j.at("finite_support_conditional").get<bool>();

  for (const auto& jl : j.at("layers")) cert.layers.push_back(layer_from_json(jl));
  for (const auto& js : j.at("trace")) {
    TraceStep step;
    step.id = js.at("id").get<std::string>();
    for (const auto& ji : js.at("inputs"))
      step.inputs.emplace_back(ji.at("name").get<std::string>(),
                               ji.at("value").get<std::string>());
    step.output = js.at("output").get<std::string>();
    cert.trace.push_back(std::move(step));
  }
  return cert;
}

}  // namespace torbound
