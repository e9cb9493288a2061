#include "torbound/dataset.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "torbound/bounds.hpp"

namespace torbound {

namespace {

const char* kCsvHeader = "id,field_degree,j_degree,isogeny_degree,torsion_d,torsion_N";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  if (s.empty()) return false;
  out = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    if (out > (~std::uint64_t(0) - (c - '0')) / 10) return false;
    out = out * 10 + (c - '0');
  }
  return true;
}

// Shared schema validation; returns an error message or empty string.
std::string validate_record(const CurveRecord& r) {
  if (r.id.empty()) return "empty id";
  if (r.field_degree == 0) return "field_degree must be >= 1";
  if (r.j_degree == 0) return "j_degree must be >= 1";
  if (r.torsion_d == 0 || r.torsion_N == 0) return "torsion invariants must be >= 1";
  if (r.torsion_N % r.torsion_d != 0)
    return "torsion_d = " + std::to_string(r.torsion_d) + " does not divide torsion_N = " +
           std::to_string(r.torsion_N);
  return {};
}

}  // namespace

DatasetParseResult parse_dataset_csv(std::istream& in) {
  DatasetParseResult result;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (!header_seen) {
      header_seen = true;
      std::string stripped = line;
      if (!stripped.empty() && stripped.back() == '\r') stripped.pop_back();
      if (stripped != kCsvHeader)
        result.issues.push_back({line_no, "unexpected header (want \"" +
                                              std::string(kCsvHeader) + "\")"});
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 6) {
      result.issues.push_back({line_no, "expected 6 fields, got " +
                                            std::to_string(fields.size())});
      continue;
    }
    CurveRecord r;
    r.id = fields[0];
    bool ok = parse_u64(fields[1], r.field_degree) && parse_u64(fields[2], r.j_degree) &&
              parse_u64(fields[3], r.isogeny_degree) && parse_u64(fields[4], r.torsion_d) &&
              parse_u64(fields[5], r.torsion_N);
    if (!ok) {
      result.issues.push_back({line_no, "non-numeric field"});
      continue;
    }
    if (auto msg = validate_record(r); !msg.empty()) {
      result.issues.push_back({line_no, msg});
      continue;
    }
    result.records.push_back(std::move(r));
  }
  return result;
}

DatasetParseResult parse_dataset_jsonl(std::istream& in) {
  DatasetParseResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      CurveRecord r;
      r.id = j.at("id").get<std::string>();
      r.field_degree = j.at("field_degree").get<std::uint64_t>();
      r.j_degree = j.at("j_degree").get<std::uint64_t>();
      r.isogeny_degree = j.at("isogeny_degree").get<std::uint64_t>();
      r.torsion_d = j.at("torsion_d").get<std::uint64_t>();
      r.torsion_N = j.at("torsion_N").get<std::uint64_t>();
      if (auto msg = validate_record(r); !msg.empty()) {
        result.issues.push_back({line_no, msg});
        continue;
      }
      result.records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      result.issues.push_back({line_no, e.what()});
    }
  }
  return result;
}

DatasetParseResult parse_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
    return parse_dataset_csv(in);
  if ((path.size() >= 6 && path.substr(path.size() - 6) == ".jsonl") ||
      (path.size() >= 7 && path.substr(path.size() - 7) == ".ndjson"))
    return parse_dataset_jsonl(in);
  throw std::runtime_error("unsupported dataset extension (want .csv or .jsonl): " + path);
}

void write_dataset_csv(std::ostream& out, std::span<const CurveRecord> records) {
  out << kCsvHeader << "\n";
  for (const auto& r : records)
    out << r.id << ',' << r.field_degree << ',' << r.j_degree << ','
        << r.isogeny_degree << ',' << r.torsion_d << ',' << r.torsion_N << "\n";
}

std::string planted_outcome_name(PlantedOutcome outcome) {
  switch (outcome) {
    case PlantedOutcome::Clean: return "clean";
    case PlantedOutcome::ViolateDiv: return "violate_div";
    case PlantedOutcome::ViolateWeil: return "violate_weil";
    case PlantedOutcome::ViolateExp: return "violate_exp";
    case PlantedOutcome::ViolateOrder: return "violate_order";
    case PlantedOutcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// Solo violations of the two numeric rules are only constructible when the
// certificate's bounds at degree 2 fit in 64 bits and are separated enough
// that exceeding one leaves the other satisfied.
struct BoundRoom {
  bool exp_solo = false;    // can exceed the exp bound while passing order
  bool order_solo = false;  // can exceed the order bound while passing exp
  int exp_log2 = 0;         // ceil(log2 of the exp bound at degree 2)
  int order_log2 = 0;
};

BoundRoom bound_room(const BoundCertificate& cert) {
  BoundRoom room;
  // log2_up(2) = 1 exactly, so these are the bounds at degree 2.
  const Rational exp_l2 = cert.c_exp.log2() + cert.exp_exponent;
  const Rational ord_l2 = cert.c_order.log2() + cert.order_exponent;
  if (exp_l2 > 600 || ord_l2 > 600) return room;  // synthesized certificates
  const double e = exp_l2.convert_to<double>();
  const double o = ord_l2.convert_to<double>();
  room.exp_log2 = static_cast<int>(std::ceil(e));
  room.order_log2 = static_cast<int>(std::ceil(o));
  room.exp_solo = e < 56 && room.exp_log2 + 6 < o;
  room.order_solo = o < 56 && room.order_log2 + 6 < e;
  return room;
}

}  // namespace

std::vector<SyntheticRecord> synthesize_audit_dataset(const BoundCertificate& cert,
                                                      std::size_t count,
                                                      std::uint64_t seed,
                                                      std::uint64_t threshold) {
  std::mt19937_64 rng(seed);
  std::vector<SyntheticRecord> out;
  out.reserve(count);

  const std::uint64_t large_primes[] = {41, 43, 47, 53};
  const auto pick = [&](auto& arr) { return arr[rng() % std::size(arr)]; };

  const BoundRoom room = bound_room(cert);

  for (std::size_t i = 0; i < count; ++i) {
    SyntheticRecord s;
    s.record.id = "rec" + std::to_string(i);
    const bool violate = (i % 2) == 1;

    if (!violate) {
      // Clean records: rotate through shapes that satisfy every rule.
      switch (rng() % 3) {
        case 0: {  // small torsion, no large primes involved
          s.record.field_degree = 1 + rng() % 8;
          s.record.j_degree = 1 + rng() % 3;
          s.record.isogeny_degree = 1 + rng() % 6;
          const std::uint64_t shapes[] = {1, 2, 3, 4, 6, 8, 12};
          s.record.torsion_N = pick(shapes);
          s.record.torsion_d = (s.record.torsion_N % 2 == 0) ? 2 : 1;
          if (euler_phi(factorize(s.record.torsion_d)) > 1 &&
              s.record.field_degree % euler_phi(factorize(s.record.torsion_d)) != 0)
            s.record.torsion_d = 1;
          break;
        }
        case 1: {  // a large prime with the exact degree it requires
          const std::uint64_t l = pick(large_primes);
          s.record.field_degree = (l * l - 1) / 2 * (1 + rng() % 3);
          s.record.j_degree = 1;
          s.record.isogeny_degree = 1;
          s.record.torsion_N = l;
          s.record.torsion_d = 1;
          break;
        }
        default: {  // l^r isogeny with the sharpened requirement satisfied
          const std::uint64_t l = 41;
          const auto req = divisibility_requirement(l, 1, 2, threshold);
          s.record.field_degree = req.required_divisor.convert_to<std::uint64_t>();
          s.record.j_degree = 1 + rng() % 2;
          s.record.isogeny_degree = l * l;  // r = 2
          s.record.torsion_N = l * 2;
          s.record.torsion_d = 1;
          break;
        }
      }
      s.planted = PlantedOutcome::Clean;
      // A sprinkle of non-member records that must audit INCONCLUSIVE.
      if (i % 97 == 0) {
        s.record.isogeny_degree = 0;
        s.planted = PlantedOutcome::Inconclusive;
      }
    } else {
      std::uint64_t which = rng() % 4;
      if (which == 2 && !room.exp_solo) which = 0;
      if (which == 3 && !room.order_solo) which = 1;
      switch (which) {
        case 0: {  // break the large-prime divisibility only
          const std::uint64_t l = pick(large_primes);
          std::uint64_t d = 1 + rng() % 100;
          const auto req = divisibility_requirement(l, 1, 0, threshold);
          if (BigInt(d) % req.required_divisor == 0) ++d;  // (never for d <= 100)
          s.record.field_degree = d;
          s.record.torsion_N = l;
          s.record.torsion_d = 1;
          s.record.isogeny_degree = 1 + rng() % 5;
          if (s.record.isogeny_degree % l == 0) ++s.record.isogeny_degree;
          s.planted = PlantedOutcome::ViolateDiv;
          break;
        }
        case 1: {  // break the root-of-unity divisibility only
          s.record.field_degree = 3;  // phi(5) = 4 does not divide 3
          s.record.torsion_d = 5;
          s.record.torsion_N = 5 * (1 + rng() % 4);
          s.record.isogeny_degree = 1 + rng() % 3;
          s.planted = PlantedOutcome::ViolateWeil;
          break;
        }
        case 2: {  // exceed the exp bound; the order bound still holds
          s.record.field_degree = 2;
          s.record.torsion_d = 1;
          s.record.torsion_N = std::uint64_t(1) << (room.exp_log2 + 2);
          s.record.isogeny_degree = 1;
          s.planted = PlantedOutcome::ViolateExp;
          break;
        }
        default: {  // exceed the order bound; the exp bound still holds
          s.record.field_degree = 2;
          s.record.torsion_d = 2;
          s.record.torsion_N = std::uint64_t(1) << (room.order_log2 + 2);
          s.record.isogeny_degree = 1;
          s.planted = PlantedOutcome::ViolateOrder;
          break;
        }
      }
      s.record.j_degree = 1;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace torbound
