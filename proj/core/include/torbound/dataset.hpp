#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "torbound/certificate.hpp"

namespace torbound {

// One row of a torsion dataset. torsion_d | torsion_N models the group
// Z/dZ x Z/NZ; isogeny_degree is the degree of the cyclic geometric isogeny
// to a rational curve (1 when the curve itself is rational, 0 when the
// record does not assert membership in the family at all).
struct CurveRecord {
  std::string id;
  std::uint64_t field_degree = 1;
  std::uint64_t j_degree = 1;
  std::uint64_t isogeny_degree = 1;
  std::uint64_t torsion_d = 1;
  std::uint64_t torsion_N = 1;

  friend bool operator==(const CurveRecord&, const CurveRecord&) = default;
};

struct ParseIssue {
  std::size_t line = 0;
  std::string message;
};

struct DatasetParseResult {
  std::vector<CurveRecord> records;
  std::vector<ParseIssue> issues;
  bool ok() const { return issues.empty(); }
};

// CSV columns, in order: id,field_degree,j_degree,isogeny_degree,torsion_d,
// torsion_N (header row required). JSON-lines files carry the same field
// names, one object per line. Format is picked by extension (.csv vs
// .jsonl/.ndjson); throws std::runtime_error on I/O failure.
DatasetParseResult parse_dataset(const std::string& path);
DatasetParseResult parse_dataset_csv(std::istream& in);
DatasetParseResult parse_dataset_jsonl(std::istream& in);

void write_dataset_csv(std::ostream& out, std::span<const CurveRecord> records);

// What a synthetic record was built to do under the audit rules.
enum class PlantedOutcome {
  Clean,
  ViolateDiv,
  ViolateWeil,
  ViolateExp,
  ViolateOrder,
  Inconclusive,
};

std::string planted_outcome_name(PlantedOutcome outcome);

struct SyntheticRecord {
  CurveRecord record;
  PlantedOutcome planted = PlantedOutcome::Clean;
};

// Deterministic consistency generator: half the records are clean by
// construction, the other half each violate exactly one rule. Violations of
// the numeric bound rules are planted only when the certificate's bounds are
// small enough to exceed with a 64-bit torsion order (never the case for
// synthesized certificates, whose constants are astronomical); otherwise the
// violating half is spread across the divisibility rules. A few records per
// thousand carry isogeny_degree = 0 and must audit as INCONCLUSIVE.
std::vector<SyntheticRecord> synthesize_audit_dataset(
    const BoundCertificate& cert, std::size_t count, std::uint64_t seed,
    std::uint64_t threshold = 37);

}  // namespace torbound
