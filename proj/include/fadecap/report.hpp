#pragma once

#include <string>
#include <vector>

#include "fadecap/batch.hpp"
#include "fadecap/suites.hpp"

namespace fadecap {

/// %.17g rendering: enough digits that parsing the text recovers the
/// exact double, which is what makes serialization round-trips byte-stable.
std::string format_double(double v);

/// Record serialized as a single-line JSON object with sorted keys and
/// 17-significant-digit floats. `units` is stored verbatim; no rescaling
/// happens here (see to_nats).
std::string record_to_json(const AnalysisRecord& rec,
                           const std::string& units);

/// Copy of the record with every rate/entropy field scaled from bits to
/// nats. Powers, gains, x_star, alpha and beta_star are unit-free and stay.
AnalysisRecord to_nats(const AnalysisRecord& rec);

struct ParsedRecord {
  AnalysisRecord record;
  std::string units;
};

/// Inverse of record_to_json; values are taken as written (no unit
/// conversion), so parse-then-serialize reproduces the input exactly.
ParsedRecord record_from_json(const std::string& text);

/// One-line machine-readable error object: {"code":...,"message":...}.
std::string error_json(const Error& err);

/// CSV with the fixed column set
///   q,x_star,case,d_value,d_is_exact,c_value,sr_upper,beta_star,sr_ach,
///   gap,gap_bound,error
/// one row per sweep entry; failed rows carry only q and the error code.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Verification summary as canonical JSON (sorted keys, %.17g floats).
std::string summary_to_json(const VerifySummary& summary);

}  // namespace fadecap
