#pragma once

#include <string>
#include <vector>

#include "ffl/experiments.hpp"

namespace ffl {

// Fixed-column CSV ("trial,seed,T_or_N,value,centering,norm_error,micros"),
// one record per row, exact rationals as "num/den" and integers as decimal.
// Byte-deterministic for fixed records; the timing column is the only field
// that varies between reruns of the same batch.
std::string emit_csv(const std::vector<TrialRecord>& records);

// Inverse of emit_csv. Throws ConfigError on a malformed table.
std::vector<TrialRecord> parse_csv(const std::string& text);

// JSON aggregate: record count, mean ratio, normalized-error quantiles,
// fitted slope (null when not fittable), and the named exact cross-checks.
// Contains no timing data, so it is byte-deterministic outright.
std::string emit_json(const std::vector<TrialRecord>& records, const Aggregate& agg);

// Dispatch on format "csv" | "json"; anything else is a ConfigError.
std::string emit_report(const std::vector<TrialRecord>& records, const Aggregate& agg,
                        const std::string& format);

}  // namespace ffl
