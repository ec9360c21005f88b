#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffl/fq.hpp"

namespace ffl::detail {

// Shared text form for F_q[t] and Laurent values: terms in descending degree
// joined by '+', e.g. "t^2+1+t^-3", "2t^3+t+2". Coefficient 1 is omitted
// except on the constant term; exponent 1 prints as "t"; zero prints as "0".
std::string format_terms(const std::vector<std::pair<int, uint32_t>>& terms_desc);

// Parse the text form back into (degree, coefficient) pairs. Throws
// ConfigError on malformed input, duplicate degrees or coefficients >= q.
std::vector<std::pair<int, uint32_t>> parse_terms(const Fq& f, const std::string& s);

}  // namespace ffl::detail
