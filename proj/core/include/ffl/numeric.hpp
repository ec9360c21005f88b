#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace ffl {

// Exact arbitrary-precision integers and rationals. Counts, measures and
// lattice invariants routinely reach q^{hundreds}, so machine words are out.
using Int = mpz_class;
using Rat = mpq_class;

// q^e as an exact rational (e may be negative).
Rat pow_q(uint32_t q, long e);

// q^e for e >= 0 as an exact integer.
Int pow_q_int(uint32_t q, long e);

// Canonical rational text: "num" when den == 1, else "num/den".
std::string rat_str(const Rat& r);

// Inverse of rat_str. Throws ConfigError on malformed input.
Rat parse_rat(const std::string& s);

// Floor / ceil of a/b with b > 0, exact for negative a.
long floor_div(long a, long b);
long ceil_div(long a, long b);

// Floor / ceil of an exact rational, as a long (throws Error on overflow).
long rat_floor(const Rat& r);
long rat_ceil(const Rat& r);

// Exponent e of the q-power nearest to r > 0 on the log scale:
// q^{e-1/2} <= r < q^{e+1/2}, decided exactly via q^{2e-1} <= r^2 < q^{2e+1}.
long nearest_qpow_exponent(const Rat& r, uint32_t q);

// Convert an exact rational to double (for fits and report fields that are
// explicitly approximate).
double to_double(const Rat& r);

}  // namespace ffl
