#pragma once

#include <vector>

#include "ffl/fq_poly.hpp"
#include "ffl/laurent.hpp"
#include "ffl/regions.hpp"
#include "ffl/weights.hpp"

namespace ffl {

struct CountResult {
    Int count;
    uint32_t q = 0;
    int R = 0;
    int T = 0;
    int depth_used = 0;
};

struct DirectionalCountResult {
    Int count;       // solutions with Aq - p != 0 passing both cylinders
    Int degenerate;  // solutions with Aq - p = 0 (no direction to test)
    uint32_t q = 0;
    int R = 0;
    int T = 0;
    int depth_used = 0;
};

// Fractional digits of A needed so that every predicate in count_solutions is
// digit-determined: T*max(b) bounds the reach of products A*q, and thresholds
// probe at most (T-R)*max(a) digits below the line.
int min_depth(const Weights& w, int R, int T);

// Number of pairs (p, q) in Z^m x Z^n, q != 0, with ||Aq - p||_a < q^R/||q||_b
// and 1 <= ||q||_b <= q^T. Exact; multiple p per q are counted when the
// threshold allows them. Throws InsufficientPrecision when A carries fewer
// than min_depth digits.
CountResult count_solutions(const LaurentMatrix& A, const Weights& w, int R, int T);

// Same count restricted to solutions whose directions pass the cylinders;
// pairs with Aq - p = 0 are reported separately, never silently dropped.
// `budget` caps the number of enumerated p per call (multi-p thresholds only).
DirectionalCountResult count_solutions_directional(const LaurentMatrix& A, const Weights& w,
                                                   int R, int T, const Cylinder& c1,
                                                   const Cylinder& c2,
                                                   const Int& budget = Int(1) << 24);

// Probability over uniform fractional digits of A that SOME p satisfies the
// row thresholds for this fixed q-vector. Per row: q^{-rank} of the F_q-linear
// system forcing the shallow digits of (Aq)_i to vanish; rows with threshold
// >= 1 contribute probability 1.
Rat solution_probability(const std::vector<FqPoly>& qvec, const Weights& w, int R, uint32_t q);

// Exact expectation of count_solutions over uniform A: the sum over nonzero
// q-vectors of the expected number of admissible p, evaluated shell by shell.
Rat expected_count(uint32_t q, const Weights& w, int R, int T);
// One y-shell's contribution: (# q on the shell) * q^{sum_i ceil((R-k) a_i)}.
Rat expected_count_shell(uint32_t q, const Weights& w, int R, const Rat& k);

// Brute-force expectation oracle: averages count_solutions over ALL matrices
// with exactly min_depth fractional digits. Throws BudgetExceeded when the
// pattern space q^{m*n*min_depth} exceeds max_patterns.
Rat exhaustive_average_count(uint32_t q, const Weights& w, int R, int T,
                             const Int& max_patterns = Int(1) << 20);

}  // namespace ffl
