#pragma once

#include <vector>

#include "ffl/laurent.hpp"
#include "ffl/log_norm.hpp"
#include "ffl/numeric.hpp"

namespace ffl {

using LaurentVector = std::vector<Laurent>;

// Row basis of a full-rank F_q[t]-module in K^d. Entries are Laurent numbers;
// scale_hint() is the smallest W with t^W * basis polynomial, which is how the
// reduction moves between the Laurent and the polynomial worlds.
struct LatticeBasis {
    std::vector<LaurentVector> rows;

    int dim() const { return static_cast<int>(rows.size()); }
    Fq field() const;
    void validate() const;  // square, nonempty, consistent field
    int scale_hint() const;
};

// Weak Popov form: pivot columns pairwise distinct, rows sorted by ascending
// sup-norm degree. For such a basis ||sum f_i b_i|| = max_i q^{deg f_i + d_i},
// which turns every box-counting question into counting coefficient boxes.
struct ReducedBasis {
    LatticeBasis base;
    std::vector<int> row_degrees;  // ascending; deg of zero rows cannot occur
    std::vector<int> pivot_cols;
};

// Reduce by simple transformations until the pivots are distinct. Throws
// SingularBasis when the rows are dependent.
ReducedBasis weak_popov_reduce(const LatticeBasis& b);

// q^{d_1}: sup-norm of a shortest nonzero lattice vector.
LogNorm shortest_norm(const ReducedBasis& rb);

// alpha invariant of a unimodular lattice: q^{-(d_1 + ... + d_k)} over the
// negative row degrees; 1 when none are negative. Throws NonUnimodular when
// the row degrees do not sum to zero.
Rat alpha_height(const ReducedBasis& rb);

// Sup-norm of v_1 ^ ... ^ v_r (max over r x r minors, exact). Throws
// DependentVectors when all minors vanish, DimensionMismatch on ragged input.
LogNorm wedge_norm(const std::vector<LaurentVector>& vectors);

// |det| == 1, decided by the exact polynomial determinant.
bool unimodular(const LatticeBasis& b);

// Number of lattice points v with deg v_c <= cutoffs[c] for every coordinate.
// Exact closed form: scale column c by t^{-cutoffs[c]}, re-reduce, read the
// coefficient-box sizes off the row degrees.
Int box_point_count(const ReducedBasis& rb, const std::vector<int>& cutoffs);

// Points with ||v||_inf <= q^c (a box with equal cutoffs; no re-reduction).
Int ball_point_count(const ReducedBasis& rb, int c);

// Materialize all points with ||v||_inf <= q^c, zero included. Throws
// BudgetExceeded when the coefficient box exceeds `budget` points.
std::vector<LaurentVector> enumerate_ball(const ReducedBasis& rb, int c, const Int& budget);

}  // namespace ffl
