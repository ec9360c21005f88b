#pragma once

#include <vector>

#include "ffl/fq.hpp"
#include "ffl/fq_poly.hpp"

namespace ffl {

// Rank of a rectangular matrix over F_q (Gaussian elimination).
int fq_matrix_rank(const Fq& f, std::vector<std::vector<uint32_t>> m);

// Exact determinant over F_q[t] by fraction-free (Bareiss) elimination; every
// interior division is exact, so no field of fractions is needed.
FqPoly poly_matrix_det(std::vector<std::vector<FqPoly>> m);

}  // namespace ffl
