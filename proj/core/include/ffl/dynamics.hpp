#pragma once

#include <string>
#include <vector>

#include "ffl/lattice.hpp"
#include "ffl/laurent.hpp"
#include "ffl/log_norm.hpp"
#include "ffl/numeric.hpp"
#include "ffl/regions.hpp"
#include "ffl/weights.hpp"

namespace ffl {

// g_a^n: coordinate i of every basis vector scaled by t^{n*a_i} on the x block
// and t^{-n*b_j} on the y block. n may be negative; unimodularity is preserved.
LatticeBasis flow_apply(const LatticeBasis& B, const Weights& w, long n);

// Basis of u_A * Z^d for u_A = (I_m A; 0 I_n): rows (e_i | 0) for the x block
// and (col_j A | e_j) for the y block. Determinant 1 by construction.
LatticeBasis ua_basis(const LaurentMatrix& A);

// Exact number of nonzero lattice vectors of B inside the region. Ball and the
// E/F shell families have closed box-counting routes; EDir enumerates the
// bounding box and filters, guarded by `budget` points.
Int siegel_count(const RegionSpec& region, const LatticeBasis& B, const Weights& w,
                 const Int& budget = Int(1) << 24);

// Orbit observables: Siegel counts of a region (unbounded), the bounded
// indicator of {delta(Lambda) >= eps}, and the alpha height.
struct Observable {
    enum class Kind { SiegelCount, IndicatorDeltaGe, AlphaHeight };
    Kind kind = Kind::AlphaHeight;
    RegionSpec region;              // SiegelCount payload
    LogNorm eps = LogNorm::zero();  // IndicatorDeltaGe payload

    static Observable siegel(RegionSpec region);
    static Observable delta_ge(LogNorm eps);
    static Observable alpha();

    // "siegel:<region literal>" (e.g. "siegel:E:T=2,R=0", "siegel:ball:r=1"),
    // "indicator:delta_ge:<exponent>" (threshold q^exponent), or "alpha".
    std::string str() const;
    static Observable parse(const std::string& s);
};

// Depth of A needed so that every evaluation along an N-step series is decided
// by A's stored digits. Zero for observables that read only the exact lattice.
int orbit_min_depth(const Observable& obs, const Weights& w, long N);

// Partial Birkhoff averages along the orbit g_a^n u_A Gamma: element k-1 is
// (1/k) * sum_{n<k} obs(g_a^n u_A Gamma), an exact rational. Siegel E/F series
// demand depth(A) >= orbit_min_depth (InsufficientPrecision otherwise).
std::vector<Rat> birkhoff_series(const Observable& obs, const LaurentMatrix& A, const Weights& w,
                                 long N, const Int& budget = Int(1) << 24);

}  // namespace ffl
