#pragma once

#include "ffl/regions.hpp"
#include "ffl/weights.hpp"

namespace ffl {

// Exact Haar measure of a region by exhaustive enumeration of digit classes
// inside its bounding box, weighting each class by its cell measure. This is
// deliberately independent of the closed-form shell sums: E/F/Ball walk
// per-coordinate degree classes (degree deltas down to box-top minus depth,
// plus one bucket for everything below resolution) and test membership on
// explicit representatives; EDir decomposes into y-shells times a dilation-
// periodic x-shell sum whose tail is resummed geometrically, enumerating the
// digit windows that determine shell membership and direction tables.
//
// Throws InsufficientPrecision when membership is not digit-determined at
// this depth, BudgetExceeded when the class count passes `budget`.
Rat grid_measure_oracle(uint32_t q, const Weights& w, const RegionSpec& region, int depth,
                        const Int& budget = Int(1) << 24);

}  // namespace ffl
