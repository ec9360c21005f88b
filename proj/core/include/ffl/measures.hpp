#pragma once

#include <map>
#include <vector>

#include "ffl/regions.hpp"
#include "ffl/weights.hpp"

namespace ffl {

// Sorted distinct quasi-norm levels k in [lo, hi] on the given side: the union
// over the side's weights a of (1/a)Z. These are exactly the levels where the
// shell {||.|| = q^k} is nonempty.
std::vector<Rat> shell_levels(const Weights& w, Side side, const Rat& lo, const Rat& hi);

// Haar measure (normalized by lambda(O) = 1) of one y-shell slab of E:
// {||x||_a < q^{R-k}} x {||y||_b = q^k}. Zero for k outside the level set.
Rat shell_term_E(uint32_t q, const Weights& w, int R, const Rat& k);
// Same with the roles of x and y swapped (one x-shell slab of F).
Rat shell_term_F(uint32_t q, const Weights& w, int R, const Rat& s);

// lambda(E_{T,R}) = sum of shell_term_E over levels k in [0, T].
Rat measure_E(uint32_t q, const Weights& w, int R, int T);
// lambda(F_{S,R}) = sum of shell_term_F over levels s in [0, S].
Rat measure_F(uint32_t q, const Weights& w, int R, int S);

// Measure of the unit shell {q^-1 < ||.|| <= 1} on a side.
Rat unit_shell_measure(uint32_t q, const Weights& w, Side side);

// For each level k' in (-1, 0]: the measure of the part of the unit shell at
// that level whose digit table lies in the cylinder. Exact digit enumeration.
std::map<Rat, Rat> unit_shell_cylinder_measures(const Cylinder& c, const Weights& w, uint32_t q);

// Fraction of the unit shell occupied by the cylinder.
Rat cylinder_measure(const Cylinder& c, const Weights& w, uint32_t q);

// lambda(E_{T,R}(C1, C2)): the E shell sum with both factors restricted by
// direction cylinders; the x-side is an exact geometric resummation over
// dilates of the unit-shell level classes.
Rat measure_E_directional(uint32_t q, const Weights& w, int R, int T, const Cylinder& c1,
                          const Cylinder& c2);

// Unified dispatch; Ball(r) has measure q^{d(r-1)}.
Rat region_measure(uint32_t q, const Weights& w, const RegionSpec& region);

}  // namespace ffl
