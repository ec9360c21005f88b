#pragma once

#include <set>
#include <string>
#include <vector>

#include "ffl/lattice.hpp"
#include "ffl/laurent.hpp"
#include "ffl/log_norm.hpp"
#include "ffl/weights.hpp"

namespace ffl {

enum class Side { alpha, beta };

// Clopen subset of the unit shell {q^-1 < ||.|| <= 1}, cut out by the digit
// table of the normalized representative: for each coordinate the `depth`
// coefficients at degrees 0, -1, ..., -(depth-1). Tables are stored flattened
// coordinate-major (coordinate i occupies positions [i*depth, (i+1)*depth)).
struct Cylinder {
    Side side = Side::alpha;
    int depth = 0;
    bool is_full = true;
    std::set<std::vector<uint8_t>> allowed;

    static Cylinder full(Side s) {
        Cylinder c;
        c.side = s;
        return c;
    }
    static Cylinder empty_set(Side s) {
        Cylinder c;
        c.side = s;
        c.is_full = false;
        return c;
    }
    static Cylinder of(Side s, int depth, std::set<std::vector<uint8_t>> allowed);

    bool is_empty() const { return !is_full && allowed.empty(); }
    bool contains_table(const std::vector<uint8_t>& table) const {
        return is_full || allowed.count(table) > 0;
    }

    std::string str() const;
    static Cylinder parse(const std::string& s);  // "side=beta,depth=1,allow=[1;2]" | "...,full"
};

// Declarative region in K^m x K^n. E: {||x||_a < q^R/||y||_b, 1 <= ||y||_b <= q^T};
// F swaps the roles of x and y; Ball(r) is the open sup-norm ball of radius q^r
// (coordinatewise deg <= r-1); EDir refines E by direction cylinders and
// requires x != 0.
struct RegionSpec {
    enum class Kind { E, F, Ball, EDir };
    Kind kind = Kind::E;
    int T = 0;  // y-shell range for E/EDir
    int S = 0;  // x-shell range for F
    int R = 0;
    int r = 0;  // ball radius exponent
    Cylinder c1 = Cylinder::full(Side::alpha);
    Cylinder c2 = Cylinder::full(Side::beta);

    static RegionSpec E(int T, int R);
    static RegionSpec F(int S, int R);
    static RegionSpec Ball(int r);
    static RegionSpec EDir(int T, int R, Cylinder c1, Cylinder c2);

    std::string str() const;
    static RegionSpec parse(const std::string& s);  // "E:T=12,R=0" | "F:S=8,R=0" | "ball:r=3"
};

// ||x||_side = max_i |x_i|^{1/a_i}; expects the side slice (length m or n).
LogNorm quasi_norm(const LaurentVector& x, Side side, const Weights& w);

// Normalized representative data: the unique integer dilation step s such that
// scaling coordinate i by t^{s*a_i} lands the quasi-norm in (q^-1, 1], plus the
// digit table of the dilated vector at the given depth.
struct Direction {
    int s = 0;
    std::vector<uint8_t> digits;
};
Direction direction_project(const LaurentVector& x, Side side, const Weights& w, int depth);

// Membership of a full d-vector (x block first). Exact; EDir requires x != 0.
bool region_contains(const RegionSpec& region, const LaurentVector& v, const Weights& w);

// Per-coordinate degree cutoffs of the smallest box containing the region.
std::vector<int> region_bounding_box(const RegionSpec& region, const Weights& w);

}  // namespace ffl
