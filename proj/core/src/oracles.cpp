#include "ffl/oracles.hpp"

#include <algorithm>

#include "ffl/errors.hpp"
#include "ffl/measures.hpp"
#include "ffl/numeric.hpp"

namespace ffl {

namespace {

// One per-coordinate degree class: all field elements of the given degree
// (resolved), or everything below the resolution floor (bucket). Membership
// in E/F/Ball depends on degrees only, so one representative decides it.
struct DegClass {
    Rat weight;
    Laurent rep;
};

Rat degree_class_measure(uint32_t q, int deg) {
    // lambda{deg x = e} = q^e - q^{e-1}
    Rat r = pow_q(q, deg) - pow_q(q, deg - 1);
    r.canonicalize();
    return r;
}

void check_resolved(const RegionSpec& region, const Weights& w, int depth) {
    // The below-resolution bucket of coordinate c must sit strictly under
    // every threshold the region can probe, so that membership is constant
    // on it. Thresholds: shell cuts on the bounded side reach exponent 0;
    // the other side is cut at (R - range) * weight.
    switch (region.kind) {
        case RegionSpec::Kind::E:
        case RegionSpec::Kind::EDir:
            for (int i = 0; i < w.m; ++i)
                if (depth < region.T * w.alpha(i))
                    throw InsufficientPrecision("grid oracle: x digits do not reach the T-shell cut");
            for (int j = 0; j < w.n; ++j)
                if (depth < region.T * w.beta(j) + 1)
                    throw InsufficientPrecision("grid oracle: y digits do not resolve the unit shell");
            break;
        case RegionSpec::Kind::F:
            for (int i = 0; i < w.m; ++i)
                if (depth < region.S * w.alpha(i) + 1)
                    throw InsufficientPrecision("grid oracle: x digits do not resolve the unit shell");
            for (int j = 0; j < w.n; ++j)
                if (depth < region.S * w.beta(j))
                    throw InsufficientPrecision("grid oracle: y digits do not reach the S-shell cut");
            break;
        case RegionSpec::Kind::Ball:
            break;  // everything in the box is inside
    }
}

Rat degree_space_measure(uint32_t q, const Weights& w, const RegionSpec& region, int depth,
                         const Int& budget) {
    check_resolved(region, w, depth);
    Fq f(q);
    int d = w.d();
    std::vector<int> bb = region_bounding_box(region, w);

    Int cells = 1;
    for (int c = 0; c < d; ++c) cells *= depth + 1;
    if (cells > budget) throw BudgetExceeded("grid oracle class count exceeds budget");

    std::vector<std::vector<DegClass>> classes(static_cast<size_t>(d));
    for (int c = 0; c < d; ++c) {
        auto& col = classes[static_cast<size_t>(c)];
        for (int deg = bb[static_cast<size_t>(c)]; deg > bb[static_cast<size_t>(c)] - depth; --deg)
            col.push_back({degree_class_measure(q, deg), Laurent::t_power(f, deg)});
        int floor_deg = bb[static_cast<size_t>(c)] - depth;
        col.push_back({pow_q(q, floor_deg), Laurent::t_power(f, floor_deg - 1)});
    }

    std::vector<size_t> idx(static_cast<size_t>(d), 0);
    LaurentVector point(static_cast<size_t>(d), Laurent(f));
    for (int c = 0; c < d; ++c) point[static_cast<size_t>(c)] = classes[static_cast<size_t>(c)][0].rep;
    Rat total(0);
    for (;;) {
        if (region_contains(region, point, w)) {
            Rat weight(1);
            for (int c = 0; c < d; ++c) weight *= classes[static_cast<size_t>(c)][idx[static_cast<size_t>(c)]].weight;
            total += weight;
        }
        int c = 0;
        while (c < d) {
            size_t& i = idx[static_cast<size_t>(c)];
            if (++i < classes[static_cast<size_t>(c)].size()) {
                point[static_cast<size_t>(c)] = classes[static_cast<size_t>(c)][i].rep;
                break;
            }
            i = 0;
            point[static_cast<size_t>(c)] = classes[static_cast<size_t>(c)][0].rep;
            ++c;
        }
        if (c == d) break;
    }
    total.canonicalize();
    return total;
}

// lambda of one quasi-norm shell {||v||_side = q^level} intersected with a
// direction cylinder, by enumerating the digit window that fixes both the
// shell membership and the cylinder table of every point in a cell.
Rat shell_cylinder_measure(uint32_t q, const Weights& w, Side side, const Rat& level,
                           const Cylinder& cyl, Int& cells, const Int& budget) {
    Fq f(q);
    int dim = side == Side::alpha ? w.m : w.n;
    long lift = rat_ceil(level);  // dilation step is -ceil(level)
    struct Window {
        int hi, lo;
        bool achieves;  // level * weight is an integer: top digit can set the norm
    };
    std::vector<Window> win(static_cast<size_t>(dim));
    Int patterns = 1;
    for (int c = 0; c < dim; ++c) {
        int a = side == Side::alpha ? w.alpha(c) : w.beta(c);
        Rat cap = level * a;
        cap.canonicalize();
        long hi = rat_floor(cap);
        long lo = hi;
        if (!cyl.is_full && cyl.depth > 0)
            lo = std::min(lo, lift * a - cyl.depth + 1);
        win[static_cast<size_t>(c)] = {static_cast<int>(hi), static_cast<int>(lo),
                                       Rat(hi) == cap};
        for (long e = lo; e <= hi; ++e) patterns *= q;
    }
    cells += patterns;
    if (cells > budget) throw BudgetExceeded("grid oracle digit enumeration exceeds budget");

    std::vector<std::vector<uint8_t>> digits(static_cast<size_t>(dim));
    for (int c = 0; c < dim; ++c)
        digits[static_cast<size_t>(c)].assign(
            static_cast<size_t>(win[static_cast<size_t>(c)].hi - win[static_cast<size_t>(c)].lo + 1), 0);

    Rat cell(1);
    for (int c = 0; c < dim; ++c) cell *= pow_q(q, win[static_cast<size_t>(c)].lo - 1);
    cell.canonicalize();

    Rat total(0);
    for (;;) {
        bool on_shell = false;
        for (int c = 0; c < dim && !on_shell; ++c)
            on_shell = win[static_cast<size_t>(c)].achieves && digits[static_cast<size_t>(c)].back() != 0;
        if (on_shell) {
            bool pass = true;
            if (!cyl.is_full) {
                LaurentVector v(static_cast<size_t>(dim), Laurent(f));
                for (int c = 0; c < dim; ++c)
                    v[static_cast<size_t>(c)] =
                        Laurent(f, win[static_cast<size_t>(c)].lo, digits[static_cast<size_t>(c)]);
                Direction dir = direction_project(v, side, w, cyl.depth);
                pass = cyl.contains_table(dir.digits);
            }
            if (pass) total += cell;
        }
        int c = 0;
        while (c < dim) {
            auto& dc = digits[static_cast<size_t>(c)];
            size_t p = 0;
            while (p < dc.size() && dc[p] + 1u == q) dc[p++] = 0;
            if (p < dc.size()) {
                ++dc[p];
                break;
            }
            ++c;
        }
        if (c == dim) break;
    }
    total.canonicalize();
    return total;
}

// lambda{0 < ||x||_alpha < q^c, dir in cyl}: sum the shells of one dilation
// period below the cut and resum the geometric tail exactly.
Rat dir_ball_measure(uint32_t q, const Weights& w, const Rat& c, const Cylinder& cyl, Int& cells,
                     const Int& budget) {
    // largest alpha-level strictly below c
    Rat top;
    bool have = false;
    for (int i = 0; i < w.m; ++i) {
        Rat cand(rat_ceil(c * w.alpha(i)) - 1, w.alpha(i));
        cand.canonicalize();
        if (!have || cand > top) {
            top = cand;
            have = true;
        }
    }
    Rat lo = top - 1;
    Rat period(0);
    for (const Rat& sigma : shell_levels(w, Side::alpha, lo, top)) {
        if (sigma == lo) continue;
        period += shell_cylinder_measure(q, w, Side::alpha, sigma, cyl, cells, budget);
    }
    long sum_a = 0;
    for (int i = 0; i < w.m; ++i) sum_a += w.alpha(i);
    Rat tail = Rat(1) - pow_q(q, -sum_a);  // sum over dilates: 1/(1 - q^{-sum a})
    Rat out = period / tail;
    out.canonicalize();
    return out;
}

Rat edir_measure(uint32_t q, const Weights& w, const RegionSpec& region, int depth,
                 const Int& budget) {
    check_resolved(region, w, depth);
    if (!region.c1.is_full && depth < region.c1.depth)
        throw InsufficientPrecision("grid oracle: depth below the x-cylinder table");
    if (!region.c2.is_full && depth < region.c2.depth)
        throw InsufficientPrecision("grid oracle: depth below the y-cylinder table");
    if (region.c1.is_empty() || region.c2.is_empty()) return Rat(0);

    Int cells = 0;
    Rat total(0);
    for (const Rat& k : shell_levels(w, Side::beta, Rat(0), Rat(region.T))) {
        Rat yk = shell_cylinder_measure(q, w, Side::beta, k, region.c2, cells, budget);
        if (yk == 0) continue;
        Rat cut = Rat(region.R) - k;
        cut.canonicalize();
        total += yk * dir_ball_measure(q, w, cut, region.c1, cells, budget);
    }
    total.canonicalize();
    return total;
}

}  // namespace

Rat grid_measure_oracle(uint32_t q, const Weights& w, const RegionSpec& region, int depth,
                        const Int& budget) {
    if (depth < 1) throw ConfigError("grid oracle needs depth >= 1");
    if (region.kind == RegionSpec::Kind::EDir) return edir_measure(q, w, region, depth, budget);
    return degree_space_measure(q, w, region, depth, budget);
}

}  // namespace ffl
