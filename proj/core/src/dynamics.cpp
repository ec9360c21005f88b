#include "ffl/dynamics.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "ffl/measures.hpp"
#include "poly_rows.hpp"

namespace ffl {

LatticeBasis flow_apply(const LatticeBasis& B, const Weights& w, long n) {
    B.validate();
    if (B.dim() != w.d()) throw DimensionMismatch("basis dimension != weight dimension");
    LatticeBasis out = B;
    for (auto& row : out.rows)
        for (int c = 0; c < w.d(); ++c) {
            long e = (c < w.m) ? n * w.alpha(c) : -n * w.beta(c - w.m);
            row[static_cast<size_t>(c)] = row[static_cast<size_t>(c)].shifted(static_cast<int>(e));
        }
    return out;
}

LatticeBasis ua_basis(const LaurentMatrix& A) {
    if (A.rows < 1 || A.cols < 1) throw DimensionMismatch("empty matrix");
    A.validate();
    const Fq f = A.entries[0].field();
    const int m = A.rows, n = A.cols, d = m + n;
    LatticeBasis B;
    B.rows.assign(static_cast<size_t>(d), LaurentVector(static_cast<size_t>(d), Laurent(f)));
    for (int i = 0; i < m; ++i) B.rows[static_cast<size_t>(i)][static_cast<size_t>(i)] = Laurent::t_power(f, 0);
    for (int j = 0; j < n; ++j) {
        auto& row = B.rows[static_cast<size_t>(m + j)];
        for (int i = 0; i < m; ++i) row[static_cast<size_t>(i)] = A.at(i, j);
        row[static_cast<size_t>(m + j)] = Laurent::t_power(f, 0);
    }
    return B;
}

namespace {

// Per-coordinate degree cutoffs of one y-shell slab of E at level k:
// x strictly below q^{R-k}, y at exactly q^k (closed cut minus open cut).
std::vector<int> e_cuts(const Weights& w, int R, const Rat& k, bool closed) {
    std::vector<int> cuts(static_cast<size_t>(w.d()));
    for (int i = 0; i < w.m; ++i) {
        Rat v = (Rat(R) - k) * w.alpha(i);
        cuts[static_cast<size_t>(i)] = static_cast<int>(rat_ceil(v) - 1);
    }
    for (int j = 0; j < w.n; ++j) {
        Rat v = k * w.beta(j);
        cuts[static_cast<size_t>(w.m + j)] =
            static_cast<int>(closed ? rat_floor(v) : rat_ceil(v) - 1);
    }
    return cuts;
}

// One x-shell slab of F at level s: x at exactly q^s, y strictly below q^{R-s}.
std::vector<int> f_cuts(const Weights& w, int R, const Rat& s, bool closed) {
    std::vector<int> cuts(static_cast<size_t>(w.d()));
    for (int i = 0; i < w.m; ++i) {
        Rat v = s * w.alpha(i);
        cuts[static_cast<size_t>(i)] = static_cast<int>(closed ? rat_floor(v) : rat_ceil(v) - 1);
    }
    for (int j = 0; j < w.n; ++j) {
        Rat v = (Rat(R) - s) * w.beta(j);
        cuts[static_cast<size_t>(w.m + j)] = static_cast<int>(rat_ceil(v) - 1);
    }
    return cuts;
}

Int shell_box_count(const ReducedBasis& rb, const std::vector<int>& closed,
                    const std::vector<int>& open) {
    return box_point_count(rb, closed) - box_point_count(rb, open);
}

// The common per-step column multipliers of every walker here: one g_a step
// (or one unit shell step) times the uniform lift t^{max_beta} that keeps all
// exponents nonnegative.
std::vector<int> walk_steps(const Weights& w) {
    std::vector<int> st(static_cast<size_t>(w.d()));
    const int mb = w.max_beta();
    for (int i = 0; i < w.m; ++i) st[static_cast<size_t>(i)] = mb + w.alpha(i);
    for (int j = 0; j < w.n; ++j) st[static_cast<size_t>(w.m + j)] = mb - w.beta(j);
    return st;
}

// Incrementally reduced image of a column-dilated lattice. The stored rows
// generate t^sigma * diag(t^{-cuts[c]}) * Lambda; advancing bumps the column
// offsets by `step` (all >= 0 by the t^{max_beta} lift), so consecutive
// dilates re-reduce from an almost-reduced state in O(1) cancellations.
struct Walker {
    Fq f;
    int d = 0;
    long sigma = 0;
    int sig_step = 0;
    std::vector<int> step;
    detail::PolyRows pr;

    explicit Walker(const Fq& field) : f(field) {}

    void load(const LatticeBasis& B, const std::vector<int>& cuts, std::vector<int> step_,
              int sig_step_) {
        d = B.dim();
        step = std::move(step_);
        sig_step = sig_step_;
        long s0 = 0;
        for (int i = 0; i < d; ++i)
            for (int c = 0; c < d; ++c) {
                const Laurent& e = B.rows[static_cast<size_t>(i)][static_cast<size_t>(c)];
                if (!e.zero()) s0 = std::max(s0, static_cast<long>(cuts[static_cast<size_t>(c)]) - e.bottom());
            }
        sigma = s0;
        pr.m.assign(static_cast<size_t>(d), std::vector<detail::Coeffs>(static_cast<size_t>(d)));
        pr.deg.assign(static_cast<size_t>(d), -1);
        pr.pivot.assign(static_cast<size_t>(d), -1);
        pr.col_off.assign(static_cast<size_t>(d), 0);
        for (int i = 0; i < d; ++i)
            for (int c = 0; c < d; ++c) {
                const Laurent& e = B.rows[static_cast<size_t>(i)][static_cast<size_t>(c)];
                if (e.zero()) continue;
                long base = s0 - cuts[static_cast<size_t>(c)];
                detail::Coeffs v(static_cast<size_t>(e.top() + base) + 1, 0);
                for (int k = e.bottom(); k <= e.top(); ++k)
                    v[static_cast<size_t>(k + base)] = static_cast<uint8_t>(e.coeff(k));
                detail::trim(v);
                pr.m[static_cast<size_t>(i)][static_cast<size_t>(c)] = std::move(v);
            }
        for (int i = 0; i < d; ++i) pr.recompute(i);
        detail::reduce_rows(pr, f);
    }

    void advance() {
        for (int c = 0; c < d; ++c) pr.col_off[static_cast<size_t>(c)] += step[static_cast<size_t>(c)];
        sigma += sig_step;
        for (int i = 0; i < d; ++i) pr.recompute(i);
        detail::reduce_rows(pr, f);
    }

    // points of the dilated lattice with every coordinate degree <= 0
    Int count_at_origin() const {
        long e = 0;
        for (int i = 0; i < d; ++i) {
            long k = sigma - pr.deg[static_cast<size_t>(i)] + 1;
            if (k > 0) e += k;
        }
        return pow_q_int(f.q(), e);
    }

    void plain_degrees(std::vector<long>& out) const {
        out.resize(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) out[static_cast<size_t>(i)] = pr.deg[static_cast<size_t>(i)] - sigma;
    }
};

Int edir_count(const RegionSpec& region, const LatticeBasis& B, const Weights& w,
               const Int& budget) {
    if (region.c1.is_empty() || region.c2.is_empty()) return 0;
    std::vector<int> bb = region_bounding_box(region, w);
    const int d = B.dim();
    LatticeBasis scaled = B;
    for (auto& row : scaled.rows)
        for (int c = 0; c < d; ++c)
            row[static_cast<size_t>(c)] = row[static_cast<size_t>(c)].shifted(-bb[static_cast<size_t>(c)]);
    std::vector<LaurentVector> pts = enumerate_ball(weak_popov_reduce(scaled), 0, budget);
    Int cnt = 0;
    for (auto& v : pts) {
        for (int c = 0; c < d; ++c)
            v[static_cast<size_t>(c)] = v[static_cast<size_t>(c)].shifted(bb[static_cast<size_t>(c)]);
        if (region_contains(region, v, w)) cnt += 1;
    }
    return cnt;
}

}  // namespace

Int siegel_count(const RegionSpec& region, const LatticeBasis& B, const Weights& w,
                 const Int& budget) {
    B.validate();
    if (region.kind == RegionSpec::Kind::Ball)
        return ball_point_count(weak_popov_reduce(B), region.r - 1) - 1;
    if (B.dim() != w.d()) throw DimensionMismatch("basis dimension != weight dimension");
    switch (region.kind) {
        case RegionSpec::Kind::E: {
            ReducedBasis rb = weak_popov_reduce(B);
            Int total = 0;
            for (const Rat& k : shell_levels(w, Side::beta, Rat(0), Rat(region.T)))
                total += shell_box_count(rb, e_cuts(w, region.R, k, true),
                                         e_cuts(w, region.R, k, false));
            return total;
        }
        case RegionSpec::Kind::F: {
            ReducedBasis rb = weak_popov_reduce(B);
            Int total = 0;
            for (const Rat& s : shell_levels(w, Side::alpha, Rat(0), Rat(region.S)))
                total += shell_box_count(rb, f_cuts(w, region.R, s, true),
                                         f_cuts(w, region.R, s, false));
            return total;
        }
        case RegionSpec::Kind::EDir:
            return edir_count(region, B, w, budget);
        default:
            throw ConfigError("unsupported region kind");
    }
}

Observable Observable::siegel(RegionSpec region) {
    Observable o;
    o.kind = Kind::SiegelCount;
    o.region = std::move(region);
    return o;
}

Observable Observable::delta_ge(LogNorm eps) {
    Observable o;
    o.kind = Kind::IndicatorDeltaGe;
    o.eps = std::move(eps);
    return o;
}

Observable Observable::alpha() {
    Observable o;
    o.kind = Kind::AlphaHeight;
    return o;
}

std::string Observable::str() const {
    switch (kind) {
        case Kind::SiegelCount:
            return "siegel:" + region.str();
        case Kind::IndicatorDeltaGe:
            return "indicator:delta_ge:" + eps.str();
        default:
            return "alpha";
    }
}

Observable Observable::parse(const std::string& s) {
    if (s == "alpha") return alpha();
    const std::string dg = "indicator:delta_ge:";
    if (s.rfind(dg, 0) == 0) {
        std::string rest = s.substr(dg.size());
        if (rest == "zero") return delta_ge(LogNorm::zero());
        try {
            return delta_ge(LogNorm::from_exponent(parse_rat(rest)));
        } catch (const Error&) {
            throw ConfigError("bad delta threshold exponent: " + rest);
        }
    }
    const std::string sg = "siegel:";
    if (s.rfind(sg, 0) == 0) return siegel(RegionSpec::parse(s.substr(sg.size())));
    throw ConfigError("unknown observable: " + s);
}

int orbit_min_depth(const Observable& obs, const Weights& w, long N) {
    if (obs.kind != Observable::Kind::SiegelCount) return 0;
    const RegionSpec& rg = obs.region;
    const long ma = w.max_alpha(), mb = w.max_beta();
    if (rg.kind == RegionSpec::Kind::E) {
        long hi = rg.T + N - 1;
        return static_cast<int>(hi * mb + std::max(0L, hi - rg.R) * ma + 1);
    }
    if (rg.kind == RegionSpec::Kind::F)
        return static_cast<int>((N - 1) * ma + std::max(0L, rg.R + N - 1) * mb + 1);
    return 0;  // Ball / EDir read the exact finite-depth lattice directly
}

namespace {

// Series of an observable that only reads the reduced row degrees of g^n Λ.
std::vector<Rat> orbit_scan(const Observable& obs, const LatticeBasis& base, const Weights& w,
                            long N) {
    const Fq f = base.field();
    Walker wk(f);
    wk.load(base, std::vector<int>(static_cast<size_t>(w.d()), 0), walk_steps(w), w.max_beta());
    std::vector<long> degs;
    std::vector<Rat> out;
    out.reserve(static_cast<size_t>(N));
    Int acc = 0;
    for (long n = 0; n < N; ++n) {
        if (n > 0) wk.advance();
        wk.plain_degrees(degs);
        Int value;
        if (obs.kind == Observable::Kind::AlphaHeight) {
            long sum = 0, neg = 0;
            for (long p : degs) {
                sum += p;
                if (p < 0) neg -= p;
            }
            if (sum != 0) throw NonUnimodular("orbit row degrees sum to " + std::to_string(sum));
            value = pow_q_int(f.q(), neg);
        } else if (obs.kind == Observable::Kind::IndicatorDeltaGe) {
            long mind = *std::min_element(degs.begin(), degs.end());
            value = (LogNorm::from_int_exponent(mind) >= obs.eps) ? 1 : 0;
        } else {  // SiegelCount(Ball)
            long e = 0;
            for (long p : degs) {
                long k = obs.region.r - p;
                if (k > 0) e += k;
            }
            value = pow_q_int(f.q(), e) - 1;
        }
        acc += value;
        Rat avg(acc, Int(n + 1));
        avg.canonicalize();
        out.push_back(std::move(avg));
    }
    return out;
}

// Per-level slab counts s_k of the fixed lattice, walked incrementally along
// each unit-step residue chain of the level grid.
std::map<Rat, Int> slab_counts(const LatticeBasis& base, const Weights& w, int R,
                               const std::vector<Rat>& levels, bool e_side) {
    const Fq f = base.field();
    std::map<Rat, Int> out;
    for (const Rat& lev : levels) out.emplace(lev, Int(0));
    const Rat lo = levels.front(), hi = levels.back();
    std::vector<int> steps = walk_steps(w);
    for (const Rat& start : levels) {
        // chain heads: E walks up from levels in [lo, lo+1); F walks down from (hi-1, hi]
        if (e_side) {
            Rat bound = lo + 1;
            if (!(start < bound)) continue;
        } else {
            Rat bound = hi - 1;
            if (!(start > bound)) continue;
        }
        Walker closed(f), open(f);
        closed.load(base, e_side ? e_cuts(w, R, start, true) : f_cuts(w, R, start, true), steps,
                    w.max_beta());
        open.load(base, e_side ? e_cuts(w, R, start, false) : f_cuts(w, R, start, false), steps,
                  w.max_beta());
        Rat k = start;
        for (;;) {
            out[k] = closed.count_at_origin() - open.count_at_origin();
            Rat next = e_side ? Rat(k + 1) : Rat(k - 1);
            next.canonicalize();
            if (e_side ? (next > hi) : (next < lo)) break;
            closed.advance();
            open.advance();
            k = std::move(next);
        }
    }
    return out;
}

std::vector<Rat> prefix_averages(const std::vector<Int>& values) {
    std::vector<Rat> out;
    out.reserve(values.size());
    Int acc = 0;
    for (size_t n = 0; n < values.size(); ++n) {
        acc += values[n];
        Rat avg(acc, Int(static_cast<long>(n) + 1));
        avg.canonicalize();
        out.push_back(std::move(avg));
    }
    return out;
}

// Siegel E series via the sliding-window identity: the count over g^n Λ equals
// the sum of the fixed-lattice slab counts s_k over levels k in [n, n+T].
std::vector<Rat> e_series(const RegionSpec& rg, const LatticeBasis& base, const Weights& w,
                          long N) {
    std::vector<Rat> levels = shell_levels(w, Side::beta, Rat(0), Rat(rg.T + N - 1));
    std::map<Rat, Int> sk = slab_counts(base, w, rg.R, levels, true);
    std::vector<Int> chi(static_cast<size_t>(N));
    size_t lo = 0, hi = 0;
    Int window = 0;
    for (long n = 0; n < N; ++n) {
        Rat top(n + rg.T), bot(n);
        while (hi < levels.size() && levels[hi] <= top) window += sk[levels[hi++]];
        while (lo < hi && levels[lo] < bot) window -= sk[levels[lo++]];
        chi[static_cast<size_t>(n)] = window;
    }
    return prefix_averages(chi);
}

// Siegel F series: the x-shell window [-n, S-n] slides downward with n.
std::vector<Rat> f_series(const RegionSpec& rg, const LatticeBasis& base, const Weights& w,
                          long N) {
    std::vector<Rat> levels = shell_levels(w, Side::alpha, Rat(-(N - 1)), Rat(rg.S));
    std::map<Rat, Int> fs = slab_counts(base, w, rg.R, levels, false);
    std::vector<Int> chi(static_cast<size_t>(N));
    size_t lo = levels.size(), hi = levels.size();  // window is [lo, hi)
    Int window = 0;
    for (long n = 0; n < N; ++n) {
        Rat top(rg.S - n), bot(-n);
        while (lo > 0 && levels[lo - 1] >= bot) window += fs[levels[--lo]];
        while (hi > lo && levels[hi - 1] > top) window -= fs[levels[--hi]];
        chi[static_cast<size_t>(n)] = window;
    }
    return prefix_averages(chi);
}

}  // namespace

std::vector<Rat> birkhoff_series(const Observable& obs, const LaurentMatrix& A, const Weights& w,
                                 long N, const Int& budget) {
    if (N < 1) throw ConfigError("series length must be >= 1");
    if (A.rows != w.m || A.cols != w.n) throw DimensionMismatch("matrix shape != weight shape");
    A.validate();
    int need = orbit_min_depth(obs, w, N);
    if (A.depth < need)
        throw InsufficientPrecision("series needs depth " + std::to_string(need) + ", have " +
                                    std::to_string(A.depth));
    LatticeBasis base = ua_basis(A);
    if (obs.kind != Observable::Kind::SiegelCount) return orbit_scan(obs, base, w, N);
    switch (obs.region.kind) {
        case RegionSpec::Kind::Ball:
            return orbit_scan(obs, base, w, N);
        case RegionSpec::Kind::E:
            return e_series(obs.region, base, w, N);
        case RegionSpec::Kind::F:
            return f_series(obs.region, base, w, N);
        default: {  // EDir: no incremental route; evaluate step by step
            std::vector<Int> chi(static_cast<size_t>(N));
            for (long n = 0; n < N; ++n)
                chi[static_cast<size_t>(n)] = siegel_count(obs.region, flow_apply(base, w, n), w, budget);
            return prefix_averages(chi);
        }
    }
}

}  // namespace ffl
