#include "ffl/counting.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "ffl/errors.hpp"
#include "ffl/fq_linalg.hpp"
#include "ffl/measures.hpp"

namespace ffl {

namespace {

// Per-shell data for the x-side thresholds. For a q-vector on the y-shell of
// level k, row i admits q^{t_i+1} choices of p_i when t_i >= -1; when
// t_i < -1 it admits one choice iff the top U_i fractional digits of (Aq)_i
// vanish, U_i = -t_i - 1.
struct ShellInfo {
    std::vector<long> t;
    long free_exp = 0;                         // sum of (t_i + 1) over t_i >= -1
    std::vector<std::pair<int, long>> vanish;  // (row, U) for t_i < -1
};

// Shared loop state: the odometer over candidate q-vectors (coordinate-major
// digit boxes, degree v at slot off[j]+v) plus the shell lookup keyed by the
// scaled level max_j deg(q_j) * (L / b_j), L = lcm of the y-weights.
struct Mill {
    uint32_t q;
    int m, n;
    long L = 1;
    std::vector<long> mul;
    std::vector<ShellInfo> shells;

    std::vector<int> len, off, pos2j;
    int total = 0;
    std::vector<uint8_t> dig;
    std::vector<int> deg;

    Mill(uint32_t q_, const Weights& w, int R, int T) : q(q_), m(w.m), n(w.n) {
        for (int j = 0; j < n; ++j) L = std::lcm(L, static_cast<long>(w.beta(j)));
        for (int j = 0; j < n; ++j) mul.push_back(L / w.beta(j));

        shells.resize(static_cast<size_t>(T) * L + 1);
        for (long key = 0; key <= static_cast<long>(T) * L; ++key) {
            ShellInfo& si = shells[static_cast<size_t>(key)];
            for (int i = 0; i < m; ++i) {
                long t = ceil_div((static_cast<long>(R) * L - key) * w.alpha(i), L) - 1;
                si.t.push_back(t);
                if (t >= -1)
                    si.free_exp += t + 1;
                else
                    si.vanish.emplace_back(i, -t - 1);
            }
        }

        for (int j = 0; j < n; ++j) {
            len.push_back(T * w.beta(j) + 1);  // degrees 0..T*b_j
            off.push_back(total);
            for (int v = 0; v < len[static_cast<size_t>(j)]; ++v) pos2j.push_back(j);
            total += len[static_cast<size_t>(j)];
        }
        dig.assign(static_cast<size_t>(total), 0);
        deg.assign(static_cast<size_t>(n), -1);
    }

    void reset() {
        std::fill(dig.begin(), dig.end(), 0);
        std::fill(deg.begin(), deg.end(), -1);
    }

    // Adds one to the box counter. Every changed digit moves by +1 mod q and
    // the changed slots are exactly [0, result]. Returns -1 once the box wraps
    // back to zero (enumeration complete).
    int advance() {
        for (int p = 0; p < total; ++p) {
            uint8_t v = static_cast<uint8_t>(dig[static_cast<size_t>(p)] + 1);
            if (v == q) {
                dig[static_cast<size_t>(p)] = 0;
                continue;
            }
            dig[static_cast<size_t>(p)] = v;
            return p;
        }
        return -1;
    }

    void refresh_degrees(int top_changed) {
        for (int j = 0; j <= pos2j[static_cast<size_t>(top_changed)]; ++j) {
            int d = -1;
            for (int v = len[static_cast<size_t>(j)] - 1; v >= 0; --v)
                if (dig[static_cast<size_t>(off[static_cast<size_t>(j)] + v)]) {
                    d = v;
                    break;
                }
            deg[static_cast<size_t>(j)] = d;
        }
    }

    long key() const {
        long k = 0;
        for (int j = 0; j < n; ++j)
            if (deg[static_cast<size_t>(j)] >= 0)
                k = std::max(k, deg[static_cast<size_t>(j)] * mul[static_cast<size_t>(j)]);
        return k;
    }

    uint32_t qdigit(int j, long e) const {  // coefficient of t^e in q_j
        if (e < 0 || e >= len[static_cast<size_t>(j)]) return 0;
        return dig[static_cast<size_t>(off[static_cast<size_t>(j)] + e)];
    }
};

// Running fractional digits of Aq. frac[i][u] is the digit of (Aq)_i at
// degree -(u+1); adig[i*n+j][u] likewise for A_ij. Each odometer step changes
// q_j digits by +1, so folding in column j once keeps the digits exact.
struct FracState {
    uint32_t q;
    int m, n;
    long FD;
    std::vector<std::vector<uint8_t>> adig;
    std::vector<std::vector<uint8_t>> frac;

    FracState(uint32_t q_, int m_, int n_, long fd)
        : q(q_), m(m_), n(n_), FD(fd),
          adig(static_cast<size_t>(m_) * n_, std::vector<uint8_t>(static_cast<size_t>(fd), 0)),
          frac(static_cast<size_t>(m_), std::vector<uint8_t>(static_cast<size_t>(fd), 0)) {}

    void load(const LaurentMatrix& A) {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<uint8_t>& a = adig[static_cast<size_t>(i) * n + j];
                for (long u = 0; u < FD; ++u)
                    a[static_cast<size_t>(u)] =
                        static_cast<uint8_t>(A.at(i, j).coeff(static_cast<int>(-(u + 1))));
            }
    }

    void reset_frac() {
        for (std::vector<uint8_t>& f : frac) std::fill(f.begin(), f.end(), 0);
    }

    void bump(int j, int v) {
        for (int i = 0; i < m; ++i) {
            const uint8_t* a = adig[static_cast<size_t>(i) * n + j].data();
            uint8_t* f = frac[static_cast<size_t>(i)].data();
            for (long u = v; u < FD; ++u) {
                int s = f[u - v] + a[u];
                f[u - v] = static_cast<uint8_t>(s >= static_cast<int>(q) ? s - static_cast<int>(q)
                                                                         : s);
            }
        }
    }

    bool digits_vanish(int i, long U) const {
        const uint8_t* f = frac[static_cast<size_t>(i)].data();
        for (long u = 0; u < U; ++u)
            if (f[u]) return false;
        return true;
    }
};

// Accumulates sums of q^e without touching bignums on the hot path.
struct PowAccum {
    uint32_t q;
    long max_e = 0;
    std::vector<unsigned long long> pows;
    unsigned long long chunk = 0;
    Int total = 0;

    explicit PowAccum(uint32_t q_) : q(q_) {
        unsigned long long p = 1;
        pows.push_back(p);
        while (p <= (1ull << 62) / q) {
            p *= q;
            pows.push_back(p);
            ++max_e;
        }
    }

    void add_pow(long e) {
        if (e <= max_e) {
            chunk += pows[static_cast<size_t>(e)];
            if (chunk >= (1ull << 62)) flush();
        } else {
            total += pow_q_int(q, e);
        }
    }

    void flush() {
        if (chunk) {
            total += Int(static_cast<unsigned long>(chunk));
            chunk = 0;
        }
    }

    Int take() {
        flush();
        return total;
    }
};

Int run_plain_count(Mill& mill, FracState& fs) {
    PowAccum acc(mill.q);
    int top;
    while ((top = mill.advance()) >= 0) {
        for (int pos = 0; pos <= top; ++pos) {
            int j = mill.pos2j[static_cast<size_t>(pos)];
            fs.bump(j, pos - mill.off[static_cast<size_t>(j)]);
        }
        mill.refresh_degrees(top);
        const ShellInfo& si = mill.shells[static_cast<size_t>(mill.key())];
        bool ok = true;
        for (const auto& [i, U] : si.vanish)
            if (!fs.digits_vanish(i, U)) {
                ok = false;
                break;
            }
        if (ok) acc.add_pow(si.free_exp);
    }
    return acc.take();
}

void check_shape(const LaurentMatrix& A, const Weights& w, int T) {
    if (A.rows != w.m || A.cols != w.n)
        throw DimensionMismatch("matrix shape does not match the weights");
    if (T < 0) throw ConfigError("T must be >= 0");
    A.validate();
}

Fq matrix_field(const LaurentMatrix& A) {
    if (A.entries.empty()) throw DimensionMismatch("empty matrix");
    return A.entries.front().field();
}

}  // namespace

int min_depth(const Weights& w, int R, int T) {
    if (T < 0) throw ConfigError("T must be >= 0");
    long need = static_cast<long>(T) * w.max_beta();
    long below = static_cast<long>(T - R) * w.max_alpha();
    if (below > 0) need += below;
    return static_cast<int>(need + 1);
}

CountResult count_solutions(const LaurentMatrix& A, const Weights& w, int R, int T) {
    check_shape(A, w, T);
    Fq f = matrix_field(A);
    int P = min_depth(w, R, T);
    if (A.depth < P)
        throw InsufficientPrecision("count needs " + std::to_string(P) + " fractional digits, matrix has " +
                                    std::to_string(A.depth));
    Mill mill(f.q(), w, R, T);
    FracState fs(f.q(), w.m, w.n, P);
    fs.load(A);
    CountResult res;
    res.count = run_plain_count(mill, fs);
    res.q = f.q();
    res.R = R;
    res.T = T;
    res.depth_used = P;
    return res;
}

Rat exhaustive_average_count(uint32_t q, const Weights& w, int R, int T,
                             const Int& max_patterns) {
    Fq f(q);
    int P = min_depth(w, R, T);
    long cells = static_cast<long>(w.m) * w.n * P;
    Int npat = pow_q_int(q, cells);
    if (npat > max_patterns) throw BudgetExceeded("matrix pattern space exceeds the budget");

    Mill mill(q, w, R, T);
    FracState fs(q, w.m, w.n, P);
    Int grand = 0;
    // Odometer over all digit patterns of A; each visited pattern reuses the
    // preloaded tables, only the inner frac state is reset per matrix.
    std::vector<uint8_t*> slot;
    for (int e = 0; e < w.m * w.n; ++e)
        for (int u = 0; u < P; ++u) slot.push_back(&fs.adig[static_cast<size_t>(e)][static_cast<size_t>(u)]);

    while (true) {
        fs.reset_frac();
        mill.reset();
        grand += run_plain_count(mill, fs);
        size_t p = 0;
        for (; p < slot.size(); ++p) {
            uint8_t v = static_cast<uint8_t>(*slot[p] + 1);
            *slot[p] = (v == q) ? 0 : v;
            if (v != q) break;
        }
        if (p == slot.size()) break;
    }
    Rat mean(grand, npat);
    mean.canonicalize();
    return mean;
}

DirectionalCountResult count_solutions_directional(const LaurentMatrix& A, const Weights& w,
                                                   int R, int T, const Cylinder& c1,
                                                   const Cylinder& c2, const Int& budget) {
    if (c1.side != Side::alpha || c2.side != Side::beta)
        throw ConfigError("directional count takes an x-side and a y-side cylinder");
    check_shape(A, w, T);
    Fq f = matrix_field(A);
    uint32_t q = f.q();
    int P = min_depth(w, R, T);
    if (A.depth < P)
        throw InsufficientPrecision("count needs " + std::to_string(P) +
                                    " fractional digits, matrix has " + std::to_string(A.depth));
    // Direction digits probe below the threshold window, but the fractional
    // part of Aq has no digits below the support of A itself.
    long FD = P;
    for (const Laurent& e : A.entries)
        if (!e.zero() && e.bottom() < -FD) FD = -e.bottom();

    Mill mill(q, w, R, T);
    FracState fs(q, w.m, w.n, FD);
    fs.load(A);

    const int D1 = c1.is_full ? 0 : c1.depth;
    const int D2 = c2.is_full ? 0 : c2.depth;
    std::vector<uint8_t> table1(static_cast<size_t>(w.m) * std::max(D1, 1));
    std::vector<uint8_t> table2(static_cast<size_t>(w.n) * std::max(D2, 1));

    DirectionalCountResult res;
    res.count = 0;
    res.degenerate = 0;
    res.q = q;
    res.R = R;
    res.T = T;
    res.depth_used = static_cast<int>(FD);

    PowAccum acc(q);
    Int enumerated = 0;
    std::vector<int> free_rows;
    std::vector<uint8_t> rdig;
    std::vector<int> roff;

    int top;
    while ((top = mill.advance()) >= 0) {
        for (int pos = 0; pos <= top; ++pos) {
            int j = mill.pos2j[static_cast<size_t>(pos)];
            fs.bump(j, pos - mill.off[static_cast<size_t>(j)]);
        }
        mill.refresh_degrees(top);
        long key = mill.key();
        const ShellInfo& si = mill.shells[static_cast<size_t>(key)];

        bool ok = true;
        for (const auto& [i, U] : si.vanish)
            if (!fs.digits_vanish(i, U)) {
                ok = false;
                break;
            }
        if (!ok) continue;

        // A pair with Aq - p = 0 exists iff the whole fractional part vanishes
        // and every row admits p_i (t_i >= -1 or the vanish already held).
        bool frac_zero = true;
        for (int i = 0; i < w.m && frac_zero; ++i) frac_zero = fs.digits_vanish(i, FD);
        if (frac_zero) res.degenerate += 1;

        if (c1.is_empty() || c2.is_empty()) continue;

        if (!c2.is_full) {
            long s2 = -ceil_div(key, mill.L);  // normalize ||q|| into the unit shell
            for (int j = 0; j < w.n; ++j)
                for (int p = 0; p < D2; ++p)
                    table2[static_cast<size_t>(j) * D2 + static_cast<size_t>(p)] =
                        static_cast<uint8_t>(mill.qdigit(j, -p - s2 * w.beta(j)));
            if (!c2.contains_table(table2)) continue;
        }

        if (si.free_exp == 0) {
            if (frac_zero) continue;  // the single pair is the degenerate one
            // x = fractional part of Aq; top digit per row from the frac table
            long num = 0, den = 1;
            bool first = true;
            for (int i = 0; i < w.m; ++i) {
                long u = 0;
                const std::vector<uint8_t>& fr = fs.frac[static_cast<size_t>(i)];
                while (u < FD && fr[static_cast<size_t>(u)] == 0) ++u;
                if (u == FD) continue;
                long cn = -(u + 1), cd = w.alpha(i);
                if (first || cn * den > num * cd) {
                    num = cn;
                    den = cd;
                    first = false;
                }
            }
            long s1 = -ceil_div(num, den);
            if (!c1.is_full) {
                for (int i = 0; i < w.m; ++i)
                    for (int p = 0; p < D1; ++p) {
                        long u = p + s1 * w.alpha(i);  // digit at degree -p - s1*a_i
                        table1[static_cast<size_t>(i) * D1 + static_cast<size_t>(p)] =
                            (u >= 1 && u <= FD)
                                ? fs.frac[static_cast<size_t>(i)][static_cast<size_t>(u - 1)]
                                : 0;
                    }
                if (!c1.contains_table(table1)) continue;
            }
            res.count += 1;
            continue;
        }

        // Rows with t_i >= 0 leave q^{t_i+1} choices of p_i; enumerate them.
        free_rows.clear();
        roff.clear();
        int rtotal = 0;
        for (int i = 0; i < w.m; ++i)
            if (si.t[static_cast<size_t>(i)] >= 0) {
                free_rows.push_back(i);
                roff.push_back(rtotal);
                rtotal += static_cast<int>(si.t[static_cast<size_t>(i)]) + 1;
            }
        enumerated += pow_q_int(q, si.free_exp);
        if (enumerated > budget) throw BudgetExceeded("directional enumeration exceeds the budget");
        rdig.assign(static_cast<size_t>(rtotal), 0);

        while (true) {
            // x_i = r_i + frac_i for free rows, frac_i otherwise
            long num = 0, den = 1;
            bool first = true, all_zero = true;
            for (int i = 0; i < w.m; ++i) {
                long d;
                int fi = -1;
                for (size_t k = 0; k < free_rows.size(); ++k)
                    if (free_rows[k] == i) fi = static_cast<int>(k);
                long rtop = -1;
                if (fi >= 0) {
                    long nd = si.t[static_cast<size_t>(i)] + 1;
                    for (long v = nd - 1; v >= 0; --v)
                        if (rdig[static_cast<size_t>(roff[static_cast<size_t>(fi)] + v)]) {
                            rtop = v;
                            break;
                        }
                }
                if (rtop >= 0) {
                    d = rtop;
                } else {
                    long u = 0;
                    const std::vector<uint8_t>& fr = fs.frac[static_cast<size_t>(i)];
                    while (u < FD && fr[static_cast<size_t>(u)] == 0) ++u;
                    if (u == FD) continue;  // zero coordinate
                    d = -(u + 1);
                }
                all_zero = false;
                if (first || d * den > num * static_cast<long>(w.alpha(i))) {
                    num = d;
                    den = w.alpha(i);
                    first = false;
                }
            }
            if (!all_zero) {
                long s1 = -ceil_div(num, den);
                bool pass = true;
                if (!c1.is_full) {
                    for (int i = 0; i < w.m; ++i)
                        for (int p = 0; p < D1; ++p) {
                            long e = -p - s1 * w.alpha(i);  // degree probed
                            uint32_t dg = 0;
                            if (e >= 0) {
                                int fi = -1;
                                for (size_t k = 0; k < free_rows.size(); ++k)
                                    if (free_rows[k] == i) fi = static_cast<int>(k);
                                if (fi >= 0 && e <= si.t[static_cast<size_t>(i)])
                                    dg = rdig[static_cast<size_t>(roff[static_cast<size_t>(fi)] + e)];
                            } else if (-e <= FD) {
                                dg = fs.frac[static_cast<size_t>(i)][static_cast<size_t>(-e - 1)];
                            }
                            table1[static_cast<size_t>(i) * D1 + static_cast<size_t>(p)] =
                                static_cast<uint8_t>(dg);
                        }
                    pass = c1.contains_table(table1);
                }
                if (pass) res.count += 1;
            }
            size_t p = 0;
            for (; p < rdig.size(); ++p) {
                uint8_t v = static_cast<uint8_t>(rdig[p] + 1);
                rdig[p] = (v == q) ? 0 : v;
                if (v != q) break;
            }
            if (p == rdig.size()) break;
        }
    }
    return res;
}

Rat solution_probability(const std::vector<FqPoly>& qvec, const Weights& w, int R, uint32_t q) {
    if (static_cast<int>(qvec.size()) != w.n)
        throw DimensionMismatch("q-vector length does not match the weights");
    long L = 1;
    for (int j = 0; j < w.n; ++j) L = std::lcm(L, static_cast<long>(w.beta(j)));
    long key = -1;
    for (int j = 0; j < w.n; ++j)
        if (!qvec[static_cast<size_t>(j)].zero())
            key = std::max(key, static_cast<long>(qvec[static_cast<size_t>(j)].degree()) *
                                    (L / w.beta(j)));
    if (key < 0) throw ZeroVector("q-vector must be nonzero");

    Fq f(q);
    Rat prob(1);
    for (int i = 0; i < w.m; ++i) {
        long t = ceil_div((static_cast<long>(R) * L - key) * w.alpha(i), L) - 1;
        if (t >= -1) continue;  // some p_i always works
        long U = -t - 1;
        long maxdeg = 0;
        for (int j = 0; j < w.n; ++j)
            if (!qvec[static_cast<size_t>(j)].zero())
                maxdeg = std::max(maxdeg, static_cast<long>(qvec[static_cast<size_t>(j)].degree()));
        long depth = U + maxdeg;  // digits of row i that the system can touch
        // Equation u (u = 1..U): digit of (Aq)_i at degree -u must vanish.
        // Unknown (j, w) is the digit of A_ij at degree -w; its coefficient in
        // equation u is the coefficient of t^{w-u} in q_j.
        std::vector<std::vector<uint32_t>> rows;
        for (long u = 1; u <= U; ++u) {
            std::vector<uint32_t> row(static_cast<size_t>(w.n) * depth, 0);
            for (int j = 0; j < w.n; ++j) {
                const FqPoly& qj = qvec[static_cast<size_t>(j)];
                if (qj.zero()) continue;
                for (long wdig = u; wdig <= u + qj.degree(); ++wdig)
                    row[static_cast<size_t>(j) * depth + static_cast<size_t>(wdig - 1)] =
                        qj.coeff(static_cast<int>(wdig - u));
            }
            rows.push_back(std::move(row));
        }
        int rank = fq_matrix_rank(f, rows);
        prob *= pow_q(q, -static_cast<long>(rank));
    }
    Rat out(prob);
    out.canonicalize();
    return out;
}

Rat expected_count_shell(uint32_t q, const Weights& w, int R, const Rat& k) {
    long hi = w.n, lo = 0, xs = 0;
    for (int j = 0; j < w.n; ++j) {
        Rat kb = k * w.beta(j);
        hi += rat_floor(kb);
        lo += rat_ceil(kb);
    }
    for (int i = 0; i < w.m; ++i) {
        Rat ra = (Rat(R) - k) * w.alpha(i);
        xs += rat_ceil(ra);
    }
    Rat shell = pow_q(q, hi) - pow_q(q, lo);
    Rat out = shell * pow_q(q, xs);
    out.canonicalize();
    return out;
}

Rat expected_count(uint32_t q, const Weights& w, int R, int T) {
    if (T < 0) throw ConfigError("T must be >= 0");
    Rat total(0);
    for (const Rat& k : shell_levels(w, Side::beta, Rat(0), Rat(T)))
        total += expected_count_shell(q, w, R, k);
    total.canonicalize();
    return total;
}

}  // namespace ffl
