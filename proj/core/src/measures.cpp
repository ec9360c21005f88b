#include "ffl/measures.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ffl {

namespace {

int side_dim(Side side, const Weights& w) { return side == Side::alpha ? w.m : w.n; }
int side_weight(Side side, const Weights& w, int i) {
    return side == Side::alpha ? w.alpha(i) : w.beta(i);
}

}  // namespace

std::vector<Rat> shell_levels(const Weights& w, Side side, const Rat& lo, const Rat& hi) {
    std::set<Rat> levels;
    int r = side_dim(side, w);
    for (int i = 0; i < r; ++i) {
        long a = side_weight(side, w, i);
        long vmin = rat_ceil(lo * a), vmax = rat_floor(hi * a);
        for (long v = vmin; v <= vmax; ++v) {
            Rat level(v, a);
            level.canonicalize();
            levels.insert(level);
        }
    }
    return std::vector<Rat>(levels.begin(), levels.end());
}

Rat shell_term_E(uint32_t q, const Weights& w, int R, const Rat& k) {
    long x_exp = -w.m;  // sum of ceil((R-k) a_i) - m
    for (int i = 0; i < w.m; ++i) x_exp += rat_ceil((Rat(R) - k) * w.alpha(i));
    long y_lo = 0, y_hi = 0;  // sum of floor(k b_j) resp. ceil(k b_j) - n
    for (int j = 0; j < w.n; ++j) {
        y_hi += rat_floor(k * w.beta(j));
        y_lo += rat_ceil(k * w.beta(j));
    }
    y_lo -= w.n;
    if (y_hi == y_lo) return Rat(0);  // no b_j k integral: empty shell
    return pow_q(q, x_exp) * (pow_q(q, y_hi) - pow_q(q, y_lo));
}

Rat shell_term_F(uint32_t q, const Weights& w, int R, const Rat& s) {
    long y_exp = -w.n;
    for (int j = 0; j < w.n; ++j) y_exp += rat_ceil((Rat(R) - s) * w.beta(j));
    long x_lo = 0, x_hi = 0;
    for (int i = 0; i < w.m; ++i) {
        x_hi += rat_floor(s * w.alpha(i));
        x_lo += rat_ceil(s * w.alpha(i));
    }
    x_lo -= w.m;
    if (x_hi == x_lo) return Rat(0);
    return pow_q(q, y_exp) * (pow_q(q, x_hi) - pow_q(q, x_lo));
}

Rat measure_E(uint32_t q, const Weights& w, int R, int T) {
    if (T < 0) throw ConfigError("measure_E needs T >= 0");
    Rat total(0);
    for (const Rat& k : shell_levels(w, Side::beta, Rat(0), Rat(T)))
        total += shell_term_E(q, w, R, k);
    return total;
}

Rat measure_F(uint32_t q, const Weights& w, int R, int S) {
    if (S < 0) throw ConfigError("measure_F needs S >= 0");
    Rat total(0);
    for (const Rat& s : shell_levels(w, Side::alpha, Rat(0), Rat(S)))
        total += shell_term_F(q, w, R, s);
    return total;
}

Rat unit_shell_measure(uint32_t q, const Weights& w, Side side) {
    long sum = 0;
    int r = side_dim(side, w);
    for (int i = 0; i < r; ++i) sum += side_weight(side, w, i);
    return Rat(1) - pow_q(q, -sum);
}

std::map<Rat, Rat> unit_shell_cylinder_measures(const Cylinder& c, const Weights& w, uint32_t q) {
    const int r = side_dim(c.side, w);
    const int D = c.is_full ? 0 : c.depth;
    if (!c.is_full && !c.allowed.empty())
        for (const auto& t : c.allowed)
            if (t.size() != static_cast<size_t>(r) * static_cast<size_t>(D))
                throw DimensionMismatch("cylinder table length != dim * depth");

    // Window per coordinate: digits at degrees 0 .. -W_i. W_i covers both the
    // table depth and one full dilation period, so the level and the table are
    // functions of the pattern.
    std::vector<int> win(static_cast<size_t>(r));
    long total_digits = 0;
    for (int i = 0; i < r; ++i) {
        win[static_cast<size_t>(i)] = std::max(side_weight(c.side, w, i) - 1, D - 1) + 1;
        total_digits += win[static_cast<size_t>(i)];
    }
    if (static_cast<double>(total_digits) * std::log2(static_cast<double>(q)) > 22.0)
        throw BudgetExceeded("cylinder digit enumeration too large");

    std::map<Rat, Rat> mu;
    std::vector<uint8_t> digits(static_cast<size_t>(total_digits), 0);
    Rat cell = pow_q(q, -total_digits);
    for (;;) {
        // level = max over coordinates of (top visible degree)/a_i
        bool any = false;
        Rat level(0);
        size_t off = 0;
        for (int i = 0; i < r; ++i) {
            int a = side_weight(c.side, w, i);
            for (int p = 0; p < win[static_cast<size_t>(i)]; ++p) {
                if (digits[off + static_cast<size_t>(p)] != 0) {
                    Rat cand(-p, a);
                    cand.canonicalize();
                    if (!any || cand > level) level = cand;
                    any = true;
                    break;
                }
            }
            off += static_cast<size_t>(win[static_cast<size_t>(i)]);
        }
        if (any && level > Rat(-1)) {
            bool pass = true;
            if (!c.is_full) {
                std::vector<uint8_t> table(static_cast<size_t>(r) * static_cast<size_t>(D), 0);
                size_t base = 0;
                for (int i = 0; i < r; ++i) {
                    for (int p = 0; p < D; ++p)
                        table[static_cast<size_t>(i) * D + p] = digits[base + static_cast<size_t>(p)];
                    base += static_cast<size_t>(win[static_cast<size_t>(i)]);
                }
                pass = c.allowed.count(table) > 0;
            }
            if (pass) mu[level] += cell;
        }
        // odometer over all digits
        size_t p = 0;
        while (p < digits.size()) {
            if (++digits[p] < q) break;
            digits[p] = 0;
            ++p;
        }
        if (p == digits.size()) break;
    }
    return mu;
}

Rat cylinder_measure(const Cylinder& c, const Weights& w, uint32_t q) {
    if (c.is_full) return Rat(1);
    if (c.is_empty()) return Rat(0);
    Rat sum(0);
    for (const auto& [level, m] : unit_shell_cylinder_measures(c, w, q)) sum += m;
    return sum / unit_shell_measure(q, w, c.side);
}

Rat measure_E_directional(uint32_t q, const Weights& w, int R, int T, const Cylinder& c1,
                          const Cylinder& c2) {
    if (T < 0) throw ConfigError("measure_E_directional needs T >= 0");
    if (c1.side != Side::alpha || c2.side != Side::beta)
        throw ConfigError("directional measure needs an alpha and a beta cylinder");
    if (c1.is_empty() || c2.is_empty()) return Rat(0);

    auto mu1 = unit_shell_cylinder_measures(c1, w, q);
    auto mu2 = unit_shell_cylinder_measures(c2, w, q);
    const long sum_a = w.block_sum();  // equal on both sides
    const Rat denom = pow_q(q, sum_a) - Rat(1);

    Rat total(0);
    for (const Rat& k : shell_levels(w, Side::beta, Rat(0), Rat(T))) {
        long s = rat_ceil(k);
        Rat kp = k - s;  // beta level class in (-1, 0]
        auto it = mu2.find(kp);
        if (it == mu2.end()) continue;
        Rat y_factor = pow_q(q, s * sum_a) * it->second;

        // x side: sum over all shells || x || = q^{k' + t} < q^{R - k}
        Rat x_factor(0);
        for (const auto& [xl, m1] : mu1) {
            long cap = rat_ceil(Rat(R) - k - xl);  // largest t is cap - 1
            x_factor += m1 * pow_q(q, cap * sum_a);
        }
        x_factor /= denom;
        total += x_factor * y_factor;
    }
    return total;
}

Rat region_measure(uint32_t q, const Weights& w, const RegionSpec& region) {
    switch (region.kind) {
        case RegionSpec::Kind::E:
            return measure_E(q, w, region.R, region.T);
        case RegionSpec::Kind::F:
            return measure_F(q, w, region.R, region.S);
        case RegionSpec::Kind::Ball:
            return pow_q(q, static_cast<long>(w.d()) * (region.r - 1));
        case RegionSpec::Kind::EDir:
            return measure_E_directional(q, w, region.R, region.T, region.c1, region.c2);
    }
    throw Error("unreachable");
}

}  // namespace ffl
