#pragma once

// Internal polynomial-row workspace shared by the reduction in lattice.cpp and
// the incremental orbit walkers in dynamics.cpp. Not installed.

#include <cstdint>
#include <vector>

#include "ffl/errors.hpp"
#include "ffl/fq.hpp"

namespace ffl::detail {

// Rows live as raw little-endian coefficient vectors during the reduction:
// the transformation loop is the hot path of the whole library.
using Coeffs = std::vector<uint8_t>;

inline int vdeg(const Coeffs& v) { return static_cast<int>(v.size()) - 1; }  // -1 == zero

inline void trim(Coeffs& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// dst -= c * t^e * src
inline void sub_scaled_shifted(const Fq& f, Coeffs& dst, const Coeffs& src, uint32_t c, int e) {
    if (src.empty() || c == 0) return;
    size_t need = src.size() + static_cast<size_t>(e);
    if (dst.size() < need) dst.resize(need, 0);
    for (size_t i = 0; i < src.size(); ++i) {
        size_t k = i + static_cast<size_t>(e);
        dst[k] = static_cast<uint8_t>(f.sub(dst[k], f.mul(c, src[i])));
    }
    trim(dst);
}

struct PolyRows {
    std::vector<std::vector<Coeffs>> m;
    std::vector<int> deg;     // sup degree of the row (column offsets included)
    std::vector<int> pivot;   // rightmost column attaining it
    std::vector<int> col_off; // optional: column j holds t^{col_off[j]} * raw poly

    void recompute(int i) {
        int best = INT32_MIN, col = -1;
        auto& row = m[static_cast<size_t>(i)];
        for (size_t j = 0; j < row.size(); ++j) {
            if (row[j].empty()) continue;
            int dj = vdeg(row[j]) + (col_off.empty() ? 0 : col_off[j]);
            if (dj >= best) {
                best = dj;
                col = static_cast<int>(j);
            }
        }
        if (col < 0) throw SingularBasis();
        deg[static_cast<size_t>(i)] = best;
        pivot[static_cast<size_t>(i)] = col;
    }
};

// Repeatedly cancel the leading term of one of two rows sharing a pivot
// column. Each step lowers (row degree, pivot) lexicographically, so the
// loop terminates. Starting from an almost-reduced state (e.g. after small
// column shifts) only a handful of cancellations run.
inline void reduce_rows(PolyRows& pr, const Fq& f) {
    const int d = static_cast<int>(pr.m.size());
    std::vector<int> owner(static_cast<size_t>(d));
    for (;;) {
        std::fill(owner.begin(), owner.end(), -1);
        int hi = -1, lo = -1;
        for (int i = 0; i < d && hi < 0; ++i) {
            int p = pr.pivot[static_cast<size_t>(i)];
            int other = owner[static_cast<size_t>(p)];
            if (other < 0) {
                owner[static_cast<size_t>(p)] = i;
            } else if (pr.deg[static_cast<size_t>(i)] >= pr.deg[static_cast<size_t>(other)]) {
                hi = i;
                lo = other;
            } else {
                hi = other;
                lo = i;
            }
        }
        if (hi < 0) break;
        int p = pr.pivot[static_cast<size_t>(hi)];
        const Coeffs& phi = pr.m[static_cast<size_t>(hi)][static_cast<size_t>(p)];
        const Coeffs& plo = pr.m[static_cast<size_t>(lo)][static_cast<size_t>(p)];
        uint32_t factor = f.div(phi.back(), plo.back());
        int shift = vdeg(phi) - vdeg(plo);
        for (int j = 0; j < d; ++j)
            sub_scaled_shifted(f, pr.m[static_cast<size_t>(hi)][static_cast<size_t>(j)],
                               pr.m[static_cast<size_t>(lo)][static_cast<size_t>(j)], factor, shift);
        pr.recompute(hi);
    }
}

}  // namespace ffl::detail
