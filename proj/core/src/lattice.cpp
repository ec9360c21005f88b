#include "ffl/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "ffl/fq_linalg.hpp"
#include "poly_rows.hpp"

namespace ffl {

Fq LatticeBasis::field() const {
    if (rows.empty() || rows[0].empty()) throw DimensionMismatch("empty basis");
    return rows[0][0].field();
}

void LatticeBasis::validate() const {
    if (rows.empty()) throw DimensionMismatch("empty basis");
    size_t d = rows.size();
    const Fq f = field();
    for (const auto& r : rows) {
        if (r.size() != d) throw DimensionMismatch("basis is not square");
        for (const auto& e : r) require_same_field(f, e.field());
    }
}

int LatticeBasis::scale_hint() const {
    int w = 0;
    for (const auto& r : rows)
        for (const auto& e : r)
            if (!e.zero()) w = std::max(w, -e.bottom());
    return w;
}

using detail::Coeffs;
using detail::PolyRows;
using detail::trim;
using detail::vdeg;

ReducedBasis weak_popov_reduce(const LatticeBasis& b) {
    b.validate();
    const Fq f = b.field();
    const int d = b.dim();
    const int w = b.scale_hint();

    PolyRows pr;
    pr.m.assign(static_cast<size_t>(d), std::vector<Coeffs>(static_cast<size_t>(d)));
    pr.deg.assign(static_cast<size_t>(d), -1);
    pr.pivot.assign(static_cast<size_t>(d), -1);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Laurent& e = b.rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (e.zero()) continue;
            Coeffs v(static_cast<size_t>(e.top() + w) + 1, 0);
            for (int k = e.bottom(); k <= e.top(); ++k)
                v[static_cast<size_t>(k + w)] = static_cast<uint8_t>(e.coeff(k));
            trim(v);
            pr.m[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(v);
        }
    for (int i = 0; i < d; ++i) pr.recompute(i);
    detail::reduce_rows(pr, f);

    std::vector<int> order(static_cast<size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (pr.deg[static_cast<size_t>(x)] != pr.deg[static_cast<size_t>(y)])
            return pr.deg[static_cast<size_t>(x)] < pr.deg[static_cast<size_t>(y)];
        return pr.pivot[static_cast<size_t>(x)] < pr.pivot[static_cast<size_t>(y)];
    });

    ReducedBasis rb;
    rb.base.rows.reserve(static_cast<size_t>(d));
    for (int oi : order) {
        LaurentVector row;
        row.reserve(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j) {
            Coeffs& v = pr.m[static_cast<size_t>(oi)][static_cast<size_t>(j)];
            row.push_back(Laurent(f, -w, std::vector<uint8_t>(v.begin(), v.end())));
        }
        rb.base.rows.push_back(std::move(row));
        rb.row_degrees.push_back(pr.deg[static_cast<size_t>(oi)] - w);
        rb.pivot_cols.push_back(pr.pivot[static_cast<size_t>(oi)]);
    }
    return rb;
}

LogNorm shortest_norm(const ReducedBasis& rb) {
    if (rb.row_degrees.empty()) throw DimensionMismatch("empty basis");
    return LogNorm::from_int_exponent(rb.row_degrees.front());
}

Rat alpha_height(const ReducedBasis& rb) {
    long sum = std::accumulate(rb.row_degrees.begin(), rb.row_degrees.end(), 0L);
    if (sum != 0) throw NonUnimodular("row degrees sum to " + std::to_string(sum));
    long neg = 0;
    for (int dg : rb.row_degrees)
        if (dg < 0) neg += dg;
    return pow_q(rb.base.field().q(), -neg);
}

LogNorm wedge_norm(const std::vector<LaurentVector>& vectors) {
    if (vectors.empty()) throw DimensionMismatch("empty wedge");
    size_t r = vectors.size(), d = vectors[0].size();
    if (d == 0 || r > d) throw DimensionMismatch("wedge rank exceeds dimension");
    const Fq f = vectors[0][0].field();
    int w = 0;
    for (const auto& v : vectors) {
        if (v.size() != d) throw DimensionMismatch("ragged wedge input");
        for (const auto& e : v) {
            require_same_field(f, e.field());
            if (!e.zero()) w = std::max(w, -e.bottom());
        }
    }

    std::vector<std::vector<FqPoly>> m(r, std::vector<FqPoly>(d, FqPoly(f)));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < d; ++j) {
            auto [ip, frac] = vectors[i][j].shifted(w).split();
            if (!frac.zero()) throw Error("scale hint failed");  // unreachable
            m[i][j] = ip;
        }

    // max degree over all r x r minors
    std::vector<size_t> cols(r);
    std::iota(cols.begin(), cols.end(), 0);
    bool any = false;
    int best = 0;
    for (;;) {
        std::vector<std::vector<FqPoly>> sub(r, std::vector<FqPoly>(r, FqPoly(f)));
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) sub[i][j] = m[i][cols[j]];
        FqPoly det = poly_matrix_det(std::move(sub));
        if (!det.zero()) {
            int e = det.degree();
            if (!any || e > best) best = e;
            any = true;
        }
        // next combination
        size_t k = r;
        while (k > 0 && cols[k - 1] == d - r + (k - 1)) --k;
        if (k == 0) break;
        ++cols[k - 1];
        for (size_t i = k; i < r; ++i) cols[i] = cols[i - 1] + 1;
    }
    if (!any) throw DependentVectors();
    return LogNorm::from_int_exponent(best - static_cast<int>(r) * w);
}

bool unimodular(const LatticeBasis& b) {
    b.validate();
    const Fq f = b.field();
    const int d = b.dim();
    const int w = b.scale_hint();
    std::vector<std::vector<FqPoly>> m(static_cast<size_t>(d),
                                       std::vector<FqPoly>(static_cast<size_t>(d), FqPoly(f)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            auto [ip, frac] = b.rows[static_cast<size_t>(i)][static_cast<size_t>(j)].shifted(w).split();
            if (!frac.zero()) throw Error("scale hint failed");  // unreachable
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] = ip;
        }
    FqPoly det = poly_matrix_det(std::move(m));
    return !det.zero() && det.degree() == d * w;
}

Int ball_point_count(const ReducedBasis& rb, int c) {
    long e = 0;
    for (int dg : rb.row_degrees) {
        long k = static_cast<long>(c) - dg + 1;
        if (k > 0) e += k;
    }
    return pow_q_int(rb.base.field().q(), e);
}

Int box_point_count(const ReducedBasis& rb, const std::vector<int>& cutoffs) {
    int d = rb.base.dim();
    if (cutoffs.size() != static_cast<size_t>(d)) throw DimensionMismatch("cutoff count != dim");
    LatticeBasis scaled;
    scaled.rows = rb.base.rows;
    for (auto& row : scaled.rows)
        for (int j = 0; j < d; ++j)
            row[static_cast<size_t>(j)] = row[static_cast<size_t>(j)].shifted(-cutoffs[static_cast<size_t>(j)]);
    return ball_point_count(weak_popov_reduce(scaled), 0);
}

std::vector<LaurentVector> enumerate_ball(const ReducedBasis& rb, int c, const Int& budget) {
    const Fq f = rb.base.field();
    const int d = rb.base.dim();
    const uint32_t q = f.q();

    std::vector<long> box(static_cast<size_t>(d));  // digits per coefficient polynomial
    long total_digits = 0;
    for (int i = 0; i < d; ++i) {
        long k = static_cast<long>(c) - rb.row_degrees[static_cast<size_t>(i)] + 1;
        box[static_cast<size_t>(i)] = std::max(0L, k);
        total_digits += box[static_cast<size_t>(i)];
    }
    Int total = pow_q_int(q, total_digits);
    if (total > budget)
        throw BudgetExceeded("ball enumeration needs " + total.get_str() + " points, budget " +
                             budget.get_str());

    std::vector<LaurentVector> out;
    out.reserve(total.fits_ulong_p() ? total.get_ui() : 0);

    LaurentVector acc(static_cast<size_t>(d), Laurent(f));
    // depth-first over rows; within a row, over coefficient digits
    auto rec = [&](auto&& self, int row, LaurentVector cur) -> void {
        if (row == d) {
            out.push_back(cur);
            return;
        }
        long digits = box[static_cast<size_t>(row)];
        if (digits == 0) {
            self(self, row + 1, std::move(cur));
            return;
        }
        std::vector<uint32_t> digit(static_cast<size_t>(digits), 0);
        for (;;) {
            LaurentVector next = cur;
            for (long j = 0; j < digits; ++j) {
                if (digit[static_cast<size_t>(j)] == 0) continue;
                for (int col = 0; col < d; ++col) {
                    const Laurent& e = rb.base.rows[static_cast<size_t>(row)][static_cast<size_t>(col)];
                    next[static_cast<size_t>(col)] =
                        next[static_cast<size_t>(col)] +
                        e.shifted(static_cast<int>(j)).scaled(digit[static_cast<size_t>(j)]);
                }
            }
            self(self, row + 1, std::move(next));
            long p = 0;  // odometer
            while (p < digits) {
                if (++digit[static_cast<size_t>(p)] < q) break;
                digit[static_cast<size_t>(p)] = 0;
                ++p;
            }
            if (p == digits) break;
        }
    };
    rec(rec, 0, acc);
    return out;
}

}  // namespace ffl
