#include "ffl/goodcheck.hpp"

#include <algorithm>
#include <cmath>

#include "ffl/errors.hpp"

namespace ffl {

MultiPoly& MultiPoly::add(const Laurent& c, std::vector<int> exps) {
    if (exps.size() != static_cast<size_t>(vars)) throw ConfigError("exponent vector length");
    for (int e : exps)
        if (e < 0) throw ConfigError("polynomial exponents must be >= 0");
    if (c.zero()) return *this;
    for (Term& t : terms) {
        if (t.exps == exps) {
            t.coef = t.coef + c;
            if (t.coef.zero()) {
                t = terms.back();
                terms.pop_back();
            }
            return *this;
        }
    }
    terms.push_back({c, std::move(exps)});
    return *this;
}

int MultiPoly::total_degree() const {
    int best = 0;
    for (const Term& t : terms) {
        int sum = 0;
        for (int e : t.exps) sum += e;
        best = std::max(best, sum);
    }
    return best;
}

Laurent MultiPoly::eval(const LaurentVector& x) const {
    if (x.size() != static_cast<size_t>(vars)) throw DimensionMismatch("polynomial evaluation point");
    if (terms.empty()) throw ConfigError("evaluating the zero polynomial");
    Laurent acc(terms[0].coef.field());
    for (const Term& t : terms) {
        Laurent prod = t.coef;
        for (int v = 0; v < vars; ++v)
            for (int e = 0; e < t.exps[static_cast<size_t>(v)]; ++e)
                prod = prod * x[static_cast<size_t>(v)];
        acc = acc + prod;
    }
    return acc;
}

GoodReport good_function_check(const MultiPoly& f, uint32_t q, int ball_c,
                               const std::vector<int>& eps_exps, int depth,
                               const Int& budget) {
    if (f.zero()) throw ConfigError("good-function check needs f != 0");
    if (depth < 1) throw ConfigError("good-function check needs depth >= 1");
    Fq field(q);

    Int cells = 1;
    for (int v = 0; v < f.vars * depth; ++v) cells *= q;
    if (cells > budget) throw BudgetExceeded("good-function cell count exceeds budget");

    // |f(rep)| per cell, as a degree or "zero"; cells all have equal measure.
    std::vector<std::vector<uint8_t>> digits(static_cast<size_t>(f.vars),
                                             std::vector<uint8_t>(static_cast<size_t>(depth), 0));
    const int lo = ball_c - depth + 1;  // digits occupy exponents ball_c .. lo
    long zero_count = 0;
    int sup_exp = 0;
    bool saw_value = false;
    std::vector<int> degs;
    degs.reserve(1 << 16);
    LaurentVector point(static_cast<size_t>(f.vars), Laurent(field));
    for (int v = 0; v < f.vars; ++v) point[static_cast<size_t>(v)] = Laurent(field);
    for (;;) {
        Laurent val = f.eval(point);
        if (val.zero()) {
            ++zero_count;
        } else {
            degs.push_back(val.top());
            if (!saw_value || val.top() > sup_exp) sup_exp = val.top();
            saw_value = true;
        }
        int v = 0;
        while (v < f.vars) {
            auto& dv = digits[static_cast<size_t>(v)];
            size_t p = 0;
            while (p < dv.size() && dv[p] + 1u == q) dv[p++] = 0;
            if (p < dv.size()) {
                ++dv[p];
                point[static_cast<size_t>(v)] = Laurent(field, lo, dv);
                break;
            }
            point[static_cast<size_t>(v)] = Laurent(field, lo, dv);
            ++v;
        }
        if (v == f.vars) break;
    }
    if (!saw_value) throw DegenerateFit("f vanishes at every cell representative");

    std::sort(degs.begin(), degs.end());
    Int total_cells = cells;
    int s = std::max(1, f.total_degree());

    GoodReport out;
    out.r = f.vars;
    out.s = s;
    out.sup_exp = sup_exp;
    for (int e : eps_exps) {
        // cells with |f| <= q^e: zero cells plus degrees <= e
        auto it = std::upper_bound(degs.begin(), degs.end(), e);
        Int hits = zero_count + static_cast<long>(it - degs.begin());
        GoodRow row;
        row.eps_exp = e;
        row.ratio = Rat(hits, total_cells);
        row.ratio.canonicalize();
        row.bound_exp = Rat(e - sup_exp, f.vars * s);
        row.bound_exp.canonicalize();
        double bound = std::pow(static_cast<double>(q), to_double(row.bound_exp));
        double ratio = to_double(row.ratio);
        if (bound > 0 && ratio / bound > out.C) out.C = ratio / bound;
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace ffl
