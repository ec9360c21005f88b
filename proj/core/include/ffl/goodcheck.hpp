#pragma once

#include <vector>

#include "ffl/lattice.hpp"
#include "ffl/laurent.hpp"
#include "ffl/numeric.hpp"

namespace ffl {

// Polynomial in `vars` commuting variables with Laurent coefficients,
// evaluated exactly on points of K^vars.
struct MultiPoly {
    struct Term {
        Laurent coef;
        std::vector<int> exps;
    };

    int vars = 1;
    std::vector<Term> terms;

    explicit MultiPoly(int vars) : vars(vars) {
        if (vars < 1) throw ConfigError("polynomial needs at least one variable");
    }

    // Adds c * prod_i x_i^{exps[i]}, merging the term into an existing equal
    // exponent vector when present.
    MultiPoly& add(const Laurent& c, std::vector<int> exps);

    bool zero() const { return terms.empty(); }
    // Max total degree of a term; 0 for constants.
    int total_degree() const;
    Laurent eval(const LaurentVector& x) const;
};

struct GoodRow {
    int eps_exp = 0;  // epsilon = q^{eps_exp}
    Rat ratio;        // fraction of box cells with |f(rep)| <= epsilon
    Rat bound_exp;    // the comparison bound is q^{bound_exp} = (eps/sup)^{1/(r s)}
};

struct GoodReport {
    std::vector<GoodRow> rows;
    int sup_exp = 0;  // sup over cell representatives of |f| = q^{sup_exp}
    int r = 1;        // variables
    int s = 1;        // max(1, total degree)
    double C = 0;     // max over rows of ratio / bound
};

// Empirical (C, 1/(r s))-good check of f on the box {|x_i| <= q^{ball_c}}^r.
// Partitions the box into q^{r*depth} digit cells, evaluates f exactly at
// every representative (declared digits, zero tail), and tabulates for each
// epsilon the sublevel fraction against (eps/sup)^{1/(r s)}. Sublevels use
// the weak inequality |f| <= eps, which is what makes f(x) = x produce ratio
// q^{-j} at eps = q^{-j}. Throws ConfigError for the zero polynomial or a
// dimension mismatch, DegenerateFit when f vanishes at every representative,
// BudgetExceeded past `budget` cells.
GoodReport good_function_check(const MultiPoly& f, uint32_t q, int ball_c,
                               const std::vector<int>& eps_exps, int depth,
                               const Int& budget = Int(1) << 24);

}  // namespace ffl
