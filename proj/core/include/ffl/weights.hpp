#pragma once

#include <string>
#include <vector>

#include "ffl/errors.hpp"

namespace ffl {

// Weight vector (a_1..a_m; a_{m+1}..a_{m+n}): positive integers whose two
// block sums agree, so the associated diagonal flow has determinant one.
// Coordinates 0..m-1 carry the alpha (numerator) weights, m..m+n-1 the beta
// (denominator) weights.
struct Weights {
    int m = 0, n = 0;
    std::vector<int> a;

    Weights(int m_, int n_, std::vector<int> a_);

    int d() const { return m + n; }
    int alpha(int i) const { return a[static_cast<size_t>(i)]; }
    int beta(int j) const { return a[static_cast<size_t>(m + j)]; }
    int max_alpha() const;
    int max_beta() const;
    int block_sum() const;  // sum of either block

    bool operator==(const Weights& o) const { return m == o.m && n == o.n && a == o.a; }

    std::string str() const;                        // "m:n:a1,...,ad"
    static Weights parse(const std::string& text);  // ConfigError / InvalidWeights
};

}  // namespace ffl
