#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>

#include "ffl/lattice.hpp"

using namespace ffl;

namespace {

LatticeBasis basis2(Fq f, const char* a, const char* b, const char* c, const char* d) {
    LatticeBasis out;
    out.rows = {{Laurent::parse(f, a), Laurent::parse(f, b)},
                {Laurent::parse(f, c), Laurent::parse(f, d)}};
    return out;
}

// deterministic PRNG local to the tests
struct MiniRng {
    uint64_t s;
    uint64_t next() { return s = s * 6364136223846793005ULL + 1442695040888963407ULL; }
    uint32_t below(uint32_t n) { return static_cast<uint32_t>((next() >> 33) % n); }
};

std::string key(const LaurentVector& v) {
    std::string k;
    for (const auto& e : v) k += e.str() + "|";
    return k;
}

}  // namespace

TEST_CASE("weak popov reduction of worked 2x2 examples") {
    Fq f2(2);

    ReducedBasis r1 = weak_popov_reduce(basis2(f2, "1", "t", "0", "1"));
    CHECK(r1.row_degrees == std::vector<int>{0, 0});
    CHECK(shortest_norm(r1) == LogNorm::from_int_exponent(0));
    CHECK(alpha_height(r1) == Rat(1));

    ReducedBasis r2 = weak_popov_reduce(basis2(f2, "t", "1", "1", "0"));
    CHECK(r2.row_degrees == std::vector<int>{0, 0});
    std::set<int> pivots(r2.pivot_cols.begin(), r2.pivot_cols.end());
    CHECK(pivots == std::set<int>{0, 1});

    // diag(t, t^-1): already reduced, shortest vector is the second row
    ReducedBasis r3 = weak_popov_reduce(basis2(f2, "t", "0", "0", "t^-1"));
    CHECK(r3.row_degrees == std::vector<int>{-1, 1});
    CHECK(shortest_norm(r3) == LogNorm::from_int_exponent(-1));
    CHECK(alpha_height(r3) == Rat(2));
    CHECK(ball_point_count(r3, 0) == Int(4));
}

TEST_CASE("singular and non-unimodular inputs are rejected") {
    Fq f2(2);
    CHECK_THROWS_AS(weak_popov_reduce(basis2(f2, "t", "1", "t", "1")), SingularBasis);
    CHECK_THROWS_AS(weak_popov_reduce(basis2(f2, "0", "0", "1", "1")), SingularBasis);
    ReducedBasis r = weak_popov_reduce(basis2(f2, "t", "0", "0", "1"));
    CHECK_THROWS_AS(alpha_height(r), NonUnimodular);
    CHECK(unimodular(basis2(f2, "1", "t", "0", "1")));
    CHECK(unimodular(basis2(f2, "t", "0", "0", "t^-1")));
    CHECK_FALSE(unimodular(basis2(f2, "t", "0", "0", "1")));
    CHECK_FALSE(unimodular(basis2(f2, "t^-1", "0", "0", "t^-1")));
}

TEST_CASE("ball and box point counts on the integer lattice") {
    Fq f2(2);
    ReducedBasis z2 = weak_popov_reduce(basis2(f2, "1", "0", "0", "1"));
    CHECK(z2.row_degrees == std::vector<int>{0, 0});
    CHECK(ball_point_count(z2, 0) == Int(4));
    CHECK(ball_point_count(z2, 2) == Int(64));
    CHECK(ball_point_count(z2, -1) == Int(1));  // only 0
    CHECK(box_point_count(z2, {2, 5}) == Int(8 * 64));
    CHECK(box_point_count(z2, {-1, 3}) == Int(16));

    auto pts = enumerate_ball(z2, 0, Int(100));
    CHECK(pts.size() == 4);
    std::set<std::string> seen;
    for (const auto& p : pts) seen.insert(key(p));
    CHECK(seen.size() == 4);
    CHECK(seen.count("0|0|") == 1);
    CHECK(seen.count("1|1|") == 1);
    CHECK_THROWS_AS(enumerate_ball(z2, 0, Int(2)), BudgetExceeded);
}

TEST_CASE("enumeration agrees with the closed-form count") {
    Fq f3(3);
    for (int c = -2; c <= 1; ++c) {
        ReducedBasis r = weak_popov_reduce(basis2(f3, "t", "1+t^-1", "1", "t^-1"));
        auto pts = enumerate_ball(r, c, Int(1'000'000));
        Int n = ball_point_count(r, c);
        CHECK(Int(static_cast<long>(pts.size())) == n);
        // all distinct, all inside the ball, closed under negation
        std::set<std::string> seen;
        for (const auto& p : pts) {
            seen.insert(key(p));
            LogNorm norm = LogNorm::zero();
            for (const auto& e : p) norm = max(norm, abs_log(e));
            CHECK(norm <= LogNorm::from_int_exponent(c));
        }
        CHECK(seen.size() == pts.size());
        for (const auto& p : pts) {
            LaurentVector m;
            for (const auto& e : p) m.push_back(e.scaled(2));  // -1 == 2 in F_3
            CHECK(seen.count(key(m)) == 1);
        }
    }
}

TEST_CASE("box count agrees with filtered enumeration") {
    Fq f2(2);
    ReducedBasis r = weak_popov_reduce(basis2(f2, "t^2", "1+t^-2", "1", "t^-1"));
    std::vector<int> cutoffs{1, -1};
    int cmax = *std::max_element(cutoffs.begin(), cutoffs.end());
    auto pts = enumerate_ball(r, cmax, Int(1'000'000));
    long brute = 0;
    for (const auto& p : pts) {
        bool inside = true;
        for (size_t j = 0; j < p.size(); ++j)
            if (!(abs_log(p[j]) <= LogNorm::from_int_exponent(cutoffs[j]))) inside = false;
        if (inside) ++brute;
    }
    CHECK(box_point_count(r, cutoffs) == Int(brute));
}

TEST_CASE("reduction invariants under random unimodular row operations") {
    Fq f3(3);
    MiniRng rng{99};
    for (int trial = 0; trial < 40; ++trial) {
        // start from diag(t^e1, t^e2, t^e3) with e1+e2+e3 = 0
        int e1 = static_cast<int>(rng.below(5)) - 2;
        int e2 = static_cast<int>(rng.below(5)) - 2;
        int e3 = -e1 - e2;
        LatticeBasis b;
        b.rows.assign(3, LaurentVector(3, Laurent(f3)));
        b.rows[0][0] = Laurent::t_power(f3, e1);
        b.rows[1][1] = Laurent::t_power(f3, e2);
        b.rows[2][2] = Laurent::t_power(f3, e3);
        std::vector<int> degs{e1, e2, e3};
        std::sort(degs.begin(), degs.end());

        // expected invariants straight from the diagonal form
        long negsum = 0;
        for (int e : degs)
            if (e < 0) negsum += e;
        Rat alpha_expected = pow_q(3, -negsum);
        Int ball_expected(1);
        for (int e : degs) {
            long k = 1 - e;  // c = 0
            if (k > 0) ball_expected *= pow_q_int(3, k);
        }

        // scramble with unimodular operations: row_i += u * t^k * row_j
        for (int step = 0; step < 12; ++step) {
            int i = static_cast<int>(rng.below(3));
            int j = static_cast<int>(rng.below(3));
            if (i == j) continue;
            uint32_t u = rng.below(3);
            int k = static_cast<int>(rng.below(3));  // polynomial multiplier only
            for (int col = 0; col < 3; ++col)
                b.rows[i][col] = b.rows[i][col] + b.rows[j][col].shifted(k).scaled(u);
        }

        ReducedBasis r = weak_popov_reduce(b);
        CHECK(r.row_degrees == degs);
        CHECK(alpha_height(r) == alpha_expected);
        CHECK(ball_point_count(r, 0) == ball_expected);
        CHECK(unimodular(b));
        std::set<int> pivots(r.pivot_cols.begin(), r.pivot_cols.end());
        CHECK(pivots.size() == 3);
    }
}

TEST_CASE("predictable degree property of the reduced rows") {
    Fq f2(2);
    MiniRng rng{7};
    ReducedBasis r = weak_popov_reduce(basis2(f2, "t^2+1", "t^-1", "t", "1+t^-2"));
    for (int trial = 0; trial < 100; ++trial) {
        // random polynomial combination f1*b1 + f2*b2
        std::vector<int> fdeg(2, -1);
        LaurentVector acc(2, Laurent(f2));
        for (int i = 0; i < 2; ++i) {
            int df = static_cast<int>(rng.below(4)) - 1;  // -1 means f_i = 0
            fdeg[i] = df;
            for (int k = 0; k <= df; ++k) {
                uint32_t ck = (k == df) ? 1 : rng.below(2);
                for (int col = 0; col < 2; ++col)
                    acc[col] = acc[col] + r.base.rows[i][col].shifted(k).scaled(ck);
            }
        }
        LogNorm expect = LogNorm::zero();
        for (int i = 0; i < 2; ++i)
            if (fdeg[i] >= 0)
                expect = max(expect, LogNorm::from_int_exponent(fdeg[i] + r.row_degrees[i]));
        LogNorm got = LogNorm::zero();
        for (const auto& e : acc) got = max(got, abs_log(e));
        CHECK(got == expect);
    }
}

TEST_CASE("wedge norm on small examples") {
    Fq f2(2);
    auto L = [&](const char* s) { return Laurent::parse(f2, s); };
    CHECK(wedge_norm({{L("t"), L("1")}}) == LogNorm::from_int_exponent(1));
    CHECK(wedge_norm({{L("t^-3"), L("0")}}) == LogNorm::from_int_exponent(-3));
    CHECK(wedge_norm({{L("1"), L("0")}, {L("0"), L("1")}}) == LogNorm::from_int_exponent(0));
    CHECK(wedge_norm({{L("t^-1"), L("1")}, {L("0"), L("t")}}) == LogNorm::from_int_exponent(0));
    CHECK(wedge_norm({{L("t"), L("1"), L("0")}, {L("0"), L("t"), L("1")}}) ==
          LogNorm::from_int_exponent(2));
    CHECK_THROWS_AS(wedge_norm({{L("t"), L("1")}, {L("t"), L("1")}}), DependentVectors);
    CHECK_THROWS_AS(wedge_norm({{L("0"), L("0")}}), DependentVectors);
    CHECK_THROWS_AS(wedge_norm({{L("t"), L("1")}, {L("t")}}), DimensionMismatch);
}

TEST_CASE("wedge norm of a reduced pair is the product of row norms") {
    // For a weak Popov basis of a 2-dim lattice the wedge of the two rows has
    // norm q^{d1+d2}; verified against the minor expansion.
    Fq f3(3);
    MiniRng rng{4242};
    for (int trial = 0; trial < 30; ++trial) {
        LatticeBasis b;
        b.rows.assign(2, LaurentVector(2, Laurent(f3)));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Laurent e(f3);
                for (int k = -2; k <= 1; ++k)
                    e = e + Laurent::t_power(f3, k).scaled(rng.below(3));
                b.rows[i][j] = e;
            }
        ReducedBasis r;
        try {
            r = weak_popov_reduce(b);
        } catch (const SingularBasis&) {
            continue;
        }
        LogNorm w = wedge_norm({r.base.rows[0], r.base.rows[1]});
        CHECK(w == LogNorm::from_int_exponent(r.row_degrees[0] + r.row_degrees[1]));
    }
}
