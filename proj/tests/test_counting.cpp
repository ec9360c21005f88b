#include <vector>

#include "doctest.h"
#include "ffl/counting.hpp"
#include "ffl/measures.hpp"
#include "ffl/regions.hpp"

using namespace ffl;

namespace {

struct MiniRng {
    uint64_t s;
    uint64_t next() { return s = s * 6364136223846793005ULL + 1442695040888963407ULL; }
    uint32_t below(uint32_t n) { return static_cast<uint32_t>((next() >> 33) % n); }
};

LaurentMatrix random_matrix(Fq f, int m, int n, int depth, MiniRng& rng) {
    LaurentMatrix A(m, n, depth, f);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<uint8_t> c(static_cast<size_t>(depth));
            for (auto& d : c) d = static_cast<uint8_t>(rng.below(f.q()));
            A.at(i, j) = Laurent(f, -depth, std::move(c));
        }
    return A;
}

// Definition-level oracle: enumerate every candidate pair (p, q) inside a
// covering box and test membership of (Aq + p, q) in the region E(T, R)
// coordinate by coordinate. No shells, no digit thresholds.
Int brute_count(const LaurentMatrix& A, const Weights& w, int R, int T) {
    Fq f = A.entries.front().field();
    uint32_t q = f.q();
    RegionSpec region = RegionSpec::E(T, R);

    // q_j ranges over polys of degree <= T*b_j; p_i over degree <= B_i with
    // B_i large enough that any admissible p has its top cancelled or allowed
    std::vector<int> qlen, plen;
    for (int j = 0; j < w.n; ++j) qlen.push_back(T * w.beta(j) + 1);
    for (int i = 0; i < w.m; ++i) {
        int top = R * w.alpha(i) - 1;  // deg x_i < R*a_i
        for (int j = 0; j < w.n; ++j)
            if (!A.at(i, j).zero())
                top = std::max(top, A.at(i, j).top() + T * w.beta(j));
        plen.push_back(std::max(top, 0) + 1);
    }

    int total = 0;
    for (int v : qlen) total += v;
    for (int v : plen) total += v;
    std::vector<uint8_t> dig(static_cast<size_t>(total), 0);

    Int count = 0;
    for (;;) {
        // decode: y block then x block of the lattice point (Aq + p, q)
        LaurentVector point;
        std::vector<Laurent> qv;
        size_t off = 0;
        bool qzero = true;
        for (int j = 0; j < w.n; ++j) {
            std::vector<uint8_t> c(dig.begin() + static_cast<long>(off),
                                   dig.begin() + static_cast<long>(off) + qlen[static_cast<size_t>(j)]);
            off += static_cast<size_t>(qlen[static_cast<size_t>(j)]);
            Laurent qj(f, 0, std::move(c));
            if (!qj.zero()) qzero = false;
            qv.push_back(qj);
        }
        for (int i = 0; i < w.m; ++i) {
            std::vector<uint8_t> c(dig.begin() + static_cast<long>(off),
                                   dig.begin() + static_cast<long>(off) + plen[static_cast<size_t>(i)]);
            off += static_cast<size_t>(plen[static_cast<size_t>(i)]);
            Laurent xi(f, 0, std::move(c));  // p_i
            for (int j = 0; j < w.n; ++j) xi = xi + A.at(i, j) * qv[static_cast<size_t>(j)];
            point.push_back(xi);
        }
        for (int j = 0; j < w.n; ++j) point.push_back(qv[static_cast<size_t>(j)]);
        if (!qzero && region_contains(region, point, w)) count += 1;

        size_t p = 0;
        while (p < dig.size()) {
            if (++dig[p] < q) break;
            dig[p] = 0;
            ++p;
        }
        if (p == dig.size()) break;
    }
    return count;
}

}  // namespace

TEST_CASE("solution count: hand-checked instances") {
    Fq f2(2);
    Weights w11 = Weights(1, 1, {1, 1});

    // zero matrix: Aq = 0, so only p = 0 works when R <= ||q|| and every q counts
    LaurentMatrix Z(1, 1, 8, f2);
    CHECK(count_solutions(Z, w11, 0, 2).count == Int(7));  // 2^3 - 1 nonzero q
    CHECK(count_solutions(Z, w11, -1, 3).count == Int(15));
    // R = 2: q on shell k admits 2^{2-k} values of p
    CHECK(count_solutions(Z, w11, 2, 2).count == Int(12));

    // A = t^-1: q = t gives Aq = 1 exactly (degenerate), q = t+1 fails the
    // digit test, q = 1 leaves x = t^-1
    LaurentMatrix M(1, 1, 8, f2);
    M.at(0, 0) = Laurent::parse(f2, "t^-1");
    CHECK(count_solutions(M, w11, 0, 1).count == Int(2));

    // depth guard
    LaurentMatrix shallow(1, 1, 2, f2);
    CHECK_THROWS_AS(count_solutions(shallow, w11, 0, 2), InsufficientPrecision);
    CHECK_THROWS_AS(count_solutions(Z, w11, 0, -1), ConfigError);
    LaurentMatrix bad(2, 1, 8, f2);
    CHECK_THROWS_AS(count_solutions(bad, w11, 0, 1), DimensionMismatch);
}

TEST_CASE("solution count agrees with the definition-level oracle") {
    std::vector<Weights> ws = {Weights(1, 1, {1, 1}), Weights(1, 2, {2, 1, 1}),
                               Weights(2, 1, {1, 1, 2})};
    MiniRng rng{20250825};
    for (uint32_t qq : {2u, 3u}) {
        Fq f(qq);
        for (const Weights& w : ws) {
            int Tmax = (qq == 3 && w.d() == 3) ? 1 : 2;  // keep the oracle box small
            for (int R = -1; R <= 1; ++R)
                for (int T = 0; T <= Tmax; ++T) {
                    int P = min_depth(w, R, T);
                    LaurentMatrix A = random_matrix(f, w.m, w.n, P, rng);
                    CountResult got = count_solutions(A, w, R, T);
                    CHECK(got.count == brute_count(A, w, R, T));
                    CHECK(got.depth_used == P);
                }
        }
    }
}

TEST_CASE("solution count is blind to integral parts of A") {
    Fq f3(3);
    Weights w = Weights(1, 1, {1, 1});
    MiniRng rng{7};
    int P = min_depth(w, 1, 2);
    LaurentMatrix A = random_matrix(f3, 1, 1, P, rng);
    LaurentMatrix B = A;
    B.at(0, 0) = B.at(0, 0) + Laurent::parse(f3, "t^2+2t+1");
    CHECK(count_solutions(A, w, 1, 2).count == count_solutions(B, w, 1, 2).count);
}

TEST_CASE("exhaustive average equals the closed-form expectation") {
    // every matrix with exactly min_depth digits, tiny parameter sets
    Weights w11 = Weights(1, 1, {1, 1});
    for (int R = -1; R <= 1; ++R) {
        CHECK(exhaustive_average_count(2, w11, R, 1) == expected_count(2, w11, R, 1));
        CHECK(exhaustive_average_count(3, w11, R, 0) == expected_count(3, w11, R, 0));
    }
    Weights w12 = Weights(1, 2, {2, 1, 1});
    CHECK(exhaustive_average_count(2, w12, 0, 1) == expected_count(2, w12, 0, 1));
    CHECK(exhaustive_average_count(2, w12, -1, 1) == expected_count(2, w12, -1, 1));

    // budget guard: the pattern space must stay within max_patterns
    CHECK_THROWS_AS(exhaustive_average_count(2, w11, 0, 8, Int(1) << 10), BudgetExceeded);
}

TEST_CASE("exhaustive average equals a literal matrix-by-matrix average") {
    // triple route on the smallest instance: enumerate both matrices by hand
    Fq f2(2);
    Weights w = Weights(1, 1, {1, 1});
    int P = min_depth(w, 0, 0);
    CHECK(P == 1);
    Rat avg(0);
    for (uint32_t c = 0; c < 2; ++c) {
        LaurentMatrix A(1, 1, 1, f2);
        A.at(0, 0) = Laurent::t_power(f2, -1, c);
        avg += Rat(count_solutions(A, w, 0, 0).count);
    }
    avg /= 2;
    CHECK(avg == exhaustive_average_count(2, w, 0, 0));
}

TEST_CASE("solution probability from the digit-constraint rank") {
    Fq f2(2);
    Weights w = Weights(1, 1, {1, 1});
    auto qv = [&](const char* s) { return std::vector<FqPoly>{FqPoly::parse(f2, s)}; };

    CHECK(solution_probability(qv("1"), w, 0, 2) == Rat(1));    // t = -1: p = 0 works
    CHECK(solution_probability(qv("t"), w, 0, 2) == Rat(1, 2));  // one digit must vanish
    CHECK(solution_probability(qv("t+1"), w, 0, 2) == Rat(1, 2));
    CHECK(solution_probability(qv("t^2"), w, 0, 2) == Rat(1, 4));
    CHECK(solution_probability(qv("t"), w, 1, 2) == Rat(1));  // threshold >= 1
    CHECK_THROWS_AS(solution_probability(qv("0"), w, 0, 2), ZeroVector);

    // brute force over all digit patterns of A at sufficient depth: the
    // fraction admitting some p must equal the rank formula
    Weights w12 = Weights(1, 2, {2, 1, 1});
    for (uint32_t qq : {2u, 3u}) {
        Fq f(qq);
        std::vector<std::vector<FqPoly>> qvecs = {
            {FqPoly::parse(f, "t"), FqPoly::parse(f, "1")},
            {FqPoly::parse(f, "t"), FqPoly::parse(f, "t")},
            {FqPoly::parse(f, "0"), FqPoly::parse(f, "t+1")},
        };
        for (const auto& qvec : qvecs)
            for (int R : {0, -1}) {
                // ey = 1 for all three vectors; row threshold t = 2(R-1) - 1
                int U = -(2 * (R - 1) - 1) - 1;
                int depth = U + 1 + 1;  // probed digits + max deg q
                int patterns = 1;
                for (int c = 0; c < 2 * depth; ++c) patterns *= static_cast<int>(qq);
                int hits = 0;
                std::vector<uint8_t> dig(2 * static_cast<size_t>(depth), 0);
                for (int it = 0; it < patterns; ++it) {
                    // digits of A_{0j} at degrees -1..-depth
                    Laurent z(f);
                    for (int j = 0; j < 2; ++j) {
                        std::vector<uint8_t> c(dig.begin() + static_cast<long>(j) * depth,
                                               dig.begin() + static_cast<long>(j + 1) * depth);
                        std::reverse(c.begin(), c.end());
                        Laurent aij(f, -depth, std::move(c));
                        z = z + aij * Laurent::of_poly(qvec[static_cast<size_t>(j)]);
                    }
                    // some p cancels all digits at degree >= 0; x is the tail
                    auto [integral, tail] = z.split();
                    bool ok = true;
                    if (!tail.zero()) {
                        for (int u = 1; u <= U; ++u)
                            if (tail.coeff(-u)) {
                                ok = false;
                                break;
                            }
                    }
                    if (ok) ++hits;
                    size_t p = 0;
                    while (p < dig.size()) {
                        if (++dig[p] < qq) break;
                        dig[p] = 0;
                        ++p;
                    }
                }
                Rat frac(hits, patterns);
                frac.canonicalize();
                CHECK(frac == solution_probability(qvec, w12, R, qq));
            }
    }
}

TEST_CASE("directional count: full cylinders plus degenerates recover the count") {
    std::vector<Weights> ws = {Weights(1, 1, {1, 1}), Weights(1, 2, {2, 1, 1}),
                               Weights(2, 1, {1, 1, 2})};
    MiniRng rng{424242};
    for (uint32_t qq : {2u, 3u}) {
        Fq f(qq);
        for (const Weights& w : ws)
            for (int R = -1; R <= 1; ++R)
                for (int T = 1; T <= 2; ++T) {
                    int P = min_depth(w, R, T);
                    LaurentMatrix A = random_matrix(f, w.m, w.n, P, rng);
                    DirectionalCountResult dir = count_solutions_directional(
                        A, w, R, T, Cylinder::full(Side::alpha), Cylinder::full(Side::beta));
                    CountResult all = count_solutions(A, w, R, T);
                    CHECK(dir.count + dir.degenerate == all.count);
                }
    }
}

TEST_CASE("directional count: worked degenerate instance") {
    Fq f2(2);
    Weights w = Weights(1, 1, {1, 1});
    LaurentMatrix M(1, 1, 8, f2);
    M.at(0, 0) = Laurent::parse(f2, "t^-1");
    DirectionalCountResult dir = count_solutions_directional(
        M, w, 0, 1, Cylinder::full(Side::alpha), Cylinder::full(Side::beta));
    // q = t makes Aq = 1 integral: degenerate; q = 1 leaves x = t^-1
    CHECK(dir.degenerate == Int(1));
    CHECK(dir.count == Int(1));

    // empty cylinders keep the degenerate tally but count nothing
    DirectionalCountResult none = count_solutions_directional(
        M, w, 0, 1, Cylinder::empty_set(Side::alpha), Cylinder::full(Side::beta));
    CHECK(none.count == Int(0));
    CHECK(none.degenerate == Int(1));
}

TEST_CASE("directional count splits over a digit partition") {
    MiniRng rng{99};
    for (uint32_t qq : {2u, 3u}) {
        Fq f(qq);
        Weights w = Weights(1, 1, {1, 1});
        int P = min_depth(w, 1, 2);
        LaurentMatrix A = random_matrix(f, 1, 1, P, rng);
        DirectionalCountResult full = count_solutions_directional(
            A, w, 1, 2, Cylinder::full(Side::alpha), Cylinder::full(Side::beta));
        Int sum = 0;
        for (uint32_t c = 0; c < qq; ++c) {
            DirectionalCountResult part = count_solutions_directional(
                A, w, 1, 2, Cylinder::of(Side::alpha, 1, {{static_cast<uint8_t>(c)}}),
                Cylinder::full(Side::beta));
            CHECK(part.degenerate == full.degenerate);
            sum += part.count;
        }
        CHECK(sum == full.count);
    }
}

TEST_CASE("directional count matches a brute filter on enumerated solutions") {
    // independent route: region_contains on EDir over the full candidate box
    MiniRng rng{31337};
    Fq f3(3);
    Weights w = Weights(1, 1, {1, 1});
    int P = min_depth(w, 0, 2);
    LaurentMatrix A = random_matrix(f3, 1, 1, P, rng);
    Cylinder c1 = Cylinder::of(Side::alpha, 1, {{1}});
    Cylinder c2 = Cylinder::of(Side::beta, 1, {{1}, {2}});
    RegionSpec ed = RegionSpec::EDir(2, 0, c1, c2);

    Int brute = 0;
    for (int qc = 0; qc < 27; ++qc)
        for (int pc = 0; pc < 27; ++pc) {
            std::vector<uint8_t> qd = {static_cast<uint8_t>(qc % 3),
                                       static_cast<uint8_t>((qc / 3) % 3),
                                       static_cast<uint8_t>(qc / 9)};
            std::vector<uint8_t> pd = {static_cast<uint8_t>(pc % 3),
                                       static_cast<uint8_t>((pc / 3) % 3),
                                       static_cast<uint8_t>(pc / 9)};
            Laurent qv(f3, 0, qd);
            if (qv.zero()) continue;
            Laurent x = Laurent(f3, 0, pd) + A.at(0, 0) * qv;
            if (region_contains(ed, {x, qv}, w)) brute += 1;
        }
    DirectionalCountResult dir = count_solutions_directional(A, w, 0, 2, c1, c2);
    CHECK(dir.count == brute);
}

TEST_CASE("directional budget guard") {
    Fq f2(2);
    Weights w = Weights(1, 1, {1, 1});
    LaurentMatrix Z(1, 1, 16, f2);
    // R = 4 leaves thresholds of 2^4 choices of p for small q; budget 3 trips
    CHECK_THROWS_AS(count_solutions_directional(Z, w, 4, 2, Cylinder::full(Side::alpha),
                                                Cylinder::full(Side::beta), Int(3)),
                    BudgetExceeded);
}

TEST_CASE("min_depth worked values") {
    Weights w11 = Weights(1, 1, {1, 1});
    CHECK(min_depth(w11, 0, 2) == 5);   // T + (T-R) + 1
    CHECK(min_depth(w11, 3, 2) == 3);   // R beyond T: only the product reach
    CHECK(min_depth(w11, -2, 2) == 7);
    Weights w12 = Weights(1, 2, {2, 1, 1});
    CHECK(min_depth(w12, 0, 3) == 10);  // 3*1 + 3*2 + 1
    CHECK_THROWS_AS(min_depth(w11, 0, -1), ConfigError);
}
