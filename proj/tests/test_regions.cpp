#include <string>
#include <vector>

#include "doctest.h"
#include "ffl/regions.hpp"

using namespace ffl;

namespace {

LaurentVector vec(Fq f, const std::vector<std::string>& parts) {
    LaurentVector v;
    for (const std::string& s : parts) v.push_back(Laurent::parse(f, s));
    return v;
}

}  // namespace

TEST_CASE("quasi-norm: weighted max of coordinate norms") {
    Fq f2(2);
    Weights w12 = Weights(1, 2, {2, 1, 1});  // x-weight 2, y-weights 1,1

    // |t^4|^{1/2} = q^2
    CHECK(quasi_norm(vec(f2, {"t^4"}), Side::alpha, w12) == LogNorm::from_int_exponent(2));
    // |t^3|^{1/2} = q^{3/2}
    CHECK(quasi_norm(vec(f2, {"t^3"}), Side::alpha, w12).exponent() == Rat(3, 2));
    // beta side: plain max of degrees
    CHECK(quasi_norm(vec(f2, {"t^2", "t^3+1"}), Side::beta, w12) == LogNorm::from_int_exponent(3));
    CHECK(quasi_norm(vec(f2, {"0", "0"}), Side::beta, w12).is_zero());
    // fractional entries push the norm below 1
    CHECK(quasi_norm(vec(f2, {"t^-3"}), Side::alpha, w12).exponent() == Rat(-3, 2));
    CHECK_THROWS_AS(quasi_norm(vec(f2, {"1", "1"}), Side::alpha, w12), DimensionMismatch);

    Weights w21 = Weights(2, 1, {1, 1, 2});
    CHECK(quasi_norm(vec(f2, {"t", "t^2"}), Side::alpha, w21) == LogNorm::from_int_exponent(2));
    CHECK(quasi_norm(vec(f2, {"t^5"}), Side::beta, w21).exponent() == Rat(5, 2));
}

TEST_CASE("direction projection normalizes into the unit shell") {
    Fq f2(2);
    Weights w11 = Weights(1, 1, {1, 1});

    // x = t^2 + 1: norm q^2, dilation s = -2, digits of t^-2 x = 1 + t^-2
    Direction d = direction_project(vec(f2, {"t^2+1"}), Side::alpha, w11, 3);
    CHECK(d.s == -2);
    CHECK(d.digits == std::vector<uint8_t>{1, 0, 1});

    // already in the unit shell: s = 0
    d = direction_project(vec(f2, {"1+t^-1"}), Side::alpha, w11, 2);
    CHECK(d.s == 0);
    CHECK(d.digits == std::vector<uint8_t>{1, 1});

    // strictly fractional: dilate up
    d = direction_project(vec(f2, {"t^-3"}), Side::alpha, w11, 1);
    CHECK(d.s == 3);
    CHECK(d.digits == std::vector<uint8_t>{1});

    CHECK_THROWS_AS(direction_project(vec(f2, {"0"}), Side::alpha, w11, 1), ZeroVector);

    // weight 2 coordinate: t^3 has norm exponent 3/2, s = -ceil(3/2) = -2,
    // dilated top sits at degree 3 - 4 = -1
    Weights w12 = Weights(1, 2, {2, 1, 1});
    d = direction_project(vec(f2, {"t^3"}), Side::alpha, w12, 2);
    CHECK(d.s == -2);
    CHECK(d.digits == std::vector<uint8_t>{0, 1});

    // two coordinates with different weights normalize jointly
    Fq f3(3);
    Weights w21 = Weights(2, 1, {1, 2, 3});
    d = direction_project(vec(f3, {"t", "2t^3"}), Side::alpha, w21, 2);
    // norms: q^1 and q^{3/2}; s = -2, coordinate degrees shift by -2 and -4
    CHECK(d.s == -2);
    CHECK(d.digits == std::vector<uint8_t>{0, 1, 0, 2});
}

TEST_CASE("cylinder literals round-trip and membership works") {
    Cylinder c = Cylinder::parse("side=beta,depth=1,allow=[1;2]");
    CHECK(c.side == Side::beta);
    CHECK(c.depth == 1);
    CHECK_FALSE(c.is_full);
    CHECK(c.allowed.size() == 2);
    CHECK(c.contains_table({1}));
    CHECK(c.contains_table({2}));
    CHECK_FALSE(c.contains_table({0}));
    CHECK(Cylinder::parse(c.str()).str() == c.str());

    Cylinder full = Cylinder::parse("side=alpha,full");
    CHECK(full.is_full);
    CHECK(full.contains_table({0, 0, 0}));
    CHECK(full.str() == "side=alpha,full");

    Cylinder empty = Cylinder::parse("side=alpha,empty");
    CHECK(empty.is_empty());
    CHECK_FALSE(empty.contains_table({1}));
    CHECK(Cylinder::parse(empty.str()).is_empty());

    Cylinder two = Cylinder::parse("side=alpha,depth=2,allow=[10;01]");
    CHECK(two.contains_table({1, 0}));
    CHECK(two.contains_table({0, 1}));
    CHECK_FALSE(two.contains_table({1, 1}));

    CHECK_THROWS_AS(Cylinder::parse("depth=1,allow=[1]"), ConfigError);   // no side
    CHECK_THROWS_AS(Cylinder::parse("side=alpha,depth=1"), ConfigError);  // no kind
    CHECK_THROWS_AS(Cylinder::parse("side=up,full"), ConfigError);
    CHECK_THROWS_AS(Cylinder::parse("side=alpha,allow=[1x]"), ConfigError);
    CHECK_THROWS_AS(Cylinder::parse("side=alpha,depth=-1,full"), ConfigError);
}

TEST_CASE("region literals round-trip") {
    RegionSpec e = RegionSpec::parse("E:T=12,R=0");
    CHECK(e.kind == RegionSpec::Kind::E);
    CHECK(e.T == 12);
    CHECK(e.R == 0);
    CHECK(e.str() == "E:T=12,R=0");

    RegionSpec fr = RegionSpec::parse("F:S=8,R=-1");
    CHECK(fr.kind == RegionSpec::Kind::F);
    CHECK(fr.S == 8);
    CHECK(fr.R == -1);
    CHECK(fr.str() == "F:S=8,R=-1");

    RegionSpec b = RegionSpec::parse("ball:r=3");
    CHECK(b.kind == RegionSpec::Kind::Ball);
    CHECK(b.r == 3);
    CHECK(b.str() == "ball:r=3");

    CHECK_THROWS_AS(RegionSpec::parse("E:T=1"), ConfigError);
    CHECK_THROWS_AS(RegionSpec::parse("G:T=1,R=0"), ConfigError);
    CHECK_THROWS_AS(RegionSpec::parse("E:T=-1,R=0"), ConfigError);
    CHECK_THROWS_AS(RegionSpec::parse("ball"), ConfigError);
    CHECK_THROWS_AS(RegionSpec::E(-1, 0), ConfigError);
    CHECK_THROWS_AS(RegionSpec::F(-2, 0), ConfigError);
}

TEST_CASE("membership in E regions") {
    Fq f2(2);
    Weights w = Weights(1, 1, {1, 1});
    RegionSpec e = RegionSpec::E(2, 0);

    // ||y|| = q, need ||x|| < q^{-1}, i.e. deg x <= -2
    CHECK(region_contains(e, vec(f2, {"t^-2", "t"}), w));
    CHECK(region_contains(e, vec(f2, {"0", "t"}), w));
    CHECK_FALSE(region_contains(e, vec(f2, {"t^-1", "t"}), w));
    // y out of range
    CHECK_FALSE(region_contains(e, vec(f2, {"t^-4", "t^3"}), w));   // ||y|| > q^T
    CHECK_FALSE(region_contains(e, vec(f2, {"t^-4", "t^-1"}), w));  // ||y|| < 1
    CHECK_FALSE(region_contains(e, vec(f2, {"t^-4", "0"}), w));     // y = 0
    // boundary: ||y|| = 1 allowed, ||y|| = q^T allowed
    CHECK(region_contains(e, vec(f2, {"t^-1", "1"}), w));
    CHECK(region_contains(e, vec(f2, {"t^-3", "t^2"}), w));

    // weighted: x-weight 2 makes the x threshold deg x < 2(R - k)
    Weights w12 = Weights(1, 2, {2, 1, 1});
    RegionSpec e1 = RegionSpec::E(1, 1);
    // ||y|| = q: need |x|^{1/2} < q^0, deg x <= -1
    CHECK(region_contains(e1, vec(f2, {"t^-1", "t", "1"}), w12));
    CHECK_FALSE(region_contains(e1, vec(f2, {"1", "t", "1"}), w12));
    // ||y|| = 1: need deg x <= 1
    CHECK(region_contains(e1, vec(f2, {"t", "1", "1"}), w12));
    CHECK_FALSE(region_contains(e1, vec(f2, {"t^2", "0", "1"}), w12));
}

TEST_CASE("membership in F and ball regions") {
    Fq f2(2);
    Weights w = Weights(1, 1, {1, 1});
    RegionSpec fr = RegionSpec::F(1, 0);
    // roles swapped: 1 <= ||x|| <= q^S, ||y|| < q^R/||x||
    CHECK(region_contains(fr, vec(f2, {"t", "t^-2"}), w));
    CHECK_FALSE(region_contains(fr, vec(f2, {"t", "t^-1"}), w));
    CHECK_FALSE(region_contains(fr, vec(f2, {"t^-1", "t^-2"}), w));  // ||x|| < 1
    CHECK_FALSE(region_contains(fr, vec(f2, {"0", "t^-2"}), w));     // x = 0
    CHECK(region_contains(fr, vec(f2, {"1", "t^-1"}), w));

    RegionSpec b = RegionSpec::Ball(1);  // open ball of radius q: deg <= 0
    CHECK(region_contains(b, vec(f2, {"1", "1"}), w));
    CHECK(region_contains(b, vec(f2, {"0", "1+t^-5"}), w));
    CHECK_FALSE(region_contains(b, vec(f2, {"t", "1"}), w));
    RegionSpec b0 = RegionSpec::Ball(0);  // deg <= -1: strictly fractional
    CHECK(region_contains(b0, vec(f2, {"t^-1", "0"}), w));
    CHECK_FALSE(region_contains(b0, vec(f2, {"1", "0"}), w));
}

TEST_CASE("membership in EDir regions") {
    Fq f3(3);
    Weights w = Weights(1, 1, {1, 1});
    Cylinder lead1 = Cylinder::of(Side::alpha, 1, {{1}});
    Cylinder anyy = Cylinder::full(Side::beta);
    RegionSpec ed = RegionSpec::EDir(2, 0, lead1, anyy);

    // x = t^-2: direction digit 1 -> in; x = 2t^-2: digit 2 -> out
    CHECK(region_contains(ed, vec(f3, {"t^-2", "t"}), w));
    CHECK_FALSE(region_contains(ed, vec(f3, {"2t^-2", "t"}), w));
    // x = 0 is excluded from EDir even though it lies in E
    CHECK(region_contains(RegionSpec::E(2, 0), vec(f3, {"0", "t"}), w));
    CHECK_FALSE(region_contains(ed, vec(f3, {"0", "t"}), w));
    // empty cylinder kills everything
    RegionSpec dead = RegionSpec::EDir(2, 0, Cylinder::empty_set(Side::alpha), anyy);
    CHECK_FALSE(region_contains(dead, vec(f3, {"t^-2", "t"}), w));
    // wrong sides are rejected at construction
    CHECK_THROWS_AS(RegionSpec::EDir(2, 0, anyy, anyy), ConfigError);

    // beta cylinder constrains the y direction
    Cylinder ylead2 = Cylinder::of(Side::beta, 1, {{2}});
    RegionSpec ed2 = RegionSpec::EDir(2, 0, Cylinder::full(Side::alpha), ylead2);
    CHECK(region_contains(ed2, vec(f3, {"t^-2", "2t"}), w));
    CHECK_FALSE(region_contains(ed2, vec(f3, {"t^-2", "t"}), w));
}

TEST_CASE("bounding boxes cover their regions") {
    Weights w = Weights(1, 1, {1, 1});
    CHECK(region_bounding_box(RegionSpec::E(2, 0), w) == std::vector<int>{-1, 2});
    CHECK(region_bounding_box(RegionSpec::F(1, 0), w) == std::vector<int>{1, -1});
    CHECK(region_bounding_box(RegionSpec::Ball(2), w) == std::vector<int>{1, 1});

    Weights w12 = Weights(1, 2, {2, 1, 1});
    CHECK(region_bounding_box(RegionSpec::E(3, -1), w12) == std::vector<int>{-3, 3, 3});
    CHECK(region_bounding_box(RegionSpec::F(2, 1), w12) == std::vector<int>{4, 0, 0});

    // every member of E has coordinate degrees within the box
    Fq f2(2);
    RegionSpec e = RegionSpec::E(2, 1);
    std::vector<int> cut = region_bounding_box(e, w);
    for (const char* sx : {"0", "1", "t", "t^-1", "t^2"})
        for (const char* sy : {"0", "1", "t", "t^2", "t^3"}) {
            LaurentVector v = vec(f2, {sx, sy});
            if (!region_contains(e, v, w)) continue;
            for (int c = 0; c < 2; ++c)
                if (!v[static_cast<size_t>(c)].zero())
                    CHECK(v[static_cast<size_t>(c)].top() <= cut[static_cast<size_t>(c)]);
        }
}
