#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ellcert/height.hpp"
#include "ellcert/point.hpp"

using namespace ellcert;

namespace {

double rr_to_d(const RR& x) { return x.convert_to<double>(); }

Point base_point(int n) {
    return Point::affine(QQ(0), QQ(ZZ(n) * n * n));
}

}  // namespace

TEST_CASE("naive height basics") {
    CHECK(rr_to_d(naive_height(Point::at_infinity())) == 0.0);
    CHECK(rr_to_d(naive_height(Point::affine(QQ(0), QQ(1)))) == 0.0);
    CHECK(rr_to_d(naive_height(Point::affine(QQ(100), QQ(3)))) ==
          doctest::Approx(std::log(100.0)));
    CHECK(rr_to_d(naive_height(Point::affine(QQ(3, 7), QQ(1)))) ==
          doctest::Approx(std::log(7.0)));
    CHECK(rr_to_d(naive_height(Point::affine(QQ(-22, 7), QQ(1)))) ==
          doctest::Approx(std::log(22.0)));
}

TEST_CASE("canonical height against frozen exact-doubling references") {
    // references from 10 exact doublings of (0, n^3) in exact rational
    // arithmetic: h(x(2^10 P)) / 4^10 / 2, truncation error below 5e-4
    struct Ref {
        int n, t;
        double h;
    };
    std::vector<Ref> refs = {{1, 1, 0.1677513825},
                             {1, 2, 0.3841514558},
                             {1, 7, 0.3214779143},
                             {2, 1, 0.6564139768},
                             {3, 1, 0.6805421450}};
    for (const Ref& r : refs) {
        WeierstrassCurve c = make_curve({ZZ(r.n), ZZ(r.t)});
        HeightValue h = canonical_height(c, base_point(r.n), 128);
        CHECK(rr_to_d(h.value) == doctest::Approx(r.h).epsilon(5e-3));
    }
}

TEST_CASE("canonical height agrees with the doubling oracle") {
    for (auto [n, t] : std::vector<std::pair<int, int>>{
             {1, 1}, {1, 2}, {1, 7}, {2, 1}, {3, 1}, {1, -7}, {2, -30}}) {
        WeierstrassCurve c = make_curve({ZZ(n), ZZ(t)});
        HeightValue h = canonical_height(c, base_point(n), 128);
        RR oracle = doubling_oracle(c, base_point(n));
        CHECK(std::abs(rr_to_d(h.value) - rr_to_d(oracle)) < 1e-5);
    }
}

TEST_CASE("height on the rescaled model matches the doubling oracle") {
    auto [c, tr] = minimal_model({ZZ(4), ZZ(1)});
    REQUIRE(c.provenance == ModelTag::Eprime);
    Point p = tr.forward(base_point(4));
    HeightValue h = canonical_height(c, p, 128);
    RR oracle = doubling_oracle(c, p);
    CHECK(std::abs(rr_to_d(h.value) - rr_to_d(oracle)) < 1e-5);
    // heights are model-independent: compare with model E
    WeierstrassCurve e = make_curve({ZZ(4), ZZ(1)});
    HeightValue he = canonical_height(e, base_point(4), 128);
    CHECK(std::abs(rr_to_d(h.value) - rr_to_d(he.value)) < 1e-5);
}

TEST_CASE("quadraticity of the canonical height") {
    for (auto [n, t] : std::vector<std::pair<int, int>>{
             {1, 1}, {1, -7}, {2, 3}, {3, 5}, {1, 11}}) {
        WeierstrassCurve c = make_curve({ZZ(n), ZZ(t)});
        Point g = base_point(n);
        double h1 = rr_to_d(canonical_height(c, g, 160).value);
        for (int k = 2; k <= 3; ++k) {
            Point kg = scalar_mul(c, ZZ(k), g);
            double hk = rr_to_d(canonical_height(c, kg, 160).value);
            CHECK(std::abs(hk - k * k * h1) < 1e-5);
        }
        // parity: h(-P) = h(P)
        double hm = rr_to_d(canonical_height(c, negate(c, g), 160).value);
        CHECK(std::abs(hm - h1) < 1e-8);
    }
}

TEST_CASE("archimedean and non-archimedean parts recompose") {
    WeierstrassCurve c = make_curve({ZZ(1), ZZ(1)});
    Point g = base_point(1);
    PeriodData pd = periods(c, 128);
    HeightValue arch = local_arch(c, g, pd, 128);
    // finite contributions: only primes dividing gcd(A, B) matter;
    // A = a4 = -4, B = 2y = 2 here, so only p = 2
    RR l2 = local_nonarch(c, g, ZZ(2));
    CHECK(rr_to_d(local_nonarch(c, g, ZZ(3))) == 0.0);
    CHECK(rr_to_d(local_nonarch(c, g, ZZ(5))) == 0.0);
    double total = rr_to_d(arch.value) + rr_to_d(l2);
    RR oracle = doubling_oracle(c, g);
    CHECK(std::abs(total - rr_to_d(oracle)) < 1e-5);
    // lambda_p is a rational multiple of log p, non-positive here
    CHECK(rr_to_d(l2) <= 0.0);
}

TEST_CASE("upper bound dominates the height of the base point") {
    for (auto [n, t] : std::vector<std::pair<long, long>>{
             {1, 100}, {1, -100}, {1, 987}, {2, 400}, {2, -1234}, {3, 5000},
             {1, 250000}, {3, -250000}, {4, 25601}}) {
        CurveParams params{ZZ(n), ZZ(t)};
        auto [c, tr] = minimal_model(params);
        Point p = tr.forward(base_point(int(n)));
        RR ub = upper_bound_h0(params, c.provenance);
        HeightValue h = canonical_height(c, p, 128);
        CHECK(rr_to_d(h.value) <= rr_to_d(ub));
        // the bound has the stated closed form
        double expect = std::log(std::abs(double(t))) +
                        (c.provenance == ModelTag::E ? 1.57 : 0.19);
        CHECK(rr_to_d(ub) == doctest::Approx(expect));
    }
    CHECK_THROWS_AS(upper_bound_h0({ZZ(1), ZZ(50)}, ModelTag::E), range_error);
}

TEST_CASE("lower bound for divisor heights") {
    // closed forms on the asymptotic ranges
    CurveParams pos{ZZ(1), ZZ(200)};
    CHECK(rr_to_d(lower_bound_hP(pos, ModelTag::E)) ==
          doctest::Approx(0.1625 * std::log(200.0) - 0.125 * std::log(1.0) + 0.06));
    CurveParams neg{ZZ(1), ZZ(-250)};
    CHECK(rr_to_d(lower_bound_hP(neg, ModelTag::E)) ==
          doctest::Approx(0.1875 * std::log(250.0)));
    CurveParams pose{ZZ(4), ZZ(25601)};
    CHECK(rr_to_d(lower_bound_hP(pose, ModelTag::Eprime)) ==
          doctest::Approx(0.1625 * std::log(25601.0) + 0.375 * std::log(4.0) + 0.04));
    // outside the validity range
    CHECK_THROWS_AS(lower_bound_hP({ZZ(1), ZZ(50)}, ModelTag::E), range_error);
}

TEST_CASE("silverman gap bounds the naive-to-canonical difference") {
    for (auto [n, t] : std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {1, -7}}) {
        WeierstrassCurve c = make_curve({ZZ(n), ZZ(t)});
        RR gap = silverman_gap(c);
        Point g = base_point(n);
        for (int k = 1; k <= 4; ++k) {
            Point p = scalar_mul(c, ZZ(k), g);
            if (p.infinity) continue;
            double hhat = rr_to_d(canonical_height(c, p, 128).value);
            double hnv = rr_to_d(naive_height(p));
            CHECK(hhat - hnv / 2 <= rr_to_d(gap) + 1e-9);
        }
    }
}

TEST_CASE("doubling oracle budget") {
    WeierstrassCurve c = make_curve({ZZ(1), ZZ(1)});
    CHECK_THROWS_AS(doubling_oracle(c, base_point(1), 12, 64), budget_error);
}
