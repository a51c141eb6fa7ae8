#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "triglide/polynomial.hpp"

using namespace triglide;

TEST_CASE("evaluation and degree") {
    const UniPoly p{{-1.0, 0.0, 2.0}}; // 2t^2 - 1
    CHECK(p.degree() == 2);
    CHECK(p.eval(0.0) == -1.0);
    CHECK(p.eval(1.0) == 1.0);
    CHECK(p.eval(-2.0) == 7.0);
    const UniPoly d = p.derivative();
    CHECK(d.degree() == 1);
    CHECK(d.eval(3.0) == 12.0);
    CHECK(UniPoly{{5.0}}.degree() == 0);
    CHECK(UniPoly{{0.0, 0.0}}.degree() == -1);
}

TEST_CASE("quadratic roots") {
    const auto r = isolateRealRoots(UniPoly{{-1.0, 0.0, 2.0}}, -2.0, 2.0);
    REQUIRE(r.size() == 2);
    CHECK(r[0].value == Catch::Approx(-std::sqrt(0.5)).epsilon(1e-12));
    CHECK(r[1].value == Catch::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(r[0].value < r[1].value);
}

TEST_CASE("interval filtering") {
    const auto r = isolateRealRoots(UniPoly{{-1.0, 0.0, 2.0}}, 0.0, 2.0);
    REQUIRE(r.size() == 1);
    CHECK(r[0].value == Catch::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("linear and constant polynomials") {
    const auto r = isolateRealRoots(UniPoly{{3.0, -2.0}}, -10.0, 10.0);
    REQUIRE(r.size() == 1);
    CHECK(r[0].value == Catch::Approx(1.5));
    CHECK(isolateRealRoots(UniPoly{{7.0}}, -10.0, 10.0).empty());
}

TEST_CASE("zero polynomial is rejected") {
    CHECK_THROWS_AS(isolateRealRoots(UniPoly{{0.0, 0.0, 0.0}}, -1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_WITH(isolateRealRoots(UniPoly{{}}, -1.0, 1.0), "degenerate polynomial");
}

TEST_CASE("double root reported once") {
    // (t - 1)^2
    const auto r = isolateRealRoots(UniPoly{{1.0, -2.0, 1.0}}, -3.0, 3.0);
    REQUIRE(r.size() == 1);
    CHECK(r[0].value == Catch::Approx(1.0).epsilon(1e-9));

    // (t^2 - 2)^2 has two distinct double roots; location accuracy at a
    // double root is limited to about sqrt(eps) by the flat sign pattern
    const auto r2 = isolateRealRoots(UniPoly{{4.0, 0.0, -4.0, 0.0, 1.0}}, -3.0, 3.0);
    REQUIRE(r2.size() == 2);
    CHECK(std::fabs(r2[0].value + std::sqrt(2.0)) < 1e-6);
    CHECK(std::fabs(r2[1].value - std::sqrt(2.0)) < 1e-6);
}

TEST_CASE("quartic biquadratic roots") {
    // 48 t^4 - 24 t^2 + c with well separated magnitudes
    const UniPoly p{{1.0, 0.0, -24.0, 0.0, 48.0}};
    const auto r = isolateRealRoots(p, -1.0, 1.0);
    REQUIRE(r.size() == 4);
    for (const auto& e : r) {
        CHECK(e.hi - e.lo <= 1e-12);
        CHECK(std::fabs(p.eval(e.value)) < 1e-9);
    }
    CHECK(r[0].value < r[1].value);
    CHECK(r[1].value < r[2].value);
    CHECK(r[2].value < r[3].value);
}

TEST_CASE("cauchy bound contains all real roots") {
    std::mt19937_64 eng(77);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int it = 0; it < 500; ++it) {
        UniPoly p{{u(eng), u(eng), u(eng), u(eng)}};
        if (p.degree() < 1)
            continue;
        const double b = cauchyRootBound(p);
        for (const auto& e : isolateRealRoots(p, -b, b))
            CHECK(std::fabs(p.eval(e.value)) < 1e-6 * (1.0 + std::fabs(e.value)));
    }
}

TEST_CASE("random quadratics match the closed form") {
    std::mt19937_64 eng(101);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int it = 0; it < 2000; ++it) {
        const double a = u(eng), b = u(eng), c = u(eng);
        if (std::fabs(a) < 1e-3)
            continue;
        const double disc = b * b - 4 * a * c;
        if (disc < 1e-6)
            continue; // keep clearly separated real roots
        const double s = std::sqrt(disc);
        double r1 = (-b - s) / (2 * a), r2 = (-b + s) / (2 * a);
        if (r1 > r2)
            std::swap(r1, r2);
        const auto got = isolateRealRoots(UniPoly{{c, b, a}});
        REQUIRE(got.size() == 2);
        CHECK(std::fabs(got[0].value - r1) < 1e-12 * (1.0 + std::fabs(r1)));
        CHECK(std::fabs(got[1].value - r2) < 1e-12 * (1.0 + std::fabs(r2)));
    }
}

TEST_CASE("random biquadratics match the closed form") {
    std::mt19937_64 eng(303);
    std::uniform_real_distribution<double> u(0.05, 1.5);
    for (int it = 0; it < 1000; ++it) {
        // roots +-sqrt(t1), +-sqrt(t2) with separated positive t1 < t2
        const double t1 = u(eng);
        const double t2 = t1 + u(eng);
        const double A = 1.0 + u(eng);
        // A (t^2 - t1)(t^2 - t2)
        const UniPoly p{{A * t1 * t2, 0.0, -A * (t1 + t2), 0.0, A}};
        const auto got = isolateRealRoots(p, -10.0, 10.0);
        REQUIRE(got.size() == 4);
        const double m1 = std::sqrt(t1), m2 = std::sqrt(t2);
        CHECK(std::fabs(got[0].value + m2) < 1e-11);
        CHECK(std::fabs(got[1].value + m1) < 1e-11);
        CHECK(std::fabs(got[2].value - m1) < 1e-11);
        CHECK(std::fabs(got[3].value - m2) < 1e-11);
    }
}

TEST_CASE("enclosures are disjoint and tight") {
    const UniPoly p{{0.36, -0.05, -2.1, 0.1, 1.0}};
    const auto r = isolateRealRoots(p, -5.0, 5.0);
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        CHECK(r[i].hi <= r[i + 1].lo);
    for (const auto& e : r) {
        CHECK(e.hi - e.lo <= 1e-12);
        CHECK(e.lo <= e.value);
        CHECK(e.value <= e.hi);
    }
}
