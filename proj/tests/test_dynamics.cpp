#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dualnest/dynamics.hpp"

#include <random>

using namespace dualnest;

TEST_CASE("evaluate") {
    CHECK(evaluate({Complex(0, 0)}, Complex(2, 0)) == Complex(4, 0));
    CHECK(evaluate({Complex(0, 1)}, Complex(0, 0)) == Complex(0, 1));
    CHECK(evaluate({Complex(0, 1)}, Complex(0, 1)) == Complex(-1, 1));
}

TEST_CASE("fixed points") {
    SUBCASE("c = 0") {
        const FixedPoints fp = fixed_points({Complex(0, 0)});
        CHECK(fp.alpha == Complex(0, 0));
        CHECK(fp.beta == Complex(1, 0));
    }
    SUBCASE("c = -2") {
        const FixedPoints fp = fixed_points({Complex(-2, 0)});
        CHECK(fp.alpha == Complex(-1, 0));
        CHECK(fp.beta == Complex(2, 0));
    }
    SUBCASE("c = i residuals and repelling beta") {
        const Parameter p{Complex(0, 1)};
        const FixedPoints fp = fixed_points(p);
        CHECK(std::abs(p.eval(fp.alpha) - fp.alpha) < 1e-12);
        CHECK(std::abs(p.eval(fp.beta) - fp.beta) < 1e-12);
        CHECK(std::abs(2.0 * fp.beta) > 1.0);
    }
    SUBCASE("degenerate at c = 1/4") {
        CHECK_THROWS_AS(fixed_points({Complex(0.25, 0)}), DegenerateFixedPoint);
    }
}

TEST_CASE("green value") {
    CHECK(green_value({Complex(0, 0)}, Complex(2, 0)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(green_value({Complex(0, 0)}, Complex(0, 1)) == 0.0);
    // Direct-iteration oracle at c = i, z = 10.
    const Parameter pi{Complex(0, 1)};
    Complex z(10, 0);
    long double lz = 0;
    int k = 0;
    for (; k < 60 && std::abs(z) < 1e100; ++k) z = pi.eval(z);
    lz = std::log(std::abs(z));
    const double oracle = static_cast<double>(std::ldexp(lz, -k));
    CHECK(green_value(pi, Complex(10, 0)) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("green functional equation on escaping samples") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    for (Complex c : {Complex(0, 0), Complex(0, 1), Complex(-2, 0)}) {
        const Parameter p{c};
        int tested = 0;
        while (tested < 1000) {
            const Complex z(coord(rng), coord(rng));
            const double g = green_value(p, z);
            if (g <= 0.0) continue;
            ++tested;
            CHECK(std::abs(green_value(p, p.eval(z)) - 2.0 * g) < 1e-9);
        }
    }
}

TEST_CASE("critical orbit") {
    const OrbitSample orbit = critical_orbit({Complex(0, 1)}, 4);
    REQUIRE(orbit.points.size() == 4);
    CHECK(orbit.points[0] == Complex(0, 0));
    CHECK(orbit.points[1] == Complex(0, 1));
    CHECK(orbit.points[2] == Complex(-1, 1));
    CHECK(orbit.points[3] == Complex(0, -1));

    const OrbitSample fixed = critical_orbit({Complex(0, 0)}, 3);
    for (const Complex& z : fixed.points) CHECK(z == Complex(0, 0));

    const OrbitSample two = critical_orbit({Complex(-2, 0)}, 4);
    CHECK(two.points[1] == Complex(-2, 0));
    CHECK(two.points[2] == Complex(2, 0));
    CHECK(two.points[3] == Complex(2, 0));

    // Recurrence holds exactly as computed.
    const Parameter p{Complex(-1.9, 0)};
    const OrbitSample o = critical_orbit(p, 32);
    for (size_t j = 0; j + 1 < o.points.size(); ++j) {
        CHECK(o.points[j + 1] == p.eval(o.points[j]));
    }
}
