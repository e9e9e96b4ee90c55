#include <cmath>
#include <memory>
#include <random>

#include "doctest.h"
#include "hypbessel/errors.hpp"
#include "hypbessel/geometry.hpp"
#include "hypbessel/profiles.hpp"
#include "oracles.hpp"

using namespace hypbessel;

namespace {

// r^2 on (0.5, 2): not compactly supported in the smooth sense, only used pointwise.
class Square : public RadialProfile::Impl {
public:
    Jet jet(double r) const override {
        const Jet x = Jet::variable(r);
        return x * x;
    }
};

std::vector<RadialProfile> suite() {
    return {make_bump(0.5, 3.0), make_polynomial_bridge(0.4, 2.5, 2.0), make_sine_bump(1.0, 4.0, 0.5),
            make_concentrating_family(0.2, 0.0, Dimension(5)), make_spreading_family(8.0, Dimension(3))};
}

}  // namespace

TEST_CASE("bump boundary and symmetry") {
    const RadialProfile u = make_bump(0.5, 3.0);
    CHECK(u(0.5) == 0.0);
    CHECK(u(3.0) == 0.0);
    const auto near = u.eval(0.5 + 1e-3);
    CHECK(std::fabs(near.value) < 1e-100);
    CHECK(std::fabs(near.d1) < 1e-100);
    CHECK(std::fabs(near.d2) < 1e-100);
    const double mid = 1.75;
    CHECK(u.eval(mid).d1 == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    for (double r = 0.55; r < 2.99; r += 0.01)
        if (std::fabs(r - mid) > 1e-9) CHECK(u(r) < u(mid));
    CHECK_THROWS_AS(make_bump(3.0, 0.5), ParameterError);
    CHECK_THROWS_AS(make_bump(0.0, 1.0), ParameterError);
}

TEST_CASE("bump derivatives at a + 0.3 (b - a)") {
    const RadialProfile u = make_bump(0.5, 3.0);
    const double r = 0.5 + 0.3 * 2.5;
    const auto d = u.eval(r);
    CHECK(oracle::rel_diff(d.d1, oracle::fd1([&](double s) { return u(s); }, r)) < 1e-7);
    CHECK(oracle::rel_diff(d.d2, oracle::fd2([&](double s) { return u(s); }, r, 1e-3)) < 1e-7);
    CHECK(oracle::rel_diff(d.d3, oracle::fd3([&](double s) { return u(s); }, r, 5e-3)) < 1e-6);
}

TEST_CASE("every family matches finite differences at 50 random interior points") {
    std::mt19937_64 rng(12345);
    for (const auto& u : suite()) {
        const auto sup = u.support();
        // Stay a little inside the support where the flat edges make relative errors meaningless.
        std::uniform_real_distribution<double> pick(sup.lo + 0.1 * (sup.hi - sup.lo), sup.hi - 0.1 * (sup.hi - sup.lo));
        for (int i = 0; i < 50; ++i) {
            const double r = pick(rng);
            const auto d = u.eval(r);
            const double h = 1e-4 * (sup.hi - sup.lo);
            CAPTURE(to_string(u.family()));
            CAPTURE(r);
            auto close = [](double exact, double approx, double scale) {
                return std::fabs(exact - approx) <= 1e-6 * std::max(std::fabs(exact), scale);
            };
            const double scale = 1e-3 * (std::fabs(d.value) + std::fabs(d.d1) + std::fabs(d.d2) + std::fabs(d.d3));
            CHECK(close(d.d1, oracle::fd1([&](double s) { return u(s); }, r, h), scale));
            CHECK(close(d.d2, oracle::fd1([&](double s) { return u.eval(s).d1; }, r, h), scale));
            CHECK(close(d.d3, oracle::fd1([&](double s) { return u.eval(s).d2; }, r, h), scale));
        }
    }
}

TEST_CASE("profiles vanish exactly outside the support") {
    for (const auto& u : suite()) {
        const auto sup = u.support();
        for (double r : {sup.lo * 0.5, sup.lo, sup.hi, sup.hi + 0.1, sup.hi * 3}) {
            const auto d = u.eval(r);
            CHECK(d.value == 0.0);
            CHECK(d.d1 == 0.0);
            CHECK(d.d2 == 0.0);
            CHECK(d.d3 == 0.0);
        }
    }
}

TEST_CASE("polynomial bridge and sine bump are C3 at the ends") {
    for (const auto& u : {make_polynomial_bridge(1.0, 2.0), make_sine_bump(1.0, 2.0)}) {
        for (double r : {1.0 + 1e-4, 2.0 - 1e-4}) {
            const auto d = u.eval(r);
            CHECK(std::fabs(d.value) < 1e-12);
            CHECK(std::fabs(d.d1) < 1e-8);
            CHECK(std::fabs(d.d2) < 1e-4);
            CHECK(std::fabs(d.d3) < 1.0);
        }
    }
}

TEST_CASE("concentrating family") {
    const Dimension N(5);
    const double eps = 0.1;
    const RadialProfile u = make_concentrating_family(eps, 0.0, N);
    CHECK(u.support().lo == doctest::Approx(eps / 2));
    CHECK(u.support().hi == doctest::Approx(2.0));
    for (double r : {0.11, 0.3, 0.7, 0.99})
        CHECK(oracle::rel_diff(u(r), std::pow(r, (4.0 - 5.0) / 2 + eps)) < 1e-14);
    CHECK_THROWS_AS(make_concentrating_family(0.5, 0.0, N), ParameterError);
    CHECK_THROWS_AS(make_concentrating_family(0.0, 0.0, N), ParameterError);
}

TEST_CASE("registry factory") {
    const RadialProfile u = make_profile("bump", {{"a", 1.0}, {"b", 2.0}}, 5);
    CHECK(u.support().lo == 1.0);
    CHECK_THROWS_AS(make_profile("bump", {{"c", 1.0}}, 5), ParameterError);
    CHECK_THROWS_AS(make_profile("nope", {}, 5), ParameterError);
    CHECK(make_profile("spreading", {{"L", 10.0}}, 3).support().hi == doctest::Approx(10.0));
}

TEST_CASE("radial laplacian of r^2 in N = 3") {
    const RadialProfile u(ProfileFamily::Bump, Support{0.5, 2.0}, {}, std::make_shared<Square>());
    for (double r : {0.7, 1.0, 1.6})
        CHECK(oracle::rel_diff(radial_laplacian(Dimension(3), u, r), 2.0 + 4.0 * r * coth(r)) < 1e-14);
}

TEST_CASE("modes") {
    const Dimension N(5);
    const ModeFunction m(make_bump(0.5, 3.0), 2, N);
    CHECK(m.eigenvalue() == 4.0 + 3.0 * 2.0);
    CHECK(sphere_eigenvalue(0, N) == 0.0);
    for (int n = 1; n < 8; ++n) CHECK(sphere_eigenvalue(n, N) >= 4.0);
    CHECK_THROWS_AS(sphere_eigenvalue(-1, N), ParameterError);
}
