#include <cmath>
#include <random>

#include "doctest.h"
#include "hypbessel/errors.hpp"
#include "hypbessel/geometry.hpp"
#include "hypbessel/profiles.hpp"
#include "hypbessel/quadrature.hpp"
#include "oracles.hpp"

using namespace hypbessel;

TEST_CASE("closed forms") {
    const auto zero = integrate([](double) { return 0.0; }, 1.0, 2.0);
    CHECK(zero.value == 0.0);
    CHECK(zero.abs_error_estimate == 0.0);

    const auto s2 = integrate([](double r) { return std::sinh(r) * std::sinh(r); }, 1.0, 2.0);
    const double exact = (std::sinh(4.0) / 4 - 1.0) - (std::sinh(2.0) / 4 - 0.5);
    CHECK(std::fabs(s2.value - exact) < 1e-12);
    CHECK(s2.abs_error_estimate >= 0.0);

    const auto s = hyperbolic_norm_sq([](double) { return 1.0; }, Dimension(2), Support{1.0, 2.0});
    CHECK(std::fabs(s.value - (std::cosh(2.0) - std::cosh(1.0))) < 1e-12);
    CHECK(hyperbolic_norm_sq([](double) { return 0.0; }, Dimension(5), Support{1.0, 2.0}).value == 0.0);
}

TEST_CASE("bump against the composite Gauss-Legendre oracle") {
    const RadialProfile u = make_bump(0.5, 3.0);
    auto f = [&](double r) { return u(r) * std::pow(std::sinh(r), 4); };
    const auto q = integrate_radial(f, u.support(), 1e-10);
    CHECK(oracle::rel_diff(q.value, oracle::composite_gl(f, 0.5, 3.0)) < 1e-10);

    const auto h = hyperbolic_norm_sq([&](double r) { return u(r); }, Dimension(5), u.support());
    const double ref = oracle::composite_gl([&](double r) { return u(r) * u(r) * std::pow(std::sinh(r), 4); }, 0.5, 3.0);
    CHECK(oracle::rel_diff(h.value, ref) < 1e-10);
    const auto h2 = hyperbolic_norm_sq([&](double r) { return u(r); }, Dimension(5), u.support(), {}, 2.0);
    CHECK(oracle::rel_diff(h2.value, 2.0 * ref) < 1e-14);
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(integrate([](double) { return std::nan(""); }, 0.0, 1.0), QuadratureError);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(integrate_radial([](double) { return 1.0; }, Support{0.0, 1.0}, 1e-10), DomainError);
    QuadratureOptions tight;
    tight.max_subdivisions = 3;
    tight.abs_tol = 1e-15;
    tight.rel_tol = 0.0;
    auto rough = [](double x) { return std::sqrt(std::fabs(x - 0.3)); };
    CHECK_THROWS_AS(integrate(rough, 0.0, 1.0, tight), QuadratureError);
    tight.throw_on_failure = false;
    CHECK_FALSE(integrate(rough, 0.0, 1.0, tight).converged);
}

TEST_CASE("linearity and refinement") {
    const RadialProfile u = make_sine_bump(0.5, 2.5);
    const RadialProfile v = make_polynomial_bridge(1.0, 3.0);
    auto f = [&](double r) { return u(r) * std::sinh(r); };
    auto g = [&](double r) { return v(r) * std::cosh(r); };
    const auto qf = integrate(f, 0.5, 3.0), qg = integrate(g, 0.5, 3.0);
    const auto qs = integrate([&](double r) { return 2.0 * f(r) - 3.0 * g(r); }, 0.5, 3.0);
    CHECK(std::fabs(qs.value - (2.0 * qf.value - 3.0 * qg.value)) <=
          2.0 * (qs.abs_error_estimate + 2.0 * qf.abs_error_estimate + 3.0 * qg.abs_error_estimate) + 1e-15);

    QuadratureOptions o;
    o.rel_tol = 0.0;
    o.abs_tol = 1e-6;
    const auto coarse = integrate(f, 0.5, 3.0, o);
    o.abs_tol = 5e-7;
    const auto fine = integrate(f, 0.5, 3.0, o);
    CHECK(std::fabs(coarse.value - fine.value) <= coarse.abs_error_estimate + fine.abs_error_estimate + 1e-16);
}
