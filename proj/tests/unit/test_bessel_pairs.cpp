#include <cmath>
#include <vector>

#include "doctest.h"
#include "hypbessel/bessel_pairs.hpp"
#include "hypbessel/errors.hpp"
#include "oracles.hpp"

using namespace hypbessel;

TEST_CASE("lambda params") {
    const auto p = lambda_params(Dimension(5), 0.0);
    CHECK(p.gamma == 4.0);
    CHECK(p.h == 2.5);
    CHECK(p.h * p.h == 6.25);
    for (int N : {2, 3, 5, 8}) {
        const auto top = lambda_params(Dimension(N), lambda_one(Dimension(N)));
        CHECK(top.gamma == 0.0);
        CHECK(top.h == 0.5);
    }
    const auto q = lambda_params(Dimension(5), 3.0);
    CHECK(q.gamma == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(q.h == doctest::Approx(1.5).epsilon(1e-15));
    CHECK_THROWS_AS(lambda_params(Dimension(5), -0.1), RangeError);
    CHECK_THROWS_AS(lambda_params(Dimension(5), 4.0001), RangeError);

    for (int N : {2, 3, 5, 8}) {
        const Dimension d(N);
        double prev_h = 1e9;
        for (int i = 0; i <= 20; ++i) {
            const double l = lambda_one(d) * i / 20.0;
            const auto lp = lambda_params(d, l);
            CHECK(std::fabs(((N - 1.0) * (N - 1.0) - lp.gamma * lp.gamma) / 4.0 - l) < 1e-14 * std::max(1.0, l));
            CHECK(lp.h >= 0.5);
            CHECK(lp.h <= N / 2.0);
            CHECK(lp.h < prev_h);
            prev_h = lp.h;
        }
    }
}

TEST_CASE("psi closed forms") {
    const Dimension N5(5);
    const auto p0 = lambda_params(N5, 0.0);
    CHECK(oracle::rel_diff(psi(p0, N5, 1.0, 0), 1.0 / std::pow(std::sinh(1.0), 4)) < 1e-14);
    for (double r : {0.01, 0.7, 3.0, 15.0}) {
        CHECK(oracle::rel_diff(psi(p0, N5, r, 0), std::pow(r, 2.5) / std::pow(std::sinh(r), 4)) < 1e-13);
        const auto pt = lambda_params(N5, 4.0);
        CHECK(oracle::rel_diff(psi(pt, N5, r, 0), std::sqrt(r) / std::pow(std::sinh(r), 2)) < 1e-13);
    }
    const auto p1 = lambda_params(N5, 1.0);
    const double r = 0.7;
    CHECK(oracle::rel_diff(psi(p1, N5, r, 1), oracle::fd1([&](double s) { return psi(p1, N5, s, 0); }, r)) < 1e-7);
    CHECK(oracle::rel_diff(psi(p1, N5, r, 2), oracle::fd2([&](double s) { return psi(p1, N5, s, 0); }, r, 1e-3)) <
          1e-7);
    // 50-digit oracle for the value itself.
    CHECK(oracle::rel_diff(psi(p1, N5, r, 0), static_cast<double>(oracle::psi_hp(5, 1, oracle::hp(r)))) < 1e-14);
    CHECK_THROWS_AS(psi(p1, N5, 0.0, 0), DomainError);
}

TEST_CASE("psi'' ratio matches the corrected closed form") {
    for (int N : {2, 3, 5, 8}) {
        const Dimension d(N);
        for (double l : {0.0, lambda_one(d) / 3, lambda_one(d)}) {
            const auto p = lambda_params(d, l);
            for (double r : {0.05, 0.9, 6.0}) {
                const double fd = oracle::fd1([&](double s) { return psi(p, d, s, 1); }, r, 1e-3 * r) / psi(p, d, r, 0);
                CHECK(oracle::rel_diff(psi_second_ratio(p, d, r), fd) < 1e-7);
            }
        }
    }
}

TEST_CASE("W_lambda") {
    const Dimension N5(5);
    const auto p0 = lambda_params(N5, 0.0);
    CHECK(oracle::rel_diff(w_lambda(p0, N5, 1.0), oracle::w_from_ode_hp(5, 0.0, 1.0)) < 1e-13);
    for (int N : {3, 5, 6}) {
        const Dimension d(N);
        for (double l : {0.0, 1.0, lambda_one(d)}) {
            const auto p = lambda_params(d, l);
            const double r = 1e-4;
            const double target = 0.25 * (N - 2.0) * (N - 2.0);
            CHECK(std::fabs(r * r * w_lambda(p, d, r) - target) < 1e-6);
            for (double s : {0.3, 2.0, 9.0})
                CHECK(oracle::rel_diff(w_lambda(p, d, s), oracle::w_from_ode_hp(N, l, s)) < 1e-11);
        }
    }
}

TEST_CASE("ODE residuals") {
    const Dimension N5(5);
    const BesselPair c = canonical_pair(N5, 2.0);
    for (double r : {0.1, 1.0, 5.0}) {
        const PairValues v = c(r);
        CHECK(std::fabs(ode_residual(c, N5, r)) / std::fabs(std::pow(r, 4) * v.W * v.f) < 1e-9);
    }
    CHECK(ode_residual(trivial_pair(N5), N5, 1.3) == 0.0);
    for (double r : {0.2, 1.0, 4.0}) CHECK(ode_residual_normalized(radial_harmonic_pair(N5), N5, r) < 1e-15);
    for (double r : {0.2, 1.0, 4.0}) CHECK(ode_residual_normalized(power_pair(N5, 1.5, -0.5), N5, r) < 1e-15);

    for (int N : {2, 3, 5, 8}) {
        const Dimension d(N);
        for (int i = 0; i <= 20; ++i) {
            const BesselPair pair = canonical_pair(d, lambda_one(d) * i / 20.0);
            for (int k = 0; k < 200; ++k) {
                const double r = 1e-3 * std::pow(2e4, k / 199.0);
                CHECK(ode_residual_normalized(pair, d, r) < 1e-8);
                CHECK(pair(r).f > 0.0);
            }
        }
    }
}

TEST_CASE("non-radial admissibility") {
    const std::vector<double> grid{0.1, 0.5, 1.0, 2.0, 5.0};
    const auto five = check_nonradial_condition(trivial_pair(Dimension(5)), Dimension(5), grid);
    CHECK(five.holds);
    CHECK(five.worst_margin == doctest::Approx(1.0));
    const auto six = check_nonradial_condition(trivial_pair(Dimension(6)), Dimension(6), grid);
    CHECK(six.holds);
    for (double r : grid)
        CHECK(oracle::rel_diff(nonradial_condition_value(trivial_pair(Dimension(6)), Dimension(6), r),
                               1.0 / std::pow(std::sinh(r), 2) + 2.0) < 1e-14);
    CHECK_THROWS_AS(check_nonradial_condition(trivial_pair(Dimension(4)), Dimension(4), grid), DimensionError);

    // V = exp(-r^2) at N = 5: direct evaluation of 3 V' coth - V'' + V.
    const BesselPair g = gaussian_pair(Dimension(5));
    const std::vector<double> gg{0.5, 1.0, 2.0};
    bool all = true;
    for (double r : gg) {
        const double V = std::exp(-r * r), dV = -2 * r * V, d2V = (4 * r * r - 2) * V;
        const double direct = 3 * dV / std::tanh(r) - d2V + V;
        CHECK(oracle::rel_diff(nonradial_condition_value(g, Dimension(5), r), direct) < 1e-13);
        all = all && direct >= -1e-12;
    }
    CHECK(check_nonradial_condition(g, Dimension(5), gg).holds == all);
}

TEST_CASE("registry") {
    const Dimension N5(5);
    CHECK(make_pair("canonical", N5, 1.0).name().find("canonical") != std::string::npos);
    CHECK(make_pair("power:1,2", N5).dimension() == 5);
    CHECK_THROWS_AS(make_pair("unknown", N5), ParameterError);
    CHECK_THROWS_AS(make_pair("power:1", N5), ParameterError);
}
