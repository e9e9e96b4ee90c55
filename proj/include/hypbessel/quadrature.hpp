#pragma once

#include <functional>

#include "hypbessel/geometry.hpp"
#include "hypbessel/profiles.hpp"

namespace hypbessel {

struct QuadratureOptions {
    /// Absolute target for the error estimate.
    double abs_tol = 1e-10;
    /// Relative target; the effective target is max(abs_tol, rel_tol * |value|).
    double rel_tol = 1e-12;
    /// Upper bound on the number of bisections.
    int max_subdivisions = 4000;
    /// Intervals are never bisected beyond this depth.
    int max_depth = 40;
    /// When false, a non-converged result is returned instead of throwing.
    bool throw_on_failure = true;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int subdivisions = 0;
    long evaluations = 0;
    bool converged = true;
};

using RadialIntegrand = std::function<double(double)>;

/// Globally adaptive 10/21-point Gauss-Kronrod integration of f over [a, b].
/// Throws QuadratureError on a non-finite integrand value, or when the error
/// target is not met and throw_on_failure is set.
QuadratureResult integrate(const RadialIntegrand& f, double a, double b, const QuadratureOptions& opts = {});

/// integrate() over a support interval [lo, hi] with 0 < lo < hi < inf.
QuadratureResult integrate_radial(const RadialIntegrand& f, const Support& support, double tol);
QuadratureResult integrate_radial(const RadialIntegrand& f, const Support& support, const QuadratureOptions& opts);

/// sphere_measure * integral of g(r)^2 sinh^{N-1}(r) dr over the support. The
/// sphere measure N omega_N cancels from every identity in the library and
/// defaults to 1.
QuadratureResult hyperbolic_norm_sq(const RadialIntegrand& g, const Dimension& n, const Support& support,
                                    const QuadratureOptions& opts = {}, double sphere_measure = 1.0);

}  // namespace hypbessel
