#pragma once

// Per-mode sampling kit shared by the identity, mode and uncertainty modules.
// Every integral in the library is a sum over modes of a one-dimensional
// radial integral, evaluated with the single adaptive backend in quadrature.

#include <functional>
#include <vector>

#include "hypbessel/geometry.hpp"
#include "hypbessel/profiles.hpp"
#include "hypbessel/quadrature.hpp"

namespace hypbessel {

/// Everything a radial integrand may need at one point of one mode.
struct ModeSample {
    int N = 2;
    double r = 0.0;
    double sinh = 0.0;
    double coth = 0.0;
    double coth_minus_inv = 0.0;  // coth r - 1/r
    double rcoth_weight = 0.0;    // (r coth r - 1) / r^2
    double vol = 0.0;             // sinh^{N-1} r
    double a = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    double eigenvalue = 0.0;

    /// a'' + (N-1) coth(r) a'
    double radial_laplacian() const { return a2 + (N - 1) * coth * a1; }
};

ModeSample sample_mode(const ModeFunction& mode, double r);

/// Integrand in dr (volume weight included by the caller when wanted).
using ModeIntegrand = std::function<double(const ModeSample&)>;

struct ModeIntegral {
    double value = 0.0;
    double error = 0.0;
};

/// Sum over modes of the integral of the integrand across each mode's support.
ModeIntegral integrate_modes(const std::vector<ModeFunction>& modes, const ModeIntegrand& integrand,
                             const QuadratureOptions& opts);

/// Single-mode convenience.
ModeIntegral integrate_mode(const ModeFunction& mode, const ModeIntegrand& integrand, const QuadratureOptions& opts);

}  // namespace hypbessel
