#pragma once

// Spherical-harmonic bookkeeping: eigenvalues and multiplicities on S^{N-1},
// mode-wise Laplacian integrals, the per-mode B functional that certifies the
// non-radial Rellich inequality, and the integration-by-parts identities used
// to reduce it.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hypbessel/bessel_pairs.hpp"
#include "hypbessel/profiles.hpp"
#include "hypbessel/quadrature.hpp"

namespace hypbessel {

struct ModeSpectrumEntry {
    int n = 0;
    double eigenvalue = 0.0;
    std::uint64_t multiplicity = 0;
};

struct ModeSpectrum {
    int N = 0;
    std::vector<ModeSpectrumEntry> entries;
};

/// Dimension of the degree-n spherical-harmonic space on S^{N-1}.
/// Throws RangeError if it does not fit in 64 bits.
std::uint64_t mode_multiplicity(const Dimension& dim, int n);

ModeSpectrum mode_spectrum(const Dimension& dim, int n_max);

/// Integral of V (Delta u)^2 over H^N for the single mode u = a_n P_n, written as
/// the expanded three-term radial integrand.
QuadratureResult mode_laplacian_sq_integral(const Dimension& dim, const BesselPair& pair, const ModeFunction& mode,
                                            const QuadratureOptions& opts = {});

/// The six constituent integrals of B for one mode, their sum, and the two
/// alternative forms obtained after integrating by parts.
struct BFunctional {
    int n = 0;
    double eigenvalue = 0.0;
    /// lambda_n^2 int V a^2 psi^{N-5}, -2 lambda_n int V L a psi^{N-3},
    /// -lambda_n int W a^2 psi^{N-3}, -(N-1) lambda_n int (V/psi^2 - coth V') a^2 psi^{N-3},
    /// -lambda_n int V a'^2 psi^{N-3}, +(N-1) lambda_n int V (f'/f)(coth r - 1/r) a^2 psi^{N-3}.
    std::array<double, 6> parts{};
    double value = 0.0;
    /// Sum of |parts|: the magnitude scale for signed tolerances.
    double scale = 0.0;
    double error = 0.0;
    /// The reduced form after the by-parts identities (equal to value).
    double reduced = 0.0;
    /// reduced minus lambda_n (lambda_n - (N-1)) int V a^2 psi^{N-5}: the final lower bound.
    double lower_bound = 0.0;
    double discarded = 0.0;
    double reduced_error = 0.0;
};

/// B for a single mode. Requires N >= 5. For n = 0 every part vanishes.
BFunctional b_functional(const Dimension& dim, const BesselPair& pair, const ModeFunction& mode,
                         const QuadratureOptions& opts = {});

enum class ByPartsIdentity { NradRellich2, NradRellich3, NrRellich6, NrRellich7 };

std::string to_string(ByPartsIdentity which);
ByPartsIdentity byparts_identity_from_string(const std::string& name);

struct ByPartsCheck {
    ByPartsIdentity which{};
    double lhs = 0.0;
    double rhs = 0.0;
    std::vector<double> rhs_terms;
    double residual = 0.0;      // lhs - rhs
    double rel_residual = 0.0;  // residual / max(|lhs|, max |rhs term|), 0 when all vanish
    double error = 0.0;
};

/// Evaluates both sides of the selected integration-by-parts identity for the
/// coefficient a_n (plain dr integrals with powers of psi = sinh).
ByPartsCheck byparts_identity_check(ByPartsIdentity which, const Dimension& dim, const BesselPair& pair,
                                    const RadialProfile& a_n, const QuadratureOptions& opts = {});

}  // namespace hypbessel
