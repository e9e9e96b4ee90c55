#pragma once

// Geodesic-polar primitives of hyperbolic space H^N around a fixed pole.

#include "hypbessel/jet.hpp"

namespace hypbessel {

class RadialProfile;

inline constexpr int kMinDimension = 2;
inline constexpr int kMaxDimension = 64;

/// Dimension N of H^N, validated to lie in [2, 64].
class Dimension {
public:
    explicit Dimension(int n);
    constexpr int value() const { return n_; }
    constexpr operator int() const { return n_; }  // NOLINT(google-explicit-constructor)

private:
    int n_;
};

/// coth r, with a series branch below 1e-3.
double coth(double r);

/// coth r - 1/r, with a series branch below 1e-2. Positive for r > 0, ~ r/3 at 0.
double coth_minus_inv(double r);

/// (r coth r - 1) / r^2 = (coth r - 1/r) / r. Tends to 1/3 at 0 and ~ 1/r at infinity.
double rcoth_weight(double r);

/// 1/r^2 - 1/sinh^2 r, evaluated without cancellation near 0 (limit 1/3).
double inv_r2_minus_inv_sinh2(double r);

/// log(sinh r / r), accurate for small and large r.
double log_sinhc(double r);

/// Jet versions of the above, used where derivatives of the weights are needed.
Jet coth(const Jet& r);

/// sinh^{N-1}(r): radial density of the hyperbolic volume element.
/// Throws DomainError for r <= 0 and RangeError on overflow.
double volume_weight(const Dimension& n, double r);

/// u''(r) + (N-1) coth(r) u'(r).
double radial_laplacian(const Dimension& n, const RadialProfile& u, double r);

/// (u'(r))^2.
double gradient_sq_radial(const RadialProfile& u, double r);

}  // namespace hypbessel
