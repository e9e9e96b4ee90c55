#include "hypbessel/geometry.hpp"

#include <cmath>
#include <string>

#include "hypbessel/errors.hpp"
#include "hypbessel/profiles.hpp"

namespace hypbessel {

namespace {

void require_positive(double r, const char* what) {
    if (!(r > 0.0)) throw DomainError(std::string(what) + ": r must be positive, got " + std::to_string(r));
}

}  // namespace

Dimension::Dimension(int n) : n_(n) {
    if (n < kMinDimension || n > kMaxDimension)
        throw RangeError("dimension N=" + std::to_string(n) + " outside [2, 64]");
}

double coth(double r) {
    if (std::fabs(r) < 1e-3) {
        const double r2 = r * r;
        // 1/r + r/3 - r^3/45 + 2 r^5/945
        return 1.0 / r + r * (1.0 / 3.0 - r2 * (1.0 / 45.0 - r2 * (2.0 / 945.0)));
    }
    // coth r = 1 + 2/(e^{2r} - 1)
    return 1.0 + 2.0 / std::expm1(2.0 * r);
}

namespace {

// Taylor coefficients c_k of (coth r - 1/r) / r = sum_k c_k r^{2k}.
constexpr double kCothSeries[] = {1.0 / 3.0,         -1.0 / 45.0,      2.0 / 945.0,         -1.0 / 4725.0,
                                  2.0 / 93555.0,     -1382.0 / 638512875.0, 4.0 / 18243225.0};
// Below this radius the closed forms lose more digits than the truncated series.
constexpr double kSeriesCutoff = 0.25;

double coth_series(double r2, int derivative_weight) {
    double sum = 0.0;
    for (int k = 6; k >= 0; --k) sum = sum * r2 + kCothSeries[k] * (derivative_weight ? 2 * k + 1 : 1);
    return sum;
}

}  // namespace

double coth_minus_inv(double r) {
    if (std::fabs(r) < kSeriesCutoff) return r * coth_series(r * r, 0);
    return coth(r) - 1.0 / r;
}

double rcoth_weight(double r) {
    if (std::fabs(r) < kSeriesCutoff) return coth_series(r * r, 0);
    return coth_minus_inv(r) / r;
}

double inv_r2_minus_inv_sinh2(double r) {
    // d/dr (coth r - 1/r) = 1/r^2 - 1/sinh^2 r
    if (std::fabs(r) < kSeriesCutoff) return coth_series(r * r, 1);
    const double s = std::sinh(r);
    return 1.0 / (r * r) - 1.0 / (s * s);
}

double log_sinhc(double r) {
    const double a = std::fabs(r);
    if (a < kSeriesCutoff) {
        const double r2 = r * r;
        return r2 * (1.0 / 6.0 -
                     r2 * (1.0 / 180.0 -
                           r2 * (1.0 / 2835.0 -
                                 r2 * (1.0 / 37800.0 - r2 * (1.0 / 467775.0 - r2 * (691.0 / 3831077250.0 -
                                                                                    r2 * (2.0 / 127702575.0)))))));
    }
    if (a > 20.0) {
        // log sinh r = r - log 2 + log1p(-e^{-2r})
        return a - std::log(2.0) + std::log1p(-std::exp(-2.0 * a)) - std::log(a);
    }
    return std::log(std::sinh(a) / a);
}

Jet coth(const Jet& r) { return cosh(r) / sinh(r); }

double volume_weight(const Dimension& n, double r) {
    require_positive(r, "volume_weight");
    const double w = std::pow(std::sinh(r), n.value() - 1);
    if (!std::isfinite(w))
        throw RangeError("volume_weight: sinh^{N-1}(r) overflows for N=" + std::to_string(n.value()) +
                         ", r=" + std::to_string(r));
    return w;
}

double radial_laplacian(const Dimension& n, const RadialProfile& u, double r) {
    require_positive(r, "radial_laplacian");
    const Derivs d = u.eval(r);
    return d.d2 + (n.value() - 1) * coth(r) * d.d1;
}

double gradient_sq_radial(const RadialProfile& u, double r) {
    require_positive(r, "gradient_sq_radial");
    const double d1 = u.eval(r).d1;
    return d1 * d1;
}

}  // namespace hypbessel
