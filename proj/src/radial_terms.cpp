#include "hypbessel/radial_terms.hpp"

#include <cmath>

namespace hypbessel {

ModeSample sample_mode(const ModeFunction& mode, double r) {
    ModeSample s;
    s.N = mode.dimension();
    s.r = r;
    s.sinh = std::sinh(r);
    s.coth = coth(r);
    s.coth_minus_inv = coth_minus_inv(r);
    s.rcoth_weight = rcoth_weight(r);
    s.vol = std::pow(s.sinh, s.N - 1);
    const Derivs d = mode.radial().eval(r);
    s.a = d.value;
    s.a1 = d.d1;
    s.a2 = d.d2;
    s.a3 = d.d3;
    s.eigenvalue = mode.eigenvalue();
    return s;
}

ModeIntegral integrate_mode(const ModeFunction& mode, const ModeIntegrand& integrand, const QuadratureOptions& opts) {
    const QuadratureResult q = integrate_radial([&](double r) { return integrand(sample_mode(mode, r)); },
                                                mode.radial().support(), opts);
    return {q.value, q.abs_error_estimate};
}

ModeIntegral integrate_modes(const std::vector<ModeFunction>& modes, const ModeIntegrand& integrand,
                             const QuadratureOptions& opts) {
    ModeIntegral total;
    for (const auto& mode : modes) {
        const ModeIntegral part = integrate_mode(mode, integrand, opts);
        total.value += part.value;
        total.error += part.error;
    }
    return total;
}

}  // namespace hypbessel
