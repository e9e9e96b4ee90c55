#include "hypbessel/spherical_modes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hypbessel/errors.hpp"
#include "hypbessel/radial_terms.hpp"

namespace hypbessel {

namespace {

// Exact binomial coefficient; throws once the value leaves 64 bits.
std::uint64_t binomial(int m, int k) {
    if (k < 0 || m < 0 || k > m) return 0;
    k = std::min(k, m - k);
    std::uint64_t acc = 1;
    for (int i = 1; i <= k; ++i) {
        // acc * (m - k + i) is divisible by i; split the division to stay in range.
        const std::uint64_t den = static_cast<std::uint64_t>(i);
        const std::uint64_t g = std::gcd(acc, den);
        const std::uint64_t num = static_cast<std::uint64_t>(m - k + i) / (den / g);
        if (__builtin_mul_overflow(acc / g, num, &acc))
            throw RangeError("spherical-harmonic multiplicity exceeds 64 bits");
    }
    return acc;
}

double sinh_pow(const ModeSample& s, int k) { return std::pow(s.sinh, k); }

// Integral over the mode support of g(sample, pair values) in plain dr.
template <typename G>
ModeIntegral integrate_with_pair(const ModeFunction& mode, const BesselPair& pair, const QuadratureOptions& opts,
                                 G&& g) {
    return integrate_mode(mode, [&](const ModeSample& s) { return g(s, pair(s.r)); }, opts);
}

}  // namespace

std::uint64_t mode_multiplicity(const Dimension& dim, int n) {
    if (n < 0) throw ParameterError("mode index must be non-negative");
    const int N = dim.value();
    if (n == 0) return 1;
    if (n == 1) return static_cast<std::uint64_t>(N);
    return binomial(N + n - 1, n) - binomial(N + n - 3, n - 2);
}

ModeSpectrum mode_spectrum(const Dimension& dim, int n_max) {
    if (n_max < 0) throw ParameterError("n_max must be non-negative");
    ModeSpectrum out;
    out.N = dim.value();
    out.entries.reserve(static_cast<size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) out.entries.push_back({n, sphere_eigenvalue(n, dim), mode_multiplicity(dim, n)});
    return out;
}

QuadratureResult mode_laplacian_sq_integral(const Dimension& dim, const BesselPair& pair, const ModeFunction& mode,
                                            const QuadratureOptions& opts) {
    (void)dim;
    const double lam = mode.eigenvalue();
    const ModeIntegral m = integrate_with_pair(mode, pair, opts, [lam](const ModeSample& s, const PairValues& v) {
        const double L = s.radial_laplacian();
        const double s2 = s.sinh * s.sinh;
        return v.V * (L * L + lam * lam * s.a * s.a / (s2 * s2) - 2.0 * lam * L * s.a / s2) * s.vol;
    });
    QuadratureResult q;
    q.value = m.value;
    q.abs_error_estimate = m.error;
    return q;
}

BFunctional b_functional(const Dimension& dim, const BesselPair& pair, const ModeFunction& mode,
                         const QuadratureOptions& opts) {
    const int N = dim.value();
    if (N < 5) throw DimensionError("B functional requires N >= 5, got N=" + std::to_string(N));
    BFunctional b;
    b.n = mode.mode_index();
    b.eigenvalue = mode.eigenvalue();
    if (b.n == 0) return b;
    const double lam = b.eigenvalue;

    auto run = [&](auto&& g) { return integrate_with_pair(mode, pair, opts, g); };

    const ModeIntegral va2_m5 =
        run([N](const ModeSample& s, const PairValues& v) { return v.V * s.a * s.a * sinh_pow(s, N - 5); });
    const ModeIntegral vla = run([N](const ModeSample& s, const PairValues& v) {
        return v.V * s.radial_laplacian() * s.a * sinh_pow(s, N - 3);
    });
    const ModeIntegral wa2 =
        run([N](const ModeSample& s, const PairValues& v) { return v.W * s.a * s.a * sinh_pow(s, N - 3); });
    const ModeIntegral curv = run([N](const ModeSample& s, const PairValues& v) {
        return (v.V / (s.sinh * s.sinh) - s.coth * v.dV) * s.a * s.a * sinh_pow(s, N - 3);
    });
    const ModeIntegral va1 =
        run([N](const ModeSample& s, const PairValues& v) { return v.V * s.a1 * s.a1 * sinh_pow(s, N - 3); });
    const ModeIntegral drift = run([N](const ModeSample& s, const PairValues& v) {
        return v.V * v.f_log * s.coth_minus_inv * s.a * s.a * sinh_pow(s, N - 3);
    });

    b.parts = {lam * lam * va2_m5.value,      -2.0 * lam * vla.value,      -lam * wa2.value,
               -(N - 1) * lam * curv.value,   -lam * va1.value,            (N - 1) * lam * drift.value};
    b.error = lam * lam * va2_m5.error + 2.0 * lam * vla.error + lam * wa2.error + (N - 1) * lam * curv.error +
              lam * va1.error + (N - 1) * lam * drift.error;
    for (double p : b.parts) {
        b.value += p;
        b.scale += std::fabs(p);
    }

    // Reduced form: lambda [ (lambda - 4) int V a^2 psi^{N-5} + int (3 V' coth - V'') a^2 psi^{N-3}
    //   + (N - 4) int V a^2 psi^{N-3} + int V (a' - a (f'/f + coth))^2 psi^{N-3} ]
    const ModeIntegral cond = run([N](const ModeSample& s, const PairValues& v) {
        return (3.0 * v.dV * s.coth - v.d2V + (N - 4) * v.V) * s.a * s.a * sinh_pow(s, N - 3);
    });
    const ModeIntegral rem = run([N](const ModeSample& s, const PairValues& v) {
        const double d = s.a1 - s.a * (v.f_log + s.coth);
        return v.V * d * d * sinh_pow(s, N - 3);
    });
    b.reduced = lam * ((lam - 4.0) * va2_m5.value + cond.value + rem.value);
    b.reduced_error = lam * (std::fabs(lam - 4.0) * va2_m5.error + cond.error + rem.error);
    b.discarded = lam * (lam - (N - 1)) * va2_m5.value;
    b.lower_bound = b.reduced - b.discarded;
    return b;
}

std::string to_string(ByPartsIdentity which) {
    switch (which) {
        case ByPartsIdentity::NradRellich2: return "nrad_rellich_2";
        case ByPartsIdentity::NradRellich3: return "nrad_rellich_3";
        case ByPartsIdentity::NrRellich6: return "nr_rellich_6";
        case ByPartsIdentity::NrRellich7: return "nr_rellich_7";
    }
    return "?";
}

ByPartsIdentity byparts_identity_from_string(const std::string& name) {
    for (auto w : {ByPartsIdentity::NradRellich2, ByPartsIdentity::NradRellich3, ByPartsIdentity::NrRellich6,
                   ByPartsIdentity::NrRellich7})
        if (to_string(w) == name) return w;
    throw ParameterError("unknown by-parts identity '" + name + "'");
}

ByPartsCheck byparts_identity_check(ByPartsIdentity which, const Dimension& dim, const BesselPair& pair,
                                    const RadialProfile& a_n, const QuadratureOptions& opts) {
    const int N = dim.value();
    const ModeFunction mode(a_n, 0, dim);
    ByPartsCheck out;
    out.which = which;
    double err = 0.0;
    auto term = [&](double coef, auto&& g) {
        const ModeIntegral m = integrate_with_pair(mode, pair, opts, g);
        err += std::fabs(coef) * m.error;
        return coef * m.value;
    };

    // Recurring integrals, each as a plain dr integrand.
    auto va1sq = [N](const ModeSample& s, const PairValues& v) { return v.V * s.a1 * s.a1 * sinh_pow(s, N - 3); };
    auto va2_m5 = [N](const ModeSample& s, const PairValues& v) { return v.V * s.a * s.a * sinh_pow(s, N - 5); };
    auto va2_m3 = [N](const ModeSample& s, const PairValues& v) { return v.V * s.a * s.a * sinh_pow(s, N - 3); };
    auto dva2_coth = [N](const ModeSample& s, const PairValues& v) {
        return v.dV * s.a * s.a * s.coth * sinh_pow(s, N - 3);
    };

    switch (which) {
        case ByPartsIdentity::NradRellich2: {
            out.lhs = term(1.0, va1sq);
            // b = a / sinh, so b' sinh = a' - a coth.
            out.rhs_terms = {term(1.0,
                                  [N](const ModeSample& s, const PairValues& v) {
                                      const double d = s.a1 - s.a * s.coth;
                                      return v.V * d * d * sinh_pow(s, N - 3);
                                  }),
                             term(-(N - 3.0), va2_m5), term(-1.0, dva2_coth), term(-(N - 2.0), va2_m3)};
            break;
        }
        case ByPartsIdentity::NradRellich3: {
            out.lhs = term(1.0, va1sq);
            out.rhs_terms = {
                term(1.0, [N](const ModeSample& s, const PairValues& v) { return v.W * s.a * s.a * sinh_pow(s, N - 3); }),
                term(1.0,
                     [N](const ModeSample& s, const PairValues& v) {
                         const double d = s.a1 - s.a * (v.f_log + s.coth);
                         return v.V * d * d * sinh_pow(s, N - 3);
                     }),
                term(-(N - 1.0),
                     [N](const ModeSample& s, const PairValues& v) {
                         return v.V * v.f_log * s.coth_minus_inv * s.a * s.a * sinh_pow(s, N - 3);
                     }),
                term(-(N - 3.0), va2_m5), term(-1.0, dva2_coth), term(-(N - 2.0), va2_m3)};
            break;
        }
        case ByPartsIdentity::NrRellich6: {
            out.lhs = term(1.0, [N](const ModeSample& s, const PairValues& v) {
                return v.V * s.a2 * s.a * sinh_pow(s, N - 3);
            });
            out.rhs_terms = {
                term(0.5, [N](const ModeSample& s, const PairValues& v) { return v.d2V * s.a * s.a * sinh_pow(s, N - 3); }),
                term(0.5 * (N - 3.0), dva2_coth), term(-1.0, va1sq),
                term(-(N - 3.0), [N](const ModeSample& s, const PairValues& v) {
                    return v.V * s.a1 * s.a * s.coth * sinh_pow(s, N - 3);
                })};
            break;
        }
        case ByPartsIdentity::NrRellich7: {
            out.lhs = term(1.0, [N](const ModeSample& s, const PairValues& v) {
                return v.V * s.a1 * s.a * s.coth * sinh_pow(s, N - 3);
            });
            out.rhs_terms = {term(-0.5, dva2_coth), term(-0.5 * (N - 4.0), va2_m5), term(-0.5 * (N - 3.0), va2_m3)};
            break;
        }
    }

    double biggest = std::fabs(out.lhs);
    for (double t : out.rhs_terms) {
        out.rhs += t;
        biggest = std::max(biggest, std::fabs(t));
    }
    out.residual = out.lhs - out.rhs;
    out.rel_residual = biggest > 0.0 ? std::fabs(out.residual) / biggest : 0.0;
    out.error = err;
    return out;
}

}  // namespace hypbessel
