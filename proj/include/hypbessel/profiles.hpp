#pragma once

// Compactly supported radial test functions with exact derivatives up to third
// order, and spherical-harmonic modes a_n(r) P_n built on top of them.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hypbessel/geometry.hpp"
#include "hypbessel/jet.hpp"

namespace hypbessel {

enum class ProfileFamily {
    Bump,           // A exp(-1/((r-a)(b-r)))
    PolynomialBridge,  // A 256 t^4 (1-t)^4, t = (r-a)/(b-a)
    SineBump,       // A sin^4(pi t)
    Concentrating,  // eta(r) r^{(4-N)/2 + eps + shift}
    Spreading,      // eta_L(r) exp(-(N-1) r / 2)
};

std::string to_string(ProfileFamily family);
ProfileFamily profile_family_from_string(const std::string& name);

struct Support {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double r) const { return r > lo && r < hi; }
};

/// Immutable radial profile. Outside its support every derivative is exactly 0.
class RadialProfile {
public:
    class Impl {
    public:
        virtual ~Impl() = default;
        /// Taylor jet at r, only called for r strictly inside the support.
        virtual Jet jet(double r) const = 0;
    };

    RadialProfile(ProfileFamily family, Support support, std::map<std::string, double> params,
                  std::shared_ptr<const Impl> impl);

    Jet eval_jet(double r) const;
    Derivs eval(double r) const { return eval_jet(r).derivs(); }
    double operator()(double r) const { return eval_jet(r).value(); }

    const Support& support() const { return support_; }
    ProfileFamily family() const { return family_; }
    const std::map<std::string, double>& params() const { return params_; }

private:
    ProfileFamily family_;
    Support support_;
    std::map<std::string, double> params_;
    std::shared_ptr<const Impl> impl_;
};

/// A exp(-1/((r-a)(b-r))) on (a, b).
RadialProfile make_bump(double a, double b, double amplitude = 1.0);

/// Degree-8 bridge 256 A t^4 (1-t)^4; u, u', u'', u''' vanish at both ends.
RadialProfile make_polynomial_bridge(double a, double b, double amplitude = 1.0);

/// A sin^4(pi (r-a)/(b-a)) on (a, b); C^3 across the endpoints.
RadialProfile make_sine_bump(double a, double b, double amplitude = 1.0);

/// eta(r) r^{(4-N)/2 + epsilon + exponent_shift}, with eta a smooth cutoff equal to 1
/// on [epsilon, 1] and 0 outside [epsilon/2, 2]. Requires 0 < epsilon < 1/2.
RadialProfile make_concentrating_family(double epsilon, double exponent_shift, const Dimension& n);

/// eta_L(r) exp(-(N-1) r / 2), with eta_L a smooth plateau on [1, L] whose ramps
/// have width (L-1)/4. Requires L > 2.
RadialProfile make_spreading_family(double length, const Dimension& n);

/// Smooth step S(x): 0 for x <= 0, 1 for x >= 1, C^infinity, built from exp(-1/x).
Jet smooth_step(const Jet& x);

/// Factory from a family name and parameter map (CLI / config entry point).
/// Unknown parameter names are rejected.
RadialProfile make_profile(const std::string& family, const std::map<std::string, double>& params, int n);

/// Eigenvalue n^2 + (N-2) n of -Laplacian on S^{N-1}.
double sphere_eigenvalue(int n, const Dimension& dim);

/// A spherical-harmonic mode a_n(r) P_n(theta).
class ModeFunction {
public:
    ModeFunction(RadialProfile radial, int mode_index, const Dimension& dim);

    const RadialProfile& radial() const { return radial_; }
    int mode_index() const { return n_; }
    int dimension() const { return dim_; }
    double eigenvalue() const { return eigenvalue_; }

private:
    RadialProfile radial_;
    int n_;
    int dim_;
    double eigenvalue_;
};

/// Radial input: a single n = 0 mode.
ModeFunction radial_mode(const RadialProfile& u, const Dimension& dim);

}  // namespace hypbessel
