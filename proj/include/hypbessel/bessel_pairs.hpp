#pragma once

// Bessel pairs (V, W, f): the ODE (r^{N-1} V f')' + r^{N-1} W f = 0 with f > 0,
// the canonical family (r^{N-1}, r^{N-1} W_lambda) solved by Psi_lambda, and
// the admissibility condition needed for non-radial Rellich inequalities.

#include <functional>
#include <string>
#include <vector>

#include "hypbessel/geometry.hpp"

namespace hypbessel {

/// (lambda, gamma_N(lambda), h_N(lambda)) with gamma = sqrt((N-1)^2 - 4 lambda),
/// h = (gamma + 1) / 2.
struct LambdaParams {
    double lambda = 0.0;
    double gamma = 0.0;
    double h = 0.0;
};

/// Bottom of the spectrum ((N-1)/2)^2.
double lambda_one(const Dimension& n);

/// Throws RangeError unless 0 <= lambda <= ((N-1)/2)^2.
LambdaParams lambda_params(const Dimension& n, double lambda);

/// Psi_lambda(r) = r^{-(N-2)/2} (sinh r / r)^{-(N-1+gamma)/2} and its first two
/// derivatives (order 0, 1, 2), from the closed-form factorisations.
double psi(const LambdaParams& p, const Dimension& n, double r, int order);

/// Psi'/Psi = h/r + (1 - N - gamma)/2 coth r.
double psi_log_derivative(const LambdaParams& p, const Dimension& n, double r);

/// Psi''/Psi.
double psi_second_ratio(const LambdaParams& p, const Dimension& n, double r);

/// W_lambda(r). The two O(r^-2) terms are combined before evaluation.
double w_lambda(const LambdaParams& p, const Dimension& n, double r);

/// Pointwise values of a Bessel pair and the derivatives the identities need.
/// f enters the identities only through f'/f and f''/f, which are kept
/// separately so that huge or tiny f never spoils them.
struct PairValues {
    double V = 0.0, dV = 0.0, d2V = 0.0;
    double W = 0.0;
    double f = 0.0, df = 0.0, d2f = 0.0;
    double f_log = 0.0;     // f'/f
    double f_ratio2 = 0.0;  // f''/f
};

class BesselPair {
public:
    using Evaluator = std::function<PairValues(double)>;

    BesselPair(std::string name, int dimension, Evaluator eval, bool v_is_constant_one = false);

    const std::string& name() const { return name_; }
    int dimension() const { return dim_; }
    PairValues operator()(double r) const;
    /// True when V is identically 1 (canonical family and plain pairs).
    bool unit_weight() const { return unit_weight_; }

private:
    std::string name_;
    int dim_;
    Evaluator eval_;
    bool unit_weight_;
};

/// (r^{N-1}, r^{N-1} W_lambda) with f = Psi_lambda.
BesselPair canonical_pair(const Dimension& n, double lambda);

/// V = 1, W = 0, f = 1.
BesselPair trivial_pair(const Dimension& n);

/// V = 1, W = 0, f = r^{2-N} (radial harmonic of the Euclidean Laplacian).
BesselPair radial_harmonic_pair(const Dimension& n);

/// V = r^p, f = r^q, W = -q (N - 2 + p + q) r^{p-2}.
BesselPair power_pair(const Dimension& n, double p, double q);

/// V = exp(-beta r^2), W = 0, f = 1.
BesselPair gaussian_pair(const Dimension& n, double beta = 1.0);

/// V = exp(-beta r), W = 0, f = 1.
BesselPair exponential_pair(const Dimension& n, double beta);

/// Registry lookup: "canonical", "trivial", "radial-harmonic", "power:p,q",
/// "gaussian[:beta]", "exponential:beta". lambda is used by "canonical" only.
BesselPair make_pair(const std::string& spec, const Dimension& n, double lambda = 0.0);

/// (r^{N-1} V f')'(r) + r^{N-1} W(r) f(r), expanded by the product rule.
double ode_residual(const BesselPair& pair, const Dimension& n, double r);

/// |ode_residual| divided by the sum of magnitudes of its expanded terms.
double ode_residual_normalized(const BesselPair& pair, const Dimension& n, double r);

struct NonradialConditionResult {
    bool holds = false;
    double worst_margin = 0.0;
    double worst_r = 0.0;
};

/// (N-5) V / sinh^2 r + 3 V' coth r - V'' + (N-4) V, the admissibility expression.
double nonradial_condition_value(const BesselPair& pair, const Dimension& n, double r);

/// Evaluates the admissibility expression on the grid. Holds iff every value is
/// >= -1e-12. Throws DimensionError for N < 5.
NonradialConditionResult check_nonradial_condition(const BesselPair& pair, const Dimension& n,
                                                   const std::vector<double>& sample_grid);

}  // namespace hypbessel
