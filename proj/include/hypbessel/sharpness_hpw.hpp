#pragma once

// Heisenberg-Pauli-Weyl product inequalities and sharpness scans of the
// optimal constants along concentrating / spreading test-function families.

#include <optional>
#include <string>
#include <vector>

#include "hypbessel/bessel_pairs.hpp"
#include "hypbessel/identities.hpp"
#include "hypbessel/profiles.hpp"
#include "hypbessel/quadrature.hpp"

namespace hypbessel {

enum class HpwVariant { Plain, Improved, Abstract, Stringent };

std::string to_string(HpwVariant v);
HpwVariant hpw_variant_from_string(const std::string& name);

struct HpwRequest {
    HpwVariant variant = HpwVariant::Plain;
    int N = 5;
    double lambda = 0.0;
    Flavor flavor = Flavor::Full;
    std::vector<ModeFunction> modes;
    /// Abstract variant only; defaults to the canonical pair at lambda.
    std::optional<BesselPair> pair;
    QuadratureOptions quadrature{};
    double threshold = 1e-8;
    std::string input_label;
};

struct HpwReport {
    HpwVariant variant{};
    Flavor flavor{};
    int N = 0;
    double lambda = 0.0;
    std::string input;
    double lhs_product = 0.0;
    double rhs_square = 0.0;
    double gap = 0.0;
    double scale = 0.0;
    /// lhs_product / (int |grad u|^2)^2: the constant the input realizes.
    double effective_constant = 0.0;
    /// Constant the variant guarantees: h^2 (plain, improved), 1 (abstract),
    /// and for the stringent variant int r^2|grad u|^2 / int |grad u|^2 / W~, which
    /// is at least N^2/4.
    double implied_constant = 0.0;
    double error_budget = 0.0;
    bool passed = false;
};

HpwReport hpw_check(const HpwRequest& request);

enum class SharpConstant { HardyRellich, PoincareGrad, Rellich, PoincareL0, JointPair };

std::string to_string(SharpConstant c);
SharpConstant sharp_constant_from_string(const std::string& name);

struct SharpnessPoint {
    double epsilon = 0.0;
    double quotient = 0.0;
    bool ok = true;
    std::string error;
};

struct SharpnessScan {
    SharpConstant constant{};
    int N = 0;
    double lambda = 0.0;  // joint pair only
    std::string family;
    double target = 0.0;
    std::vector<SharpnessPoint> points;
    bool monotone = false;
    /// Aitken / Richardson limit of the last three quotients with an estimated order.
    double extrapolated = 0.0;
    double estimated_order = 0.0;
    double rel_distance = 0.0;  // |extrapolated - target| / target
    double band = 0.0;          // advisory acceptance band
    bool within_band = false;
    bool one_sided = false;     // every quotient >= target - tol * scale
    double tolerance = 1e-8;
};

/// Evaluates the Rayleigh-type quotient of the constant along its family:
/// concentrating (exponent shift as given) for N^2/4, the Rellich constant and the
/// joint pair; spreading with length 2/epsilon for the two Poincare constants.
SharpnessScan sharpness_scan(SharpConstant constant, const Dimension& dim, const std::vector<double>& epsilons,
                             const QuadratureOptions& opts = {}, std::optional<double> lambda = std::nullopt,
                             double exponent_shift = 0.0);

/// Richardson-style limit from the last three terms of a sequence computed at
/// geometrically shrinking epsilon. Returns {limit, order}; with fewer than three
/// points or a non-contracting tail it returns the last value and order 0.
std::pair<double, double> extrapolate_limit(const std::vector<double>& values);

}  // namespace hypbessel
