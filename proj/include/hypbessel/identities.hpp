#pragma once

// Term-by-term assembly of the Hardy, Rellich and Poincare identities and
// inequalities on H^N. Every term is its own quadrature; inputs are sums of
// spherical-harmonic modes, so each integral is a sum of radial integrals.

#include <optional>
#include <string>
#include <vector>

#include "hypbessel/bessel_pairs.hpp"
#include "hypbessel/profiles.hpp"
#include "hypbessel/quadrature.hpp"

namespace hypbessel {

enum class IdentityId {
    RadialHR,
    NonradialHR,
    HardyRellich0,
    PoincareL1,
    Rellich,
    PoincareL0,
    AbstractHardy,
    AbstractRellichRad,
    AbstractRellichRop,
    AbstractRellichNr,
    FllmHardyGrad,
    FllmPoincare,
    AppendixHP,
    AppendixHardy,
};

/// Radial operators (Delta_r, nabla_r) or the full Laplace-Beltrami operator and gradient.
enum class Flavor { Radial, Full };
enum class IdentityKind { Equality, Inequality };
enum class Verdict { EqualityPass, InequalityPass, Fail };

std::string to_string(IdentityId id);
std::string to_string(Flavor f);
std::string to_string(IdentityKind k);
std::string to_string(Verdict v);
IdentityId identity_from_string(const std::string& name);
Flavor flavor_from_string(const std::string& name);
const std::vector<IdentityId>& all_identities();

/// Flavor used when a request does not name one.
Flavor natural_flavor(IdentityId id);
/// Whether the identity depends on lambda.
bool uses_lambda(IdentityId id);
/// Whether the identity takes a user-chosen Bessel pair.
bool uses_pair(IdentityId id);
IdentityKind identity_kind(IdentityId id, Flavor flavor);

/// Throws DimensionError / ParameterError when (id, flavor, N) violates the
/// statement's hypotheses. Checked before any quadrature.
void check_dimension_gate(IdentityId id, Flavor flavor, const Dimension& dim);

struct Coefficient {
    std::string label;
    double value = 0.0;
};

/// Closed-form constants of the right-hand side, in display order.
std::vector<Coefficient> coefficient_table(IdentityId id, const Dimension& dim, double lambda = 0.0);

struct TermValue {
    std::string label;
    double coefficient = 0.0;
    double integral = 0.0;
    double value = 0.0;  // coefficient * integral
    double error = 0.0;  // |coefficient| * quadrature error
};

struct IdentityReport {
    IdentityId id{};
    Flavor flavor{};
    IdentityKind kind{};
    int N = 0;
    double lambda = 0.0;
    std::string pair;
    std::string input;
    double lhs = 0.0;
    double lhs_error = 0.0;
    std::vector<TermValue> terms;
    double rhs = 0.0;
    double residual = 0.0;      // lhs - sum of terms
    double rel_residual = 0.0;  // residual / scale
    double scale = 0.0;         // max(|lhs|, max |term|)
    double error_budget = 0.0;  // lhs_error + sum of term errors
    double threshold = 0.0;
    Verdict verdict = Verdict::Fail;
    std::vector<std::string> notes;

    bool passed() const { return verdict != Verdict::Fail; }
};

struct IdentityRequest {
    IdentityId id = IdentityId::RadialHR;
    int N = 5;
    double lambda = 0.0;
    std::optional<Flavor> flavor;
    std::vector<ModeFunction> modes;
    /// Only for the abstract identities; defaults to the canonical pair at lambda.
    std::optional<BesselPair> pair;
    QuadratureOptions quadrature{};
    double equality_threshold = 1e-6;
    double inequality_threshold = 1e-8;
    /// Free-form description of the input, echoed into the report.
    std::string input_label;
};

IdentityReport assemble(const IdentityRequest& request);

/// Convenience overload for a single radial profile (n = 0).
IdentityReport assemble(IdentityId id, const Dimension& dim, const RadialProfile& u, double lambda = 0.0,
                        const QuadratureOptions& opts = {});

/// Non-radial gap bookkeeping: LHS - RHS of a full-flavor inequality against the
/// sum of per-mode B functionals for the Bessel pair the statement comes from.
struct GapAccounting {
    double gap = 0.0;
    double b_sum = 0.0;
    double b_scale = 0.0;
    double combined_error = 0.0;
    double difference = 0.0;
    std::vector<double> per_mode;
};

GapAccounting nonradial_gap_accounting(const IdentityRequest& request);

struct TermComparison {
    std::string label;
    double first = 0.0;
    double second = 0.0;
    double rel_difference = 0.0;
};

struct CrossConsistencyReport {
    IdentityReport radial_hr;
    IdentityReport abstract_rop;
    std::vector<TermComparison> comparisons;
    double residual_difference = 0.0;
    double combined_tolerance = 0.0;
    double worst_rel_difference = 0.0;
    bool passed = false;
};

/// The lambda identity assembled directly against the abstract radial-operator
/// identity evaluated at the canonical pair: LHS, remainder, and the combined
/// potential block must agree term by term.
CrossConsistencyReport cross_consistency(const Dimension& dim, double lambda, const std::vector<ModeFunction>& modes,
                                         const QuadratureOptions& opts = {}, double rel_tol = 1e-8);

}  // namespace hypbessel
