#include "hypbessel/identities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "hypbessel/errors.hpp"
#include "hypbessel/radial_terms.hpp"
#include "hypbessel/spherical_modes.hpp"

namespace hypbessel {

namespace {

using Density = std::function<double(const ModeSample&, const PairValues&)>;

struct TermSpec {
    std::string label;
    double coefficient;
    Density density;  // per unit hyperbolic volume
};

struct Plan {
    Density lhs;
    std::vector<TermSpec> terms;
    bool needs_pair = false;
    double lambda = 0.0;
};

// Mode-wise building blocks. For the radial flavor the sample's eigenvalue is
// zeroed before these are called, which removes every angular contribution.
double inv_s2(const ModeSample& s) { return 1.0 / (s.sinh * s.sinh); }
double grad(const ModeSample& s) { return s.a1 * s.a1 + s.eigenvalue * s.a * s.a * inv_s2(s); }
double lap_sq(const ModeSample& s) {
    const double d = s.radial_laplacian() - s.eigenvalue * s.a * inv_s2(s);
    return d * d;
}
// V f^2 |grad(u_r / f)|^2 / V with f'/f = ell
double second_remainder(const ModeSample& s, double ell) {
    const double d = s.a2 - ell * s.a1;
    return d * d + s.eigenvalue * s.a1 * s.a1 * inv_s2(s);
}
// f^2 |grad(u / f)|^2 with f'/f = ell
double first_remainder(const ModeSample& s, double ell) {
    const double d = s.a1 - ell * s.a;
    return d * d + s.eigenvalue * s.a * s.a * inv_s2(s);
}
// r^{2-N} |grad(r^m u)|^2
double weighted_grad(const ModeSample& s, double m) {
    const double d = s.a1 + m * s.a / s.r;
    return (d * d + s.eigenvalue * s.a * s.a * inv_s2(s)) / (s.r * s.r);
}

const char* kGrad = "|grad u|^2";
const char* kGradR2 = "|grad u|^2/r^2";
const char* kGradS2 = "|grad u|^2/sinh^2";
const char* kGradW = "w|grad u|^2";
const char* kU2 = "u^2";
const char* kU2R2 = "u^2/r^2";
const char* kU2R4 = "u^2/r^4";
const char* kU2S2 = "u^2/sinh^2";
const char* kU2W = "w u^2";
const char* kU2WR2 = "w u^2/r^2";
const char* kWeighted = "r^(2-N)|grad(r^((N-4)/2) u)|^2";
const char* kRemainder = "remainder";

Density d_grad() {
    return [](const ModeSample& s, const PairValues&) { return grad(s); };
}
Density d_grad_r2() {
    return [](const ModeSample& s, const PairValues&) { return grad(s) / (s.r * s.r); };
}
Density d_grad_s2() {
    return [](const ModeSample& s, const PairValues&) { return grad(s) * inv_s2(s); };
}
Density d_grad_w() {
    return [](const ModeSample& s, const PairValues&) { return s.rcoth_weight * grad(s); };
}
Density d_u2() {
    return [](const ModeSample& s, const PairValues&) { return s.a * s.a; };
}
Density d_u2_r2() {
    return [](const ModeSample& s, const PairValues&) { return s.a * s.a / (s.r * s.r); };
}
Density d_u2_r4() {
    return [](const ModeSample& s, const PairValues&) {
        const double r2 = s.r * s.r;
        return s.a * s.a / (r2 * r2);
    };
}
Density d_u2_s2() {
    return [](const ModeSample& s, const PairValues&) { return s.a * s.a * inv_s2(s); };
}
Density d_u2_w() {
    return [](const ModeSample& s, const PairValues&) { return s.rcoth_weight * s.a * s.a; };
}
Density d_u2_w_r2() {
    return [](const ModeSample& s, const PairValues&) { return s.rcoth_weight * s.a * s.a / (s.r * s.r); };
}
Density d_weighted(double m) {
    return [m](const ModeSample& s, const PairValues&) { return weighted_grad(s, m); };
}
Density d_lap_sq() {
    return [](const ModeSample& s, const PairValues&) { return lap_sq(s); };
}

// Remainders whose f'/f is A/r + B coth r.
Density d_second_remainder(double a_over_r, double b_coth) {
    return [=](const ModeSample& s, const PairValues&) {
        return second_remainder(s, a_over_r / s.r + b_coth * s.coth);
    };
}
Density d_first_remainder(double a_over_r, double b_coth) {
    return [=](const ModeSample& s, const PairValues&) {
        return first_remainder(s, a_over_r / s.r + b_coth * s.coth);
    };
}

bool is_full_inequality(IdentityId id) {
    switch (id) {
        case IdentityId::NonradialHR:
        case IdentityId::HardyRellich0:
        case IdentityId::PoincareL1:
        case IdentityId::Rellich:
        case IdentityId::PoincareL0:
        case IdentityId::AbstractRellichNr: return true;
        default: return false;
    }
}

// Lambda implied by the statement (the parameter of the canonical pair it uses).
double implied_lambda(IdentityId id, const Dimension& dim, double lambda) {
    switch (id) {
        case IdentityId::HardyRellich0:
        case IdentityId::Rellich:
        case IdentityId::FllmHardyGrad: return 0.0;
        case IdentityId::PoincareL1:
        case IdentityId::PoincareL0:
        case IdentityId::FllmPoincare: return lambda_one(dim);
        case IdentityId::AppendixHardy: return dim.value() - 2.0;
        default: return lambda;
    }
}

Plan build_plan(IdentityId id, const Dimension& dim, double lambda) {
    const double N = dim.value();
    const double k = 0.5 * (N - 1.0);
    const double m = 0.5 * (N - 4.0);
    Plan plan;
    plan.lambda = implied_lambda(id, dim, lambda);

    switch (id) {
        case IdentityId::RadialHR:
        case IdentityId::NonradialHR: {
            const LambdaParams p = lambda_params(dim, lambda);
            const double h2 = p.h * p.h;
            plan.lhs = d_lap_sq();
            plan.terms = {{kGrad, p.lambda, d_grad()},
                          {kGradR2, h2, d_grad_r2()},
                          {kGradS2, 0.25 * N * N - h2, d_grad_s2()},
                          {kGradW, p.gamma * p.h, d_grad_w()},
                          {kRemainder, 1.0, d_second_remainder(p.h, 0.5 * (1.0 - N - p.gamma))}};
            break;
        }
        case IdentityId::HardyRellich0:
            plan.lhs = d_lap_sq();
            plan.terms = {{kGradR2, 0.25 * N * N, d_grad_r2()},
                          {kGradW, 0.5 * N * (N - 1.0), d_grad_w()},
                          {kRemainder, 1.0, d_second_remainder(0.5 * N, -(N - 1.0))}};
            break;
        case IdentityId::PoincareL1:
            plan.lhs = d_lap_sq();
            plan.terms = {{kGrad, k * k, d_grad()},
                          {kGradR2, 0.25, d_grad_r2()},
                          {kGradS2, 0.25 * (N * N - 1.0), d_grad_s2()},
                          {kRemainder, 1.0, d_second_remainder(0.5, -k)}};
            break;
        case IdentityId::Rellich:
            plan.lhs = d_lap_sq();
            plan.terms = {{kU2R4, 0.25 * N * N * m * m, d_u2_r4()},
                          {kU2WR2, N * N * (N - 4.0) * (N - 1.0) / 8.0, d_u2_w_r2()},
                          {kGradW, 0.5 * N * (N - 1.0), d_grad_w()},
                          {kWeighted, 0.25 * N * N, d_weighted(m)},
                          {kRemainder, 1.0, d_second_remainder(0.5 * N, -(N - 1.0))}};
            break;
        case IdentityId::PoincareL0:
            // The two remainders differ (u versus u_r inside the gradient), so they
            // are carried as separate terms.
            plan.lhs = d_lap_sq();
            plan.terms = {{kU2, k * k * k * k, d_u2()},
                          {kU2R2, (N - 1.0) * (N - 1.0) / 16.0, d_u2_r2()},
                          {kU2S2, (N - 1.0) * (N - 1.0) * (N - 1.0) * (N - 3.0) / 16.0, d_u2_s2()},
                          {kGradR2, 0.25, d_grad_r2()},
                          {kGradS2, 0.25 * (N * N - 1.0), d_grad_s2()},
                          {"remainder[u]", k * k, d_first_remainder(0.5, -k)},
                          {"remainder[u_r]", 1.0, d_second_remainder(0.5, -k)}};
            break;
        case IdentityId::AbstractHardy:
            plan.needs_pair = true;
            plan.lhs = [](const ModeSample& s, const PairValues& v) { return v.V * grad(s); };
            plan.terms = {
                {"W u^2", 1.0, [](const ModeSample& s, const PairValues& v) { return v.W * s.a * s.a; }},
                {kRemainder, 1.0,
                 [](const ModeSample& s, const PairValues& v) { return v.V * first_remainder(s, v.f_log); }},
                {"V(f'/f)(coth-1/r) u^2", -(N - 1.0), [](const ModeSample& s, const PairValues& v) {
                     return v.V * v.f_log * s.coth_minus_inv * s.a * s.a;
                 }}};
            break;
        case IdentityId::AbstractRellichRad:
        case IdentityId::AbstractRellichRop:
        case IdentityId::AbstractRellichNr:
            plan.needs_pair = true;
            plan.lhs = [](const ModeSample& s, const PairValues& v) { return v.V * lap_sq(s); };
            plan.terms = {
                {"W|grad u|^2", 1.0, [](const ModeSample& s, const PairValues& v) { return v.W * grad(s); }},
                {"(V/sinh^2-V' coth)|grad u|^2", N - 1.0,
                 [](const ModeSample& s, const PairValues& v) {
                     return (v.V * inv_s2(s) - v.dV * s.coth) * grad(s);
                 }},
                {"V(f'/f)(coth-1/r)|grad u|^2", -(N - 1.0),
                 [](const ModeSample& s, const PairValues& v) { return v.V * v.f_log * s.coth_minus_inv * grad(s); }},
                {kRemainder, 1.0,
                 [](const ModeSample& s, const PairValues& v) { return v.V * second_remainder(s, v.f_log); }}};
            break;
        case IdentityId::FllmHardyGrad:
            plan.lhs = d_grad_r2();
            plan.terms = {{kU2R4, m * m, d_u2_r4()},
                          {kU2WR2, 0.5 * (N - 4.0) * (N - 1.0), d_u2_w_r2()},
                          {kWeighted, 1.0, d_weighted(m)}};
            break;
        case IdentityId::FllmPoincare:
            plan.lhs = d_grad();
            plan.terms = {{kU2, k * k, d_u2()},
                          {kU2R2, 0.25, d_u2_r2()},
                          {kU2S2, 0.25 * (N - 1.0) * (N - 3.0), d_u2_s2()},
                          {kRemainder, 1.0, d_first_remainder(0.5, -k)}};
            break;
        case IdentityId::AppendixHP: {
            const LambdaParams p = lambda_params(dim, lambda);
            const double h2 = p.h * p.h;
            plan.lhs = d_grad();
            plan.terms = {{kU2, p.lambda, d_u2()},
                          {kU2R2, h2, d_u2_r2()},
                          {kU2S2, 0.25 * (N - 2.0) * (N - 2.0) - h2, d_u2_s2()},
                          {kU2W, p.gamma * p.h, d_u2_w()},
                          {kRemainder, 1.0, d_first_remainder(p.h, 0.5 * (1.0 - N - p.gamma))}};
            break;
        }
        case IdentityId::AppendixHardy:
            plan.lhs = d_grad();
            plan.terms = {{kU2R2, 0.25 * (N - 2.0) * (N - 2.0), d_u2_r2()},
                          {kU2, N - 2.0, d_u2()},
                          {kU2W, 0.5 * (N - 2.0) * (N - 3.0), d_u2_w()},
                          {kRemainder, 1.0, d_first_remainder(0.5 * (N - 2.0), -(N - 2.0))}};
            break;
    }
    return plan;
}

struct Integrated {
    double value = 0.0;
    double error = 0.0;
};

Integrated integrate_density(const Density& density, const std::vector<ModeFunction>& modes, Flavor flavor,
                             const BesselPair* pair, const QuadratureOptions& opts) {
    Integrated total;
    for (const auto& mode : modes) {
        const ModeIntegral part = integrate_mode(
            mode,
            [&](const ModeSample& sample) {
                ModeSample s = sample;
                if (flavor == Flavor::Radial) s.eigenvalue = 0.0;
                const PairValues v = pair ? (*pair)(s.r) : PairValues{};
                return density(s, v) * s.vol;
            },
            opts);
        total.value += part.value;
        total.error += part.error;
    }
    return total;
}

std::string describe_params(const RadialProfile& p) {
    std::ostringstream os;
    os << to_string(p.family());
    bool first = true;
    for (const auto& [key, value] : p.params()) {
        os << (first ? "[" : ",") << key << "=" << value;
        first = false;
    }
    if (!first) os << "]";
    return os.str();
}

std::string describe_modes(const std::vector<ModeFunction>& modes) {
    std::ostringstream os;
    for (size_t i = 0; i < modes.size(); ++i) {
        if (i) os << " + ";
        os << describe_params(modes[i].radial()) << "@n" << modes[i].mode_index();
    }
    return os.str();
}

std::vector<double> support_grid(const std::vector<ModeFunction>& modes, int points) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& m : modes) {
        lo = std::min(lo, m.radial().support().lo);
        hi = std::max(hi, m.radial().support().hi);
    }
    std::vector<double> grid;
    if (!(hi > lo)) return grid;
    for (int i = 0; i < points; ++i) grid.push_back(lo + (hi - lo) * (i + 0.5) / points);
    return grid;
}

}  // namespace

std::string to_string(IdentityId id) {
    switch (id) {
        case IdentityId::RadialHR: return "RADIAL_HR";
        case IdentityId::NonradialHR: return "NONRADIAL_HR";
        case IdentityId::HardyRellich0: return "HARDY_RELLICH_0";
        case IdentityId::PoincareL1: return "POINCARE_L1";
        case IdentityId::Rellich: return "RELLICH";
        case IdentityId::PoincareL0: return "POINCARE_L0";
        case IdentityId::AbstractHardy: return "ABSTRACT_HARDY";
        case IdentityId::AbstractRellichRad: return "ABSTRACT_RELLICH_RAD";
        case IdentityId::AbstractRellichRop: return "ABSTRACT_RELLICH_ROP";
        case IdentityId::AbstractRellichNr: return "ABSTRACT_RELLICH_NR";
        case IdentityId::FllmHardyGrad: return "FLLM_HARDY_GRAD";
        case IdentityId::FllmPoincare: return "FLLM_POINCARE";
        case IdentityId::AppendixHP: return "APPENDIX_HP";
        case IdentityId::AppendixHardy: return "APPENDIX_HARDY";
    }
    return "?";
}

std::string to_string(Flavor f) { return f == Flavor::Radial ? "radial" : "full"; }
std::string to_string(IdentityKind k) { return k == IdentityKind::Equality ? "equality" : "inequality"; }
std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::EqualityPass: return "equality-pass";
        case Verdict::InequalityPass: return "inequality-pass";
        case Verdict::Fail: return "fail";
    }
    return "?";
}

const std::vector<IdentityId>& all_identities() {
    static const std::vector<IdentityId> ids = {
        IdentityId::RadialHR,           IdentityId::NonradialHR,        IdentityId::HardyRellich0,
        IdentityId::PoincareL1,         IdentityId::Rellich,            IdentityId::PoincareL0,
        IdentityId::AbstractHardy,      IdentityId::AbstractRellichRad, IdentityId::AbstractRellichRop,
        IdentityId::AbstractRellichNr,  IdentityId::FllmHardyGrad,      IdentityId::FllmPoincare,
        IdentityId::AppendixHP,         IdentityId::AppendixHardy};
    return ids;
}

IdentityId identity_from_string(const std::string& name) {
    std::string upper = name;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) {
        return c == '-' ? '_' : static_cast<char>(std::toupper(c));
    });
    for (IdentityId id : all_identities())
        if (to_string(id) == upper) return id;
    throw ParameterError("unknown identity '" + name + "'");
}

Flavor flavor_from_string(const std::string& name) {
    if (name == "radial") return Flavor::Radial;
    if (name == "full") return Flavor::Full;
    throw ParameterError("unknown flavor '" + name + "' (expected radial or full)");
}

Flavor natural_flavor(IdentityId id) {
    switch (id) {
        case IdentityId::NonradialHR:
        case IdentityId::AbstractRellichNr:
        case IdentityId::AbstractHardy:
        case IdentityId::FllmHardyGrad:
        case IdentityId::FllmPoincare:
        case IdentityId::AppendixHP:
        case IdentityId::AppendixHardy: return Flavor::Full;
        default: return Flavor::Radial;
    }
}

bool uses_lambda(IdentityId id) {
    switch (id) {
        case IdentityId::RadialHR:
        case IdentityId::NonradialHR:
        case IdentityId::AppendixHP:
        case IdentityId::AbstractHardy:
        case IdentityId::AbstractRellichRad:
        case IdentityId::AbstractRellichRop:
        case IdentityId::AbstractRellichNr: return true;
        default: return false;
    }
}

bool uses_pair(IdentityId id) {
    switch (id) {
        case IdentityId::AbstractHardy:
        case IdentityId::AbstractRellichRad:
        case IdentityId::AbstractRellichRop:
        case IdentityId::AbstractRellichNr: return true;
        default: return false;
    }
}

IdentityKind identity_kind(IdentityId id, Flavor flavor) {
    return flavor == Flavor::Full && is_full_inequality(id) ? IdentityKind::Inequality : IdentityKind::Equality;
}

void check_dimension_gate(IdentityId id, Flavor flavor, const Dimension& dim) {
    const int N = dim.value();
    auto need_flavor = [&](Flavor only) {
        if (flavor != only)
            throw ParameterError(to_string(id) + " is stated for " + to_string(only) + " operators only");
    };
    switch (id) {
        case IdentityId::RadialHR:
        case IdentityId::AbstractRellichRop: need_flavor(Flavor::Radial); break;
        case IdentityId::NonradialHR:
        case IdentityId::AbstractRellichNr: need_flavor(Flavor::Full); break;
        default: break;
    }
    if (identity_kind(id, flavor) == IdentityKind::Inequality && N < 5)
        throw DimensionError(to_string(id) + " (" + to_string(flavor) + ") requires N >= 5, got N=" +
                             std::to_string(N));
    if (id == IdentityId::AppendixHardy && N < 3)
        throw DimensionError("APPENDIX_HARDY requires N >= 3, got N=" + std::to_string(N));
}

std::vector<Coefficient> coefficient_table(IdentityId id, const Dimension& dim, double lambda) {
    const Plan plan = build_plan(id, dim, lambda);
    std::vector<Coefficient> out;
    for (const auto& t : plan.terms) {
        // Both remainders of the l = 0 Poincare identity are reported as one
        // combined constant, matching how the statement is usually written.
        if (t.label == "remainder[u]" || t.label == "remainder[u_r]") {
            if (!out.empty() && out.back().label == kRemainder)
                out.back().value += t.coefficient;
            else
                out.push_back({kRemainder, t.coefficient});
            continue;
        }
        out.push_back({t.label, t.coefficient});
    }
    return out;
}

IdentityReport assemble(const IdentityRequest& req) {
    const Dimension dim(req.N);
    const Flavor flavor = req.flavor.value_or(natural_flavor(req.id));
    check_dimension_gate(req.id, flavor, dim);
    for (const auto& m : req.modes)
        if (m.dimension() != req.N)
            throw ParameterError("mode built for N=" + std::to_string(m.dimension()) + " used with N=" +
                                 std::to_string(req.N));
    if (req.id == IdentityId::AbstractRellichRad)
        for (const auto& m : req.modes)
            if (m.mode_index() != 0) throw ParameterError("ABSTRACT_RELLICH_RAD accepts radial (n = 0) input only");

    const Plan plan = build_plan(req.id, dim, req.lambda);
    std::optional<BesselPair> pair;
    if (plan.needs_pair) pair = req.pair ? *req.pair : canonical_pair(dim, req.lambda);

    if (req.id == IdentityId::AbstractRellichNr) {
        const auto cond = check_nonradial_condition(*pair, dim, support_grid(req.modes, 200));
        if (!cond.holds) {
            std::ostringstream os;
            os << "pair " << pair->name() << " violates the non-radial admissibility condition (margin "
               << cond.worst_margin << " at r=" << cond.worst_r << ")";
            throw ParameterError(os.str());
        }
    }

    IdentityReport rep;
    rep.id = req.id;
    rep.flavor = flavor;
    rep.kind = identity_kind(req.id, flavor);
    rep.N = req.N;
    rep.lambda = plan.lambda;
    if (pair) rep.pair = pair->name();
    rep.input = req.input_label.empty() ? describe_modes(req.modes) : req.input_label;

    const BesselPair* pp = pair ? &*pair : nullptr;
    const Integrated lhs = integrate_density(plan.lhs, req.modes, flavor, pp, req.quadrature);
    rep.lhs = lhs.value;
    rep.lhs_error = lhs.error;
    rep.scale = std::fabs(rep.lhs);
    rep.error_budget = lhs.error;
    for (const auto& spec : plan.terms) {
        const Integrated part = integrate_density(spec.density, req.modes, flavor, pp, req.quadrature);
        TermValue t;
        t.label = spec.label;
        t.coefficient = spec.coefficient;
        t.integral = part.value;
        t.value = spec.coefficient * part.value;
        t.error = std::fabs(spec.coefficient) * part.error;
        rep.rhs += t.value;
        rep.scale = std::max(rep.scale, std::fabs(t.value));
        rep.error_budget += t.error;
        if (t.value < 0.0) {
            std::ostringstream os;
            os << "term '" << t.label << "' is negative (coefficient " << t.coefficient << ")";
            rep.notes.push_back(os.str());
        }
        rep.terms.push_back(std::move(t));
    }
    rep.residual = rep.lhs - rep.rhs;
    rep.rel_residual = rep.scale > 0.0 ? rep.residual / rep.scale : 0.0;
    if (rep.kind == IdentityKind::Equality) {
        rep.threshold = req.equality_threshold;
        rep.verdict = std::fabs(rep.rel_residual) < rep.threshold ? Verdict::EqualityPass : Verdict::Fail;
    } else {
        rep.threshold = req.inequality_threshold;
        rep.verdict = rep.residual >= -rep.threshold * rep.scale ? Verdict::InequalityPass : Verdict::Fail;
    }
    return rep;
}

IdentityReport assemble(IdentityId id, const Dimension& dim, const RadialProfile& u, double lambda,
                        const QuadratureOptions& opts) {
    IdentityRequest req;
    req.id = id;
    req.N = dim.value();
    req.lambda = lambda;
    req.modes = {radial_mode(u, dim)};
    req.quadrature = opts;
    return assemble(req);
}

GapAccounting nonradial_gap_accounting(const IdentityRequest& request) {
    IdentityRequest req = request;
    req.flavor = Flavor::Full;
    if (!is_full_inequality(req.id))
        throw ParameterError(to_string(req.id) + " has no non-radial inequality to account for");
    const Dimension dim(req.N);
    const IdentityReport rep = assemble(req);
    const BesselPair pair = req.id == IdentityId::AbstractRellichNr && req.pair
                                ? *req.pair
                                : canonical_pair(dim, implied_lambda(req.id, dim, req.lambda));
    GapAccounting out;
    out.gap = rep.residual;
    out.combined_error = rep.error_budget;
    for (const auto& mode : req.modes) {
        const BFunctional b = b_functional(dim, pair, mode, req.quadrature);
        out.per_mode.push_back(b.value);
        out.b_sum += b.value;
        out.b_scale += b.scale;
        out.combined_error += b.error;
    }
    out.difference = out.gap - out.b_sum;
    return out;
}

CrossConsistencyReport cross_consistency(const Dimension& dim, double lambda, const std::vector<ModeFunction>& modes,
                                         const QuadratureOptions& opts, double rel_tol) {
    IdentityRequest req;
    req.N = dim.value();
    req.lambda = lambda;
    req.modes = modes;
    req.quadrature = opts;
    req.flavor = Flavor::Radial;

    CrossConsistencyReport out;
    req.id = IdentityId::RadialHR;
    out.radial_hr = assemble(req);
    req.id = IdentityId::AbstractRellichRop;
    req.pair = canonical_pair(dim, lambda);
    out.abstract_rop = assemble(req);

    auto remainder = [](const IdentityReport& r) {
        for (const auto& t : r.terms)
            if (t.label == kRemainder) return t.value;
        return 0.0;
    };
    auto potential_block = [&](const IdentityReport& r) { return r.rhs - remainder(r); };
    auto compare = [&](const std::string& label, double a, double b) {
        const double denom = std::max({std::fabs(a), std::fabs(b), std::numeric_limits<double>::min()});
        const double rel = (a == b) ? 0.0 : std::fabs(a - b) / denom;
        out.comparisons.push_back({label, a, b, rel});
        out.worst_rel_difference = std::max(out.worst_rel_difference, rel);
    };
    compare("lhs", out.radial_hr.lhs, out.abstract_rop.lhs);
    compare("potential", potential_block(out.radial_hr), potential_block(out.abstract_rop));
    compare(kRemainder, remainder(out.radial_hr), remainder(out.abstract_rop));

    out.residual_difference = std::fabs(out.radial_hr.residual - out.abstract_rop.residual);
    out.combined_tolerance = out.radial_hr.error_budget + out.abstract_rop.error_budget +
                             rel_tol * std::max(out.radial_hr.scale, out.abstract_rop.scale);
    out.passed = out.worst_rel_difference < rel_tol && out.residual_difference <= out.combined_tolerance;
    return out;
}

}  // namespace hypbessel
