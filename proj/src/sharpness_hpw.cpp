#include "hypbessel/sharpness_hpw.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "hypbessel/errors.hpp"
#include "hypbessel/radial_terms.hpp"

namespace hypbessel {

namespace {

using Density = std::function<double(const ModeSample&, const PairValues&)>;

double inv_s2(const ModeSample& s) { return 1.0 / (s.sinh * s.sinh); }
double grad(const ModeSample& s) { return s.a1 * s.a1 + s.eigenvalue * s.a * s.a * inv_s2(s); }
double lap_sq(const ModeSample& s) {
    const double d = s.radial_laplacian() - s.eigenvalue * s.a * inv_s2(s);
    return d * d;
}

struct Integrated {
    double value = 0.0;
    double error = 0.0;
};

// Sum over modes of the integral of density * sinh^{N-1}.
Integrated integrate_over(const std::vector<ModeFunction>& modes, Flavor flavor, const BesselPair* pair,
                          const QuadratureOptions& opts, const Density& density) {
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

double w_tilde(const PairValues& v, const ModeSample& s) {
    return v.W + (s.N - 1) * (v.V * inv_s2(s) - v.dV * s.coth) - (s.N - 1) * v.V * v.f_log * s.coth_minus_inv;
}

double stringent_weight(const ModeSample& s) {
    const double N = s.N;
    return 0.25 * N * N / (s.r * s.r) + 0.5 * N * (N - 1.0) * s.rcoth_weight;
}

std::string describe(const std::vector<ModeFunction>& modes) {
    std::ostringstream os;
    for (size_t i = 0; i < modes.size(); ++i) {
        if (i) os << " + ";
        os << to_string(modes[i].radial().family());
        bool first = true;
        for (const auto& [k, v] : modes[i].radial().params()) {
            os << (first ? "[" : ",") << k << "=" << v;
            first = false;
        }
        if (!first) os << "]";
        os << "@n" << modes[i].mode_index();
    }
    return os.str();
}

}  // namespace

std::string to_string(HpwVariant v) {
    switch (v) {
        case HpwVariant::Plain: return "plain";
        case HpwVariant::Improved: return "improved";
        case HpwVariant::Abstract: return "abstract";
        case HpwVariant::Stringent: return "stringent";
    }
    return "?";
}

HpwVariant hpw_variant_from_string(const std::string& name) {
    for (auto v : {HpwVariant::Plain, HpwVariant::Improved, HpwVariant::Abstract, HpwVariant::Stringent})
        if (to_string(v) == name) return v;
    throw ParameterError("unknown HPW variant '" + name + "'");
}

HpwReport hpw_check(const HpwRequest& req) {
    const Dimension dim(req.N);
    if (req.flavor == Flavor::Full && req.N < 5)
        throw DimensionError("HPW inequalities for the full operators require N >= 5, got N=" +
                             std::to_string(req.N));
    for (const auto& m : req.modes)
        if (m.dimension() != req.N) throw ParameterError("mode dimension does not match N");

    HpwReport rep;
    rep.variant = req.variant;
    rep.flavor = req.flavor;
    rep.N = req.N;
    rep.lambda = req.lambda;
    rep.input = req.input_label.empty() ? describe(req.modes) : req.input_label;

    auto run = [&](const BesselPair* pair, const Density& d) {
        return integrate_over(req.modes, req.flavor, pair, req.quadrature, d);
    };
    const Integrated G = run(nullptr, [](const ModeSample& s, const PairValues&) { return grad(s); });
    const double C2 = G.value * G.value;

    double A = 0.0, B = 0.0, errA = 0.0, errB = 0.0, rhs = 0.0, err_rhs = 0.0;
    switch (req.variant) {
        case HpwVariant::Plain:
        case HpwVariant::Improved: {
            const LambdaParams p = lambda_params(dim, req.lambda);
            const Integrated D = run(nullptr, [](const ModeSample& s, const PairValues&) { return lap_sq(s); });
            const Integrated R2G =
                run(nullptr, [](const ModeSample& s, const PairValues&) { return s.r * s.r * grad(s); });
            A = D.value - p.lambda * G.value;
            errA = D.error + p.lambda * G.error;
            B = R2G.value;
            errB = R2G.error;
            rhs = p.h * p.h * C2;
            err_rhs = 2.0 * p.h * p.h * std::fabs(G.value) * G.error;
            rep.implied_constant = p.h * p.h;
            if (req.variant == HpwVariant::Improved) {
                const Integrated GS = run(nullptr, [](const ModeSample& s, const PairValues&) { return grad(s) * inv_s2(s); });
                const Integrated GW =
                    run(nullptr, [](const ModeSample& s, const PairValues&) { return s.rcoth_weight * grad(s); });
                const double c_s = 0.25 * req.N * req.N - p.h * p.h;
                const double c_w = p.gamma * p.h;
                const double extra = c_s * GS.value + c_w * GW.value;
                rhs += B * extra;
                err_rhs += std::fabs(extra) * errB + std::fabs(B) * (std::fabs(c_s) * GS.error + c_w * GW.error);
                rep.implied_constant = C2 > 0.0 ? rhs / C2 : 0.0;
            }
            break;
        }
        case HpwVariant::Abstract: {
            const BesselPair pair = req.pair ? *req.pair : canonical_pair(dim, req.lambda);
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (const auto& m : req.modes) {
                lo = std::min(lo, m.radial().support().lo);
                hi = std::max(hi, m.radial().support().hi);
            }
            if (hi > lo) {
                std::vector<double> grid;
                for (int i = 0; i < 200; ++i) grid.push_back(lo + (hi - lo) * (i + 0.5) / 200.0);
                if (req.flavor == Flavor::Full) {
                    const auto cond = check_nonradial_condition(pair, dim, grid);
                    if (!cond.holds) throw ParameterError("pair " + pair.name() + " violates the non-radial condition");
                }
                for (double r : grid) {
                    ModeSample s;
                    s.N = req.N;
                    s.r = r;
                    s.sinh = std::sinh(r);
                    s.coth = coth(r);
                    s.coth_minus_inv = coth_minus_inv(r);
                    if (!(w_tilde(pair(r), s) > 0.0)) {
                        std::ostringstream os;
                        os << "W~ is not positive at r=" << r << " for pair " << pair.name();
                        throw ParameterError(os.str());
                    }
                }
            }
            const Integrated D =
                run(&pair, [](const ModeSample& s, const PairValues& v) { return v.V * lap_sq(s); });
            const Integrated Q =
                run(&pair, [](const ModeSample& s, const PairValues& v) { return grad(s) / w_tilde(v, s); });
            A = D.value;
            errA = D.error;
            B = Q.value;
            errB = Q.error;
            rhs = C2;
            err_rhs = 2.0 * std::fabs(G.value) * G.error;
            rep.implied_constant = 1.0;
            break;
        }
        case HpwVariant::Stringent: {
            const Integrated D = run(nullptr, [](const ModeSample& s, const PairValues&) { return lap_sq(s); });
            const Integrated Q =
                run(nullptr, [](const ModeSample& s, const PairValues&) { return grad(s) / stringent_weight(s); });
            const Integrated R2G =
                run(nullptr, [](const ModeSample& s, const PairValues&) { return s.r * s.r * grad(s); });
            A = D.value;
            errA = D.error;
            B = Q.value;
            errB = Q.error;
            rhs = C2;
            err_rhs = 2.0 * std::fabs(G.value) * G.error;
            rep.implied_constant = Q.value > 0.0 ? R2G.value / Q.value : 0.0;
            break;
        }
    }
    rep.lhs_product = A * B;
    rep.rhs_square = rhs;
    rep.gap = rep.lhs_product - rep.rhs_square;
    rep.scale = std::max(std::fabs(rep.lhs_product), std::fabs(rep.rhs_square));
    rep.effective_constant = C2 > 0.0 ? rep.lhs_product / C2 : 0.0;
    if (req.variant == HpwVariant::Stringent) {
        // The product inequality with W~ implies this constant in the plain form.
        const Integrated R2G =
            run(nullptr, [](const ModeSample& s, const PairValues&) { return s.r * s.r * grad(s); });
        rep.effective_constant = C2 > 0.0 ? A * R2G.value / C2 : 0.0;
    }
    rep.error_budget = std::fabs(A) * errB + std::fabs(B) * errA + err_rhs;
    rep.passed = rep.gap >= -req.threshold * rep.scale;
    return rep;
}

std::string to_string(SharpConstant c) {
    switch (c) {
        case SharpConstant::HardyRellich: return "hardy-rellich";
        case SharpConstant::PoincareGrad: return "poincare-grad";
        case SharpConstant::Rellich: return "rellich";
        case SharpConstant::PoincareL0: return "poincare-l0";
        case SharpConstant::JointPair: return "joint-pair";
    }
    return "?";
}

SharpConstant sharp_constant_from_string(const std::string& name) {
    for (auto c : {SharpConstant::HardyRellich, SharpConstant::PoincareGrad, SharpConstant::Rellich,
                   SharpConstant::PoincareL0, SharpConstant::JointPair})
        if (to_string(c) == name) return c;
    throw ParameterError("unknown sharp constant '" + name + "'");
}

std::pair<double, double> extrapolate_limit(const std::vector<double>& values) {
    if (values.empty()) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    const size_t n = values.size();
    if (n < 3) return {values.back(), 0.0};
    const double d1 = values[n - 3] - values[n - 2];
    const double d2 = values[n - 2] - values[n - 1];
    if (d1 == 0.0 || d2 == 0.0 || (d1 > 0.0) != (d2 > 0.0) || std::fabs(d2) >= std::fabs(d1))
        return {values.back(), 0.0};
    const double rho = d2 / d1;
    return {values.back() - d2 * rho / (1.0 - rho), -std::log2(rho)};
}

SharpnessScan sharpness_scan(SharpConstant constant, const Dimension& dim, const std::vector<double>& epsilons,
                             const QuadratureOptions& opts, std::optional<double> lambda, double exponent_shift) {
    const int N = dim.value();
    const double k = 0.5 * (N - 1.0);
    SharpnessScan scan;
    scan.constant = constant;
    scan.N = N;
    const bool spreading = constant == SharpConstant::PoincareGrad || constant == SharpConstant::PoincareL0;
    scan.family = spreading ? "spreading" : "concentrating";
    scan.band = spreading ? 0.10 : 0.05;

    if ((constant == SharpConstant::Rellich || constant == SharpConstant::JointPair) && N < 5)
        throw DimensionError(to_string(constant) + " sharpness requires N >= 5, got N=" + std::to_string(N));

    LambdaParams p{};
    switch (constant) {
        case SharpConstant::HardyRellich: scan.target = 0.25 * N * N; break;
        case SharpConstant::PoincareGrad: scan.target = k * k; break;
        case SharpConstant::Rellich: scan.target = 0.25 * N * N * 0.25 * (N - 4.0) * (N - 4.0); break;
        case SharpConstant::PoincareL0: scan.target = k * k * k * k; break;
        case SharpConstant::JointPair:
            p = lambda_params(dim, lambda.value_or(lambda_one(dim)));
            scan.lambda = p.lambda;
            scan.target = 0.25 * N * N - p.h * p.h;
            break;
    }

    auto quotient = [&](const ModeFunction& mode) -> double {
        auto I = [&](auto&& g) { return integrate_mode(mode, [&](const ModeSample& s) { return g(s) * s.vol; }, opts).value; };
        const double D = I([](const ModeSample& s) {
            const double L = s.radial_laplacian();
            return L * L;
        });
        switch (constant) {
            case SharpConstant::HardyRellich: return D / I([](const ModeSample& s) { return s.a1 * s.a1 / (s.r * s.r); });
            case SharpConstant::Rellich:
                return D / I([](const ModeSample& s) {
                    const double r2 = s.r * s.r;
                    return s.a * s.a / (r2 * r2);
                });
            case SharpConstant::PoincareGrad: return D / I([](const ModeSample& s) { return s.a1 * s.a1; });
            case SharpConstant::PoincareL0: return D / I([](const ModeSample& s) { return s.a * s.a; });
            case SharpConstant::JointPair: {
                const double G = I([](const ModeSample& s) { return s.a1 * s.a1; });
                const double GR = I([](const ModeSample& s) { return s.a1 * s.a1 / (s.r * s.r); });
                const double GW = I([](const ModeSample& s) { return s.rcoth_weight * s.a1 * s.a1; });
                const double GS = I([](const ModeSample& s) { return s.a1 * s.a1 / (s.sinh * s.sinh); });
                return (D - p.lambda * G - p.h * p.h * GR - p.gamma * p.h * GW) / GS;
            }
        }
        return 0.0;
    };

    std::vector<double> good;
    scan.one_sided = true;
    for (double eps : epsilons) {
        SharpnessPoint pt;
        pt.epsilon = eps;
        try {
            const RadialProfile u =
                spreading ? make_spreading_family(2.0 / eps, dim) : make_concentrating_family(eps, exponent_shift, dim);
            pt.quotient = quotient(radial_mode(u, dim));
            if (!std::isfinite(pt.quotient)) throw QuadratureError("non-finite quotient");
            good.push_back(pt.quotient);
            const double scale = std::max(std::fabs(pt.quotient), std::fabs(scan.target));
            if (pt.quotient < scan.target - scan.tolerance * scale) scan.one_sided = false;
        } catch (const std::exception& e) {
            pt.ok = false;
            pt.error = e.what();
        }
        scan.points.push_back(pt);
    }
    if (good.empty()) scan.one_sided = false;

    scan.monotone = good.size() >= 2;
    for (size_t i = 1; i < good.size(); ++i)
        if (good[i] > good[i - 1]) scan.monotone = false;

    const auto [limit, order] = extrapolate_limit(good);
    scan.extrapolated = limit;
    scan.estimated_order = order;
    scan.rel_distance = scan.target != 0.0 ? std::fabs(limit - scan.target) / std::fabs(scan.target) : std::fabs(limit);
    scan.within_band = std::isfinite(limit) && scan.rel_distance <= scan.band;
    return scan;
}

}  // namespace hypbessel
