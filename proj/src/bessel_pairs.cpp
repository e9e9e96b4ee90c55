#include "hypbessel/bessel_pairs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "hypbessel/errors.hpp"

namespace hypbessel {

namespace {

void require_positive(double r, const char* who) {
    if (!(r > 0.0)) throw DomainError(std::string(who) + ": r must be positive");
}

// (1 - N - gamma) / 2, the coth coefficient of Psi'/Psi.
double coth_coefficient(const LambdaParams& p, const Dimension& n) { return 0.5 * (1.0 - n.value() - p.gamma); }

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw ParameterError("trailing characters");
        } catch (const std::exception&) {
            throw ParameterError("bad numeric pair parameter '" + item + "'");
        }
    }
    return out;
}

}  // namespace

double lambda_one(const Dimension& n) {
    const double half = 0.5 * (n.value() - 1);
    return half * half;
}

LambdaParams lambda_params(const Dimension& n, double lambda) {
    const double top = lambda_one(n);
    if (!(lambda >= 0.0) || lambda > top) {
        std::ostringstream os;
        os << "lambda=" << lambda << " outside [0, " << top << "] for N=" << n.value();
        throw RangeError(os.str());
    }
    const double nm1 = n.value() - 1;
    const double disc = std::max(0.0, nm1 * nm1 - 4.0 * lambda);
    LambdaParams p;
    p.lambda = lambda;
    p.gamma = std::sqrt(disc);
    p.h = 0.5 * (p.gamma + 1.0);
    return p;
}

double psi_log_derivative(const LambdaParams& p, const Dimension& n, double r) {
    require_positive(r, "psi");
    return p.h / r + coth_coefficient(p, n) * coth(r);
}

double psi_second_ratio(const LambdaParams& p, const Dimension& n, double r) {
    require_positive(r, "psi");
    const double a = coth_coefficient(p, n);
    const double s = std::sinh(r);
    // Psi''/Psi = A^2 + (gamma^2 - 1)/(4 r^2) + (A^2 - A)/sinh^2 r + 2 h A coth(r)/r
    return a * a + (p.gamma * p.gamma - 1.0) / (4.0 * r * r) + (a * a - a) / (s * s) +
           2.0 * p.h * a * coth(r) / r;
}

double psi(const LambdaParams& p, const Dimension& n, double r, int order) {
    require_positive(r, "psi");
    const double log_psi = -0.5 * (n.value() - 2) * std::log(r) - 0.5 * (n.value() - 1 + p.gamma) * log_sinhc(r);
    const double value = std::exp(log_psi);
    switch (order) {
        case 0: return value;
        case 1: return value * psi_log_derivative(p, n, r);
        case 2: return value * psi_second_ratio(p, n, r);
        default: throw ParameterError("psi: order must be 0, 1 or 2");
    }
}

double w_lambda(const LambdaParams& p, const Dimension& n, double r) {
    require_positive(r, "w_lambda");
    const double half_nm2 = 0.5 * (n.value() - 2);
    const double s = std::sinh(r);
    // h^2/r^2 + (((N-2)/2)^2 - h^2)/sinh^2 = ((N-2)/2)^2/sinh^2 + h^2 (1/r^2 - 1/sinh^2)
    const double singular = half_nm2 * half_nm2 / (s * s) + p.h * p.h * inv_r2_minus_inv_sinh2(r);
    const double drift = p.gamma * p.h / r + (n.value() - 1) * psi_log_derivative(p, n, r);
    return p.lambda + singular + drift * coth_minus_inv(r);
}

BesselPair::BesselPair(std::string name, int dimension, Evaluator eval, bool v_is_constant_one)
    : name_(std::move(name)), dim_(dimension), eval_(std::move(eval)), unit_weight_(v_is_constant_one) {}

PairValues BesselPair::operator()(double r) const {
    require_positive(r, "BesselPair");
    return eval_(r);
}

BesselPair canonical_pair(const Dimension& n, double lambda) {
    const LambdaParams p = lambda_params(n, lambda);
    std::ostringstream name;
    name << "canonical(lambda=" << lambda << ")";
    return BesselPair(
        name.str(), n.value(),
        [p, n](double r) {
            PairValues v;
            v.V = 1.0;
            v.W = w_lambda(p, n, r);
            v.f = psi(p, n, r, 0);
            v.f_log = psi_log_derivative(p, n, r);
            v.f_ratio2 = psi_second_ratio(p, n, r);
            v.df = v.f * v.f_log;
            v.d2f = v.f * v.f_ratio2;
            return v;
        },
        true);
}

BesselPair trivial_pair(const Dimension& n) {
    return BesselPair(
        "trivial", n.value(),
        [](double) {
            PairValues v;
            v.V = 1.0;
            v.f = 1.0;
            return v;
        },
        true);
}

BesselPair radial_harmonic_pair(const Dimension& n) {
    const double k = 2.0 - n.value();
    return BesselPair(
        "radial-harmonic", n.value(),
        [k](double r) {
            PairValues v;
            v.V = 1.0;
            v.f = std::pow(r, k);
            v.f_log = k / r;
            v.f_ratio2 = k * (k - 1.0) / (r * r);
            v.df = v.f * v.f_log;
            v.d2f = v.f * v.f_ratio2;
            return v;
        },
        true);
}

BesselPair power_pair(const Dimension& n, double p, double q) {
    const double nn = n.value();
    std::ostringstream name;
    name << "power(p=" << p << ",q=" << q << ")";
    return BesselPair(name.str(), n.value(), [p, q, nn](double r) {
        PairValues v;
        v.V = std::pow(r, p);
        v.dV = p * v.V / r;
        v.d2V = p * (p - 1.0) * v.V / (r * r);
        v.W = -q * (nn - 2.0 + p + q) * std::pow(r, p - 2.0);
        v.f = std::pow(r, q);
        v.f_log = q / r;
        v.f_ratio2 = q * (q - 1.0) / (r * r);
        v.df = v.f * v.f_log;
        v.d2f = v.f * v.f_ratio2;
        return v;
    });
}

BesselPair gaussian_pair(const Dimension& n, double beta) {
    std::ostringstream name;
    name << "gaussian(beta=" << beta << ")";
    return BesselPair(name.str(), n.value(), [beta](double r) {
        PairValues v;
        v.V = std::exp(-beta * r * r);
        v.dV = -2.0 * beta * r * v.V;
        v.d2V = (4.0 * beta * beta * r * r - 2.0 * beta) * v.V;
        v.f = 1.0;
        return v;
    });
}

BesselPair exponential_pair(const Dimension& n, double beta) {
    std::ostringstream name;
    name << "exponential(beta=" << beta << ")";
    return BesselPair(name.str(), n.value(), [beta](double r) {
        PairValues v;
        v.V = std::exp(-beta * r);
        v.dV = -beta * v.V;
        v.d2V = beta * beta * v.V;
        v.f = 1.0;
        return v;
    });
}

BesselPair make_pair(const std::string& spec, const Dimension& n, double lambda) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::vector<double> args = colon == std::string::npos ? std::vector<double>{} : parse_numbers(spec.substr(colon + 1));
    auto expect = [&](size_t count) {
        if (args.size() != count)
            throw ParameterError("pair '" + head + "' expects " + std::to_string(count) + " parameter(s)");
    };
    if (head == "canonical") {
        expect(0);
        return canonical_pair(n, lambda);
    }
    if (head == "trivial") {
        expect(0);
        return trivial_pair(n);
    }
    if (head == "radial-harmonic") {
        expect(0);
        return radial_harmonic_pair(n);
    }
    if (head == "power") {
        expect(2);
        return power_pair(n, args[0], args[1]);
    }
    if (head == "gaussian") {
        if (args.empty()) return gaussian_pair(n);
        expect(1);
        return gaussian_pair(n, args[0]);
    }
    if (head == "exponential") {
        expect(1);
        return exponential_pair(n, args[0]);
    }
    throw ParameterError("unknown Bessel pair '" + spec + "'");
}

namespace {

// Expanded terms of (r^{N-1} V f')' + r^{N-1} W f divided by r^{N-1} f.
std::array<double, 4> ode_terms(const PairValues& v, const Dimension& n, double r) {
    return {(n.value() - 1) / r * v.V * v.f_log, v.dV * v.f_log, v.V * v.f_ratio2, v.W};
}

}  // namespace

double ode_residual(const BesselPair& pair, const Dimension& n, double r) {
    const PairValues v = pair(r);
    const auto t = ode_terms(v, n, r);
    return std::pow(r, n.value() - 1) * v.f * (t[0] + t[1] + t[2] + t[3]);
}

double ode_residual_normalized(const BesselPair& pair, const Dimension& n, double r) {
    const PairValues v = pair(r);
    const auto t = ode_terms(v, n, r);
    const double scale = std::fabs(t[0]) + std::fabs(t[1]) + std::fabs(t[2]) + std::fabs(t[3]);
    const double sum = t[0] + t[1] + t[2] + t[3];
    if (scale == 0.0) return 0.0;
    return std::fabs(sum) / scale;
}

double nonradial_condition_value(const BesselPair& pair, const Dimension& n, double r) {
    const PairValues v = pair(r);
    const double s = std::sinh(r);
    return (n.value() - 5) * v.V / (s * s) + 3.0 * v.dV * coth(r) - v.d2V + (n.value() - 4) * v.V;
}

NonradialConditionResult check_nonradial_condition(const BesselPair& pair, const Dimension& n,
                                                   const std::vector<double>& sample_grid) {
    if (n.value() < 5)
        throw DimensionError("non-radial Rellich condition requires N >= 5, got N=" + std::to_string(n.value()));
    NonradialConditionResult out;
    out.worst_margin = std::numeric_limits<double>::infinity();
    for (double r : sample_grid) {
        const double value = nonradial_condition_value(pair, n, r);
        if (value < out.worst_margin) {
            out.worst_margin = value;
            out.worst_r = r;
        }
    }
    out.holds = sample_grid.empty() || out.worst_margin >= -1e-12;
    return out;
}

}  // namespace hypbessel
