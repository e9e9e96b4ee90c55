#include "hypbessel/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "hypbessel/errors.hpp"

namespace hypbessel {

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the 10-point Gauss nodes.
constexpr std::array<double, 11> kNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980761381, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a, b;
    double value;
    double error;
    double abs_value;  // integral of |f|, for the roundoff floor
    int depth;
    bool operator<(const Segment& o) const { return error < o.error; }
};

double checked(const RadialIntegrand& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os << "integrand is not finite at r=" << x << " (value " << y << ")";
        throw QuadratureError(os.str());
    }
    return y;
}

Segment gauss_kronrod(const RadialIntegrand& f, double a, double b, int depth) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = checked(f, center);
    double kronrod = fc * kKronrodWeights[10];
    double gauss = 0.0;
    double abs_sum = std::fabs(fc) * kKronrodWeights[10];
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kNodes[j];
        const double f1 = checked(f, center - dx);
        const double f2 = checked(f, center + dx);
        kronrod += kKronrodWeights[j] * (f1 + f2);
        abs_sum += kKronrodWeights[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
    }
    kronrod *= half;
    gauss *= half;
    abs_sum *= std::fabs(half);
    double err = std::fabs(kronrod - gauss);
    // Roundoff floor: differences below a few ulps of the |f| integral are noise.
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum;
    if (err < floor) err = floor;
    return {a, b, kronrod, err, abs_sum, depth};
}

}  // namespace

QuadratureResult integrate(const RadialIntegrand& f, double a, double b, const QuadratureOptions& opts) {
    if (!(a < b)) {
        if (a == b) return {};
        throw DomainError("integrate: need a < b");
    }
    std::priority_queue<Segment> active;
    std::vector<Segment> frozen;  // depth-limited segments
    active.push(gauss_kronrod(f, a, b, 0));
    long evaluations = 21;
    int subdivisions = 0;

    auto totals = [&](double& value, double& error, double& abs_value) {
        value = error = abs_value = 0.0;
        auto add = [&](const Segment& s) {
            value += s.value;
            error += s.error;
            abs_value += s.abs_value;
        };
        auto copy = active;
        while (!copy.empty()) {
            add(copy.top());
            copy.pop();
        }
        for (const auto& s : frozen) add(s);
    };

    double value = 0.0, error = 0.0, abs_value = 0.0;
    totals(value, error, abs_value);
    // Running sums avoid re-walking the heap each iteration.
    while (true) {
        const double target = std::max(opts.abs_tol, opts.rel_tol * std::fabs(value));
        if (error <= target) break;
        if (active.empty() || subdivisions >= opts.max_subdivisions) break;
        const Segment worst = active.top();
        active.pop();
        if (worst.depth >= opts.max_depth) {
            frozen.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gauss_kronrod(f, worst.a, mid, worst.depth + 1);
        const Segment right = gauss_kronrod(f, mid, worst.b, worst.depth + 1);
        evaluations += 42;
        ++subdivisions;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_value += left.abs_value + right.abs_value - worst.abs_value;
        active.push(left);
        active.push(right);
        // Periodically resum to keep drift out of the running totals.
        if (subdivisions % 64 == 0) totals(value, error, abs_value);
    }
    totals(value, error, abs_value);

    QuadratureResult result;
    result.value = value;
    result.abs_error_estimate = error;
    result.subdivisions = subdivisions;
    result.evaluations = evaluations;
    result.converged = error <= std::max(opts.abs_tol, opts.rel_tol * std::fabs(value));
    if (!result.converged && opts.throw_on_failure) {
        std::ostringstream os;
        os << "integrate: no convergence on [" << a << ", " << b << "] after " << subdivisions
           << " subdivisions (error estimate " << error << ", value " << value << ")";
        throw QuadratureError(os.str());
    }
    return result;
}

QuadratureResult integrate_radial(const RadialIntegrand& f, const Support& support, double tol) {
    QuadratureOptions opts;
    opts.abs_tol = tol;
    return integrate_radial(f, support, opts);
}

QuadratureResult integrate_radial(const RadialIntegrand& f, const Support& support, const QuadratureOptions& opts) {
    if (!(support.lo > 0.0) || !(support.lo < support.hi) || !std::isfinite(support.hi))
        throw DomainError("integrate_radial: support must satisfy 0 < a < b < inf");
    return integrate(f, support.lo, support.hi, opts);
}

QuadratureResult hyperbolic_norm_sq(const RadialIntegrand& g, const Dimension& n, const Support& support,
                                    const QuadratureOptions& opts, double sphere_measure) {
    const int power = n.value() - 1;
    QuadratureResult res = integrate_radial(
        [&](double r) {
            const double v = g(r);
            return v * v * std::pow(std::sinh(r), power);
        },
        support, opts);
    res.value *= sphere_measure;
    res.abs_error_estimate *= std::fabs(sphere_measure);
    return res;
}

}  // namespace hypbessel
