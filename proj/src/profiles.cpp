#include "hypbessel/profiles.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "hypbessel/errors.hpp"

namespace hypbessel {

namespace {

// exp(-1/x) underflows to 0 beyond this, and all its derivatives with it.
constexpr double kFlatCutoff = 700.0;

// exp(-1/x) for x > 0, 0 otherwise.
Jet flat_exp(const Jet& x) {
    if (!(x.value() > 0.0) || 1.0 / x.value() > kFlatCutoff) return Jet(0.0);
    return exp(-1.0 / x);
}

void require_interval(double a, double b, const char* who) {
    if (!(a > 0.0) || !(a < b) || !std::isfinite(b)) {
        std::ostringstream os;
        os << who << ": need 0 < a < b < inf, got a=" << a << ", b=" << b;
        throw ParameterError(os.str());
    }
}

class BumpImpl final : public RadialProfile::Impl {
public:
    BumpImpl(double a, double b, double amp) : a_(a), b_(b), amp_(amp) {}
    Jet jet(double r) const override {
        const Jet x = Jet::variable(r);
        return amp_ * flat_exp((x - a_) * (b_ - x));
    }

private:
    double a_, b_, amp_;
};

class PolynomialBridgeImpl final : public RadialProfile::Impl {
public:
    PolynomialBridgeImpl(double a, double b, double amp) : a_(a), width_(b - a), amp_(amp) {}
    Jet jet(double r) const override {
        const Jet t = (Jet::variable(r) - a_) / width_;
        return (256.0 * amp_) * ipow(t * (1.0 - t), 4);
    }

private:
    double a_, width_, amp_;
};

class SineBumpImpl final : public RadialProfile::Impl {
public:
    SineBumpImpl(double a, double b, double amp) : a_(a), width_(b - a), amp_(amp) {}
    Jet jet(double r) const override {
        const Jet t = (Jet::variable(r) - a_) / width_;
        return amp_ * ipow(sin(std::numbers::pi * t), 4);
    }

private:
    double a_, width_, amp_;
};

class ConcentratingImpl final : public RadialProfile::Impl {
public:
    ConcentratingImpl(double eps, double exponent) : eps_(eps), exponent_(exponent) {}
    Jet jet(double r) const override {
        const Jet x = Jet::variable(r);
        Jet cutoff(1.0);
        if (r < eps_)
            cutoff = smooth_step((x - 0.5 * eps_) / (0.5 * eps_));
        else if (r > 1.0)
            cutoff = smooth_step(2.0 - x);
        return cutoff * pow(x, exponent_);
    }

private:
    double eps_, exponent_;
};

class SpreadingImpl final : public RadialProfile::Impl {
public:
    SpreadingImpl(double length, double decay) : length_(length), ramp_((length - 1.0) / 4.0), decay_(decay) {}
    Jet jet(double r) const override {
        const Jet x = Jet::variable(r);
        Jet cutoff(1.0);
        if (r < 1.0 + ramp_)
            cutoff = smooth_step((x - 1.0) / ramp_);
        else if (r > length_ - ramp_)
            cutoff = smooth_step((length_ - x) / ramp_);
        return cutoff * exp(-decay_ * x);
    }

private:
    double length_, ramp_, decay_;
};

}  // namespace

std::string to_string(ProfileFamily family) {
    switch (family) {
        case ProfileFamily::Bump: return "bump";
        case ProfileFamily::PolynomialBridge: return "poly";
        case ProfileFamily::SineBump: return "sine";
        case ProfileFamily::Concentrating: return "concentrating";
        case ProfileFamily::Spreading: return "spreading";
    }
    return "unknown";
}

ProfileFamily profile_family_from_string(const std::string& name) {
    if (name == "bump") return ProfileFamily::Bump;
    if (name == "poly" || name == "polynomial" || name == "polynomial-bridge") return ProfileFamily::PolynomialBridge;
    if (name == "sine" || name == "sine-bump") return ProfileFamily::SineBump;
    if (name == "concentrating") return ProfileFamily::Concentrating;
    if (name == "spreading") return ProfileFamily::Spreading;
    throw ParameterError("unknown profile family '" + name + "'");
}

Jet smooth_step(const Jet& x) {
    if (x.value() <= 0.0) return Jet(0.0);
    if (x.value() >= 1.0) return Jet(1.0);
    const Jet g = flat_exp(x);
    const Jet h = flat_exp(1.0 - x);
    return g / (g + h);
}

RadialProfile::RadialProfile(ProfileFamily family, Support support, std::map<std::string, double> params,
                             std::shared_ptr<const Impl> impl)
    : family_(family), support_(support), params_(std::move(params)), impl_(std::move(impl)) {}

Jet RadialProfile::eval_jet(double r) const {
    if (!support_.contains(r)) return Jet(0.0);
    return impl_->jet(r);
}

RadialProfile make_bump(double a, double b, double amplitude) {
    require_interval(a, b, "make_bump");
    return {ProfileFamily::Bump, {a, b}, {{"a", a}, {"b", b}, {"amplitude", amplitude}},
            std::make_shared<BumpImpl>(a, b, amplitude)};
}

RadialProfile make_polynomial_bridge(double a, double b, double amplitude) {
    require_interval(a, b, "make_polynomial_bridge");
    return {ProfileFamily::PolynomialBridge, {a, b}, {{"a", a}, {"b", b}, {"amplitude", amplitude}},
            std::make_shared<PolynomialBridgeImpl>(a, b, amplitude)};
}

RadialProfile make_sine_bump(double a, double b, double amplitude) {
    require_interval(a, b, "make_sine_bump");
    return {ProfileFamily::SineBump, {a, b}, {{"a", a}, {"b", b}, {"amplitude", amplitude}},
            std::make_shared<SineBumpImpl>(a, b, amplitude)};
}

RadialProfile make_concentrating_family(double epsilon, double exponent_shift, const Dimension& n) {
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw ParameterError("make_concentrating_family: epsilon must lie in (0, 1/2), got " +
                             std::to_string(epsilon));
    const double exponent = (4.0 - n.value()) / 2.0 + epsilon + exponent_shift;
    return {ProfileFamily::Concentrating,
            {0.5 * epsilon, 2.0},
            {{"epsilon", epsilon}, {"exponent_shift", exponent_shift}, {"N", double(n.value())}},
            std::make_shared<ConcentratingImpl>(epsilon, exponent)};
}

RadialProfile make_spreading_family(double length, const Dimension& n) {
    if (!(length > 2.0) || !std::isfinite(length))
        throw ParameterError("make_spreading_family: length must exceed 2, got " + std::to_string(length));
    return {ProfileFamily::Spreading,
            {1.0, length},
            {{"L", length}, {"N", double(n.value())}},
            std::make_shared<SpreadingImpl>(length, 0.5 * (n.value() - 1))};
}

RadialProfile make_profile(const std::string& family, const std::map<std::string, double>& params, int n) {
    const ProfileFamily fam = profile_family_from_string(family);
    auto get = [&](const char* key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    std::set<std::string> allowed;
    switch (fam) {
        case ProfileFamily::Bump:
        case ProfileFamily::PolynomialBridge:
        case ProfileFamily::SineBump: allowed = {"a", "b", "amplitude"}; break;
        case ProfileFamily::Concentrating: allowed = {"epsilon", "exponent_shift"}; break;
        case ProfileFamily::Spreading: allowed = {"L"}; break;
    }
    for (const auto& [key, value] : params)
        if (!allowed.count(key)) throw ParameterError("profile '" + family + "' has no parameter '" + key + "'");

    switch (fam) {
        case ProfileFamily::Bump: return make_bump(get("a", 0.5), get("b", 3.0), get("amplitude", 1.0));
        case ProfileFamily::PolynomialBridge:
            return make_polynomial_bridge(get("a", 0.5), get("b", 3.0), get("amplitude", 1.0));
        case ProfileFamily::SineBump: return make_sine_bump(get("a", 0.5), get("b", 3.0), get("amplitude", 1.0));
        case ProfileFamily::Concentrating:
            return make_concentrating_family(get("epsilon", 0.1), get("exponent_shift", 0.0), Dimension(n));
        case ProfileFamily::Spreading: return make_spreading_family(get("L", 20.0), Dimension(n));
    }
    throw ParameterError("unreachable profile family");
}

double sphere_eigenvalue(int n, const Dimension& dim) {
    if (n < 0) throw ParameterError("mode index must be >= 0");
    return double(n) * n + double(dim.value() - 2) * n;
}

ModeFunction::ModeFunction(RadialProfile radial, int mode_index, const Dimension& dim)
    : radial_(std::move(radial)), n_(mode_index), dim_(dim.value()), eigenvalue_(sphere_eigenvalue(mode_index, dim)) {}

ModeFunction radial_mode(const RadialProfile& u, const Dimension& dim) { return ModeFunction(u, 0, dim); }

}  // namespace hypbessel
