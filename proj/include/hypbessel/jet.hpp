#pragma once

// Truncated Taylor arithmetic (forward-mode AD) up to third order.
//
// A Jet stores the Taylor coefficients c_k = f^(k)(x0)/k! of a function at a
// point. Arithmetic and the elementary functions below propagate them with the
// usual recurrences, so derivatives of composite closed forms come out exact to
// rounding.

#include <array>
#include <cmath>

namespace hypbessel {

struct Derivs {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
};

class Jet {
public:
    static constexpr int kOrder = 3;

    constexpr Jet() = default;
    constexpr explicit Jet(double constant) : c_{constant, 0.0, 0.0, 0.0} {}
    constexpr Jet(double c0, double c1, double c2, double c3) : c_{c0, c1, c2, c3} {}

    /// The identity function x evaluated at x0.
    static constexpr Jet variable(double x0) { return {x0, 1.0, 0.0, 0.0}; }

    /// Jet from plain derivatives (f, f', f'', f''').
    static constexpr Jet from_derivs(const Derivs& d) {
        return {d.value, d.d1, d.d2 / 2.0, d.d3 / 6.0};
    }

    constexpr double operator[](int k) const { return c_[k]; }
    constexpr double& operator[](int k) { return c_[k]; }

    constexpr double value() const { return c_[0]; }

    /// k-th derivative, k in [0, 3].
    constexpr double derivative(int k) const {
        constexpr double fact[] = {1.0, 1.0, 2.0, 6.0};
        return c_[k] * fact[k];
    }

    constexpr Derivs derivs() const { return {c_[0], c_[1], 2.0 * c_[2], 6.0 * c_[3]}; }

    constexpr Jet operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }

    constexpr Jet& operator+=(const Jet& o) {
        for (int k = 0; k <= kOrder; ++k) c_[k] += o.c_[k];
        return *this;
    }
    constexpr Jet& operator-=(const Jet& o) {
        for (int k = 0; k <= kOrder; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    constexpr Jet& operator*=(double s) {
        for (auto& v : c_) v *= s;
        return *this;
    }
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);

private:
    std::array<double, kOrder + 1> c_{};
};

inline Jet& Jet::operator*=(const Jet& o) {
    std::array<double, kOrder + 1> r{};
    for (int k = 0; k <= kOrder; ++k)
        for (int i = 0; i <= k; ++i) r[k] += c_[i] * o.c_[k - i];
    c_ = r;
    return *this;
}

inline Jet& Jet::operator/=(const Jet& o) {
    std::array<double, kOrder + 1> q{};
    for (int k = 0; k <= kOrder; ++k) {
        double acc = c_[k];
        for (int i = 1; i <= k; ++i) acc -= o.c_[i] * q[k - i];
        q[k] = acc / o.c_[0];
    }
    c_ = q;
    return *this;
}

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }
inline Jet operator+(Jet a, double s) { a[0] += s; return a; }
inline Jet operator+(double s, Jet a) { a[0] += s; return a; }
inline Jet operator-(Jet a, double s) { a[0] -= s; return a; }
inline Jet operator-(double s, const Jet& a) { return Jet(s) - a; }
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator*(double s, Jet a) { return a *= s; }
inline Jet operator/(Jet a, double s) { return a *= (1.0 / s); }
inline Jet operator/(double s, const Jet& a) { return Jet(s) / a; }

inline Jet exp(const Jet& a) {
    Jet e(std::exp(a[0]));
    for (int k = 1; k <= Jet::kOrder; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += j * a[j] * e[k - j];
        e[k] = acc / k;
    }
    return e;
}

inline Jet log(const Jet& a) {
    Jet l(std::log(a[0]));
    for (int k = 1; k <= Jet::kOrder; ++k) {
        double acc = 0.0;
        for (int j = 1; j < k; ++j) acc += j * l[j] * a[k - j];
        l[k] = (a[k] - acc / k) / a[0];
    }
    return l;
}

/// a^p for a[0] > 0.
inline Jet pow(const Jet& a, double p) { return exp(p * log(a)); }

inline Jet sqr(const Jet& a) { return a * a; }

/// Integer power by repeated multiplication; valid for any sign of a[0].
inline Jet ipow(const Jet& a, int n) {
    Jet result(1.0);
    Jet base = a;
    unsigned m = static_cast<unsigned>(n < 0 ? -n : n);
    while (m) {
        if (m & 1u) result *= base;
        base *= base;
        m >>= 1u;
    }
    return n < 0 ? 1.0 / result : result;
}

namespace detail {
// Joint recurrence for (sin, cos) when sign = -1 and (sinh, cosh) when sign = +1.
inline void trig_pair(const Jet& a, Jet& s, Jet& c, double s0, double c0, double sign) {
    s = Jet(s0);
    c = Jet(c0);
    for (int k = 1; k <= Jet::kOrder; ++k) {
        double as = 0.0, ac = 0.0;
        for (int j = 1; j <= k; ++j) {
            as += j * a[j] * c[k - j];
            ac += j * a[j] * s[k - j];
        }
        s[k] = as / k;
        c[k] = sign * ac / k;
    }
}
}  // namespace detail

inline Jet sin(const Jet& a) {
    Jet s, c;
    detail::trig_pair(a, s, c, std::sin(a[0]), std::cos(a[0]), -1.0);
    return s;
}

inline Jet cos(const Jet& a) {
    Jet s, c;
    detail::trig_pair(a, s, c, std::sin(a[0]), std::cos(a[0]), -1.0);
    return c;
}

inline Jet sinh(const Jet& a) {
    Jet s, c;
    detail::trig_pair(a, s, c, std::sinh(a[0]), std::cosh(a[0]), 1.0);
    return s;
}

inline Jet cosh(const Jet& a) {
    Jet s, c;
    detail::trig_pair(a, s, c, std::sinh(a[0]), std::cosh(a[0]), 1.0);
    return c;
}

}  // namespace hypbessel
