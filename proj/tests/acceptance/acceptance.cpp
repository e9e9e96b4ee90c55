// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hypbessel/bessel_pairs.hpp"
#include "hypbessel/identities.hpp"
#include "hypbessel/radial_terms.hpp"
#include "hypbessel/sharpness_hpw.hpp"
#include "hypbessel/spherical_modes.hpp"
#include "oracles.hpp"

using namespace hypbessel;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::vector<RadialProfile> families() {
    return {make_bump(0.5, 3.0), make_polynomial_bridge(0.4, 2.5, 2.0), make_sine_bump(1.0, 4.0, 0.5)};
}

std::vector<double> grid(const Dimension& d, int points) {
    std::vector<double> out;
    for (int i = 0; i < points; ++i) out.push_back(lambda_one(d) * i / (points - 1));
    return out;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::map<std::string, double> table(IdentityId id, int N, double lambda = 0.0) {
    std::map<std::string, double> out;
    for (const auto& c : coefficient_table(id, Dimension(N), lambda)) out[c.label] = c.value;
    return out;
}

Outcome ode_certificate() {
    double worst = 0.0;
    for (int N : {2, 3, 5, 6, 8}) {
        const Dimension d(N);
        for (double l : grid(d, 21)) {
            const BesselPair pair = canonical_pair(d, l);
            for (int k = 0; k < 200; ++k) {
                const double r = 1e-3 * std::pow(2e4, k / 199.0);
                worst = std::max(worst, ode_residual_normalized(pair, d, r));
            }
        }
    }
    return {worst < 1e-8, "max normalized residual " + sci(worst)};
}

Outcome radial_hr_sweep() {
    double worst = 0.0;
    for (int N : {2, 3, 5, 6, 8}) {
        const Dimension d(N);
        for (const auto& u : families())
            for (double l : grid(d, 11)) worst = std::max(worst, std::fabs(assemble(IdentityId::RadialHR, d, u, l).rel_residual));
    }
    return {worst < 1e-6, "165 cases, max |rel residual| " + sci(worst)};
}

Outcome endpoint_collapse() {
    double worst = 0.0;
    for (int N : {2, 3, 5, 6, 8}) {
        auto t0 = table(IdentityId::RadialHR, N, 0.0);
        worst = std::max({worst, std::fabs(t0["|grad u|^2/r^2"] - N * N / 4.0), std::fabs(t0["|grad u|^2/sinh^2"])});
        auto t1 = table(IdentityId::RadialHR, N, lambda_one(Dimension(N)));
        worst = std::max({worst, std::fabs(t1["|grad u|^2/r^2"] - 0.25),
                          std::fabs(t1["|grad u|^2/sinh^2"] - (N * N - 1.0) / 4.0)});
    }
    return {worst <= 1e-14, "max deviation " + sci(worst)};
}

Outcome corollaries_2_5_2_6() {
    double worst = 0.0;
    bool tables = true;
    for (int N : {2, 3, 5, 6, 8}) {
        const Dimension d(N);
        const double k = (N - 1.0) / 2.0, m = (N - 4.0) / 2.0;
        auto r = table(IdentityId::Rellich, N);
        tables = tables && r["u^2/r^4"] == N * N / 4.0 * m * m && r["w u^2/r^2"] == N * N * (N - 4.0) * (N - 1.0) / 8.0 &&
                 r["w|grad u|^2"] == N * (N - 1.0) / 2.0 && r["r^(2-N)|grad(r^((N-4)/2) u)|^2"] == N * N / 4.0;
        auto l0 = table(IdentityId::PoincareL0, N);
        tables = tables && l0["u^2"] == k * k * k * k && l0["u^2/r^2"] == (N - 1.0) * (N - 1.0) / 16.0 &&
                 l0["u^2/sinh^2"] == (N - 1.0) * (N - 1.0) * (N - 1.0) * (N - 3.0) / 16.0 &&
                 l0["|grad u|^2/r^2"] == 0.25 && l0["|grad u|^2/sinh^2"] == (N * N - 1.0) / 4.0 &&
                 l0["remainder"] == k * k + 1.0;
        for (const auto& u : families()) {
            for (auto id : {IdentityId::Rellich, IdentityId::PoincareL0, IdentityId::HardyRellich0,
                            IdentityId::PoincareL1, IdentityId::FllmHardyGrad, IdentityId::FllmPoincare}) {
                IdentityRequest req;
                req.id = id;
                req.N = N;
                req.flavor = Flavor::Radial;
                req.modes = {radial_mode(u, d)};
                worst = std::max(worst, std::fabs(assemble(req).rel_residual));
            }
        }
    }
    return {worst < 1e-6 && tables,
            "max |rel residual| " + sci(worst) + ", constant tables " + (tables ? "exact" : "MISMATCH")};
}

Outcome appendix() {
    double worst = 0.0;
    bool constants = true;
    for (int N : {2, 3, 5, 6, 8}) {
        const Dimension d(N);
        for (const auto& u : families()) {
            for (double l : grid(d, 11)) {
                for (auto f : {Flavor::Radial, Flavor::Full}) {
                    IdentityRequest req;
                    req.id = IdentityId::AppendixHP;
                    req.N = N;
                    req.lambda = l;
                    req.flavor = f;
                    req.modes = {ModeFunction(u, 0, d)};
                    if (f == Flavor::Full) req.modes.emplace_back(u, 2, d);
                    worst = std::max(worst, std::fabs(assemble(req).rel_residual));
                }
            }
            if (N >= 3) worst = std::max(worst, std::fabs(assemble(IdentityId::AppendixHardy, d, u).rel_residual));
        }
        if (N >= 3) {
            auto c = table(IdentityId::AppendixHardy, N);
            auto s = table(IdentityId::AppendixHP, N, N - 2.0);
            constants = constants && c["u^2/r^2"] == (N - 2.0) * (N - 2.0) / 4.0 && c["u^2"] == N - 2.0 &&
                        c["w u^2"] == (N - 2.0) * (N - 3.0) / 2.0 &&
                        std::fabs(s["u^2/r^2"] - c["u^2/r^2"]) < 1e-14 && std::fabs(s["u^2"] - c["u^2"]) < 1e-14 &&
                        std::fabs(s["w u^2"] - c["w u^2"]) < 1e-13;
        }
    }
    return {worst < 1e-6 && constants,
            "max |rel residual| " + sci(worst) + ", lambda = N-2 constants " + (constants ? "match" : "MISMATCH")};
}

Outcome nonradial() {
    double worst_gap = 1e300, worst_acc = 0.0;
    bool ok = true;
    for (int N : {5, 6, 8}) {
        const Dimension d(N);
        for (double l : grid(d, 11)) {
            IdentityRequest req;
            req.id = IdentityId::NonradialHR;
            req.N = N;
            req.lambda = l;
            req.modes = {ModeFunction(make_bump(0.5, 3.0), 0, d), ModeFunction(make_sine_bump(0.7, 2.2), 1, d)};
            const IdentityReport rep = assemble(req);
            const GapAccounting acc = nonradial_gap_accounting(req);
            const double tol = acc.combined_error + 1e-10 * (rep.scale + acc.b_scale);
            ok = ok && rep.residual >= -1e-8 * rep.scale && std::fabs(acc.difference) <= tol;
            worst_gap = std::min(worst_gap, rep.residual / rep.scale);
            worst_acc = std::max(worst_acc, std::fabs(acc.difference) / (rep.scale + acc.b_scale));
        }
    }
    return {ok, "min gap/scale " + sci(worst_gap) + ", max |gap - sum B|/scale " + sci(worst_acc)};
}

Outcome b_nonnegative() {
    double worst = 1e300;
    for (int N : {5, 6, 8}) {
        const Dimension d(N);
        for (double l : grid(d, 11)) {
            const BesselPair pair = canonical_pair(d, l);
            for (int n = 1; n <= 5; ++n)
                for (const auto& a : families()) {
                    const BFunctional b = b_functional(d, pair, ModeFunction(a, n, d), {});
                    worst = std::min(worst, b.value / b.scale);
                }
        }
    }
    return {worst >= -1e-8, "min B/scale " + sci(worst)};
}

Outcome byparts() {
    double worst = 0.0;
    for (int N : {5, 6, 8}) {
        const Dimension d(N);
        for (const auto& pair : {trivial_pair(d), canonical_pair(d, 1.0), gaussian_pair(d), power_pair(d, 1.0, 0.5)})
            for (const auto& a : families())
                for (auto w : {ByPartsIdentity::NradRellich2, ByPartsIdentity::NradRellich3, ByPartsIdentity::NrRellich6,
                               ByPartsIdentity::NrRellich7})
                    worst = std::max(worst, byparts_identity_check(w, d, pair, a, {}).rel_residual);
    }
    return {worst < 1e-7, "max rel residual " + sci(worst)};
}

Outcome hpw() {
    bool ok = true;
    double min_gap = 1e300;
    auto req = [](HpwVariant v, int N, double l, Flavor f) {
        const Dimension d(N);
        HpwRequest r;
        r.variant = v;
        r.N = N;
        r.lambda = l;
        r.flavor = f;
        r.modes = {ModeFunction(make_bump(0.5, 3.0), 0, d)};
        if (f == Flavor::Full) r.modes.emplace_back(make_sine_bump(0.7, 2.2), 1, d);
        return r;
    };
    for (int N : {5, 6, 8}) {
        const Dimension d(N);
        for (double l : grid(d, 11)) {
            const HpwReport plain = hpw_check(req(HpwVariant::Plain, N, l, Flavor::Full));
            const HpwReport improved = hpw_check(req(HpwVariant::Improved, N, l, Flavor::Full));
            ok = ok && plain.passed && improved.rhs_square >= plain.rhs_square && improved.passed;
            min_gap = std::min(min_gap, plain.gap / plain.scale);
        }
        const HpwReport zero = hpw_check(req(HpwVariant::Plain, N, 0.0, Flavor::Full));
        ok = ok && zero.passed && zero.implied_constant == N * N / 4.0;
        const HpwReport s = hpw_check(req(HpwVariant::Stringent, N, 0.0, Flavor::Full));
        ok = ok && s.passed && s.implied_constant >= N * N / 4.0;
        min_gap = std::min(min_gap, s.gap / s.scale);
    }
    for (int N : {2, 3, 5})
        for (double l : grid(Dimension(N), 3))
            for (auto v : {HpwVariant::Plain, HpwVariant::Improved}) ok = ok && hpw_check(req(v, N, l, Flavor::Radial)).passed;
    return {ok, "min gap/scale " + sci(min_gap)};
}

Outcome sharpness() {
    QuadratureOptions q;
    q.max_subdivisions = 20000;
    const std::vector<double> eps{0.4, 0.2, 0.1, 0.05};
    const SharpnessScan hr = sharpness_scan(SharpConstant::HardyRellich, Dimension(5), eps, q);
    const SharpnessScan pg = sharpness_scan(SharpConstant::PoincareGrad, Dimension(3), eps, q);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "one-sided %s/%s; advisory: N^2/4 limit %.3f vs 6.25 (%s 5%% band), ((N-1)/2)^2 limit %.4f vs 1 (%s 10%% band)",
                  hr.one_sided ? "yes" : "NO", pg.one_sided ? "yes" : "NO", hr.extrapolated,
                  hr.within_band ? "inside" : "outside", pg.extrapolated, pg.within_band ? "inside" : "outside");
    return {hr.one_sided && pg.one_sided, buf};
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const int N = 2 + static_cast<int>(unit(rng) * 7);
        const double a = 0.1 + 1.5 * unit(rng), b = a + 0.5 + 3.0 * unit(rng);
        const int fam = static_cast<int>(unit(rng) * 3);
        const RadialProfile u = fam == 0 ? make_bump(a, b) : fam == 1 ? make_polynomial_bridge(a, b) : make_sine_bump(a, b);
        const int which = static_cast<int>(unit(rng) * 3);
        const Dimension d(N);
        std::function<double(double)> f = [&, which](double r) {
            const auto v = u.eval(r);
            const double w = volume_weight(d, r);
            if (which == 0) return v.value * v.value * w;
            if (which == 1) return v.d1 * v.d1 * w / (r * r);
            const double lap = v.d2 + (N - 1) * coth(r) * v.d1;
            return lap * lap * w;
        };
        const QuadratureResult adaptive = integrate_radial(f, u.support(), 1e-12);
        const double fixed = oracle::composite_gl(f, a, b);
        worst = std::max(worst, oracle::rel_diff(adaptive.value, fixed));
    }
    return {worst < 1e-10, "20 seeded integrands, max rel difference " + sci(worst)};
}

Outcome cross() {
    double worst = 0.0;
    bool ok = true;
    for (int N : {2, 3, 5, 6, 8}) {
        const Dimension d(N);
        for (double l : grid(d, 11))
            for (const auto& u : families()) {
                const auto c = cross_consistency(d, l, {radial_mode(u, d)});
                ok = ok && c.passed;
                worst = std::max(worst, c.worst_rel_difference);
            }
    }
    return {ok && worst < 1e-8, "max term-wise rel difference " + sci(worst)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"canonical ODE certificate", ode_certificate},
        {"radial Hardy-Rellich identity sweep", radial_hr_sweep},
        {"coefficient collapse at lambda = 0 and lambda_1", endpoint_collapse},
        {"Rellich / Poincare l=0 equalities and FLLM sub-identities", corollaries_2_5_2_6},
        {"appendix Hardy-Poincare equalities", appendix},
        {"non-radial inequality and B accounting", nonradial},
        {"B functional nonnegativity", b_nonnegative},
        {"integration-by-parts ledger", byparts},
        {"HPW suite", hpw},
        {"sharpness scans", sharpness},
        {"adaptive vs fixed-rule oracle", oracle_equivalence},
        {"cross-consistency with the abstract identity", cross},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s criterion %2zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
