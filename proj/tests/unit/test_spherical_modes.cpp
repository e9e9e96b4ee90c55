#include <cmath>

#include "doctest.h"
#include "hypbessel/errors.hpp"
#include "hypbessel/identities.hpp"
#include "hypbessel/radial_terms.hpp"
#include "hypbessel/spherical_modes.hpp"
#include "oracles.hpp"

using namespace hypbessel;

TEST_CASE("spectrum") {
    const auto s5 = mode_spectrum(Dimension(5), 6);
    CHECK(s5.entries[0].eigenvalue == 0.0);
    CHECK(s5.entries[0].multiplicity == 1);
    CHECK(s5.entries[1].eigenvalue == 4.0);
    CHECK(s5.entries[1].multiplicity == 5);
    for (size_t n = 1; n < s5.entries.size(); ++n) CHECK(s5.entries[n].eigenvalue >= 4.0);
    const auto s4 = mode_spectrum(Dimension(4), 2);
    CHECK(s4.entries[2].eigenvalue == 8.0);
    CHECK(s4.entries[2].multiplicity == 9);
    // N = 3: 2n + 1.
    for (int n = 0; n < 10; ++n) CHECK(mode_multiplicity(Dimension(3), n) == static_cast<std::uint64_t>(2 * n + 1));
    CHECK_THROWS_AS(mode_spectrum(Dimension(5), -1), ParameterError);
    CHECK_THROWS_AS(mode_multiplicity(Dimension(64), 100000), RangeError);
}

TEST_CASE("mode laplacian integral") {
    const Dimension N5(5);
    const RadialProfile a = make_bump(0.5, 3.0);
    const BesselPair one = trivial_pair(N5);

    const auto radial = mode_laplacian_sq_integral(N5, one, ModeFunction(a, 0, N5), {});
    const IdentityReport rep = assemble(IdentityId::RadialHR, N5, a, 0.0);
    CHECK(std::fabs(radial.value - rep.lhs) <= 1e-10 * std::fabs(rep.lhs));

    const ModeFunction m1(a, 1, N5);
    const auto expanded = mode_laplacian_sq_integral(N5, one, m1, {});
    const auto direct = integrate_mode(
        m1,
        [](const ModeSample& s) {
            const double d = s.radial_laplacian() - s.eigenvalue * s.a / (s.sinh * s.sinh);
            return d * d * s.vol;
        },
        {});
    CHECK(expanded.value >= 0.0);
    CHECK(oracle::rel_diff(expanded.value, direct.value) < 1e-8);
}

TEST_CASE("B functional") {
    const Dimension N5(5);
    const RadialProfile a = make_bump(0.5, 3.0);
    const BesselPair c = canonical_pair(N5, 0.0);
    CHECK(b_functional(N5, c, ModeFunction(a, 0, N5), {}).value == 0.0);
    const BFunctional b = b_functional(N5, c, ModeFunction(a, 1, N5), {});
    CHECK(b.value >= -1e-8 * b.scale);
    CHECK(std::fabs(b.value - b.reduced) <= 1e-8 * b.scale);
    CHECK(b.value >= b.lower_bound - 1e-8 * b.scale);
    // n = 1 is the marginal case: lambda_1 = N - 1, nothing is discarded.
    CHECK(b.discarded == 0.0);
    CHECK_THROWS_AS(b_functional(Dimension(4), canonical_pair(Dimension(4), 0.0), ModeFunction(a, 1, Dimension(4)), {}),
                    DimensionError);

    for (int N : {5, 6, 8}) {
        const Dimension d(N);
        for (int i = 0; i <= 4; ++i) {
            const BesselPair pair = canonical_pair(d, lambda_one(d) * i / 4.0);
            for (int n = 1; n <= 5; ++n) {
                const BFunctional bn = b_functional(d, pair, ModeFunction(make_sine_bump(0.3, 2.0), n, d), {});
                CAPTURE(N);
                CAPTURE(n);
                CHECK(bn.value >= -1e-8 * bn.scale);
                CHECK(std::fabs(bn.value - bn.reduced) <= 1e-8 * bn.scale);
                CHECK(bn.discarded >= 0.0);
            }
        }
    }
}

TEST_CASE("by-parts identities") {
    const std::vector<RadialProfile> profiles{make_bump(0.5, 3.0), make_polynomial_bridge(0.4, 2.0),
                                              make_sine_bump(1.0, 4.0)};
    for (int N : {5, 6, 8}) {
        const Dimension d(N);
        for (const auto& pair : {trivial_pair(d), canonical_pair(d, 1.0), gaussian_pair(d), power_pair(d, 1.0, 0.5)})
            for (const auto& a : profiles)
                for (auto which : {ByPartsIdentity::NradRellich2, ByPartsIdentity::NradRellich3,
                                   ByPartsIdentity::NrRellich6, ByPartsIdentity::NrRellich7}) {
                    const ByPartsCheck chk = byparts_identity_check(which, d, pair, a, {});
                    CAPTURE(to_string(which));
                    CAPTURE(pair.name());
                    CHECK(chk.rel_residual < 1e-8);
                }
    }
    // nr_rellich_7 with V = 1: the V' term drops and the rest is two explicit integrals.
    const Dimension N5(5);
    const RadialProfile a = make_bump(0.5, 3.0);
    const auto chk = byparts_identity_check(ByPartsIdentity::NrRellich7, N5, trivial_pair(N5), a, {});
    CHECK(chk.rhs_terms[0] == 0.0);

    // a = 0 on its whole support gives zero on both sides.
    const RadialProfile zero = make_bump(0.5, 3.0, 0.0);
    const auto z = byparts_identity_check(ByPartsIdentity::NradRellich2, N5, trivial_pair(N5), zero, {});
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
    CHECK(byparts_identity_from_string("nr_rellich_6") == ByPartsIdentity::NrRellich6);
    CHECK_THROWS_AS(byparts_identity_from_string("x"), ParameterError);
}
