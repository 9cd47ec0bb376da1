// Copyright 2026 The pulseamb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "pulseamb/ambiguity.hpp"
#include "pulseamb/cli/selfcheck.hpp"
#include "pulseamb/random.hpp"

using namespace pulseamb;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr auto gauss = ProfileKind::Gaussian;
constexpr auto dl = ProfileKind::DoubleLorentzian;
constexpr auto sl = ProfileKind::SingleLorentzian;

struct Ref {
    ProfileKind kind;
    double a, b;  // (w_D, tau) or (z, tau)
    complex value;
};

// Direct numerical integration of the definitions (tests/oracle/derive_values.py).
const Ref woodward_refs[] = {
    {gauss, 0, 0, {1, 0}},
    {gauss, 1.5, 0, {0.67712777346844644, 0}},
    {gauss, 0, 0.8, {-0.1155086145964194, -0.78542524984790874}},
    {gauss, 2, -1.3, {0.17601720267557375, -0.20710774740470134}},
    {gauss, -3, 0.4, {-0.022255091959915624, 0.19718400708358341}},
    {gauss, 5, 2, {-0.0023585400119104172, -0.0020188946859740252}},
    {dl, 0, 0, {1, 0}},
    {dl, 1.5, 0, {0.81103321222766112, 0}},
    {dl, 0, 0.8, {-0.094158538930647795, -0.64025089577353966}},
    {dl, 2, -1.3, {0.10720473767966404, -0.12614069190083924}},
    {dl, -3, 0.4, {-0.043971881309689126, 0.38959855889452527}},
    {dl, 5, 2, {0.0029558913295711937, 0.0025302234719156462}},
    {sl, 0, 0, {1, 0}},
    {sl, 1.5, 0, {0.64000000000000024, -0.48000000000000009}},
    {sl, 0, 0.8, {-0.065377379470245051, -0.44454731609611481}},
    {sl, 2, -1.3, {-0.18924753874071276, -0.03636149320021588}},
    {sl, -3, 0.4, {-0.36895392223699819, -0.046130999860800076}},
    {sl, 5, 2, {-0.034987083972077712, -0.036085994156549603}},
};

// Exact Q at carrier_ratio 3, far from narrowband.
const Ref exact_refs[] = {
    {gauss, 0, 0, {1, 0}},
    {gauss, 0.3, 0, {0.88570311899072784, 0}},
    {gauss, 0.2, 0.7, {-0.25849768056594519, -0.77318377492865364}},
    {gauss, -0.25, -0.9, {-0.59093216157475092, 0.06981136259496909}},
    {gauss, 0.5, 2, {-0.03012688397009685, 0.30959769885154981}},
    {gauss, 1e-07, 0.5, {0.064638114954311696, -0.91148823472057261}},
    {dl, 0, 0, {1, 0}},
    {dl, 0.3, 0, {0.9323250997649537, 0}},
    {dl, 0.2, 0.7, {-0.23270965053262818, -0.66722179990914121}},
    {dl, -0.25, -0.9, {-0.45264522572757315, 0.035995309109982068}},
    {dl, 0.5, 2, {-0.012472102452733339, 0.19357726179705262}},
    {dl, 1e-07, 0.5, {0.057797681481680047, -0.81502851223180339}},
    {sl, 0, 0, {1, 0}},
    {sl, 0.3, 0, {0.85980441892721915, -0.33644520740630318}},
    {sl, 0.2, 0.7, {-0.34073921210972147, -0.33395322433864194}},
    {sl, -0.25, -0.9, {-0.17808293275303136, -0.20823879543034898}},
    {sl, 0.5, 2, {0.10996320176182825, -0.028927159084293903}},
    {sl, 1e-07, 0.5, {0.0429041908420471, -0.60501129872062931}},
};

double bisect(auto f, double lo, double hi) {
    const bool up = f(lo) < 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((f(mid) < 0.0) == up ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("wrap_phase maps into [-pi, pi)", "[ambiguity]") {
    constexpr double pi = std::numbers::pi;
    CHECK(wrap_phase(pi) == -pi);
    CHECK(wrap_phase(-pi) == -pi);
    CHECK(wrap_phase(0.0) == 0.0);
    CHECK_THAT(wrap_phase(3 * pi + 0.25), WithinAbs(-pi + 0.25, 1e-12));
    for (std::uint64_t i = 0; i < 2000; ++i) {
        const double x = (rng::uniform(3, i) - 0.5) * 1e6;
        const double w = wrap_phase(x);
        CHECK(w >= -pi);
        CHECK(w < pi);
        CHECK_THAT(std::remainder(x - w, 2 * pi), WithinAbs(0.0, 1e-9));
    }
}

TEST_CASE("Woodward closed forms match direct integration", "[ambiguity][oracle]") {
    for (const auto& r : woodward_refs) {
        const auto p = make_profile(r.kind, 10.0);
        const complex got = woodward(p, r.a, r.b).value();
        INFO(to_string(r.kind) << " wd=" << r.a << " tau=" << r.b);
        CHECK_THAT(std::abs(got - r.value), WithinAbs(0.0, 1e-9));
    }
}

TEST_CASE("exact Q closed forms match direct integration", "[ambiguity][oracle]") {
    for (const auto& r : exact_refs) {
        const auto p = make_profile(r.kind, 3.0);
        const complex got = exact_ambiguity(p, r.a, r.b).value();
        INFO(to_string(r.kind) << " z=" << r.a << " tau=" << r.b);
        CHECK_THAT(std::abs(got - r.value), WithinAbs(0.0, 1e-9));
    }
}

TEST_CASE("exact Q matches the quadrature oracle far from narrowband", "[ambiguity][oracle]") {
    for (auto k : all_profile_kinds) {
        const auto p = make_profile(k, 3.0);
        auto amp = [&](double t) { return temporal_envelope(p, t) * std::polar(1.0, p.carrier() * t); };
        for (double z : {-0.6, -0.1, 0.0, 1e-9, 0.4, 2.0})
            for (double tau : {-3.0, -0.2, 0.0, 0.9, 4.0}) {
                const auto q = quadrature_ambiguity(amp, z, tau);
                INFO(to_string(k) << " z=" << z << " tau=" << tau);
                CHECK_THAT(std::abs(q.value.value() - exact_ambiguity(p, z, tau).value()), WithinAbs(0.0, 1e-9));
                CHECK(q.error <= 1e-10);
            }
    }
}

TEST_CASE("zero offset gives exactly one", "[ambiguity]") {
    for (auto k : all_profile_kinds) {
        const auto p = make_profile(k, 1e5);
        CHECK(woodward(p, 0.0, 0.0).value() == complex(1.0, 0.0));
        CHECK(exact_ambiguity(p, 0.0, 0.0).value() == complex(1.0, 0.0));
        CHECK(woodward(p, OffsetPoint{}).value() == complex(1.0, 0.0));
        auto amp = [&](double t) { return temporal_amplitude(p, t); };
        CHECK_THAT(std::abs(quadrature_ambiguity(amp, 0.0, 0.0).value.value() - 1.0), WithinAbs(0.0, 1e-9));
    }
}

TEST_CASE("pure Doppler overlaps at w_D = 5 bandwidths", "[ambiguity]") {
    CHECK_THAT(woodward(make_profile(sl, 1e5), 5.0, 0.0).magnitude(), WithinAbs(0.37139067635410383, 1e-12));
    CHECK_THAT(woodward(make_profile(dl, 1e5), 5.0, 0.0).magnitude(), WithinAbs(0.27864197309927019, 1e-12));
    CHECK_THAT(woodward(make_profile(gauss, 1e5), 5.0, 0.0).magnitude(), WithinAbs(0.013139006488339282, 1e-12));
    // about 38% and 30%, within two points
    CHECK(std::abs(woodward(make_profile(sl, 1e5), 5.0, 0.0).magnitude() - 0.38) <= 0.02);
    CHECK(std::abs(woodward(make_profile(dl, 1e5), 5.0, 0.0).magnitude() - 0.30) <= 0.03);
}

TEST_CASE("Gaussian beats double-sided Lorentzian only for short delays", "[ambiguity]") {
    const auto g = make_profile(gauss, 1e5);
    const auto d = make_profile(dl, 1e5);
    auto diff = [&](double tau) { return woodward(g, 0.0, tau).magnitude() - woodward(d, 0.0, tau).magnitude(); };
    for (double tau = 0.01; tau <= 2.5; tau += 0.01) CHECK(diff(tau) > 0.0);
    for (double tau = 3.0; tau <= 12.0; tau += 0.05) CHECK(diff(tau) < 0.0);
    CHECK_THAT(bisect(diff, 2.5, 3.0), WithinAbs(2.57474612450134, 1e-9));
}

TEST_CASE("Lorentzian Doppler curves cross at two bandwidths", "[ambiguity]") {
    const auto s = make_profile(sl, 1e5);
    const auto d = make_profile(dl, 1e5);
    auto diff = [&](double wd) { return woodward(s, wd, 0.0).magnitude() - woodward(d, wd, 0.0).magnitude(); };
    CHECK_THAT(bisect(diff, 1.0, 3.0), WithinAbs(2.0, 1e-9));
    // Gaussian most Doppler sensitive beyond that
    for (double wd = 2.0; wd <= 20.0; wd += 0.25) {
        CHECK(woodward(make_profile(gauss, 1e5), wd, 0.0).magnitude() < woodward(d, wd, 0.0).magnitude());
        CHECK(woodward(d, wd, 0.0).magnitude() <= woodward(s, wd, 0.0).magnitude() + 1e-15);
    }
}

TEST_CASE("magnitude bounded by one and symmetric under a full sign flip", "[ambiguity][property]") {
    for (auto k : all_profile_kinds) {
        const auto p = make_profile(k, 1e5);
        for (std::uint64_t i = 0; i < 3000; ++i) {
            const double wd = 40.0 * (rng::uniform(11, 2 * i) - 0.5);
            const double tau = 20.0 * (rng::uniform(11, 2 * i + 1) - 0.5);
            const double m = woodward(p, wd, tau).magnitude();
            CHECK(m >= 0.0);
            CHECK(m <= 1.0 + 1e-15);
            CHECK_THAT(woodward(p, -wd, -tau).magnitude(), WithinAbs(m, 1e-13));
            if (k != sl) CHECK_THAT(woodward(p, -wd, tau).magnitude(), WithinAbs(m, 1e-13));
            const double ph = woodward(p, wd, tau).phase();
            CHECK(ph >= -std::numbers::pi);
            CHECK(ph < std::numbers::pi);
        }
    }
}

TEST_CASE("double-sided bracket is continuous across the series switch", "[ambiguity]") {
    const auto p = make_profile(dl, 1e5);
    const double tau = 2.0;
    for (double a : {0.999e-6, 1.001e-6, 1e-8, 5e-7}) {
        const double wd = a / tau;
        const double series = detail::dl_bracket(p.width(), wd, tau);
        const double direct = std::cos(0.5 * wd * tau) + p.width() * tau * std::sin(0.5 * wd * tau) / (0.5 * wd * tau);
        CHECK_THAT(series, WithinRel(direct, 1e-13));
    }
    CHECK(detail::dl_bracket(p.width(), 0.0, tau) == 1.0 + p.width() * tau);
}

TEST_CASE("offset points", "[ambiguity]") {
    const auto p = make_profile(gauss, 1e5, 2.0);
    const auto o = OffsetPoint::from_relative_shift(1e-5, 0.3, p);
    CHECK(o.doppler_shift == 1e-5 * 2e5);
    CHECK(o.relative_shift == 1e-5);
    CHECK_FALSE(OffsetPoint::from_carrier_shift(1.0, 0.0).relative_shift.has_value());
    CHECK_THROWS_AS(OffsetPoint::from_relative_shift(-1.0, 0.0, p), invalid_parameter);
    CHECK_THROWS_AS(exact_ambiguity(p, -1.0, 0.0), invalid_parameter);
    CHECK_THROWS_AS(exact_ambiguity(p, -2.0, 0.0), invalid_parameter);
}

TEST_CASE("exact Q approaches Woodward in the narrowband limit", "[ambiguity]") {
    const auto p = make_profile(dl, 1e5);
    const double z = 1e-5;
    const auto chi = woodward(p, z * p.carrier(), 0.0);
    CHECK_THAT(exact_ambiguity(p, z, 0.0).magnitude(), WithinRel(chi.magnitude(), 1e-4));

    for (auto k : all_profile_kinds) {
        double prev = INFINITY;
        for (double ratio : {1e2, 1e3, 1e4, 1e5}) {
            const auto q = make_profile(k, ratio);
            const double wd = 2.0, tau = 0.7;
            const double err = std::abs(exact_ambiguity(q, wd / q.carrier(), tau).value() - woodward(q, wd, tau).value());
            CHECK(err < prev);
            prev = err;
        }
        CHECK(prev < 1e-4);
    }
}

TEST_CASE("Woodward agrees with quadrature of the exact integral on the offset grid", "[ambiguity][oracle]") {
    for (auto k : all_profile_kinds) {
        const auto c = cli::compare_oracle(k, 1e5);
        INFO(to_string(k) << " normwise " << c.normwise << " pointwise " << c.worst_pointwise);
        CHECK(c.normwise <= 1e-4);
        CHECK(c.worst_exact_vs_quadrature <= 1e-8);
        // pointwise error at the far edges is genuine narrowband error
        CHECK(c.worst_pointwise < 5e-3);
    }
}

TEST_CASE("quadrature accepts generic amplitudes", "[ambiguity]") {
    // unit rectangle: Q(0, tau) = 1 - |tau|
    auto rect = [](double t) { return complex(t >= 0.0 && t < 1.0 ? 1.0 : 0.0, 0.0); };
    QuadratureConfig cfg;
    cfg.half_width = 3.0;
    cfg.breakpoints = {0.0, 1.0};
    for (double tau : {0.0, 0.25, -0.6, 0.9}) {
        const auto q = quadrature_ambiguity(rect, 0.0, tau, cfg);
        CHECK_THAT(q.value.magnitude(), WithinAbs(1.0 - std::abs(tau), 1e-10));
    }
}

TEST_CASE("quadrature failures carry the best estimate", "[ambiguity]") {
    const auto p = make_profile(gauss, 1e5);
    auto amp = [&](double t) { return temporal_amplitude(p, t); };
    QuadratureConfig cfg;
    cfg.max_subdivisions = 2;
    cfg.tolerance = 1e-15;
    try {
        (void)quadrature_ambiguity(amp, 1e-5, 0.5, cfg);
        FAIL("expected quadrature_failure");
    } catch (const quadrature_failure& e) {
        CHECK(std::isfinite(e.best_estimate().real()));
        CHECK(e.achieved_error() > 1e-15);
    }
    // a window too short for the tails
    QuadratureConfig narrow;
    narrow.half_width = 2.0;
    CHECK_THROWS_AS(quadrature_ambiguity(amp, 0.0, 0.0, narrow), quadrature_failure);
    CHECK_THROWS_AS(quadrature_ambiguity(amp, -1.0, 0.0), invalid_parameter);
}

TEST_CASE("asymptotic forms agree with the closed forms in their regimes", "[ambiguity]") {
    for (auto k : all_profile_kinds) {
        const auto p = make_profile(k, 1e5);
        const double small = woodward(p, 0.01, 0.0).magnitude();
        const double large = woodward(p, 50.0, 0.0).magnitude();
        CHECK_THAT(asymptotic_woodward(p, 0.01, 0.0, DopplerRegime::SmallDoppler).magnitude(), WithinRel(small, 0.01));
        CHECK_THAT(asymptotic_woodward(p, 50.0, 0.0, DopplerRegime::LargeDoppler).magnitude(), WithinRel(large, 0.05));
        for (double tau : {-1.0, 0.5, 3.0}) {
            const auto w = woodward(p, 0.01, tau);
            const auto a = asymptotic_woodward(p, 0.01, tau, DopplerRegime::SmallDoppler);
            CHECK_THAT(a.magnitude(), WithinRel(w.magnitude(), 0.01));
            CHECK_THAT(std::abs(a.value() - w.value()), WithinAbs(0.0, 0.01 * w.magnitude()));
        }
        CHECK_THROWS_AS(asymptotic_woodward(p, 0.0, 0.0, DopplerRegime::LargeDoppler), invalid_parameter);
    }
}
