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

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "pulseamb/ambiguity.hpp"
#include "pulseamb/homodyne.hpp"
#include "pulseamb/profiles.hpp"
#include "pulseamb/quadrature.hpp"
#include "pulseamb/random.hpp"

namespace pulseamb::cli {

struct CheckResult {
    std::string name;
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

namespace detail {

inline CheckResult check_abs(std::string name, double observed, double expected, double tol) {
    const bool pass = std::abs(observed - expected) <= tol;
    return {std::move(name), observed, expected, tol, pass};
}

/// Integral of |F|^2 over the real line, via w = w0 + width * tan(theta).
inline double spectral_norm(const SpectralProfile& p) {
    const double w = p.width();
    const double h = std::numbers::pi / 2.0;
    auto f = [&](double th) {
        const double c = std::cos(th);
        if (c == 0.0) return 0.0;
        return power_spectral_density(p, p.carrier() + w * std::tan(th)) * w / (c * c);
    };
    const double pts[] = {-h, 0.0, h};
    return integrate_gk15(f, pts, {1e-12, 0.0, 4000}).value.real();
}

inline double temporal_norm(const SpectralProfile& p, double half_window) {
    auto f = [&](double t) { return std::norm(temporal_envelope(p, t)); };
    const double T = half_window / p.bandwidth();
    const double pts[] = {-T, 0.0, T};
    return integrate_gk15(f, pts, {1e-12, 0.0, 4000}).value.real();
}

inline constexpr double oracle_doppler[] = {0.0, 1.0, -1.0, 3.0, -3.0, 6.0, -6.0};
inline constexpr double oracle_delay[] = {0.0, 0.5, -0.5, 2.0, -2.0, 5.0, -5.0};

}  // namespace detail

/// Normwise relative distance between the Woodward closed form and the
/// quadrature of the exact integral over the 7x7 oracle grid, plus the
/// worst pointwise relative error. Offsets in units of the bandwidth.
struct OracleComparison {
    double normwise = 0.0;
    double worst_pointwise = 0.0;
    double worst_exact_vs_quadrature = 0.0;  ///< closed-form exact Q against quadrature, absolute
};

inline OracleComparison compare_oracle(ProfileKind kind, double carrier_ratio = 1e5) {
    const auto p = make_profile(kind, carrier_ratio, 1.0);
    auto amp = [&](double t) { return temporal_amplitude(p, t); };
    OracleComparison out;
    double max_diff = 0.0, max_ref = 0.0;
    for (double wd : detail::oracle_doppler) {
        for (double tau : detail::oracle_delay) {
            const double z = wd / p.carrier();
            const auto q = quadrature_ambiguity(amp, z, tau).value.value();
            const auto chi = woodward(p, wd, tau).value();
            const auto ex = exact_ambiguity(p, z, tau).value();
            const double d = std::abs(q - chi);
            max_diff = std::max(max_diff, d);
            max_ref = std::max(max_ref, std::abs(chi));
            if (std::abs(chi) > 0.0) out.worst_pointwise = std::max(out.worst_pointwise, d / std::abs(chi));
            out.worst_exact_vs_quadrature = std::max(out.worst_exact_vs_quadrature, std::abs(q - ex));
        }
    }
    out.normwise = max_diff / max_ref;
    return out;
}

/// Closed forms against quadrature, asymptotics against the closed forms,
/// normalization, and the homodyne channel identity.
inline std::vector<CheckResult> run_selfcheck() {
    std::vector<CheckResult> out;
    for (auto kind : all_profile_kinds) {
        const std::string k(short_name(kind));
        const auto p = make_profile(kind, 1e5, 1.0);
        out.push_back(detail::check_abs("spectral_norm_" + k, detail::spectral_norm(p), 1.0, 1e-8));
        out.push_back(detail::check_abs("temporal_norm_" + k, detail::temporal_norm(p, 50.0), 1.0, 1e-6));
        out.push_back(detail::check_abs("origin_" + k, std::abs(woodward(p, 0.0, 0.0).value() - 1.0), 0.0, 0.0));

        const auto oc = compare_oracle(kind);
        out.push_back(detail::check_abs("woodward_vs_quadrature_" + k, oc.normwise, 0.0, 1e-4));
        out.push_back(detail::check_abs("exact_vs_quadrature_" + k, oc.worst_exact_vs_quadrature, 0.0, 1e-8));

        for (auto [regime, wd, tol, label] :
             {std::tuple{DopplerRegime::SmallDoppler, 0.01, 0.01, "small"},
              std::tuple{DopplerRegime::LargeDoppler, 50.0, 0.05, "large"}}) {
            const double ref = woodward(p, wd, 0.0).magnitude();
            const double asym = asymptotic_woodward(p, wd, 0.0, regime).magnitude();
            out.push_back(detail::check_abs(std::string("asymptotic_") + label + "_" + k, std::abs(asym - ref) / ref,
                                            0.0, tol));
        }
    }

    // Mode mismatch and the lossy dephasing channel give identical means
    // and a variance gap of (1 - eta^2)|alpha_S|^2.
    double worst_mean = 0.0, worst_var = 0.0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const double u[] = {rng::uniform(7, 6 * i), rng::uniform(7, 6 * i + 1), rng::uniform(7, 6 * i + 2),
                            rng::uniform(7, 6 * i + 3), rng::uniform(7, 6 * i + 4), rng::uniform(7, 6 * i + 5)};
        const CoherentAmplitude sig(10.0 * u[0], 2.0 * std::numbers::pi * u[1]);
        const CoherentAmplitude lo(100.0 * u[2], 2.0 * std::numbers::pi * u[3]);
        const OverlapGamma g(std::polar(u[4], 2.0 * std::numbers::pi * u[5]));
        const auto mm = difference_stats(sig, lo, g);
        const auto ch = equivalent_channel_stats(sig, lo, g.eta(), g.phase());
        const double scale = 2.0 * sig.modulus() * lo.modulus();
        if (scale > 0.0) worst_mean = std::max(worst_mean, std::abs(mm.mean_diff - ch.mean_diff) / scale);
        const double gap = (1.0 - g.eta() * g.eta()) * sig.modulus() * sig.modulus();
        worst_var = std::max(worst_var, std::abs((mm.variance - ch.variance) - gap) / mm.variance);
    }
    out.push_back(detail::check_abs("homodyne_mean_equivalence", worst_mean, 0.0, 1e-12));
    out.push_back(detail::check_abs("homodyne_variance_gap", worst_var, 0.0, 1e-12));
    return out;
}

}  // namespace pulseamb::cli
