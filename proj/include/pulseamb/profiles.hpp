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

// Normalized spectral pulse families sharing a common HWHM bandwidth.
//
// All three families are parameterized by the peak (carrier) frequency and
// the half width at half maximum of the power spectrum. Frequencies are in
// the same angular units as the bandwidth and times in their inverse; the
// default bandwidth of 1 makes every quantity dimensionless.

#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "pulseamb/errors.hpp"

namespace pulseamb {

using complex = std::complex<double>;

enum class ProfileKind { Gaussian, SingleLorentzian, DoubleLorentzian };

inline constexpr std::array<ProfileKind, 3> all_profile_kinds{
    ProfileKind::Gaussian, ProfileKind::DoubleLorentzian, ProfileKind::SingleLorentzian};

constexpr std::string_view to_string(ProfileKind kind) noexcept {
    switch (kind) {
        case ProfileKind::Gaussian: return "gaussian";
        case ProfileKind::SingleLorentzian: return "single_lorentzian";
        case ProfileKind::DoubleLorentzian: return "double_lorentzian";
    }
    return "unknown";
}

/// Short tag used in CSV column names (P_gauss, P_dl, P_sl).
constexpr std::string_view short_name(ProfileKind kind) noexcept {
    switch (kind) {
        case ProfileKind::Gaussian: return "gauss";
        case ProfileKind::SingleLorentzian: return "sl";
        case ProfileKind::DoubleLorentzian: return "dl";
    }
    return "unknown";
}

inline std::optional<ProfileKind> parse_profile_kind(std::string_view name) noexcept {
    for (auto k : all_profile_kinds)
        if (name == to_string(k) || name == short_name(k)) return k;
    return std::nullopt;
}

/// Carrier ratios below this trigger the narrowband warning.
inline constexpr double narrowband_threshold = 100.0;

class SpectralProfile {
public:
    ProfileKind kind() const noexcept { return kind_; }
    /// Peak frequency in units of bandwidth.
    double carrier_ratio() const noexcept { return carrier_ratio_; }
    /// HWHM of the power spectrum.
    double bandwidth() const noexcept { return bandwidth_; }
    /// Peak angular frequency.
    double carrier() const noexcept { return carrier_ratio_ * bandwidth_; }
    /// Family-specific width: sigma (Gaussian), s (double-sided), bandwidth
    /// (single-sided).
    double width() const noexcept { return width_; }

    bool is_narrowband() const noexcept { return carrier_ratio_ >= narrowband_threshold; }

    friend SpectralProfile make_profile(ProfileKind, double, double);

private:
    SpectralProfile(ProfileKind kind, double ratio, double bw, double width)
        : kind_(kind), carrier_ratio_(ratio), bandwidth_(bw), width_(width) {}

    ProfileKind kind_;
    double carrier_ratio_;
    double bandwidth_;
    double width_;
};

inline SpectralProfile make_profile(ProfileKind kind, double carrier_ratio, double bandwidth = 1.0) {
    if (!(carrier_ratio > 0.0) || !std::isfinite(carrier_ratio))
        throw invalid_parameter("carrier_ratio must be positive and finite");
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
        throw invalid_parameter("bandwidth must be positive and finite");
    double width = bandwidth;
    switch (kind) {
        case ProfileKind::Gaussian: width = bandwidth / std::sqrt(std::log(4.0)); break;
        case ProfileKind::DoubleLorentzian: width = bandwidth / std::sqrt(std::numbers::sqrt2 - 1.0); break;
        case ProfileKind::SingleLorentzian: break;
    }
    return SpectralProfile(kind, carrier_ratio, bandwidth, width);
}

namespace detail {

// One warning per process per kind of check; sweeps call these millions of times.
inline void check_narrowband(const SpectralProfile& p) {
    static std::atomic<bool> warned{false};
    if (!p.is_narrowband() && !warned.exchange(true)) {
        warn("carrier_ratio " + std::to_string(p.carrier_ratio()) +
             " < 100: the Fourier pairing of spectral and temporal amplitudes assumes a "
             "narrowband pulse");
    }
}

}  // namespace detail

inline complex spectral_amplitude(const SpectralProfile& p, double omega) {
    const double x = omega - p.carrier();
    const double w = p.width();
    switch (p.kind()) {
        case ProfileKind::Gaussian:
            return {std::pow(2.0 * std::numbers::pi * w * w, -0.25) * std::exp(-x * x / (4.0 * w * w)), 0.0};
        case ProfileKind::DoubleLorentzian:
            return {std::sqrt(2.0 * w / std::numbers::pi) * w / (w * w + x * x), 0.0};
        case ProfileKind::SingleLorentzian:
            return std::sqrt(w / std::numbers::pi) / complex(w, x);
    }
    return {};
}

inline double power_spectral_density(const SpectralProfile& p, double omega) {
    return std::norm(spectral_amplitude(p, omega));
}

/// Temporal amplitude with the carrier removed (baseband frame).
inline complex temporal_envelope(const SpectralProfile& p, double t) {
    const double w = p.width();
    switch (p.kind()) {
        case ProfileKind::Gaussian:
            // Fourier transform of the Gaussian spectral amplitude.
            return {std::pow(2.0 * w * w / std::numbers::pi, 0.25) * std::exp(-w * w * t * t), 0.0};
        case ProfileKind::DoubleLorentzian:
            return {std::sqrt(w) * std::exp(-w * std::abs(t)), 0.0};
        case ProfileKind::SingleLorentzian:
            // Right-continuous at t = 0.
            return t < 0.0 ? complex{} : complex{std::sqrt(2.0 * w) * std::exp(-w * t), 0.0};
    }
    return {};
}

inline complex temporal_amplitude(const SpectralProfile& p, double t) {
    detail::check_narrowband(p);
    return temporal_envelope(p, t) * std::polar(1.0, p.carrier() * t);
}

}  // namespace pulseamb
