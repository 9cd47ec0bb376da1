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

// Balanced homodyne detection of a coherent signal against a local
// oscillator (LO) whose spectral mode overlaps the signal mode by gamma.
//
// The signal decomposes into a component gamma * alpha_S parallel to the LO
// mode and sqrt(1 - |gamma|^2) * alpha_S orthogonal to it. Only the parallel
// part interferes; the orthogonal part adds shot noise at both ports.

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "pulseamb/ambiguity.hpp"
#include "pulseamb/errors.hpp"
#include "pulseamb/profiles.hpp"

namespace pulseamb {

class CoherentAmplitude {
public:
    CoherentAmplitude() = default;
    CoherentAmplitude(double modulus, double phase) : modulus_(modulus), phase_(wrap_phase(phase)) {
        if (!(modulus >= 0.0) || !std::isfinite(modulus))
            throw invalid_parameter("coherent amplitude modulus must be finite and >= 0");
    }

    double modulus() const noexcept { return modulus_; }
    double phase() const noexcept { return phase_; }
    complex value() const { return std::polar(modulus_, phase_); }

private:
    double modulus_ = 0.0;
    double phase_ = 0.0;
};

class OverlapGamma {
public:
    OverlapGamma() = default;
    explicit OverlapGamma(complex value) : value_(value) {
        if (!(std::abs(value) <= 1.0 + 1e-12)) throw invalid_parameter("mode overlap must satisfy |gamma| <= 1");
    }
    explicit OverlapGamma(const AmbiguityValue& chi) : OverlapGamma(chi.value()) {}

    complex value() const noexcept { return value_; }
    double eta() const noexcept { return std::abs(value_); }
    double phase() const noexcept { return std::arg(value_); }

private:
    complex value_{1.0, 0.0};
};

struct HomodyneStats {
    double mean_diff = 0.0;  ///< <n2 - n1>
    double variance = 0.0;
    double snr = 0.0;
    bool degenerate = false;  ///< both inputs vacuum; snr reported as 0
};

struct PortMeans {
    double n1 = 0.0;
    double n2 = 0.0;
};

inline OverlapGamma overlap_from_offsets(const SpectralProfile& p, double omega_d, double tau) {
    return OverlapGamma(woodward(p, omega_d, tau));
}

/// Beamsplitter convention a1' = (a1 + i a2)/sqrt2, a2' = (i a1 + a2)/sqrt2.
inline std::pair<complex, complex> beamsplitter_out(complex a1, complex a2) {
    const complex i{0.0, 1.0};
    return {(a1 + i * a2) / std::numbers::sqrt2, (i * a1 + a2) / std::numbers::sqrt2};
}

/// Mean photon numbers at both output ports, parallel plus orthogonal modes.
inline PortMeans port_means(const CoherentAmplitude& signal, const CoherentAmplitude& lo, const OverlapGamma& gamma) {
    const complex par = gamma.value() * signal.value();
    const complex perp = std::sqrt(std::max(0.0, 1.0 - std::norm(gamma.value()))) * signal.value();
    const auto [p1, p2] = beamsplitter_out(par, lo.value());
    const auto [o1, o2] = beamsplitter_out(perp, complex{});
    return {std::norm(p1) + std::norm(o1), std::norm(p2) + std::norm(o2)};
}

namespace detail {

inline HomodyneStats finish_stats(double mean, double variance) {
    HomodyneStats st{mean, variance, 0.0, variance <= 0.0};
    if (!st.degenerate) st.snr = std::abs(mean) / std::sqrt(variance);
    return st;
}

}  // namespace detail

/// Photon-number difference statistics with mode mismatch gamma.
inline HomodyneStats difference_stats(const CoherentAmplitude& signal, const CoherentAmplitude& lo,
                                      const OverlapGamma& gamma) {
    const double mean =
        2.0 * (gamma.eta() * signal.modulus()) * lo.modulus() * std::sin(lo.phase() - signal.phase() - gamma.phase());
    const double var = signal.modulus() * signal.modulus() + lo.modulus() * lo.modulus();
    return detail::finish_stats(mean, var);
}

/// Same statistics for a mode-matched signal sent through a beamsplitter of
/// amplitude transmissivity eta followed by a phase shift Gamma.
inline HomodyneStats equivalent_channel_stats(const CoherentAmplitude& signal, const CoherentAmplitude& lo,
                                              double eta, double phase) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw invalid_parameter("transmissivity must lie in [0, 1]");
    // Transmitted signal: modulus eta |alpha_S|, phase theta_S + Gamma.
    const double es = eta * signal.modulus();
    const double mean = 2.0 * es * lo.modulus() * std::sin(lo.phase() - signal.phase() - phase);
    const double var = es * es + lo.modulus() * lo.modulus();
    return detail::finish_stats(mean, var);
}

/// Strong-LO limit of the SNR, 2 |alpha_S gamma sin(theta_L - theta_S - Gamma)|.
inline double strong_lo_snr(const CoherentAmplitude& signal, const CoherentAmplitude& lo, const OverlapGamma& gamma) {
    return 2.0 * std::abs(signal.modulus() * gamma.eta() * std::sin(lo.phase() - signal.phase() - gamma.phase()));
}

}  // namespace pulseamb
