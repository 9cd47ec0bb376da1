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

// Capacity bounds (bits per channel use) for the lossy dephasing channel
// produced by Doppler/delay mode mismatch:
//
//   loss       -log2(1 - eta), averaged over eta for a fading channel
//   dephasing  relative entropy of the phase distribution to uniform
//   combined   min of the two
//
// eta is the modulus of the mode overlap, used in -log2(1 - eta) as is.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pulseamb/ambiguity.hpp"
#include "pulseamb/errors.hpp"
#include "pulseamb/profiles.hpp"

namespace pulseamb {

enum class Binding { Loss, Dephasing, Min };

constexpr std::string_view to_string(Binding b) noexcept {
    switch (b) {
        case Binding::Loss: return "loss";
        case Binding::Dephasing: return "dephasing";
        case Binding::Min: return "min";
    }
    return "unknown";
}

/// Capacity value, or the +infinity sentinel for a lossless channel.
class CapacityBound {
public:
    CapacityBound() = default;
    CapacityBound(double bits, Binding binding) : bits_(bits), binding_(binding) {
        if (!(bits >= 0.0) || std::isinf(bits)) throw invalid_parameter("capacity must be finite and >= 0");
    }
    static CapacityBound infinite(Binding binding) {
        CapacityBound c;
        c.bits_ = std::numeric_limits<double>::infinity();
        c.binding_ = binding;
        c.infinite_ = true;
        return c;
    }

    bool is_infinite() const noexcept { return infinite_; }
    /// +inf for the sentinel; check is_infinite() before doing arithmetic.
    double bits() const noexcept { return bits_; }
    Binding binding() const noexcept { return binding_; }

private:
    double bits_ = 0.0;
    Binding binding_ = Binding::Loss;
    bool infinite_ = false;
};

class PhaseSampleSet {
public:
    PhaseSampleSet() = default;
    explicit PhaseSampleSet(std::vector<double> samples, std::vector<double> weights = {})
        : samples_(std::move(samples)), weights_(std::move(weights)) {
        for (double s : samples_)
            if (!(s >= -std::numbers::pi && s < std::numbers::pi))
                throw invalid_parameter("phase samples must lie in [-pi, pi)");
        if (!weights_.empty()) {
            if (weights_.size() != samples_.size()) throw invalid_parameter("phase weights must match samples");
            for (double w : weights_)
                if (!(w >= 0.0) || !std::isfinite(w)) throw invalid_parameter("phase weights must be finite and >= 0");
        }
    }
    /// Wraps each value into [-pi, pi) first.
    static PhaseSampleSet wrapped(std::vector<double> raw) {
        for (double& x : raw) x = wrap_phase(x);
        return PhaseSampleSet(std::move(raw));
    }

    std::span<const double> samples() const noexcept { return samples_; }
    std::span<const double> weights() const noexcept { return weights_; }
    bool weighted() const noexcept { return !weights_.empty(); }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }

private:
    std::vector<double> samples_;
    std::vector<double> weights_;
};

class TransmissivitySampleSet {
public:
    TransmissivitySampleSet() = default;
    explicit TransmissivitySampleSet(std::vector<double> samples) : samples_(std::move(samples)) {
        for (double s : samples_)
            if (!(s >= 0.0 && s <= 1.0)) throw invalid_parameter("transmissivity samples must lie in [0, 1]");
    }

    std::span<const double> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }

private:
    std::vector<double> samples_;
};

/// A Monte-Carlo capacity estimate with its standard error.
struct CapacityEstimate {
    CapacityBound bound;
    double standard_error = 0.0;
    std::size_t clamped = 0;  ///< samples capped by the eta clamp
};

/// Largest eta fed to -log2(1 - eta) by the fading estimator.
inline constexpr double eta_clamp = 1.0 - 1e-15;
inline constexpr std::size_t default_phase_bins = 1024;

/// Sum in a fixed binary-tree order; the result depends only on the input
/// sequence, never on how the caller scheduled its computation.
inline double pairwise_sum(std::span<const double> x) {
    constexpr std::size_t leaf = 128;
    if (x.size() <= leaf) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    const std::size_t half = x.size() / 2;
    return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

inline CapacityBound plob(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw invalid_parameter("plob: eta must lie in [0, 1]");
    if (eta == 1.0) return CapacityBound::infinite(Binding::Loss);
    return {std::max(0.0, -std::log2(1.0 - eta)), Binding::Loss};
}

/// Plug-in histogram estimate of D(p || uniform) on `bins` equal cells of
/// [-pi, pi). Biased upward by roughly (bins - 1) / (2 N ln 2); the standard
/// error combines the delta-method term with that chi-square spread.
inline CapacityEstimate dephasing_capacity(const PhaseSampleSet& phases, std::size_t bins = default_phase_bins) {
    if (phases.empty()) throw invalid_parameter("dephasing_capacity: empty phase sample set");
    if (bins < 2) throw invalid_parameter("dephasing_capacity: need at least 2 bins");
    const double width = 2.0 * std::numbers::pi / static_cast<double>(bins);
    std::vector<double> mass(bins, 0.0);
    const auto xs = phases.samples();
    const auto ws = phases.weights();
    double total = 0.0;
    double sum_w2 = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        auto k = static_cast<std::size_t>(std::floor((xs[i] + std::numbers::pi) / width));
        k = std::min(k, bins - 1);
        const double w = ws.empty() ? 1.0 : ws[i];
        mass[k] += w;
        total += w;
        sum_w2 += w * w;
    }
    if (!(total > 0.0)) throw invalid_parameter("dephasing_capacity: total weight is zero");
    // Kish effective sample size; equals N for unweighted samples.
    const double n_eff = total * total / sum_w2;

    std::vector<double> terms;
    std::vector<double> terms_sq;
    terms.reserve(bins);
    terms_sq.reserve(bins);
    std::size_t occupied = 0;
    for (double m : mass) {
        if (m <= 0.0) continue;
        ++occupied;
        const double p = m / total;
        const double l = std::log2(p * static_cast<double>(bins));
        terms.push_back(p * l);
        terms_sq.push_back(p * l * l);
    }
    const double d = pairwise_sum(terms);
    const double first_order = std::max(0.0, pairwise_sum(terms_sq) - d * d) / n_eff;
    const double dof = static_cast<double>(occupied > 0 ? occupied - 1 : 0);
    const double second_order = dof / (2.0 * n_eff * n_eff * std::numbers::ln2 * std::numbers::ln2);
    return {CapacityBound(std::max(0.0, d), Binding::Dephasing), std::sqrt(first_order + second_order), 0};
}

/// Average of -log2(1 - eta) over the samples, with eta capped at eta_clamp.
inline CapacityEstimate fading_plob(const TransmissivitySampleSet& etas) {
    if (etas.empty()) throw invalid_parameter("fading_plob: empty transmissivity sample set");
    const auto xs = etas.samples();
    std::vector<double> v(xs.size());
    std::size_t clamped = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double e = xs[i];
        if (e > eta_clamp) {
            e = eta_clamp;
            ++clamped;
        }
        v[i] = -std::log2(1.0 - e);
    }
    const double n = static_cast<double>(v.size());
    const double mean = pairwise_sum(v) / n;
    for (double& x : v) x = (x - mean) * (x - mean);
    const double var = v.size() > 1 ? pairwise_sum(v) / (n - 1.0) : 0.0;
    if (clamped > 0)
        warn("fading_plob: " + std::to_string(clamped) + " transmissivity samples clamped to 1 - 1e-15");
    return {CapacityBound(std::max(0.0, mean), Binding::Loss), std::sqrt(var / n), clamped};
}

/// Pointwise minimum; a tie is tagged Min.
inline CapacityBound min_composition(const CapacityBound& loss, const CapacityBound& deph) {
    if (loss.is_infinite() && deph.is_infinite()) return CapacityBound::infinite(Binding::Min);
    if (loss.is_infinite()) return {deph.bits(), Binding::Dephasing};
    if (deph.is_infinite()) return {loss.bits(), Binding::Loss};
    if (loss.bits() < deph.bits()) return {loss.bits(), Binding::Loss};
    if (deph.bits() < loss.bits()) return {deph.bits(), Binding::Dephasing};
    return {loss.bits(), Binding::Min};
}

/// 1 - |chi| at the systematic offsets; the systematic phase is assumed
/// compensated and does not contribute.
inline double systematic_loss(const SpectralProfile& p, double delta_omega_d, double delta_tau) {
    return std::clamp(1.0 - woodward(p, delta_omega_d, delta_tau).magnitude(), 0.0, 1.0);
}

/// Capacity of the channel with systematic offsets only: plob(|chi|).
inline CapacityBound systematic_capacity(const SpectralProfile& p, double delta_omega_d, double delta_tau) {
    return plob(std::clamp(woodward(p, delta_omega_d, delta_tau).magnitude(), 0.0, 1.0));
}

enum class AsymptoticKind { SystematicDoppler, StochasticDoppler };

inline constexpr double euler_mascheroni = 0.57721566490153286060651209008240243;

/// Small-offset asymptotics of the capacity at zero delay, for a systematic
/// Doppler shift (magnitude = delta_w_D) or a zero-mean normal Doppler
/// fluctuation (magnitude = sigma_w_D).
inline CapacityBound asymptotic_capacity(const SpectralProfile& p, AsymptoticKind kind, double magnitude) {
    const double m = std::abs(magnitude);
    if (m == 0.0) return CapacityBound::infinite(Binding::Loss);
    const double r = m / (2.0 * p.width());
    const double r2 = r * r;
    const double gamma_term = euler_mascheroni / std::numbers::ln2;
    auto loss = [](double bits) { return CapacityBound(std::max(0.0, bits), Binding::Loss); };
    if (kind == AsymptoticKind::SystematicDoppler) {
        switch (p.kind()) {
            case ProfileKind::Gaussian: return loss(-std::log2(0.5 * r2));
            case ProfileKind::DoubleLorentzian: return loss(-std::log2(r2));
            case ProfileKind::SingleLorentzian: return loss(-std::log2(0.5 * r2));
        }
    }
    switch (p.kind()) {
        case ProfileKind::Gaussian: return loss(-std::log2(0.25 * r2) + gamma_term);
        case ProfileKind::DoubleLorentzian: return loss(-std::log2(0.5 * r2) + gamma_term);
        case ProfileKind::SingleLorentzian: {
            const CapacityBound l = loss(-std::log2(0.25 * r2) + gamma_term);
            const CapacityBound d(std::max(0.0, -0.5 * std::log2(std::numbers::e / (2.0 * std::numbers::pi) * r2)),
                                  Binding::Dephasing);
            return min_composition(l, d);
        }
    }
    return {};
}

}  // namespace pulseamb
