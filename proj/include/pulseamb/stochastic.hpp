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

// Monte-Carlo evaluation of capacity bounds under normally distributed
// Doppler and delay fluctuations.
//
// Each sample offset is a pure function of (seed, index). A sample maps to
// eta = |chi| and a phase arg(chi) from which the phase at the systematic
// offsets is subtracted (that rotation is known and undone in
// post-processing). The eta samples feed the fading-loss bound, the phases
// the dephasing bound; the smaller one bounds the channel.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pulseamb/ambiguity.hpp"
#include "pulseamb/capacity.hpp"
#include "pulseamb/errors.hpp"
#include "pulseamb/parallel.hpp"
#include "pulseamb/profiles.hpp"
#include "pulseamb/random.hpp"

namespace pulseamb {

struct FluctuationSpec {
    double delta_tau = 0.0;      ///< systematic delay
    double delta_doppler = 0.0;  ///< systematic carrier shift
    double sigma_tau = 0.0;      ///< delay fluctuation std
    double sigma_doppler = 0.0;  ///< carrier-shift fluctuation std

    void validate() const {
        if (!std::isfinite(delta_tau) || !std::isfinite(delta_doppler))
            throw invalid_parameter("systematic offsets must be finite");
        if (!(sigma_tau >= 0.0) || !std::isfinite(sigma_tau)) throw invalid_parameter("sigma_tau must be finite and >= 0");
        if (!(sigma_doppler >= 0.0) || !std::isfinite(sigma_doppler))
            throw invalid_parameter("sigma_doppler must be finite and >= 0");
    }
};

struct McConfig {
    std::size_t n_samples = 1'000'000;
    std::uint64_t seed = 0;
    std::size_t bins = default_phase_bins;
    std::size_t chunk = 16384;  ///< samples per work unit

    void validate() const {
        if (n_samples < 1) throw invalid_parameter("n_samples must be >= 1");
        if (bins < 2) throw invalid_parameter("bins must be >= 2");
        if (chunk < 1) throw invalid_parameter("chunk must be >= 1");
    }
};

struct McResult {
    CapacityBound capacity;  ///< min of the two bounds below
    double loss_bound = 0.0;
    double dephasing_bound = 0.0;  ///< +inf if every corrected phase is identical
    double eta_mean = 0.0;
    double eta_std = 0.0;
    double phase_std = 0.0;
    double standard_error = 0.0;  ///< of the binding bound
    std::size_t clamped = 0;
    bool phase_degenerate = false;
};

/// Offset of sample `index`: systematic part plus sigma times a standard
/// normal. Counters 2*index and 2*index + 1 drive the Doppler and delay
/// draws respectively.
inline OffsetPoint sample_offsets(const FluctuationSpec& spec, const McConfig& cfg, std::uint64_t index) {
    const double xi_wd = spec.sigma_doppler == 0.0 ? 0.0 : spec.sigma_doppler * rng::standard_normal(cfg.seed, 2 * index);
    const double xi_tau = spec.sigma_tau == 0.0 ? 0.0 : spec.sigma_tau * rng::standard_normal(cfg.seed, 2 * index + 1);
    return OffsetPoint::from_carrier_shift(spec.delta_doppler + xi_wd, spec.delta_tau + xi_tau);
}

namespace detail {

inline double sample_std(std::span<const double> x, double mean) {
    if (x.size() < 2) return 0.0;
    std::vector<double> d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = (x[i] - mean) * (x[i] - mean);
    return std::sqrt(pairwise_sum(d) / static_cast<double>(x.size() - 1));
}

}  // namespace detail

/// Monte-Carlo capacity bound for one fluctuation scenario. `threads` only
/// changes wall time: results are bit-identical for any value.
inline McResult simulate_channel(const SpectralProfile& p, const FluctuationSpec& spec, const McConfig& cfg,
                                 unsigned threads = 1) {
    spec.validate();
    cfg.validate();
    const double systematic_phase = woodward(p, spec.delta_doppler, spec.delta_tau).raw_phase();

    const std::size_t n = cfg.n_samples;
    std::vector<double> eta(n);
    std::vector<double> phase(n);
    const std::size_t chunks = (n + cfg.chunk - 1) / cfg.chunk;
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t end = std::min(n, (c + 1) * cfg.chunk);
        for (std::size_t i = c * cfg.chunk; i < end; ++i) {
            const auto chi = woodward(p, sample_offsets(spec, cfg, i));
            eta[i] = std::clamp(chi.magnitude(), 0.0, 1.0);
            phase[i] = wrap_phase(chi.raw_phase() - systematic_phase);
        }
    });

    McResult r;
    const double nd = static_cast<double>(n);
    r.eta_mean = pairwise_sum(eta) / nd;
    r.eta_std = detail::sample_std(eta, r.eta_mean);
    r.phase_std = detail::sample_std(phase, pairwise_sum(phase) / nd);
    r.phase_degenerate = std::all_of(phase.begin(), phase.end(), [&](double x) { return x == phase.front(); });

    const auto loss = fading_plob(TransmissivitySampleSet(std::move(eta)));
    r.loss_bound = loss.bound.bits();
    r.clamped = loss.clamped;

    // A phase that never fluctuates leaves the dephasing channel as the
    // identity: no finite dephasing bound applies.
    CapacityEstimate deph{CapacityBound::infinite(Binding::Dephasing), 0.0, 0};
    if (!r.phase_degenerate) deph = dephasing_capacity(PhaseSampleSet(std::move(phase)), cfg.bins);
    r.dephasing_bound = deph.bound.bits();

    r.capacity = min_composition(loss.bound, deph.bound);
    switch (r.capacity.binding()) {
        case Binding::Loss: r.standard_error = loss.standard_error; break;
        case Binding::Dephasing: r.standard_error = deph.standard_error; break;
        case Binding::Min: r.standard_error = std::max(loss.standard_error, deph.standard_error); break;
    }
    return r;
}

template <typename T>
struct Grid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> cells;

    Grid() = default;
    Grid(std::size_t r, std::size_t c) : rows(r), cols(c), cells(r * c) {}

    T& at(std::size_t r, std::size_t c) { return cells[r * cols + c]; }
    const T& at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }
};

/// Grid of simulate_channel results with zero systematic offsets; rows
/// follow sigma_tau, columns sigma_doppler. Cell (r, c) uses seed
/// rng::cell_seed(cfg.seed, r, c).
inline Grid<McResult> capacity_grid(const SpectralProfile& p, std::span<const double> sigma_tau_axis,
                                    std::span<const double> sigma_doppler_axis, const McConfig& cfg,
                                    unsigned threads = 1) {
    if (sigma_tau_axis.empty() || sigma_doppler_axis.empty()) throw invalid_parameter("grid axes must be nonempty");
    for (double v : sigma_tau_axis)
        if (!(v >= 0.0)) throw invalid_parameter("sigma_tau axis values must be >= 0");
    for (double v : sigma_doppler_axis)
        if (!(v >= 0.0)) throw invalid_parameter("sigma_doppler axis values must be >= 0");
    cfg.validate();

    Grid<McResult> g(sigma_tau_axis.size(), sigma_doppler_axis.size());
    const std::size_t cells = g.cells.size();
    const unsigned inner = cells < threads ? threads : 1;
    parallel_for(cells, cells < threads ? 1 : threads, [&](std::size_t k) {
        const std::size_t r = k / g.cols;
        const std::size_t c = k % g.cols;
        McConfig cell = cfg;
        cell.seed = rng::cell_seed(cfg.seed, r, c);
        g.cells[k] = simulate_channel(p, {0.0, 0.0, sigma_tau_axis[r], sigma_doppler_axis[c]}, cell, inner);
    });
    return g;
}

enum class RatioFlag { Ok, Clamped, Infinite, ZeroDenominator };

constexpr std::string_view to_string(RatioFlag f) noexcept {
    switch (f) {
        case RatioFlag::Ok: return "ok";
        case RatioFlag::Clamped: return "clamped";
        case RatioFlag::Infinite: return "infinite";
        case RatioFlag::ZeroDenominator: return "zero_denominator";
    }
    return "unknown";
}

struct RatioCell {
    double value = 0.0;  ///< ln(P_A / P_B); nan when undefined
    RatioFlag flag = RatioFlag::Ok;
};

inline RatioCell capacity_log_ratio(const McResult& a, const McResult& b) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    constexpr double inf = std::numeric_limits<double>::infinity();
    const bool ia = a.capacity.is_infinite();
    const bool ib = b.capacity.is_infinite();
    if (ia || ib) return {ia && ib ? nan : (ia ? inf : -inf), RatioFlag::Infinite};
    const double pa = a.capacity.bits();
    const double pb = b.capacity.bits();
    if (pb == 0.0) return {nan, RatioFlag::ZeroDenominator};
    if (pa == 0.0) return {-inf, RatioFlag::Infinite};
    const bool clamped = a.clamped > 0 || b.clamped > 0;
    return {std::log(pa / pb), clamped ? RatioFlag::Clamped : RatioFlag::Ok};
}

inline Grid<RatioCell> ratio_grid(const Grid<McResult>& a, const Grid<McResult>& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw invalid_parameter("ratio_grid: grid shapes differ");
    Grid<RatioCell> g(a.rows, a.cols);
    for (std::size_t k = 0; k < g.cells.size(); ++k) g.cells[k] = capacity_log_ratio(a.cells[k], b.cells[k]);
    return g;
}

/// Elementwise ln(P_A / P_B) over a common fluctuation grid. Both profiles
/// see the same per-cell sample streams.
inline Grid<RatioCell> capacity_ratio_grid(const SpectralProfile& pa, const SpectralProfile& pb,
                                           std::span<const double> sigma_tau_axis,
                                           std::span<const double> sigma_doppler_axis, const McConfig& cfg,
                                           unsigned threads = 1) {
    return ratio_grid(capacity_grid(pa, sigma_tau_axis, sigma_doppler_axis, cfg, threads),
                      capacity_grid(pb, sigma_tau_axis, sigma_doppler_axis, cfg, threads));
}

}  // namespace pulseamb
