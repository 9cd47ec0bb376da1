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

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "pulseamb/ambiguity.hpp"
#include "pulseamb/capacity.hpp"
#include "pulseamb/homodyne.hpp"
#include "pulseamb/stochastic.hpp"
#include "pulseamb/cli/csv.hpp"
#include "pulseamb/cli/scenario.hpp"

namespace pulseamb::cli {

namespace detail {

inline const Axis& require_axis(const std::optional<Axis>& a, const char* key) {
    if (!a) throw scenario_error(std::string("/") + key + ": required by this command");
    return *a;
}

inline std::vector<std::pair<ProfileKind, ProfileKind>> profile_pairs(const std::vector<ProfileKind>& ks) {
    std::vector<std::pair<ProfileKind, ProfileKind>> v;
    for (std::size_t i = 0; i < ks.size(); ++i)
        for (std::size_t j = i + 1; j < ks.size(); ++j) v.emplace_back(ks[i], ks[j]);
    return v;
}

inline std::string pair_name(std::pair<ProfileKind, ProfileKind> pr) {
    return std::string(short_name(pr.first)) + "_" + std::string(short_name(pr.second));
}

/// ln(a/b) with the infinity sentinel: inf/finite -> inf, finite/inf -> -inf,
/// inf/inf and x/0 -> nan.
inline double log_ratio(const CapacityBound& a, const CapacityBound& b) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (a.is_infinite() && b.is_infinite()) return nan;
    if (a.is_infinite()) return inf;
    if (b.is_infinite()) return -inf;
    if (b.bits() == 0.0) return nan;
    if (a.bits() == 0.0) return -inf;
    return std::log(a.bits() / b.bits());
}

inline Table::Cell bits_cell(const CapacityBound& c) {
    return c.is_infinite() ? Table::Cell("inf") : Table::Cell(c.bits());
}

}  // namespace detail

/// |chi| and arg chi on the Doppler x delay grid, one table per profile,
/// plus |chi_a| - |chi_b| for every profile pair.
inline std::vector<Table> cmd_ambiguity(const Scenario& s) {
    const auto wd = detail::require_axis(s.doppler_axis, "doppler_axis").values();
    const auto tau = detail::require_axis(s.delay_axis, "delay_axis").values();
    const double bw = s.bandwidth;
    std::vector<Table> out;
    std::vector<std::vector<double>> mags;
    for (auto kind : s.profiles) {
        const auto p = s.profile(kind);
        Table t("ambiguity_" + std::string(short_name(kind)) + ".csv",
                {"omega_d_over_bw", "tau_times_bw", "chi_abs", "chi_phase"});
        auto& m = mags.emplace_back();
        for (double x : wd) {
            for (double y : tau) {
                const auto chi = woodward(p, x * bw, y / bw);
                m.push_back(chi.magnitude());
                t.add_row({x, y, chi.magnitude(), chi.phase()});
            }
        }
        out.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < s.profiles.size(); ++i) {
        for (std::size_t j = i + 1; j < s.profiles.size(); ++j) {
            Table t("ambiguity_diff_" + detail::pair_name({s.profiles[i], s.profiles[j]}) + ".csv",
                    {"omega_d_over_bw", "tau_times_bw", "chi_abs_diff"});
            std::size_t k = 0;
            for (double x : wd)
                for (double y : tau) {
                    t.add_row({x, y, mags[i][k] - mags[j][k]});
                    ++k;
                }
            out.push_back(std::move(t));
        }
    }
    return out;
}

/// PLOB bound for a constant Doppler shift and no residual delay.
inline std::vector<Table> cmd_capacity_systematic(const Scenario& s) {
    const auto wd = detail::require_axis(s.doppler_axis, "doppler_axis").values();
    const auto pairs = detail::profile_pairs(s.profiles);
    std::vector<std::string> cols{"delta_omega_d_over_bw"};
    for (auto k : s.profiles) cols.push_back("P_" + std::string(short_name(k)));
    for (auto pr : pairs) cols.push_back("log_ratio_" + detail::pair_name(pr));
    Table t("capacity_systematic.csv", cols);
    std::vector<SpectralProfile> ps;
    for (auto k : s.profiles) ps.push_back(s.profile(k));
    for (double x : wd) {
        std::vector<CapacityBound> caps;
        for (const auto& p : ps) caps.push_back(systematic_capacity(p, x * s.bandwidth, 0.0));
        std::vector<Table::Cell> row{x};
        for (const auto& c : caps) row.push_back(detail::bits_cell(c));
        for (std::size_t i = 0; i < caps.size(); ++i)
            for (std::size_t j = i + 1; j < caps.size(); ++j) row.emplace_back(detail::log_ratio(caps[i], caps[j]));
        t.add_row(row);
    }
    return {std::move(t)};
}

/// Monte-Carlo capacity grids over the fluctuation axes, their pairwise
/// log-ratio matrices, and a slice at slice_sigma_tau along the Doppler
/// axis.
inline std::vector<Table> cmd_capacity_stochastic(const Scenario& s, unsigned threads = 1) {
    const auto st = detail::require_axis(s.sigma_tau_axis, "sigma_tau_axis").values();
    const auto sw = detail::require_axis(s.sigma_doppler_axis, "sigma_doppler_axis").values();
    const auto cfg = s.mc_config();
    const double bw = s.bandwidth;
    std::vector<double> st_abs, sw_abs;
    for (double v : st) st_abs.push_back(v / bw);
    for (double v : sw) sw_abs.push_back(v * bw);
    const double slice_tau[] = {s.slice_sigma_tau / bw};

    std::vector<Table> out;
    std::vector<Grid<McResult>> grids, slices;
    for (auto kind : s.profiles) {
        const auto p = s.profile(kind);
        grids.push_back(capacity_grid(p, st_abs, sw_abs, cfg, threads));
        slices.push_back(capacity_grid(p, slice_tau, sw_abs, cfg, threads));
        Table t("capacity_stochastic_" + std::string(short_name(kind)) + ".csv",
                {"sigma_tau_times_bw", "sigma_wd_over_bw", "cap_bound_bits", "binding_tag", "loss_bound",
                 "deph_bound", "stderr"});
        const auto& g = grids.back();
        for (std::size_t r = 0; r < g.rows; ++r)
            for (std::size_t c = 0; c < g.cols; ++c) {
                const auto& m = g.at(r, c);
                t.add_row({st[r], sw[c], detail::bits_cell(m.capacity), to_string(m.capacity.binding()),
                           m.loss_bound, m.dephasing_bound, m.standard_error});
            }
        out.push_back(std::move(t));
    }

    std::vector<std::string> matrix_cols{"sigma_tau_times_bw"};
    for (double v : sw) matrix_cols.push_back(format_number(v));
    for (std::size_t i = 0; i < s.profiles.size(); ++i) {
        for (std::size_t j = i + 1; j < s.profiles.size(); ++j) {
            const auto name = detail::pair_name({s.profiles[i], s.profiles[j]});
            const auto ratio = ratio_grid(grids[i], grids[j]);
            Table values("capacity_ratio_" + name + ".csv", matrix_cols);
            Table flags("capacity_ratio_" + name + "_flags.csv", matrix_cols);
            for (std::size_t r = 0; r < ratio.rows; ++r) {
                std::vector<Table::Cell> vr{st[r]}, fr{st[r]};
                for (std::size_t c = 0; c < ratio.cols; ++c) {
                    vr.emplace_back(ratio.at(r, c).value);
                    fr.emplace_back(to_string(ratio.at(r, c).flag));
                }
                values.add_row(vr);
                flags.add_row(fr);
            }
            out.push_back(std::move(values));
            out.push_back(std::move(flags));
        }
    }

    std::vector<std::string> slice_cols{"sigma_wd_over_bw"};
    for (auto k : s.profiles) {
        slice_cols.push_back("P_" + std::string(short_name(k)));
        slice_cols.push_back("binding_" + std::string(short_name(k)));
    }
    for (auto pr : detail::profile_pairs(s.profiles)) slice_cols.push_back("log_ratio_" + detail::pair_name(pr));
    Table slice("capacity_stochastic_slice.csv", slice_cols);
    for (std::size_t c = 0; c < sw.size(); ++c) {
        std::vector<Table::Cell> row{sw[c]};
        for (const auto& g : slices) {
            row.push_back(detail::bits_cell(g.at(0, c).capacity));
            row.emplace_back(to_string(g.at(0, c).capacity.binding()));
        }
        for (std::size_t i = 0; i < slices.size(); ++i)
            for (std::size_t j = i + 1; j < slices.size(); ++j)
                row.emplace_back(capacity_log_ratio(slices[i].at(0, c), slices[j].at(0, c)).value);
        slice.add_row(row);
    }
    out.push_back(std::move(slice));
    return out;
}

/// Homodyne statistics under mode mismatch and under the equivalent lossy
/// dephasing channel, with their gaps and the strong-LO SNR, for every
/// offset and LO modulus. Missing offset axes default to zero.
inline std::vector<Table> cmd_homodyne(const Scenario& s) {
    if (!s.homodyne) throw scenario_error("/homodyne: required by this command");
    const auto& h = *s.homodyne;
    const auto wd = s.doppler_axis ? s.doppler_axis->values() : std::vector<double>{0.0};
    const auto tau = s.delay_axis ? s.delay_axis->values() : std::vector<double>{0.0};
    const auto lo_mod = h.lo_moduli.values();
    const CoherentAmplitude sig(h.signal_modulus, h.signal_phase);
    Table t("homodyne.csv",
            {"profile", "omega_d_over_bw", "tau_times_bw", "lo_modulus", "eta", "gamma_phase", "mean_diff_mismatch",
             "variance_mismatch", "snr_mismatch", "mean_diff_channel", "variance_channel", "snr_channel",
             "mean_diff_gap", "variance_gap", "snr_gap", "snr_strong_lo"});
    for (auto kind : s.profiles) {
        const auto p = s.profile(kind);
        for (double x : wd)
            for (double y : tau) {
                const auto g = overlap_from_offsets(p, x * s.bandwidth, y / s.bandwidth);
                for (double m : lo_mod) {
                    const CoherentAmplitude lo(m, h.lo_phase);
                    const auto a = difference_stats(sig, lo, g);
                    const auto b = equivalent_channel_stats(sig, lo, g.eta(), g.phase());
                    t.add_row({to_string(kind), x, y, m, g.eta(), g.phase(), a.mean_diff, a.variance, a.snr,
                               b.mean_diff, b.variance, b.snr, a.mean_diff - b.mean_diff, a.variance - b.variance,
                               a.snr - b.snr, strong_lo_snr(sig, lo, g)});
                }
            }
    }
    return {std::move(t)};
}

}  // namespace pulseamb::cli
