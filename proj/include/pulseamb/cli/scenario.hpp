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

// Scenario files: JSON documents describing profiles, sweep axes and
// Monte-Carlo settings. Unknown keys are rejected.
//
//   {
//     "carrier_ratio": 1e5,            // w0 / bandwidth
//     "bandwidth": 1.0,                // HWHM; axes are in units of it
//     "profiles": ["gaussian", "double_lorentzian", "single_lorentzian"],
//     "doppler_axis":       {"start": -10, "stop": 10, "points": 41, "spacing": "linear"},
//     "delay_axis":         {"start": -5, "stop": 5, "points": 41},
//     "sigma_tau_axis":     {"start": 1e-6, "stop": 1e-1, "points": 8, "spacing": "log"},
//     "sigma_doppler_axis": {"start": 1e-2, "stop": 10, "points": 8, "spacing": "log"},
//     "slice_sigma_tau": 0.0,
//     "monte_carlo": {"samples": 100000, "seed": 42, "bins": 1024, "chunk": 16384},
//     "homodyne": {"signal_modulus": 2, "signal_phase": 0, "lo_phase": 1.5707963267948966,
//                  "lo_moduli": {"start": 10, "stop": 1e4, "points": 4, "spacing": "log"}},
//     "output": "out/run_"
//   }

#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pulseamb/profiles.hpp"
#include "pulseamb/stochastic.hpp"

namespace pulseamb::cli {

using json = nlohmann::json;

/// Malformed scenario: bad JSON syntax (with line and column) or an invalid
/// field (with its JSON pointer).
class scenario_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Spacing { Linear, Log };

struct Axis {
    double start = 0.0;
    double stop = 0.0;
    std::size_t points = 1;
    Spacing spacing = Spacing::Linear;

    std::vector<double> values() const {
        std::vector<double> v(points);
        if (points == 1) {
            v[0] = start;
            return v;
        }
        const double den = static_cast<double>(points - 1);
        for (std::size_t i = 0; i < points; ++i) {
            const double t = static_cast<double>(i) / den;
            v[i] = spacing == Spacing::Linear ? start + (stop - start) * t
                                              : std::exp(std::log(start) + (std::log(stop) - std::log(start)) * t);
        }
        v.front() = start;
        v.back() = stop;
        return v;
    }
};

struct MonteCarloParams {
    std::size_t samples = 100000;
    std::optional<std::uint64_t> seed;
    std::size_t bins = default_phase_bins;
    std::size_t chunk = 16384;
};

struct HomodyneParams {
    double signal_modulus = 2.0;
    double signal_phase = 0.0;
    double lo_phase = 0.0;
    Axis lo_moduli{1e4, 1e4, 1, Spacing::Linear};
};

struct Scenario {
    double carrier_ratio = 1e5;
    double bandwidth = 1.0;
    std::vector<ProfileKind> profiles{all_profile_kinds.begin(), all_profile_kinds.end()};
    std::optional<Axis> doppler_axis;
    std::optional<Axis> delay_axis;
    std::optional<Axis> sigma_tau_axis;
    std::optional<Axis> sigma_doppler_axis;
    double slice_sigma_tau = 0.0;
    std::optional<MonteCarloParams> monte_carlo;
    std::optional<HomodyneParams> homodyne;
    std::string output = "pulseamb_";

    SpectralProfile profile(ProfileKind kind) const { return make_profile(kind, carrier_ratio, bandwidth); }

    McConfig mc_config() const {
        if (!monte_carlo) throw scenario_error("/monte_carlo: required for stochastic commands");
        if (!monte_carlo->seed) throw scenario_error("/monte_carlo/seed: required for stochastic commands");
        return {monte_carlo->samples, *monte_carlo->seed, monte_carlo->bins, monte_carlo->chunk};
    }
};

namespace detail {

inline void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) throw scenario_error(path + ": expected an object");
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) throw scenario_error(path + "/" + key + ": unknown key");
    }
}

inline double get_number(const json& obj, const std::string& key, const std::string& path) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw scenario_error(path + "/" + key + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw scenario_error(path + "/" + key + ": must be finite");
    return d;
}

inline std::uint64_t get_count(const json& obj, const std::string& key, const std::string& path) {
    const auto& v = obj.at(key);
    if (!v.is_number_unsigned()) throw scenario_error(path + "/" + key + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
}

inline Axis parse_axis(const json& j, const std::string& path) {
    check_keys(j, path, {"start", "stop", "points", "spacing"});
    for (const char* k : {"start", "stop", "points"})
        if (!j.contains(k)) throw scenario_error(path + "/" + k + ": missing");
    Axis a;
    a.start = get_number(j, "start", path);
    a.stop = get_number(j, "stop", path);
    a.points = get_count(j, "points", path);
    if (a.points < 1) throw scenario_error(path + "/points: must be >= 1");
    if (j.contains("spacing")) {
        const auto& s = j.at("spacing");
        if (s == "linear") a.spacing = Spacing::Linear;
        else if (s == "log") a.spacing = Spacing::Log;
        else throw scenario_error(path + "/spacing: expected \"linear\" or \"log\"");
    }
    if (a.spacing == Spacing::Log && !(a.start > 0.0 && a.stop > 0.0))
        throw scenario_error(path + ": log spacing needs positive start and stop");
    return a;
}

inline json axis_json(const Axis& a) {
    return {{"start", a.start}, {"stop", a.stop}, {"points", a.points},
            {"spacing", a.spacing == Spacing::Linear ? "linear" : "log"}};
}

inline std::string line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

inline Scenario scenario_from_json(const json& j) {
    using namespace detail;
    check_keys(j, "", {"carrier_ratio", "bandwidth", "profiles", "doppler_axis", "delay_axis", "sigma_tau_axis",
                       "sigma_doppler_axis", "slice_sigma_tau", "monte_carlo", "homodyne", "output"});
    Scenario s;
    if (j.contains("carrier_ratio")) s.carrier_ratio = get_number(j, "carrier_ratio", "");
    if (j.contains("bandwidth")) s.bandwidth = get_number(j, "bandwidth", "");
    if (!(s.carrier_ratio > 0.0)) throw scenario_error("/carrier_ratio: must be positive");
    if (!(s.bandwidth > 0.0)) throw scenario_error("/bandwidth: must be positive");
    if (j.contains("profiles")) {
        const auto& arr = j.at("profiles");
        if (!arr.is_array() || arr.empty()) throw scenario_error("/profiles: expected a nonempty array");
        s.profiles.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto path = "/profiles/" + std::to_string(i);
            if (!arr[i].is_string()) throw scenario_error(path + ": expected a profile name");
            const auto kind = parse_profile_kind(arr[i].get<std::string>());
            if (!kind) throw scenario_error(path + ": unknown profile '" + arr[i].get<std::string>() + "'");
            for (auto k : s.profiles)
                if (k == *kind) throw scenario_error(path + ": duplicate profile");
            s.profiles.push_back(*kind);
        }
    }
    auto axis = [&](const char* key) -> std::optional<Axis> {
        if (!j.contains(key)) return std::nullopt;
        return parse_axis(j.at(key), std::string("/") + key);
    };
    s.doppler_axis = axis("doppler_axis");
    s.delay_axis = axis("delay_axis");
    s.sigma_tau_axis = axis("sigma_tau_axis");
    s.sigma_doppler_axis = axis("sigma_doppler_axis");
    for (const auto* ax : {&s.sigma_tau_axis, &s.sigma_doppler_axis})
        if (*ax && ((*ax)->start < 0.0 || (*ax)->stop < 0.0))
            throw scenario_error(std::string(ax == &s.sigma_tau_axis ? "/sigma_tau_axis" : "/sigma_doppler_axis") +
                                 ": standard deviations must be >= 0");
    if (j.contains("slice_sigma_tau")) {
        s.slice_sigma_tau = get_number(j, "slice_sigma_tau", "");
        if (s.slice_sigma_tau < 0.0) throw scenario_error("/slice_sigma_tau: must be >= 0");
    }
    if (j.contains("monte_carlo")) {
        const auto& m = j.at("monte_carlo");
        check_keys(m, "/monte_carlo", {"samples", "seed", "bins", "chunk"});
        MonteCarloParams mc;
        if (m.contains("samples")) mc.samples = get_count(m, "samples", "/monte_carlo");
        if (m.contains("seed")) mc.seed = get_count(m, "seed", "/monte_carlo");
        if (m.contains("bins")) mc.bins = get_count(m, "bins", "/monte_carlo");
        if (m.contains("chunk")) mc.chunk = get_count(m, "chunk", "/monte_carlo");
        if (mc.samples < 1) throw scenario_error("/monte_carlo/samples: must be >= 1");
        if (mc.bins < 2) throw scenario_error("/monte_carlo/bins: must be >= 2");
        if (mc.chunk < 1) throw scenario_error("/monte_carlo/chunk: must be >= 1");
        s.monte_carlo = mc;
    }
    if (j.contains("homodyne")) {
        const auto& h = j.at("homodyne");
        check_keys(h, "/homodyne", {"signal_modulus", "signal_phase", "lo_phase", "lo_moduli"});
        HomodyneParams hp;
        if (h.contains("signal_modulus")) hp.signal_modulus = get_number(h, "signal_modulus", "/homodyne");
        if (h.contains("signal_phase")) hp.signal_phase = get_number(h, "signal_phase", "/homodyne");
        if (h.contains("lo_phase")) hp.lo_phase = get_number(h, "lo_phase", "/homodyne");
        if (h.contains("lo_moduli")) hp.lo_moduli = parse_axis(h.at("lo_moduli"), "/homodyne/lo_moduli");
        if (hp.signal_modulus < 0.0) throw scenario_error("/homodyne/signal_modulus: must be >= 0");
        if (hp.lo_moduli.start < 0.0 || hp.lo_moduli.stop < 0.0)
            throw scenario_error("/homodyne/lo_moduli: moduli must be >= 0");
        s.homodyne = hp;
    }
    if (j.contains("output")) {
        if (!j.at("output").is_string()) throw scenario_error("/output: expected a string");
        s.output = j.at("output").get<std::string>();
    }
    return s;
}

inline Scenario parse_scenario(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw scenario_error("scenario is not valid JSON at " + detail::line_col(text, e.byte));
    }
    return scenario_from_json(j);
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

/// Canonical JSON form; the output prefix is included but not hashed.
inline json to_json(const Scenario& s) {
    json j;
    j["carrier_ratio"] = s.carrier_ratio;
    j["bandwidth"] = s.bandwidth;
    j["profiles"] = json::array();
    for (auto k : s.profiles) j["profiles"].push_back(std::string(to_string(k)));
    if (s.doppler_axis) j["doppler_axis"] = detail::axis_json(*s.doppler_axis);
    if (s.delay_axis) j["delay_axis"] = detail::axis_json(*s.delay_axis);
    if (s.sigma_tau_axis) j["sigma_tau_axis"] = detail::axis_json(*s.sigma_tau_axis);
    if (s.sigma_doppler_axis) j["sigma_doppler_axis"] = detail::axis_json(*s.sigma_doppler_axis);
    j["slice_sigma_tau"] = s.slice_sigma_tau;
    if (s.monte_carlo) {
        json m{{"samples", s.monte_carlo->samples}, {"bins", s.monte_carlo->bins}, {"chunk", s.monte_carlo->chunk}};
        if (s.monte_carlo->seed) m["seed"] = *s.monte_carlo->seed;
        j["monte_carlo"] = m;
    }
    if (s.homodyne) {
        j["homodyne"] = {{"signal_modulus", s.homodyne->signal_modulus},
                         {"signal_phase", s.homodyne->signal_phase},
                         {"lo_phase", s.homodyne->lo_phase},
                         {"lo_moduli", detail::axis_json(s.homodyne->lo_moduli)}};
    }
    j["output"] = s.output;
    return j;
}

/// FNV-1a, 64 bit.
inline std::uint64_t fnv1a64(std::string_view data) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xF];
    return s;
}

/// Hash of the canonical form (object keys sorted), excluding the output
/// prefix. Independent of key order in the source file.
inline std::string scenario_hash(const Scenario& s) {
    json j = to_json(s);
    j.erase("output");
    return hex64(fnv1a64(j.dump()));
}

}  // namespace pulseamb::cli
