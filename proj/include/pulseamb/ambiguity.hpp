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

// Ambiguity (generalized correlation) functions of a pulse against its
// Doppler-shifted, delayed copy.
//
//   exact_ambiguity   Q(z, tau): Doppler as a spectral stretch by (1 + z)
//   woodward          chi(w_D, tau): narrowband limit, Doppler as a rigid
//                     carrier shift w_D = z * w0
//   quadrature_ambiguity
//                     direct numerical integration of the time-domain
//                     overlap for an arbitrary amplitude callback; used as
//                     the independent oracle for both closed forms
//
// The modulus of the result is the effective transmissivity of the
// mismatch channel and its argument the phase rotation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>
#include <optional>
#include <vector>

#include "pulseamb/errors.hpp"
#include "pulseamb/profiles.hpp"
#include "pulseamb/quadrature.hpp"

namespace pulseamb {

/// Wraps an angle to [-pi, pi).
inline double wrap_phase(double phi) noexcept {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = phi - two_pi * std::floor((phi + std::numbers::pi) / two_pi);
    if (r >= std::numbers::pi) r -= two_pi;
    if (r < -std::numbers::pi) r += two_pi;
    return r;
}

/// A Doppler/delay offset. The carrier shift is always populated; the
/// relative shift z only when the offset was built from one (or from a
/// carrier shift together with the carrier).
struct OffsetPoint {
    double doppler_shift = 0.0;  ///< w_D, angular frequency
    double delay = 0.0;          ///< tau
    std::optional<double> relative_shift;

    static OffsetPoint from_carrier_shift(double omega_d, double tau) { return {omega_d, tau, std::nullopt}; }

    static OffsetPoint from_relative_shift(double z, double tau, const SpectralProfile& p) {
        if (!(1.0 + z > 0.0)) throw invalid_parameter("relative shift must satisfy 1 + z > 0");
        return {z * p.carrier(), tau, z};
    }
};

/// Complex ambiguity value. Closed forms keep the unwrapped phase they were
/// computed with; wrapping happens only in phase().
class AmbiguityValue {
public:
    AmbiguityValue() = default;

    static AmbiguityValue polar(double magnitude, double phase) {
        AmbiguityValue v;
        v.value_ = std::polar(magnitude, phase);
        v.raw_phase_ = phase;
        return v;
    }

    /// From a real, possibly negative, amplitude factor and a phase.
    static AmbiguityValue signed_polar(double amplitude, double phase) {
        return amplitude < 0.0 ? polar(-amplitude, phase + std::numbers::pi) : polar(amplitude, phase);
    }

    static AmbiguityValue from_complex(complex c) {
        AmbiguityValue v;
        v.value_ = c;
        v.raw_phase_ = std::arg(c);
        return v;
    }

    complex value() const noexcept { return value_; }
    double magnitude() const noexcept { return std::abs(value_); }
    double phase() const noexcept { return wrap_phase(raw_phase_); }
    double raw_phase() const noexcept { return raw_phase_; }

private:
    complex value_{1.0, 0.0};
    double raw_phase_ = 0.0;
};

namespace detail {

/// Small-argument threshold on |w_D * tau| for the double-sided bracket.
inline constexpr double dl_series_threshold = 1e-6;

/// cos(a) + s|tau| sin(a)/a with a = w_D |tau| / 2, i.e. the numerator of
/// the double-sided Woodward form without its 2s/w_D singularity.
inline double dl_bracket(double s, double omega_d, double tau) {
    const double abs_tau = std::abs(tau);
    const double a = 0.5 * omega_d * abs_tau;
    if (std::abs(omega_d * tau) < dl_series_threshold) {
        const double a2 = a * a;
        return (1.0 - a2 / 2.0 + a2 * a2 / 24.0) + s * abs_tau * (1.0 - a2 / 6.0 + a2 * a2 / 120.0);
    }
    return std::cos(a) + (2.0 * s / omega_d) * std::sin(a);
}

/// (e^u - 1) / u without cancellation near u = 0.
inline complex phi1(complex u) {
    if (std::abs(u) < 1e-5) return 1.0 + u / 2.0 + u * u / 6.0 + u * u * u / 24.0;
    const double b = u.imag();
    const double sb2 = std::sin(0.5 * b);
    const complex em1 = std::expm1(u.real()) * std::polar(1.0, b) + complex(-2.0 * sb2 * sb2, std::sin(b));
    return em1 / u;
}

inline AmbiguityValue woodward_gaussian(const SpectralProfile& p, double wd, double tau) {
    const double sg = p.width();
    const double mag = std::exp(-wd * wd / (8.0 * sg * sg) - 0.5 * sg * sg * tau * tau);
    return AmbiguityValue::polar(mag, -tau * (p.carrier() - 0.5 * wd));
}

inline AmbiguityValue woodward_double(const SpectralProfile& p, double wd, double tau) {
    const double s = p.width();
    const double r = wd / (2.0 * s);
    const double amp = std::exp(-s * std::abs(tau)) * dl_bracket(s, wd, tau) / (1.0 + r * r);
    return AmbiguityValue::signed_polar(amp, -tau * (p.carrier() - 0.5 * wd));
}

inline AmbiguityValue woodward_single(const SpectralProfile& p, double wd, double tau) {
    const double bw = p.width();
    const double r = wd / (2.0 * bw);
    const double mag = std::exp(-std::abs(tau) * bw) / std::sqrt(1.0 + r * r);
    const double carrier_phase = tau < 0.0 ? -tau * (p.carrier() - wd) : -tau * p.carrier();
    return AmbiguityValue::polar(mag, carrier_phase - std::atan(r));
}

inline AmbiguityValue exact_gaussian(const SpectralProfile& p, double z, double tau) {
    const double sg2 = p.width() * p.width();
    const double w0 = p.carrier();
    const double d = z * (z + 2.0) + 2.0;
    const double pref = std::sqrt(2.0 * (1.0 + z) / d);
    const double re = -(w0 * w0 * z * z + 4.0 * sg2 * sg2 * tau * tau) / (4.0 * sg2 * d);
    const double im = -w0 * tau * (z + 2.0) / d;
    return AmbiguityValue::polar(pref * std::exp(re), im);
}

// Piecewise double-sided result regrouped so the individually singular
// 1/((s +- i w0) z) terms enter only through (E1 - E0)/((s +- i w0) z),
// which is finite at z = 0.
inline AmbiguityValue exact_double(const SpectralProfile& p, double z, double tau) {
    const double s = p.width();
    const double w0 = p.carrier();
    const double opz = 1.0 + z;
    const complex i{0.0, 1.0};
    complex q;
    if (tau >= 0.0) {
        const complex k = s + i * w0;
        const complex e0 = std::exp(-k * tau);
        const complex e1 = std::exp(-k * tau / opz);
        const complex u = k * tau * z / opz;
        q = e0 * (tau / opz) * phi1(u) + e1 / (s * (2.0 + z) - i * w0 * z) + e0 / (s * (2.0 + z) + i * w0 * z);
    } else {
        const complex k = s - i * w0;
        const complex e0 = std::exp(k * tau);
        const complex e1 = std::exp(k * tau / opz);
        const complex v = -k * tau * z / opz;
        q = e0 * (-tau / opz) * phi1(v) + e1 / (s * (2.0 + z) + i * w0 * z) + e0 / (s * (2.0 + z) - i * w0 * z);
    }
    return AmbiguityValue::from_complex(s * std::sqrt(opz) * q);
}

inline AmbiguityValue exact_single(const SpectralProfile& p, double z, double tau) {
    const double bw = p.width();
    const double w0 = p.carrier();
    const double opz = 1.0 + z;
    const double env = tau >= 0.0 ? std::exp(-tau * bw) : std::exp(tau * bw / opz);
    const double carrier_phase = tau >= 0.0 ? -tau * w0 : -tau * w0 / opz;
    const double den_re = bw * (z + 2.0);
    const double den_im = w0 * z;
    const double mag = 2.0 * bw * std::sqrt(opz) * env / std::hypot(den_re, den_im);
    return AmbiguityValue::polar(mag, carrier_phase - std::atan2(den_im, den_re));
}

}  // namespace detail

/// Narrowband (Woodward) ambiguity function chi(w_D, tau).
inline AmbiguityValue woodward(const SpectralProfile& p, double omega_d, double tau) {
    detail::check_narrowband(p);
    switch (p.kind()) {
        case ProfileKind::Gaussian: return detail::woodward_gaussian(p, omega_d, tau);
        case ProfileKind::DoubleLorentzian: return detail::woodward_double(p, omega_d, tau);
        case ProfileKind::SingleLorentzian: return detail::woodward_single(p, omega_d, tau);
    }
    return {};
}

inline AmbiguityValue woodward(const SpectralProfile& p, const OffsetPoint& o) {
    return woodward(p, o.doppler_shift, o.delay);
}

/// Exact ambiguity function Q(z, tau) with the spectral stretch by (1 + z).
inline AmbiguityValue exact_ambiguity(const SpectralProfile& p, double z, double tau) {
    if (!(1.0 + z > 0.0)) throw invalid_parameter("exact_ambiguity requires 1 + z > 0");
    switch (p.kind()) {
        case ProfileKind::Gaussian: return detail::exact_gaussian(p, z, tau);
        case ProfileKind::DoubleLorentzian: return detail::exact_double(p, z, tau);
        case ProfileKind::SingleLorentzian: return detail::exact_single(p, z, tau);
    }
    return {};
}

struct QuadratureConfig {
    double half_width = 60.0;    ///< truncation T, in inverse bandwidth units
    double tolerance = 1e-10;    ///< absolute, on the integral
    double tail_decay = 1.0;     ///< assumed e-folding length of the integrand beyond T
    std::size_t max_subdivisions = 4000;
    std::vector<double> breakpoints;  ///< extra kinks of the amplitude
};

struct QuadratureAmbiguity {
    AmbiguityValue value;
    double error = 0.0;  ///< interior quadrature error + tail bound
};

/// sqrt(1+z) * integral of conj(A((1+z) t + tau)) A(t) dt over [-T, T].
/// The domain is split at t = 0 and t = -tau/(1+z), where one-sided or
/// cusped envelopes have their kinks, plus any caller breakpoints. The
/// truncated tails are bounded by |integrand(+-T)| * tail_decay and added
/// to the error estimate.
template <typename Amplitude>
    requires std::invocable<const Amplitude&, double>
QuadratureAmbiguity quadrature_ambiguity(const Amplitude& amplitude, double z, double tau,
                                         const QuadratureConfig& quad = {}) {
    if (!(1.0 + z > 0.0)) throw invalid_parameter("quadrature_ambiguity requires 1 + z > 0");
    if (!(quad.half_width > 0.0)) throw invalid_parameter("quadrature half width must be positive");
    const double opz = 1.0 + z;
    const double norm = std::sqrt(opz);
    auto integrand = [&](double t) -> complex {
        return norm * std::conj(complex(amplitude(opz * t + tau))) * complex(amplitude(t));
    };

    const double T = quad.half_width;
    std::vector<double> pts{-T, T, 0.0, -tau / opz};
    for (double b : quad.breakpoints) {
        pts.push_back(b);
        pts.push_back((b - tau) / opz);
    }
    std::erase_if(pts, [T](double x) { return !(x >= -T && x <= T); });
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    GaussKronrodOptions opt;
    opt.abs_tolerance = quad.tolerance;
    opt.max_subdivisions = quad.max_subdivisions;
    const auto r = integrate_gk15(integrand, pts, opt);
    const double tail = (std::abs(integrand(-T)) + std::abs(integrand(T))) * quad.tail_decay;
    const double err = r.error + tail;
    if (err > quad.tolerance)
        throw quadrature_failure("truncation tail exceeds quadrature tolerance; increase half_width", r.value, err);
    return {AmbiguityValue::from_complex(r.value), err};
}

enum class DopplerRegime { SmallDoppler, LargeDoppler };

/// Leading-order expansions of the Woodward forms for |w_D| much smaller or
/// much larger than the bandwidth.
inline AmbiguityValue asymptotic_woodward(const SpectralProfile& p, double omega_d, double tau,
                                          DopplerRegime regime) {
    if (regime == DopplerRegime::LargeDoppler && omega_d == 0.0)
        throw invalid_parameter("large-Doppler asymptotics are undefined at w_D = 0");
    const double w0 = p.carrier();
    const double w = p.width();
    const double abs_tau = std::abs(tau);
    const double sym_phase = -(w0 - 0.5 * omega_d) * tau;
    const double sl_phase = tau < 0.0 ? -(w0 - omega_d) * tau : -w0 * tau;
    const double r = omega_d / (2.0 * w);
    const bool small = regime == DopplerRegime::SmallDoppler;
    switch (p.kind()) {
        case ProfileKind::Gaussian: {
            const double env = std::exp(-0.5 * tau * tau * w * w);
            return small ? AmbiguityValue::signed_polar((1.0 - 0.5 * r * r) * env, sym_phase)
                         : AmbiguityValue::polar(std::exp(-0.5 * r * r) * env, sym_phase);
        }
        case ProfileKind::DoubleLorentzian: {
            const double env = std::exp(-w * abs_tau);
            return small ? AmbiguityValue::signed_polar((1.0 - r * r) * env * detail::dl_bracket(w, omega_d, tau),
                                                        sym_phase)
                         : AmbiguityValue::signed_polar(env * std::cos(0.5 * omega_d * abs_tau) / (r * r), sym_phase);
        }
        case ProfileKind::SingleLorentzian: {
            const double env = std::exp(-w * abs_tau);
            return small ? AmbiguityValue::signed_polar((1.0 - 0.5 * r * r) * env, sl_phase - r)
                         : AmbiguityValue::signed_polar(env / r, sl_phase - 0.5 * std::numbers::pi);
        }
    }
    return {};
}

}  // namespace pulseamb
