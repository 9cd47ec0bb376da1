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

// Globally adaptive 7/15-point Gauss-Kronrod quadrature for complex
// integrands on a union of finite intervals.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

#include "pulseamb/errors.hpp"

namespace pulseamb {

using quadrature_failure = basic_quadrature_failure<std::complex<double>>;

struct QuadratureResult {
    std::complex<double> value;
    double error = 0.0;
    std::size_t evaluations = 0;
};

struct GaussKronrodOptions {
    double abs_tolerance = 1e-10;
    double rel_tolerance = 0.0;
    std::size_t max_subdivisions = 4000;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_nodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kronrod_weights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
inline constexpr std::array<double, 4> gauss_weights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    std::complex<double> value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const std::complex<double> fc = f(c);
    std::complex<double> kronrod = fc * kronrod_weights[7];
    std::complex<double> gauss = fc * gauss_weights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = h * kronrod_nodes[j];
        const std::complex<double> sum = f(c - dx) + f(c + dx);
        kronrod += kronrod_weights[j] * sum;
        if (j % 2 == 1) gauss += gauss_weights[j / 2] * sum;
    }
    kronrod *= h;
    gauss *= h;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Integrates `f` over the consecutive intervals defined by `points`
/// (sorted, at least two entries). Interval ends are where kinks or jumps
/// of the integrand should sit. Throws quadrature_failure if the tolerance
/// is not reached within the subdivision budget.
template <typename F>
    requires std::invocable<F&, double>
QuadratureResult integrate_gk15(F&& f, std::span<const double> points, const GaussKronrodOptions& opt = {}) {
    if (points.size() < 2) throw invalid_parameter("quadrature needs at least one interval");
    std::priority_queue<detail::Segment> heap;
    QuadratureResult res;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i + 1] > points[i])) continue;
        heap.push(detail::gk15(f, points[i], points[i + 1]));
        res.evaluations += 15;
    }
    if (heap.empty()) return res;

    // Running totals drive the stopping rule; the reported value is
    // re-summed in interval order at the end.
    std::complex<double> value{};
    double error = 0.0;
    {
        auto copy = heap;
        while (!copy.empty()) {
            value += copy.top().value;
            error += copy.top().error;
            copy.pop();
        }
    }
    while (error > std::max(opt.abs_tolerance, opt.rel_tolerance * std::abs(value))) {
        if (heap.size() >= opt.max_subdivisions)
            throw quadrature_failure("adaptive quadrature did not converge", value, error);
        const detail::Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            throw quadrature_failure("adaptive quadrature reached interval resolution limit", value, error);
        heap.pop();
        const auto left = detail::gk15(f, worst.a, mid);
        const auto right = detail::gk15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        res.evaluations += 30;
    }

    std::vector<detail::Segment> segs;
    segs.reserve(heap.size());
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
    value = {};
    error = 0.0;
    for (const auto& seg : segs) {
        value += seg.value;
        error += seg.error;
    }
    res.value = value;
    res.error = error;
    return res;
}

}  // namespace pulseamb
