# Copyright 2026 The pulseamb Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Reference values for the C++ tests, from direct numerical integration
of the definitions (scipy.integrate.quad). Prints C++ initializers."""

import math

import numpy as np
from scipy import integrate, optimize

NU = 1.0
SIG = NU / math.sqrt(math.log(4.0))
S = NU / math.sqrt(math.sqrt(2.0) - 1.0)


def env(kind, t):
    if kind == "gauss":
        return (2 * SIG**2 / math.pi) ** 0.25 * math.exp(-SIG**2 * t * t)
    if kind == "dl":
        return math.sqrt(S) * math.exp(-S * abs(t))
    return 0.0 if t < 0 else math.sqrt(2 * NU) * math.exp(-NU * t)


def cquad(f, a, b, pts):
    pts = sorted(p for p in set(pts) if a < p < b)
    edges = [a] + pts + [b]
    re = im = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        re += integrate.quad(lambda t: f(t).real, lo, hi, epsabs=1e-14, epsrel=1e-13, limit=2000)[0]
        im += integrate.quad(lambda t: f(t).imag, lo, hi, epsabs=1e-14, epsrel=1e-13, limit=2000)[0]
    return complex(re, im)


def woodward(kind, w0, wd, tau):
    """exp(-i w0 tau) * int env(t + tau) env(t) exp(-i wd t) dt"""
    f = lambda t: env(kind, t + tau) * env(kind, t) * complex(math.cos(wd * t), -math.sin(wd * t))
    return complex(math.cos(w0 * tau), -math.sin(w0 * tau)) * cquad(f, -60, 60, [0.0, -tau])


def exact_q(kind, w0, z, tau):
    """sqrt(1+z) int conj(A((1+z)t + tau)) A(t) dt, A(t) = env(t) exp(i w0 t)"""
    a = 1 + z
    ph = lambda t: complex(math.cos(w0 * (t - a * t - tau)), math.sin(w0 * (t - a * t - tau)))
    f = lambda t: math.sqrt(a) * env(kind, a * t + tau) * env(kind, t) * ph(t)
    return cquad(f, -60, 60, [0.0, -tau / a])


def cpp(z):
    return "{%.17g, %.17g}" % (z.real, z.imag)


print("// woodward, carrier_ratio 10: kind, wd, tau, value")
for kind in ("gauss", "dl", "sl"):
    for wd, tau in ((0.0, 0.0), (1.5, 0.0), (0.0, 0.8), (2.0, -1.3), (-3.0, 0.4), (5.0, 2.0)):
        print("{%s, %g, %g, %s}," % (kind, wd, tau, cpp(woodward(kind, 10.0, wd, tau))))

print("// exact Q, carrier_ratio 3: kind, z, tau, value")
for kind in ("gauss", "dl", "sl"):
    for z, tau in ((0.0, 0.0), (0.3, 0.0), (0.2, 0.7), (-0.25, -0.9), (0.5, 2.0), (1e-7, 0.5)):
        print("{%s, %g, %g, %s}," % (kind, z, tau, cpp(exact_q(kind, 3.0, z, tau))))

print("// |chi(5, 0)|")
for kind in ("gauss", "dl", "sl"):
    print(kind, "%.17g" % abs(woodward(kind, 0.0, 5.0, 0.0)))

g = lambda tau: abs(woodward("gauss", 0.0, 0.0, tau)) - abs(woodward("dl", 0.0, 0.0, tau))
print("// gauss/dl delay crossing %.15g" % optimize.brentq(g, 2.5, 3.0, xtol=1e-14))
h = lambda wd: abs(woodward("sl", 0.0, wd, 0.0)) - abs(woodward("dl", 0.0, wd, 0.0))
print("// sl/dl Doppler crossing %.15g" % optimize.brentq(h, 1.0, 3.0, xtol=1e-14))

# Plug-in dephasing capacity of a wrapped normal, from its exact density.
for sig in (0.05, 0.5, 1.0):
    def pdf(x):
        k = np.arange(-50, 51)
        return np.sum(np.exp(-((x + 2 * np.pi * k) ** 2) / (2 * sig * sig))) / (sig * math.sqrt(2 * math.pi))
    h = integrate.quad(lambda x: -pdf(x) * math.log2(pdf(x)) if pdf(x) > 0 else 0.0, -math.pi, math.pi,
                       points=[0.0], limit=2000, epsabs=1e-13)[0]
    print("// wrapped normal sigma %g: log2(2pi) - h = %.15g" % (sig, math.log2(2 * math.pi) - h))
