// SPDX-License-Identifier: Apache-2.0
//
// staircase-ttd: true-time-delay array codebook design and analysis
// Copyright (C) 2026 The staircase-ttd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Small numeric kernels shared by the codebook and analysis modules.
//
// Phase arguments in this code base routinely reach 1e4 radians (60 GHz times
// tens of nanoseconds of delay). Everything that turns a phase into a phasor
// or a sine therefore works in cycles and reduces the argument with
// error-free products, so that the result is accurate to ~1e-16 absolute
// regardless of the argument magnitude.

#include <cmath>
#include <complex>
#include <numbers>

namespace ttd
{

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// x - y*floor(x/y); result lies in [0, y) for y > 0 and (y, 0] for y < 0.
double fmod_floored(double x, double y);

/// Wrap a sine-space coordinate into [-1, 1).
double wrap_unit_interval(double s);

/// Wrap a phase into [0, 2*pi).
double wrap_phase(double phi);

double deg_to_rad(double deg);
double rad_to_deg(double rad);

/// 10*log10(x), with x clamped to 1e-30 so that exact nulls stay finite.
double linear_to_db(double x);
double db_to_linear(double db);

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct dd
{
    double hi = 0.0;
    double lo = 0.0;
};

dd two_sum(double a, double b);
dd two_prod(double a, double b);
dd dd_add(dd a, dd b);
dd dd_mul(dd a, double b);
dd dd_div(dd a, double b);

/// phi / (2 pi) as a double-double.
dd radians_to_cycles(double phi);

/// Fractional part of a double-double, reduced to [-0.5, 0.5].
double frac_centered(dd x);

/// exp(j*2*pi*c) with c given in cycles; exact quadrant reduction.
cplx unit_phasor_cycles(double c);

/// sin(pi*x) for x given as a double-double; accurate near the zeros.
double sinpi(dd x);
inline double sinpi(double x) { return sinpi(dd{x, 0.0}); }

} // namespace ttd
