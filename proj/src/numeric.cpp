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

#include "ttd/numeric.hpp"

#include <algorithm>

namespace ttd
{

namespace
{
// 2*pi as a double-double.
constexpr double two_pi_hi = 6.283185307179586232;
constexpr double two_pi_lo = 2.4492935982947064e-16;
} // namespace

double fmod_floored(double x, double y)
{
    double r = x - y * std::floor(x / y);
    // Rounding can land exactly on the excluded endpoint.
    if (y > 0.0 && r >= y)
        r = 0.0;
    if (y < 0.0 && r <= y)
        r = 0.0;
    return r;
}

double wrap_unit_interval(double s)
{
    return fmod_floored(s + 1.0, 2.0) - 1.0;
}

double wrap_phase(double phi)
{
    const double k = std::floor(phi / two_pi_hi);
    double r = std::fma(-k, two_pi_hi, phi) - k * two_pi_lo;
    if (r < 0.0)
        r += two_pi_hi;
    if (r >= two_pi_hi)
        r -= two_pi_hi;
    return r;
}

double deg_to_rad(double deg) { return deg * (pi / 180.0); }
double rad_to_deg(double rad) { return rad * (180.0 / pi); }

double linear_to_db(double x) { return 10.0 * std::log10(std::max(x, 1e-30)); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

dd two_sum(double a, double b)
{
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

dd two_prod(double a, double b)
{
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

dd dd_add(dd a, dd b)
{
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return two_sum(s.hi, s.lo);
}

dd dd_mul(dd a, double b)
{
    dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return two_sum(p.hi, p.lo);
}

dd dd_div(dd a, double b)
{
    const double q1 = a.hi / b;
    const double r = std::fma(-q1, b, a.hi);
    const double q2 = (r + a.lo) / b;
    return two_sum(q1, q2);
}

dd radians_to_cycles(double phi)
{
    const double q1 = phi / two_pi_hi;
    const double r = std::fma(-q1, two_pi_hi, phi) - q1 * two_pi_lo;
    return two_sum(q1, r / two_pi_hi);
}

double frac_centered(dd x)
{
    const double k = std::nearbyint(x.hi);
    double r = (x.hi - k) + x.lo;
    r -= std::nearbyint(r);
    return r;
}

cplx unit_phasor_cycles(double c)
{
    c -= std::nearbyint(c);
    // Nearest quarter turn; the remainder is exact and lies in [-1/8, 1/8].
    const double q = std::nearbyint(4.0 * c);
    const double r = c - 0.25 * q;
    const double a = two_pi * r;
    const double cs = std::cos(a);
    const double sn = std::sin(a);
    switch (static_cast<int>(q))
    {
    case 0:
        return {cs, sn};
    case 1:
        return {-sn, cs};
    case -1:
        return {sn, -cs};
    default: // +-2, half turn
        return {-cs, -sn};
    }
}

double sinpi(dd x)
{
    // Reduce modulo 2, then to the nearest half integer.
    const double k2 = 2.0 * std::nearbyint(0.5 * x.hi);
    double r = (x.hi - k2) + x.lo; // in about [-1, 1]
    const double h = std::nearbyint(2.0 * r);
    const double t = r - 0.5 * h; // in [-1/4, 1/4]
    const double a = pi * t;
    switch (static_cast<int>(h))
    {
    case 0:
        return std::sin(a);
    case 1:
        return std::cos(a);
    case -1:
        return -std::cos(a);
    default: // +-2
        return -std::sin(a);
    }
}

} // namespace ttd
