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

#include "ttd/staircase.hpp"

#include <cmath>
#include <sstream>

namespace ttd
{

std::string to_string(Formulation f)
{
    return f == Formulation::UniformInteger ? "uniform_integer" : "modulo";
}

Formulation formulation_from_string(const std::string &name)
{
    if (name == "uniform_integer" || name == "uniform")
        return Formulation::UniformInteger;
    if (name == "modulo")
        return Formulation::Modulo;
    throw std::invalid_argument("unknown formulation '" + name + "' (expected uniform_integer or modulo)");
}

std::vector<double> kron_sum(const std::vector<double> &a, const std::vector<double> &b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("kron_sum: empty operand");
    std::vector<double> out;
    out.reserve(a.size() * b.size());
    for (double x : a)
        for (double y : b)
            out.push_back(x + y);
    return out;
}

namespace
{
bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

// Values within this relative distance of an integer are treated as that
// integer when ceil() or a wrap count is taken.
constexpr double integer_snap = 1e-9;

double snapped_ceil(double x)
{
    const double r = std::nearbyint(x);
    if (std::abs(x - r) <= integer_snap * std::max(1.0, std::abs(x)))
        return r;
    return std::ceil(x);
}

// Floored modulo of n*step by `modulus`, with elements that sit on a wrap
// threshold (up to rounding) counted as already wrapped.
double threshold_wrap(int n, double step, double modulus)
{
    const double x = static_cast<double>(n) * step;
    const double q = x / modulus;
    const double r = std::nearbyint(q);
    if (r != 0.0 && std::abs(q - r) <= integer_snap * std::abs(q))
        return 0.0;
    return fmod_floored(x, modulus);
}

void check_params(const StaircaseParams &p, int n_t)
{
    if (n_t < 1)
        throw std::invalid_argument("staircase: n_t must be positive");
    if (!(p.d >= 1.0) || !std::isfinite(p.d))
        throw std::invalid_argument("staircase: D must be a finite value >= 1");
}
} // namespace

DelayPhaseProfile build_uniform(const StaircaseParams &params, int n_t)
{
    check_params(params, n_t);
    if (params.formulation != Formulation::UniformInteger)
        throw formulation_error("build_uniform: params carry the modulo formulation");
    if (!is_integer(params.d))
        throw formulation_error("build_uniform: D must be an integer, got " + std::to_string(params.d));
    const int d = static_cast<int>(params.d);
    std::vector<double> tau(static_cast<std::size_t>(n_t));
    std::vector<double> phi(static_cast<std::size_t>(n_t));
    // Closed form of the recurrence: n = step*D + offset.
    for (int n = 0; n < n_t; ++n)
    {
        const double step = static_cast<double>(n / d);
        const double offset = static_cast<double>(n % d);
        tau[static_cast<std::size_t>(n)] = step * params.dtau_jump + offset * params.dtau_step;
        phi[static_cast<std::size_t>(n)] = wrap_phase(step * params.dphi_jump + offset * params.dphi_step);
    }
    return {std::move(tau), std::move(phi)};
}

DelayPhaseProfile build_modulo(const StaircaseParams &params, int n_t)
{
    check_params(params, n_t);
    if (params.formulation != Formulation::Modulo)
        throw formulation_error("build_modulo: params carry the uniform formulation");
    const double tau_mod = params.d * params.dtau_step - params.dtau_jump;
    const double phi_mod = params.d * params.dphi_step - params.dphi_jump;
    if (tau_mod == 0.0)
        throw std::invalid_argument("build_modulo: delay modulus D*dtau_step - dtau_jump is zero");
    if (phi_mod == 0.0)
        throw std::invalid_argument("build_modulo: phase modulus D*dphi_step - dphi_jump is zero");
    std::vector<double> tau(static_cast<std::size_t>(n_t));
    std::vector<double> phi(static_cast<std::size_t>(n_t));
    for (int n = 0; n < n_t; ++n)
    {
        tau[static_cast<std::size_t>(n)] = threshold_wrap(n, params.dtau_step, tau_mod);
        phi[static_cast<std::size_t>(n)] = wrap_phase(threshold_wrap(n, params.dphi_step, phi_mod));
    }
    return {std::move(tau), std::move(phi)};
}

DelayPhaseProfile build_profile(const StaircaseParams &params, int n_t)
{
    return params.formulation == Formulation::Modulo ? build_modulo(params, n_t) : build_uniform(params, n_t);
}

double squint_factor(int k, const OfdmGrid &grid)
{
    if (k < 1)
        throw std::invalid_argument("squint_factor: K must be positive");
    const double ratio = grid.bw() / (2.0 * grid.f_c());
    return 1.0 + ratio - ratio / static_cast<double>(k);
}

double subband_center(int q, int k, const OfdmGrid &grid)
{
    if (k < 1 || q < 1 || q > k)
        throw std::out_of_range("subband_center: q=" + std::to_string(q) + " outside [1, " + std::to_string(k) + "]");
    return grid.f_c() - grid.bw() / 2.0 + grid.bw() * (2.0 * q - 1.0) / (2.0 * k);
}

std::vector<double> target_sines(int k, double theta_1, double theta_2)
{
    const double s1 = std::sin(theta_1);
    const double s2 = std::sin(theta_2);
    if (k == 1)
        return {s1};
    std::vector<double> s(static_cast<std::size_t>(k));
    for (int q = 1; q <= k; ++q)
        s[static_cast<std::size_t>(q - 1)] = s1 + (q - 1) * (s2 - s1) / (k - 1);
    s.back() = s2;
    return s;
}

namespace
{
void check_spec(const DesignSpec &spec)
{
    if (spec.k_users < 2)
        throw std::invalid_argument("design: K must be at least 2");
    for (double t : {spec.theta_1, spec.theta_2})
        if (!(std::abs(t) < pi / 2.0))
            throw std::invalid_argument("design: sector endpoints must satisfy |theta| < pi/2");
    if (std::sin(spec.theta_1) == std::sin(spec.theta_2))
        throw std::invalid_argument("design: theta_1 and theta_2 must differ");
}

DesignResult run_design(const DesignSpec &spec, bool integer_step)
{
    check_spec(spec);
    const int k = spec.k_users;
    const OfdmGrid &grid = spec.grid;
    const double f_c = grid.f_c();
    const double s1 = std::sin(spec.theta_1);
    const double s2 = std::sin(spec.theta_2);

    DesignResult res;
    res.gamma = squint_factor(k, grid);
    res.f_c = f_c;
    res.increasing = s2 > s1;
    res.d_exact = 2.0 * (k - 1) / (res.gamma * std::abs(s2 - s1));
    for (int q = 1; q <= k; ++q)
        res.subband_centers.push_back(subband_center(q, k, grid));
    for (double s : target_sines(k, spec.theta_1, spec.theta_2))
        res.target_angles.push_back(std::asin(s));

    const double f_first = res.subband_centers.front();
    const double f_last = res.subband_centers.back();
    StaircaseParams &p = res.params;
    p.formulation = integer_step ? Formulation::UniformInteger : Formulation::Modulo;
    p.d = integer_step ? snapped_ceil(res.d_exact) : res.d_exact;
    // Stage I: grating lobes anchored at theta_1.
    p.dtau_jump = -p.d * s1 / (2.0 * f_c);
    p.dphi_jump = 0.0;
    // Stage II: filter centre through theta_1 at f^(1) and theta_2 at f^(K).
    p.dtau_step = (f_first * s1 - f_last * s2) / (2.0 * f_c * (k - 1) * grid.bw() / k);
    p.dphi_step = -pi * (f_last / f_c) * (s2 + 2.0 * f_c * p.dtau_step);

    const double sign = res.increasing ? 1.0 : -1.0;
    for (int q = 1; q <= k; ++q)
    {
        const double f_q = res.subband_centers[static_cast<std::size_t>(q - 1)];
        const double s = wrap_unit_interval(s1 + sign * 2.0 * (q - 1) * f_c / (p.d * f_q));
        res.predicted_angles.push_back(std::asin(s));
    }

    const double d_ceil = snapped_ceil(res.d_exact);
    const int n_t = spec.cfg.n_t();
    if (!(d_ceil < n_t))
    {
        std::ostringstream os;
        os << "array too small to wrap: ceil(D) = " << d_ceil << " >= N_T = " << n_t << " (D = " << res.d_exact
           << ")";
        res.infeasible_reason = os.str();
    }
    else if (res.d_exact < 1.0)
    {
        std::ostringstream os;
        os << "sector too wide: D = " << res.d_exact << " < 1";
        res.infeasible_reason = os.str();
    }
    else
    {
        res.feasible = true;
        res.profile = build_profile(p, n_t);
    }
    return res;
}
} // namespace

DesignResult two_stage_design(const DesignSpec &spec) { return run_design(spec, false); }

DesignResult integer_design(const DesignSpec &spec) { return run_design(spec, true); }

StaircaseParams rotate_mapping(const DesignResult &result, int i)
{
    const int k = static_cast<int>(result.target_angles.size());
    if (i < 1 || i > k)
        throw std::out_of_range("rotate_mapping: i=" + std::to_string(i) + " outside [1, " + std::to_string(k) + "]");
    if (k < 2 || result.subband_centers.empty())
        throw precondition_error("rotate_mapping: result carries no multi-user design");
    const double span = std::abs(std::sin(result.target_angles.back()) - std::sin(result.target_angles.front()));
    const double lhs = result.gamma * span;
    const double rhs = 2.0 * (k - 1) / (k + 1.0);
    if (!(lhs > rhs))
    {
        std::ostringstream os;
        os << "rotate_mapping: rotation requires gamma*|sin theta_2 - sin theta_1| > 2(K-1)/(K+1), got " << lhs
           << " <= " << rhs;
        throw precondition_error(os.str());
    }
    StaircaseParams p = result.params;
    const double f_first = result.subband_centers.front();
    const double s_i = std::sin(result.target_angles[static_cast<std::size_t>(i - 1)]);
    p.dphi_step = -pi * ((f_first / result.f_c) * s_i + 2.0 * f_first * p.dtau_step);
    return p;
}

} // namespace ttd
