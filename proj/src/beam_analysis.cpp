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

#include "ttd/beam_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ttd
{

SubArrayView SubArrayView::from(const StaircaseParams &params, int n_t, const OfdmGrid &grid)
{
    return {params.d, params.dtau_jump, params.dphi_jump, params.dtau_step, params.dphi_step, n_t, grid.f_c()};
}

namespace
{
// Psi_jump / 2 and Psi_o / 2 as double-doubles; the sines below take pi*x.
dd half_psi_jump(const SubArrayView &v, double s, double f)
{
    const dd delay = two_prod(f, v.dtau_jump);
    const dd phase = radians_to_cycles(v.dphi_jump);
    const dd space = dd_div(dd_mul(two_prod(f, s), v.d), 2.0 * v.f_c);
    return dd_add(dd_add(delay, phase), space);
}

dd half_psi_step(const SubArrayView &v, double s, double f)
{
    const dd delay = two_prod(f, v.dtau_step);
    const dd phase = radians_to_cycles(v.dphi_step);
    const dd space = dd_div(two_prod(f, s), 2.0 * v.f_c);
    return dd_add(dd_add(delay, phase), space);
}

// |sin(L pi x) / sin(pi x)|^2 with the removable singularity at sin(pi x) = 0.
double dirichlet_power(double length, dd x)
{
    const double den = sinpi(x);
    if (std::abs(den) < 1e-12)
        return length * length;
    const double ratio = sinpi(dd_mul(x, length)) / den;
    return ratio * ratio;
}

bool divides_evenly(const SubArrayView &v)
{
    return v.d == std::floor(v.d) && v.d >= 1.0 && v.n_t % static_cast<int>(v.d) == 0;
}
} // namespace

double psi_jump(const SubArrayView &view, double sin_theta, double f)
{
    const dd h = half_psi_jump(view, sin_theta, f);
    return 2.0 * (h.hi + h.lo);
}

double psi_step(const SubArrayView &view, double sin_theta, double f)
{
    const dd h = half_psi_step(view, sin_theta, f);
    return 2.0 * (h.hi + h.lo);
}

double subarray_gain(const SubArrayView &view, double sin_theta, double f)
{
    const double len = view.n_sub();
    if (!(len >= 1.0))
        throw std::invalid_argument("subarray_gain: N_T/D must be at least 1");
    return dirichlet_power(len, half_psi_jump(view, sin_theta, f)) / len;
}

double filter_response(const SubArrayView &view, double sin_theta, double f)
{
    if (!(view.d >= 1.0))
        throw std::invalid_argument("filter_response: D must be at least 1");
    return dirichlet_power(view.d, half_psi_step(view, sin_theta, f));
}

std::vector<double> beam_centres(const SubArrayView &view, const OfdmGrid &grid, int m)
{
    return beam_centres_at(view, grid.frequency(m));
}

std::vector<double> beam_centres_at(const SubArrayView &view, double f)
{
    if (!(f > 0.0))
        throw std::invalid_argument("beam_centres: frequency must be positive");
    const double ratio = view.f_c / f;
    const double period = 2.0 * ratio / view.d;
    const double offset = 2.0 * view.f_c * view.dtau_jump / view.d + view.dphi_jump / (view.d * pi) * ratio;
    const double top = 1.0 - fmod_floored(offset + 1.0, period);
    std::vector<double> out;
    for (int q = 1;; ++q)
    {
        const double s = top - (q - 1) * period;
        if (s < -1.0)
            break;
        out.push_back(s);
    }
    return out;
}

double map_slope(const SubArrayView &view) { return -2.0 * view.dtau_jump / view.d; }

double filter_centre(const SubArrayView &view, const OfdmGrid &grid, int m)
{
    return filter_centre_at(view, grid.frequency(m));
}

double filter_centre_at(const SubArrayView &view, double f)
{
    if (!(f > 0.0))
        throw std::invalid_argument("filter_centre: frequency must be positive");
    const double ratio = view.f_c / f;
    const double s =
        1.0 - fmod_floored(2.0 * view.f_c * view.dtau_step + view.dphi_step / pi * ratio + 1.0, 2.0 * ratio);
    // Below f_c the period 2 f_c / f exceeds 2 and no centre may be visible;
    // the response then peaks at the edge nearer to a centre.
    if (s >= -1.0)
        return s;
    return (-1.0 - s) <= (s + 2.0 * ratio - 1.0) ? -1.0 : 1.0;
}

double factorized_gain(const SubArrayView &view, const ArrayConfig &cfg, const OfdmGrid &grid, double sin_theta, int m)
{
    if (view.n_t != cfg.n_t())
        throw std::invalid_argument("factorized_gain: view and array disagree on N_T");
    if (!divides_evenly(view))
        throw precondition_error("factorized_gain: requires integer D dividing N_T (D = " + std::to_string(view.d) +
                                 ", N_T = " + std::to_string(view.n_t) + "); use the direct gain instead");
    const double f = grid.frequency(m);
    return subarray_gain(view, sin_theta, f) * filter_response(view, sin_theta, f) / view.d;
}

GainGrid subarray_gain_grid(const SubArrayView &view, const OfdmGrid &grid, int angle_count,
                            std::span<const int> freq_indices)
{
    if (freq_indices.empty())
        throw std::invalid_argument("subarray_gain_grid: empty frequency list");
    GainGrid out;
    out.angles = sine_grid(angle_count);
    out.freq_indices.assign(freq_indices.begin(), freq_indices.end());
    for (int m : freq_indices)
        out.freqs.push_back(grid.frequency(m));
    out.values.reserve(out.rows() * out.cols());
    for (double f : out.freqs)
        for (double s : out.angles)
            out.values.push_back(subarray_gain(view, s, f));
    return out;
}

BeamMap extract_beam_map(const GainGrid &grid)
{
    if (grid.rows() == 0 || grid.cols() == 0)
        throw std::invalid_argument("extract_beam_map: empty grid");
    BeamMap map;
    map.freq_indices = grid.freq_indices;
    map.freqs = grid.freqs;
    for (std::size_t r = 0; r < grid.rows(); ++r)
    {
        const auto row = grid.row(r);
        std::size_t best = 0;
        for (std::size_t c = 1; c < row.size(); ++c)
            if (row[c] > row[best])
                best = c;
        map.peak_sin_theta.push_back(grid.angles[best]);
        map.peak_gain.push_back(row[best]);
    }
    return map;
}

std::vector<double> peak_sines(const DelayPhaseProfile &profile, const ArrayConfig &cfg, const OfdmGrid &grid,
                               std::span<const double> freqs, int angle_count)
{
    const GainKernel kernel(profile, cfg, grid);
    const auto angles = sine_grid(angle_count);
    std::vector<double> out;
    for (double f : freqs)
    {
        double best = -1.0, at = angles.front();
        for (double s : angles)
        {
            const double g = kernel(s, f, f);
            if (g > best)
            {
                best = g;
                at = s;
            }
        }
        out.push_back(at);
    }
    return out;
}

std::vector<std::size_t> local_peaks(std::span<const double> row, double min_fraction)
{
    std::vector<std::size_t> peaks;
    if (row.empty())
        return peaks;
    const double top = *std::max_element(row.begin(), row.end());
    const double floor = min_fraction * top;
    for (std::size_t c = 0; c < row.size(); ++c)
    {
        const double left = c > 0 ? row[c - 1] : -1.0;
        const double right = c + 1 < row.size() ? row[c + 1] : -1.0;
        // >= on the left keeps one sample of a flat-topped pair.
        if (row[c] >= floor && row[c] > left && row[c] >= right)
            peaks.push_back(c);
    }
    return peaks;
}

OnTargetGain on_target_gain(const DelayPhaseProfile &profile, const ArrayConfig &cfg, const OfdmGrid &grid,
                            std::span<const double> user_angles)
{
    if (user_angles.empty() || static_cast<int>(user_angles.size()) > cfg.n_t())
        throw std::invalid_argument("on_target_gain: need 1 <= K <= N_T user angles");
    const GainKernel kernel(profile, cfg, grid);
    OnTargetGain out;
    out.user_angles.assign(user_angles.begin(), user_angles.end());
    for (double theta : user_angles)
    {
        const double s = std::sin(theta);
        std::vector<double> row(static_cast<std::size_t>(grid.m_tot()));
        for (int m = 1; m <= grid.m_tot(); ++m)
        {
            const double f = grid.frequency(m);
            row[static_cast<std::size_t>(m - 1)] = kernel(s, f, f);
        }
        out.values.push_back(std::move(row));
    }
    return out;
}

std::vector<double> mapping_discrepancy(const DesignResult &result)
{
    if (result.predicted_angles.size() != result.target_angles.size())
        throw std::invalid_argument("mapping_discrepancy: predicted and target angle counts differ");
    std::vector<double> out;
    for (std::size_t q = 0; q < result.target_angles.size(); ++q)
        out.push_back(std::abs(std::sin(result.predicted_angles[q]) - std::sin(result.target_angles[q])));
    return out;
}

double half_power_width(const SubArrayView &view, const OfdmGrid &grid, int m, int angle_count)
{
    const double f = grid.frequency(m);
    const auto angles = sine_grid(angle_count);
    std::vector<double> resp;
    resp.reserve(angles.size());
    for (double s : angles)
        resp.push_back(filter_response(view, s, f));
    const std::size_t peak = static_cast<std::size_t>(std::max_element(resp.begin(), resp.end()) - resp.begin());
    const double half = 0.5 * std::max(view.d * view.d, resp[peak]);

    auto crossing = [&](std::size_t inside, std::size_t outside) {
        const double t = (resp[inside] - half) / (resp[inside] - resp[outside]);
        return angles[inside] + t * (angles[outside] - angles[inside]);
    };
    std::size_t lo = peak;
    while (lo > 0 && resp[lo - 1] >= half)
        --lo;
    std::size_t hi = peak;
    while (hi + 1 < resp.size() && resp[hi + 1] >= half)
        ++hi;
    if (lo == 0 || hi + 1 == resp.size())
        throw std::domain_error("half_power_width: passband reaches the edge of the visible region");
    return crossing(hi, hi + 1) - crossing(lo, lo - 1);
}

} // namespace ttd
