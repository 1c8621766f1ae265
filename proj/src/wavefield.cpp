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

#include "ttd/wavefield.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ttd
{

OfdmGrid::OfdmGrid(double f_c, double bw, int m_tot) : f_c_(f_c), bw_(bw), m_tot_(m_tot)
{
    if (!(std::isfinite(f_c) && std::isfinite(bw)))
        throw std::invalid_argument("OfdmGrid: f_c and bw must be finite");
    if (!(bw > 0.0) || !(f_c > bw / 2.0))
        throw std::invalid_argument("OfdmGrid: require f_c > bw/2 > 0");
    if (m_tot < 2)
        throw std::invalid_argument("OfdmGrid: m_tot must be at least 2");
}

double OfdmGrid::frequency(int m) const
{
    if (m < 1 || m > m_tot_)
        throw std::out_of_range("subcarrier index " + std::to_string(m) + " outside [1, " + std::to_string(m_tot_) +
                                "]");
    return f_c_ - bw_ / 2.0 + bw_ * static_cast<double>(m - 1) / static_cast<double>(m_tot_ - 1);
}

ArrayConfig::ArrayConfig(int n_t, double spacing_factor) : n_t_(n_t), spacing_factor_(spacing_factor)
{
    if (n_t < 2)
        throw std::invalid_argument("ArrayConfig: n_t must be at least 2");
    if (!(spacing_factor > 0.0) || !std::isfinite(spacing_factor))
        throw std::invalid_argument("ArrayConfig: spacing_factor must be positive");
}

DelayPhaseProfile::DelayPhaseProfile(std::vector<double> delays, std::vector<double> phases)
    : delays_(std::move(delays)), phases_(std::move(phases))
{
    if (delays_.size() != phases_.size())
        throw std::invalid_argument("DelayPhaseProfile: delays and phases differ in length (" +
                                    std::to_string(delays_.size()) + " vs " + std::to_string(phases_.size()) + ")");
    if (delays_.empty())
        throw std::invalid_argument("DelayPhaseProfile: empty profile");
    for (std::size_t n = 0; n < delays_.size(); ++n)
        if (!std::isfinite(delays_[n]) || !std::isfinite(phases_[n]))
            throw std::invalid_argument("DelayPhaseProfile: non-finite entry at antenna " + std::to_string(n));
}

DelayPhaseProfile DelayPhaseProfile::zeros(int n_t)
{
    return DelayPhaseProfile(std::vector<double>(static_cast<std::size_t>(n_t), 0.0),
                             std::vector<double>(static_cast<std::size_t>(n_t), 0.0));
}

double subcarrier_frequency(const OfdmGrid &grid, int m) { return grid.frequency(m); }

std::vector<cplx> array_response(const ArrayConfig &cfg, const OfdmGrid &grid, double sin_theta, double f, int stride)
{
    if (stride < 1)
        throw std::invalid_argument("array_response: stride must be positive");
    if (cfg.n_t() % stride != 0)
        throw std::invalid_argument("array_response: n_t=" + std::to_string(cfg.n_t()) +
                                    " not divisible by stride " + std::to_string(stride));
    const int count = cfg.n_t() / stride;
    // Phase in cycles: -(f * n * stride * spacing * sin_theta) / (2 f_c).
    const dd base = dd_div(two_prod(f, sin_theta), 2.0 * grid.f_c());
    std::vector<cplx> out(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n)
    {
        const double pos = static_cast<double>(n) * stride * cfg.spacing_factor();
        out[static_cast<std::size_t>(n)] = unit_phasor_cycles(-frac_centered(dd_mul(base, pos)));
    }
    return out;
}

namespace
{
double reduced_sum(dd a, dd b, dd c)
{
    return frac_centered(dd_add(dd_add(a, b), c));
}
} // namespace

std::vector<cplx> precoder(const DelayPhaseProfile &profile, double f)
{
    if (!(f > 0.0))
        throw std::invalid_argument("precoder: frequency must be positive");
    const double scale = 1.0 / std::sqrt(static_cast<double>(profile.size()));
    std::vector<cplx> w(static_cast<std::size_t>(profile.size()));
    for (std::size_t n = 0; n < w.size(); ++n)
    {
        const dd delay = two_prod(f, profile.delays()[n]);
        const double c = frac_centered(dd_add(delay, radians_to_cycles(profile.phases()[n])));
        w[n] = scale * unit_phasor_cycles(c);
    }
    return w;
}

GainKernel::GainKernel(const DelayPhaseProfile &profile, const ArrayConfig &cfg, const OfdmGrid &grid)
    : delays_(profile.delays()), two_f_c_(2.0 * grid.f_c()), inv_n_(1.0 / static_cast<double>(profile.size()))
{
    if (profile.size() != cfg.n_t())
        throw std::invalid_argument("profile has " + std::to_string(profile.size()) + " antennas, array has " +
                                    std::to_string(cfg.n_t()));
    phase_cycles_.reserve(delays_.size());
    positions_.reserve(delays_.size());
    for (std::size_t n = 0; n < delays_.size(); ++n)
    {
        phase_cycles_.push_back(radians_to_cycles(profile.phases()[n]));
        positions_.push_back(static_cast<double>(n) * cfg.spacing_factor());
    }
}

double GainKernel::operator()(double sin_theta, double f_precoder, double f_response) const
{
    // conj(w_n) * a_n = exp(-j 2 pi (f tau_n + phi_n / 2pi + f n s / 2 f_c)) / sqrt(N)
    const dd base = dd_div(two_prod(f_response, sin_theta), two_f_c_);
    // Neumaier-compensated accumulation of the real and imaginary parts.
    double re = 0.0, re_c = 0.0, im = 0.0, im_c = 0.0;
    auto accumulate = [](double &sum, double &comp, double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    };
    for (std::size_t n = 0; n < delays_.size(); ++n)
    {
        const double c = reduced_sum(two_prod(f_precoder, delays_[n]), phase_cycles_[n], dd_mul(base, positions_[n]));
        const cplx z = unit_phasor_cycles(-c);
        accumulate(re, re_c, z.real());
        accumulate(im, im_c, z.imag());
    }
    re += re_c;
    im += im_c;
    return (re * re + im * im) * inv_n_;
}

double gain(const DelayPhaseProfile &profile, const ArrayConfig &cfg, const OfdmGrid &grid, double sin_theta, int m)
{
    const double f = grid.frequency(m);
    return GainKernel(profile, cfg, grid)(sin_theta, f, f);
}

double gain_at(const DelayPhaseProfile &profile, const ArrayConfig &cfg, const OfdmGrid &grid, double sin_theta,
               double f_precoder, double f_response)
{
    return GainKernel(profile, cfg, grid)(sin_theta, f_precoder, f_response);
}

std::vector<double> sine_grid(int count)
{
    if (count < 2)
        throw std::invalid_argument("sine_grid: need at least 2 points");
    std::vector<double> s(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j)
        s[static_cast<std::size_t>(j)] = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(count);
    return s;
}

std::vector<int> spread_subcarriers(const OfdmGrid &grid, int count)
{
    if (count < 1)
        throw std::invalid_argument("spread_subcarriers: count must be positive");
    if (count >= grid.m_tot())
    {
        std::vector<int> all(static_cast<std::size_t>(grid.m_tot()));
        for (int m = 1; m <= grid.m_tot(); ++m)
            all[static_cast<std::size_t>(m - 1)] = m;
        return all;
    }
    std::vector<int> idx(static_cast<std::size_t>(count));
    if (count == 1)
    {
        idx[0] = (grid.m_tot() + 1) / 2;
        return idx;
    }
    for (int i = 0; i < count; ++i)
        idx[static_cast<std::size_t>(i)] =
            1 + static_cast<int>(std::lround(static_cast<double>(i) * (grid.m_tot() - 1) / (count - 1)));
    return idx;
}

GainGrid gain_grid(const DelayPhaseProfile &profile, const ArrayConfig &cfg, const OfdmGrid &grid, int angle_count,
                   std::span<const int> freq_indices)
{
    if (angle_count < 2)
        throw std::invalid_argument("gain_grid: angle_count must be at least 2");
    if (freq_indices.empty())
        throw std::invalid_argument("gain_grid: empty frequency list");
    GainGrid out;
    out.angles = sine_grid(angle_count);
    out.freq_indices.assign(freq_indices.begin(), freq_indices.end());
    for (int m : freq_indices)
        out.freqs.push_back(grid.frequency(m));
    const GainKernel kernel(profile, cfg, grid);
    out.values.resize(out.rows() * out.cols());
    for (std::size_t r = 0; r < out.rows(); ++r)
    {
        const double f = out.freqs[r];
        for (std::size_t c = 0; c < out.cols(); ++c)
            out.values[r * out.cols() + c] = kernel(out.angles[c], f, f);
    }
    return out;
}

} // namespace ttd
