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

// Physical primitives: OFDM frequency grid, uniform linear array response,
// the delay/phase precoder and the beamforming gain |w^H a|^2.

#include "ttd/numeric.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ttd
{

/// OFDM grid with M_tot subcarriers spread evenly over [f_c - BW/2, f_c + BW/2].
class OfdmGrid
{
public:
    OfdmGrid(double f_c, double bw, int m_tot);

    double f_c() const { return f_c_; }
    double bw() const { return bw_; }
    int m_tot() const { return m_tot_; }

    /// Frequency of subcarrier m, 1-based. Throws std::out_of_range.
    double frequency(int m) const;

private:
    double f_c_;
    double bw_;
    int m_tot_;
};

/// Uniform linear array. spacing_factor is the pitch in units of lambda_c/2.
class ArrayConfig
{
public:
    explicit ArrayConfig(int n_t, double spacing_factor = 1.0);

    int n_t() const { return n_t_; }
    double spacing_factor() const { return spacing_factor_; }

private:
    int n_t_;
    double spacing_factor_;
};

/// Per-antenna true time delays (seconds) and phase shifts (radians).
class DelayPhaseProfile
{
public:
    DelayPhaseProfile(std::vector<double> delays, std::vector<double> phases);

    /// All-zero profile: a frequency-flat broadside beam.
    static DelayPhaseProfile zeros(int n_t);

    const std::vector<double> &delays() const { return delays_; }
    const std::vector<double> &phases() const { return phases_; }
    int size() const { return static_cast<int>(delays_.size()); }

private:
    std::vector<double> delays_;
    std::vector<double> phases_;
};

/// Gain sampled on (subcarrier, sin theta). Row-major, rows are frequencies.
struct GainGrid
{
    std::vector<double> angles;    // sin theta, ascending
    std::vector<int> freq_indices; // 1-based subcarrier indices
    std::vector<double> freqs;     // Hz
    std::vector<double> values;    // linear power gain

    std::size_t rows() const { return freqs.size(); }
    std::size_t cols() const { return angles.size(); }
    double at(std::size_t row, std::size_t col) const { return values[row * angles.size() + col]; }
    std::span<const double> row(std::size_t r) const { return {values.data() + r * cols(), cols()}; }
};

double subcarrier_frequency(const OfdmGrid &grid, int m);

/// exp(-j*pi*(f/f_c)*n*stride*spacing*sin_theta) for n = 0..N_T/stride-1.
std::vector<cplx> array_response(const ArrayConfig &cfg, const OfdmGrid &grid, double sin_theta, double f,
                                 int stride = 1);

/// (1/sqrt(N_T)) * exp(j*(2*pi*f*tau_n + phi_n)).
std::vector<cplx> precoder(const DelayPhaseProfile &profile, double f);

/// Precomputed per-element state for repeated gain evaluations of one profile.
///
/// Both gain() and gain_grid() go through this kernel, so their results are
/// bit-identical for the same coordinates.
class GainKernel
{
public:
    GainKernel(const DelayPhaseProfile &profile, const ArrayConfig &cfg, const OfdmGrid &grid);

    /// |w(f_precoder)^H a(sin_theta, f_response)|^2. Passing f_response = f_c
    /// removes beam squint from the array response.
    double operator()(double sin_theta, double f_precoder, double f_response) const;

    double operator()(double sin_theta, double f) const { return (*this)(sin_theta, f, f); }

private:
    std::vector<double> delays_;
    std::vector<dd> phase_cycles_; // phi_n / (2*pi)
    std::vector<double> positions_; // n * spacing_factor
    double two_f_c_;
    double inv_n_;
};

/// Beamforming gain at sin_theta on subcarrier m; lies in [0, N_T].
double gain(const DelayPhaseProfile &profile, const ArrayConfig &cfg, const OfdmGrid &grid, double sin_theta, int m);

/// gain() with independent precoder and response frequencies.
double gain_at(const DelayPhaseProfile &profile, const ArrayConfig &cfg, const OfdmGrid &grid, double sin_theta,
               double f_precoder, double f_response);

/// Uniform grid of `count` points over [-1, 1): -1 + 2j/count.
std::vector<double> sine_grid(int count);

/// `count` subcarrier indices spread evenly over [1, M_tot].
std::vector<int> spread_subcarriers(const OfdmGrid &grid, int count);

/// Gain on the sine grid of angle_count points, one row per listed subcarrier.
GainGrid gain_grid(const DelayPhaseProfile &profile, const ArrayConfig &cfg, const OfdmGrid &grid, int angle_count,
                   std::span<const int> freq_indices);

} // namespace ttd
