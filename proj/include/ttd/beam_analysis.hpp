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

// Closed-form frequency-spatial analysis of staircase codebooks, plus the
// numerical counterparts (beam maps, on-target gain) used to check them.
//
// A uniform staircase with integer D splits into D interleaved sub-arrays of
// N_T/D elements at D*lambda_c/2 pitch. Each sub-array produces D grating
// lobes (Psi_jump = 2z); the superposition of the D sub-arrays acts as a
// spatial filter F centred where Psi_o = 2z. Under the 1/sqrt(N_T) precoder
// normalization the full gain factors as
//
//     G = (1/D) * G_sub * F,   G_sub peaks at N_T/D,  F peaks at D^2.

#include "ttd/staircase.hpp"
#include "ttd/wavefield.hpp"

#include <span>
#include <vector>

namespace ttd
{

/// Staircase parameters seen as D interleaved uniform TTD sub-arrays.
struct SubArrayView
{
    double d = 1.0;
    double dtau_jump = 0.0;
    double dphi_jump = 0.0;
    double dtau_step = 0.0;
    double dphi_step = 0.0;
    int n_t = 2;
    double f_c = 1.0;

    static SubArrayView from(const StaircaseParams &params, int n_t, const OfdmGrid &grid);

    /// Elements per sub-array, N_T / D.
    double n_sub() const { return static_cast<double>(n_t) / d; }
};

/// Per-frequency strongest direction extracted from a GainGrid.
struct BeamMap
{
    std::vector<int> freq_indices;
    std::vector<double> freqs;
    std::vector<double> peak_sin_theta;
    std::vector<double> peak_gain;
};

/// B_k(f_m): full gain sliced at each user angle, K rows by M_tot columns.
struct OnTargetGain
{
    std::vector<double> user_angles; // radians
    std::vector<std::vector<double>> values;
};

/// 2 f dtau_jump + dphi_jump/pi + D (f/f_c) sin_theta.
double psi_jump(const SubArrayView &view, double sin_theta, double f);

/// 2 f dtau_step + (f/f_c) sin_theta + dphi_step/pi.
double psi_step(const SubArrayView &view, double sin_theta, double f);

/// Normalized sub-array gain (D/N_T)|sin((N_T/D)(pi/2)Psi)/sin((pi/2)Psi)|^2, peak N_T/D.
double subarray_gain(const SubArrayView &view, double sin_theta, double f);

/// Spatial filter |sin((D pi/2)Psi_o)/sin((pi/2)Psi_o)|^2, peak D^2.
double filter_response(const SubArrayView &view, double sin_theta, double f);

/// Grating-lobe centres at subcarrier m in sin theta, listed from the top
/// solution downwards; adjacent entries are (2/D)(f_c/f_m) apart. Only
/// directions inside [-1, 1] are returned.
std::vector<double> beam_centres(const SubArrayView &view, const OfdmGrid &grid, int m);

/// beam_centres() at an arbitrary frequency f (Hz).
std::vector<double> beam_centres_at(const SubArrayView &view, double f);

/// d(sin theta*)/df = -2 dtau_jump / D, per Hz. This is the large-|dtau_jump|
/// limit; a given lobe actually moves at -(sin theta* + 2 f_c dtau_jump / D) / f.
double map_slope(const SubArrayView &view);

/// Filter-centre trajectory sin theta_o(f_m).
double filter_centre(const SubArrayView &view, const OfdmGrid &grid, int m);

/// filter_centre() at an arbitrary frequency f (Hz).
double filter_centre_at(const SubArrayView &view, double f);

/// (1/D) G_sub F. Only valid for integer D dividing N_T; throws precondition_error otherwise.
double factorized_gain(const SubArrayView &view, const ArrayConfig &cfg, const OfdmGrid &grid, double sin_theta,
                       int m);

/// subarray_gain() sampled on the same layout as gain_grid().
GainGrid subarray_gain_grid(const SubArrayView &view, const OfdmGrid &grid, int angle_count,
                            std::span<const int> freq_indices);

/// Row-wise argmax; ties go to the smaller sin theta.
BeamMap extract_beam_map(const GainGrid &grid);

/// Argmax of the full gain over a sine grid of angle_count points at each
/// listed frequency (Hz, not necessarily a subcarrier); ties go to the smaller sin theta.
std::vector<double> peak_sines(const DelayPhaseProfile &profile, const ArrayConfig &cfg, const OfdmGrid &grid,
                               std::span<const double> freqs, int angle_count);

/// Indices of local maxima in one row whose value is at least min_fraction of the row maximum.
std::vector<std::size_t> local_peaks(std::span<const double> row, double min_fraction);

OnTargetGain on_target_gain(const DelayPhaseProfile &profile, const ArrayConfig &cfg, const OfdmGrid &grid,
                            std::span<const double> user_angles);

/// |sin theta_act^(q) - sin theta^(q)| for each user.
std::vector<double> mapping_discrepancy(const DesignResult &result);

/// Half-power width (in sin theta) of filter_response at subcarrier m, measured
/// on a sine grid of angle_count points with linear interpolation of the
/// crossings.
double half_power_width(const SubArrayView &view, const OfdmGrid &grid, int m, int angle_count);

} // namespace ttd
