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

// Staircase TTD codebooks: the uniform (integer step) and modulo (real step)
// constructions, and the closed-form two-stage design that maps K equal
// sub-bands onto K sinusoidally equidistant user angles.

#include "ttd/wavefield.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ttd
{

/// Raised when a construction is asked for a formulation it cannot build.
class formulation_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an operation's documented precondition does not hold.
class precondition_error : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

enum class Formulation
{
    UniformInteger,
    Modulo,
};

std::string to_string(Formulation f);
Formulation formulation_from_string(const std::string &name);

/// The five staircase generators. Delays in seconds, phases in radians.
struct StaircaseParams
{
    double d = 1.0;
    double dtau_jump = 0.0;
    double dphi_jump = 0.0;
    double dtau_step = 0.0;
    double dphi_step = 0.0;
    Formulation formulation = Formulation::UniformInteger;

    /// Low-rate increments applied every D elements (tau_l, phi_l).
    double dtau_low() const { return dtau_jump - d * dtau_step; }
    double dphi_low() const { return dphi_jump - d * dphi_step; }
};

/// Users and sector for the two-stage design. Angles in radians.
struct DesignSpec
{
    int k_users = 2;
    double theta_1 = 0.0;
    double theta_2 = 0.0;
    OfdmGrid grid;
    ArrayConfig cfg;
};

struct DesignResult
{
    StaircaseParams params;
    std::optional<DelayPhaseProfile> profile; // empty when infeasible
    std::vector<double> target_angles;        // radians, one per user
    std::vector<double> predicted_angles;     // radians, grating lobe q at f^(q)
    double gamma = 1.0;
    double f_c = 0.0;
    double d_exact = 0.0; // 2(K-1)/(gamma |sin theta_2 - sin theta_1|)
    std::vector<double> subband_centers; // Hz
    bool increasing = true;
    bool feasible = false;
    std::string infeasible_reason;
};

/// Element-wise log(e^a (x) e^b): out[i*|b| + j] = a[i] + b[j].
std::vector<double> kron_sum(const std::vector<double> &a, const std::vector<double> &b);

/// Uniform staircase; tau_1 = phi_1 = 0, phases wrapped to [0, 2 pi).
DelayPhaseProfile build_uniform(const StaircaseParams &params, int n_t);

/// Threshold-wrapped staircase: tau_n = mod((n-1) dtau_step, D dtau_step - dtau_jump).
DelayPhaseProfile build_modulo(const StaircaseParams &params, int n_t);

/// Dispatches on params.formulation.
DelayPhaseProfile build_profile(const StaircaseParams &params, int n_t);

/// gamma = 1 + BW/(2 f_c) - BW/(2 K f_c).
double squint_factor(int k, const OfdmGrid &grid);

/// Centre frequency of sub-band q (1-based) out of K equal sub-bands.
double subband_center(int q, int k, const OfdmGrid &grid);

/// sin theta^(q) for q = 1..K, evenly spaced between sin theta_1 and sin theta_2.
std::vector<double> target_sines(int k, double theta_1, double theta_2);

/// Real-valued D with modulo staircase; predicted lobes coincide with the targets
/// for the first and last sub-band.
DesignResult two_stage_design(const DesignSpec &spec);

/// Same pipeline with D rounded up to an integer and the uniform staircase.
DesignResult integer_design(const DesignSpec &spec);

/// Re-targets the filter so the first sub-band lands on theta^(i), i in [1, K].
StaircaseParams rotate_mapping(const DesignResult &result, int i);

} // namespace ttd
