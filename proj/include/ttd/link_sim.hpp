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

// Multi-user OFDM downlink evaluation. Each user sees a single line-of-sight
// path at its target angle and owns a contiguous block of BW/K; the rate is
// averaged over all assigned subcarriers.

#include "ttd/staircase.hpp"
#include "ttd/wavefield.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ttd
{

/// No feasible scenario was left to evaluate.
class infeasible_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct LinkConfig
{
    OfdmGrid grid;
    ArrayConfig cfg;
    int k_users = 1;
    double snr_linear = 1.0; // per subcarrier, before array gain
    double theta_1 = 0.0;    // radians
    double theta_2 = 0.0;
};

/// Inclusive 1-based subcarrier range.
struct SubbandRange
{
    int first = 1;
    int last = 1;

    int size() const { return last - first + 1; }
};

/// K equal contiguous ranges covering [1, M_tot]. Throws std::invalid_argument if K does not divide M_tot.
std::vector<SubbandRange> subband_assignment(const LinkConfig &link);

/// As subband_assignment over the largest multiple of K not exceeding M_tot.
std::vector<SubbandRange> trimmed_assignment(int k_users, int m_tot);

/// User angles in radians: the K evenly spaced targets between theta_1 and theta_2.
std::vector<double> user_angles(const LinkConfig &link);

struct RateResult
{
    double spectral_efficiency = 0.0; // bits/s/Hz, averaged over used subcarriers
    std::vector<double> per_user;     // bits/s/Hz, averaged over each user's range
};

/// Rates for a precoder profile; B_k(f_m) is its gain towards user k.
RateResult spectral_efficiency(const DelayPhaseProfile &profile, const LinkConfig &link);

/// Rates for B_k(f_m) = N_T everywhere: log2(1 + SNR N_T).
RateResult ideal_spectral_efficiency(const LinkConfig &link);

enum class Method
{
    Ideal,
    PhasedSingleBeam,
    StaircaseUniform,
    StaircaseModulo,
};

std::string to_string(Method m);

/// Evaluation order used by sweeps and CSV output.
inline constexpr Method all_methods[] = {Method::Ideal, Method::PhasedSingleBeam, Method::StaircaseUniform,
                                         Method::StaircaseModulo};

struct LabeledProfile
{
    Method method;
    std::optional<DelayPhaseProfile> profile; // empty for the ideal oracle and infeasible designs
    std::string note;
};

/// The four compared methods for one scenario, in all_methods order.
std::vector<LabeledProfile> baseline_profiles(const LinkConfig &link);

/// Rate of one labeled method; throws infeasible_error when it has no profile.
RateResult evaluate(const LabeledProfile &entry, const LinkConfig &link);

struct SectorSample
{
    std::vector<std::pair<double, double>> sectors; // (theta_1, theta_2) radians
    int rejected = 0;
    std::string warning; // set when fewer than count pairs were found
};

/// Seeded low-discrepancy pairs with sin theta in [sin(-75 deg), sin 75 deg]
/// that satisfy the wrapping feasibility gate ceil(D) < N_T.
SectorSample feasible_sector_sample(int k_users, const OfdmGrid &grid, const ArrayConfig &cfg, int count,
                                    std::uint64_t seed = 0);

enum class SweepVariable
{
    K,
    BW,
    N_T,
    SNR, // values in dB
};

std::string to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string &name);

struct SweepSpec
{
    SweepVariable variable = SweepVariable::SNR;
    std::vector<double> values;
    LinkConfig fixed;
    int sector_samples = 64;
    std::uint64_t seed = 0;
    unsigned workers = 0; // 0 picks the hardware concurrency
};

struct SweepResult
{
    SweepVariable variable = SweepVariable::SNR;
    std::vector<double> values;
    std::vector<std::string> methods;
    std::vector<std::vector<double>> spectral_efficiency; // methods x values
    std::vector<int> sectors_averaged;                    // per value
    std::vector<int> sectors_skipped;                     // per value
};

/// The fixed link with one swept value applied.
LinkConfig apply_sweep_value(const LinkConfig &fixed, SweepVariable variable, double value);

SweepResult run_sweep(const SweepSpec &spec);

} // namespace ttd
