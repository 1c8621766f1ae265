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

// Codebook JSON and the CSV emitters. Numbers are written with the shortest
// representation that round-trips, so re-reading an export reproduces the
// exact doubles.

#include "ttd/beam_analysis.hpp"
#include "ttd/link_sim.hpp"
#include "ttd/staircase.hpp"

#include <json.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace ttd
{

/// Malformed or inconsistent input file.
class input_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

struct Codebook
{
    int n_t = 0;
    StaircaseParams params;
    DelayPhaseProfile profile;
};

nlohmann::json codebook_to_json(const StaircaseParams &params, const DelayPhaseProfile &profile);

/// Throws input_error naming the offending field.
Codebook codebook_from_json(const nlohmann::json &j);

/// Reads and parses a JSON file; throws input_error on I/O or syntax errors.
nlohmann::json read_json_file(const std::string &path);

void write_json_file(const std::string &path, const nlohmann::json &j);

/// m,f_hz,sin_theta,gain_db
void write_pattern_csv(std::ostream &os, const GainGrid &grid);

/// m,f_hz,sin_theta_peak,theta_peak_deg,gain_peak_db
void write_beam_map_csv(std::ostream &os, const BeamMap &map);

/// variable,value,method,spectral_efficiency_bps_hz,sectors_averaged,sectors_skipped
void write_sweep_csv(std::ostream &os, const SweepResult &result);

} // namespace ttd
