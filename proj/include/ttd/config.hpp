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

// Scenario configuration: one JSON document with the sections grid, array,
// design, link, sweep and output. Angles are given in degrees and converted
// here; everything past this point works in radians.

#include "ttd/io.hpp"
#include "ttd/link_sim.hpp"
#include "ttd/staircase.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ttd
{

struct DesignBlock
{
    int k_users = 2;
    double theta_1 = 0.0; // radians
    double theta_2 = 0.0;
    Formulation formulation = Formulation::Modulo;
    int rotation = 1; // first sub-band served user, 1..K
};

struct SweepBlock
{
    SweepVariable variable = SweepVariable::SNR;
    std::vector<double> values;
    int sector_samples = 64;
    std::uint64_t seed = 0;
};

struct RunConfig
{
    std::string scenario;
    OfdmGrid grid;
    ArrayConfig cfg;
    std::optional<DesignBlock> design;
    double snr_db = 10.0;
    std::optional<SweepBlock> sweep;
    std::string out_dir = ".";
    int angle_grid_size = 2048;
    int freq_count = 64;
    std::uint64_t seed = 0;

    DesignSpec design_spec() const;
    LinkConfig link_config() const;
};

/// Throws input_error with a JSON-pointer style path, e.g. "/grid/f_c: missing required key".
RunConfig parse_run_config(const nlohmann::json &j);

RunConfig load_run_config(const std::string &path);

/// Runs the configured two-stage or integer design, then the rotation if any.
DesignResult run_configured_design(const RunConfig &rc);

} // namespace ttd
