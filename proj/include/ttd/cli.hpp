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

// Command-line front end. Exit codes are shared by every command:
//   0 success, 1 input error, 2 infeasible design or size mismatch, 3 failed validation.

#include <cstdint>
#include <optional>
#include <string>

namespace ttd::cli
{

enum ExitCode : int
{
    ok = 0,
    input_failure = 1,
    infeasible = 2,
    validation_failure = 3,
};

struct Options
{
    std::string config;
    std::string codebook;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> angles;
};

int cmd_design(const Options &opt);
int cmd_pattern(const Options &opt);
int cmd_map(const Options &opt);
int cmd_sweep(const Options &opt);
int cmd_validate(const Options &opt);

/// Parses argv and dispatches; never throws.
int run(int argc, const char *const *argv);

} // namespace ttd::cli
