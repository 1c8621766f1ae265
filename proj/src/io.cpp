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

#include "ttd/io.hpp"

#include "ttd/numeric.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

namespace ttd
{

std::string format_double(double x)
{
    char buf[64];
    // Integral values such as frequencies in Hz read better without an exponent.
    const bool integral = std::isfinite(x) && std::abs(x) < 1e17 && x == std::trunc(x);
    const auto r = integral ? std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed)
                            : std::to_chars(buf, buf + sizeof buf, x);
    return {buf, r.ptr};
}

nlohmann::json codebook_to_json(const StaircaseParams &params, const DelayPhaseProfile &profile)
{
    nlohmann::json j;
    j["n_t"] = profile.size();
    j["formulation"] = to_string(params.formulation);
    j["d"] = params.d;
    j["dtau_jump_s"] = params.dtau_jump;
    j["dphi_jump_rad"] = params.dphi_jump;
    j["dtau_step_s"] = params.dtau_step;
    j["dphi_step_rad"] = params.dphi_step;
    j["delays_s"] = profile.delays();
    j["phases_rad"] = profile.phases();
    return j;
}

namespace
{
const nlohmann::json &field(const nlohmann::json &j, const char *key)
{
    if (!j.is_object())
        throw input_error("codebook: expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end())
        throw input_error(std::string("codebook: missing field '") + key + "'");
    return *it;
}

double number(const nlohmann::json &j, const char *key)
{
    const auto &v = field(j, key);
    if (!v.is_number() || !std::isfinite(v.get<double>()))
        throw input_error(std::string("codebook: field '") + key + "' must be a finite number");
    return v.get<double>();
}

std::vector<double> numbers(const nlohmann::json &j, const char *key)
{
    const auto &v = field(j, key);
    if (!v.is_array())
        throw input_error(std::string("codebook: field '") + key + "' must be an array");
    std::vector<double> out;
    for (const auto &e : v)
    {
        if (!e.is_number())
            throw input_error(std::string("codebook: field '") + key + "' must hold numbers only");
        out.push_back(e.get<double>());
    }
    return out;
}
} // namespace

Codebook codebook_from_json(const nlohmann::json &j)
{
    const auto &n_field = field(j, "n_t");
    if (!n_field.is_number_integer() || n_field.get<long long>() < 2)
        throw input_error("codebook: field 'n_t' must be an integer >= 2");
    const int n_t = n_field.get<int>();

    StaircaseParams p;
    const auto &form = field(j, "formulation");
    if (!form.is_string())
        throw input_error("codebook: field 'formulation' must be a string");
    try
    {
        p.formulation = formulation_from_string(form.get<std::string>());
    }
    catch (const std::invalid_argument &e)
    {
        throw input_error(std::string("codebook: ") + e.what());
    }
    p.d = number(j, "d");
    p.dtau_jump = number(j, "dtau_jump_s");
    p.dphi_jump = number(j, "dphi_jump_rad");
    p.dtau_step = number(j, "dtau_step_s");
    p.dphi_step = number(j, "dphi_step_rad");

    auto delays = numbers(j, "delays_s");
    auto phases = numbers(j, "phases_rad");
    if (static_cast<int>(delays.size()) != n_t || static_cast<int>(phases.size()) != n_t)
        throw input_error("codebook: delays_s and phases_rad must both have n_t = " + std::to_string(n_t) +
                          " entries");
    try
    {
        return {n_t, p, DelayPhaseProfile(std::move(delays), std::move(phases))};
    }
    catch (const std::invalid_argument &e)
    {
        throw input_error(std::string("codebook: ") + e.what());
    }
}

nlohmann::json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open '" + path + "'");
    try
    {
        return nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw input_error("'" + path + "': " + e.what());
    }
}

void write_json_file(const std::string &path, const nlohmann::json &j)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

void write_pattern_csv(std::ostream &os, const GainGrid &grid)
{
    os << "m,f_hz,sin_theta,gain_db\n";
    for (std::size_t r = 0; r < grid.rows(); ++r)
    {
        const std::string prefix = std::to_string(grid.freq_indices[r]) + ',' + format_double(grid.freqs[r]) + ',';
        for (std::size_t c = 0; c < grid.cols(); ++c)
            os << prefix << format_double(grid.angles[c]) << ',' << format_double(linear_to_db(grid.at(r, c)))
               << '\n';
    }
}

void write_beam_map_csv(std::ostream &os, const BeamMap &map)
{
    os << "m,f_hz,sin_theta_peak,theta_peak_deg,gain_peak_db\n";
    for (std::size_t i = 0; i < map.freqs.size(); ++i)
        os << map.freq_indices[i] << ',' << format_double(map.freqs[i]) << ',' << format_double(map.peak_sin_theta[i])
           << ',' << format_double(rad_to_deg(std::asin(map.peak_sin_theta[i]))) << ','
           << format_double(linear_to_db(map.peak_gain[i])) << '\n';
}

void write_sweep_csv(std::ostream &os, const SweepResult &result)
{
    os << "variable,value,method,spectral_efficiency_bps_hz,sectors_averaged,sectors_skipped\n";
    const std::string var = to_string(result.variable);
    for (std::size_t v = 0; v < result.values.size(); ++v)
        for (std::size_t j = 0; j < result.methods.size(); ++j)
            os << var << ',' << format_double(result.values[v]) << ',' << result.methods[j] << ','
               << format_double(result.spectral_efficiency[j][v]) << ',' << result.sectors_averaged[v] << ','
               << result.sectors_skipped[v] << '\n';
}

} // namespace ttd
