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

#include "ttd/config.hpp"

#include "ttd/numeric.hpp"

#include <cmath>
#include <limits>

namespace ttd
{

namespace
{
[[noreturn]] void fail(const std::string &path, const std::string &what) { throw input_error(path + ": " + what); }

const nlohmann::json *find(const nlohmann::json &obj, const std::string &path, const char *key, bool required)
{
    const auto it = obj.find(key);
    if (it == obj.end())
    {
        if (required)
            fail(path + "/" + key, "missing required key");
        return nullptr;
    }
    return &*it;
}

const nlohmann::json &section(const nlohmann::json &root, const char *key)
{
    const auto *s = find(root, "", key, true);
    if (!s->is_object())
        fail(std::string("/") + key, "expected an object");
    return *s;
}

double get_number(const nlohmann::json &obj, const std::string &path, const char *key, std::optional<double> fallback)
{
    const auto *v = find(obj, path, key, !fallback);
    if (!v)
        return *fallback;
    if (!v->is_number() || !std::isfinite(v->get<double>()))
        fail(path + "/" + key, "expected a finite number");
    return v->get<double>();
}

long long get_integer(const nlohmann::json &obj, const std::string &path, const char *key,
                      std::optional<long long> fallback, long long lo, long long hi)
{
    const auto *v = find(obj, path, key, !fallback);
    if (!v)
        return *fallback;
    if (!v->is_number_integer())
        fail(path + "/" + key, "expected an integer");
    const long long x = v->get<long long>();
    if (x < lo || x > hi)
        fail(path + "/" + key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
}

std::string get_string(const nlohmann::json &obj, const std::string &path, const char *key, const char *fallback)
{
    const auto *v = find(obj, path, key, fallback == nullptr);
    if (!v)
        return fallback;
    if (!v->is_string())
        fail(path + "/" + key, "expected a string");
    return v->get<std::string>();
}

template <class F>
auto guarded(const std::string &path, F &&make)
{
    try
    {
        return make();
    }
    catch (const std::invalid_argument &e)
    {
        fail(path, e.what());
    }
}

constexpr long long int_max = std::numeric_limits<int>::max();
} // namespace

DesignSpec RunConfig::design_spec() const
{
    if (!design)
        throw input_error("/design: missing required section");
    return {design->k_users, design->theta_1, design->theta_2, grid, cfg};
}

LinkConfig RunConfig::link_config() const
{
    LinkConfig link{grid, cfg, 1, db_to_linear(snr_db), 0.0, 0.0};
    if (design)
    {
        link.k_users = design->k_users;
        link.theta_1 = design->theta_1;
        link.theta_2 = design->theta_2;
    }
    return link;
}

RunConfig parse_run_config(const nlohmann::json &j)
{
    if (!j.is_object())
        fail("", "config must be a JSON object");

    const auto &g = section(j, "grid");
    const double f_c = get_number(g, "/grid", "f_c", std::nullopt);
    const double bw = get_number(g, "/grid", "bw", std::nullopt);
    const int m_tot = static_cast<int>(get_integer(g, "/grid", "m_tot", 4096, 1, int_max));
    OfdmGrid grid = guarded("/grid", [&] { return OfdmGrid(f_c, bw, m_tot); });

    const auto &a = section(j, "array");
    const int n_t = static_cast<int>(get_integer(a, "/array", "n_t", std::nullopt, 2, 1 << 20));
    const double spacing = get_number(a, "/array", "spacing_factor", 1.0);
    ArrayConfig cfg = guarded("/array", [&] { return ArrayConfig(n_t, spacing); });

    RunConfig rc{get_string(j, "", "scenario", ""), grid, cfg, std::nullopt, 10.0, std::nullopt};

    if (j.contains("design"))
    {
        const auto &d = section(j, "design");
        DesignBlock b;
        b.k_users = static_cast<int>(get_integer(d, "/design", "k_users", std::nullopt, 1, n_t));
        for (auto [key, dst] : {std::pair{"theta_1_deg", &b.theta_1}, std::pair{"theta_2_deg", &b.theta_2}})
        {
            const double deg = get_number(d, "/design", key, std::nullopt);
            if (!(std::abs(deg) < 90.0))
                fail(std::string("/design/") + key, "must lie strictly inside (-90, 90) degrees");
            *dst = deg_to_rad(deg);
        }
        const std::string form = get_string(d, "/design", "formulation", "modulo");
        b.formulation = guarded("/design/formulation", [&] { return formulation_from_string(form); });
        b.rotation = static_cast<int>(get_integer(d, "/design", "rotation", 1, 1, b.k_users));
        rc.design = b;
    }

    if (j.contains("link"))
        rc.snr_db = get_number(section(j, "link"), "/link", "snr_db", 10.0);

    if (j.contains("sweep"))
    {
        const auto &s = section(j, "sweep");
        SweepBlock b;
        const std::string var = get_string(s, "/sweep", "variable", nullptr);
        b.variable = guarded("/sweep/variable", [&] { return sweep_variable_from_string(var); });
        const auto *vals = find(s, "/sweep", "values", true);
        if (!vals->is_array() || vals->empty())
            fail("/sweep/values", "expected a non-empty array of numbers");
        for (const auto &v : *vals)
        {
            if (!v.is_number())
                fail("/sweep/values", "expected numbers only");
            b.values.push_back(v.get<double>());
        }
        for (std::size_t i = 1; i < b.values.size(); ++i)
            if (!(b.values[i] > b.values[i - 1]))
                fail("/sweep/values", "must be strictly increasing");
        b.sector_samples = static_cast<int>(get_integer(s, "/sweep", "sector_samples", 64, 1, 1 << 20));
        b.seed = static_cast<std::uint64_t>(get_integer(s, "/sweep", "seed", 0, 0, std::numeric_limits<long long>::max()));
        rc.sweep = b;
    }

    if (j.contains("output"))
    {
        const auto &o = section(j, "output");
        rc.out_dir = get_string(o, "/output", "dir", ".");
        rc.angle_grid_size = static_cast<int>(get_integer(o, "/output", "angle_grid_size", 2048, 2, 1 << 24));
        rc.freq_count = static_cast<int>(get_integer(o, "/output", "freq_count", 64, 1, m_tot));
        rc.seed = static_cast<std::uint64_t>(get_integer(o, "/output", "seed", 0, 0, std::numeric_limits<long long>::max()));
    }
    return rc;
}

RunConfig load_run_config(const std::string &path) { return parse_run_config(read_json_file(path)); }

DesignResult run_configured_design(const RunConfig &rc)
{
    const DesignSpec spec = rc.design_spec();
    if (spec.k_users < 2)
        throw input_error("/design/k_users: the staircase design needs at least 2 users");
    DesignResult res =
        rc.design->formulation == Formulation::Modulo ? two_stage_design(spec) : integer_design(spec);
    if (rc.design->rotation != 1)
    {
        res.params = rotate_mapping(res, rc.design->rotation);
        if (res.feasible)
            res.profile = build_profile(res.params, rc.cfg.n_t());
    }
    return res;
}

} // namespace ttd
