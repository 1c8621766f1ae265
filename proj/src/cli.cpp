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

#include "ttd/cli.hpp"

#include "ttd/beam_analysis.hpp"
#include "ttd/config.hpp"
#include "ttd/io.hpp"
#include "ttd/numeric.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

namespace ttd::cli
{

namespace
{
// Mismatch between a codebook and the configured array.
struct mismatch : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Context
{
    RunConfig rc;
    std::filesystem::path out;
    int angles;
    std::uint64_t seed;
};

Context load(const Options &opt)
{
    if (opt.config.empty())
        throw input_error("--config is required");
    RunConfig rc = load_run_config(opt.config);
    Context c{rc, opt.out ? *opt.out : rc.out_dir, opt.angles ? *opt.angles : rc.angle_grid_size,
              opt.seed ? *opt.seed : rc.seed};
    if (c.angles < 2)
        throw input_error("--angles must be at least 2");
    std::filesystem::create_directories(c.out);
    return c;
}

Codebook load_codebook(const Options &opt, const Context &c)
{
    if (opt.codebook.empty())
        throw input_error("--codebook is required");
    Codebook cb = codebook_from_json(read_json_file(opt.codebook));
    if (cb.n_t != c.rc.cfg.n_t())
        throw mismatch("codebook has n_t = " + std::to_string(cb.n_t) + " but the array has N_T = " +
                       std::to_string(c.rc.cfg.n_t()));
    return cb;
}

void write_text(const std::filesystem::path &path, const std::string &what, auto &&emit)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot write " + what + " to '" + path.string() + "'");
    emit(os);
}

std::vector<double> to_degrees(const std::vector<double> &rad)
{
    std::vector<double> out;
    for (double r : rad)
        out.push_back(rad_to_deg(r));
    return out;
}

// Target served by sub-band q after rotating to user i: cyclic shift by i-1.
std::vector<double> served_targets(const DesignResult &res, int rotation)
{
    const std::size_t k = res.target_angles.size();
    std::vector<double> out(k);
    for (std::size_t q = 0; q < k; ++q)
        out[q] = res.target_angles[(q + static_cast<std::size_t>(rotation - 1)) % k];
    return out;
}

nlohmann::json design_report(const DesignResult &res)
{
    nlohmann::json j;
    j["formulation"] = to_string(res.params.formulation);
    j["feasible"] = res.feasible;
    if (!res.feasible)
        j["infeasible_reason"] = res.infeasible_reason;
    j["d"] = res.params.d;
    j["d_exact"] = res.d_exact;
    j["gamma"] = res.gamma;
    j["dtau_jump_s"] = res.params.dtau_jump;
    j["dphi_jump_rad"] = res.params.dphi_jump;
    j["dtau_step_s"] = res.params.dtau_step;
    j["dphi_step_rad"] = res.params.dphi_step;
    j["subband_centers_hz"] = res.subband_centers;
    j["target_angles_deg"] = to_degrees(res.target_angles);
    j["predicted_angles_deg"] = to_degrees(res.predicted_angles);
    j["mapping_discrepancy"] = mapping_discrepancy(res);
    return j;
}

int guarded(const char *name, auto &&body)
{
    try
    {
        return body();
    }
    catch (const input_error &e)
    {
        std::cerr << name << ": " << e.what() << '\n';
        return input_failure;
    }
    catch (const mismatch &e)
    {
        std::cerr << name << ": " << e.what() << '\n';
        return infeasible;
    }
    catch (const infeasible_error &e)
    {
        std::cerr << name << ": " << e.what() << '\n';
        return infeasible;
    }
    catch (const precondition_error &e)
    {
        std::cerr << name << ": " << e.what() << '\n';
        return infeasible;
    }
    catch (const std::exception &e)
    {
        std::cerr << name << ": " << e.what() << '\n';
        return input_failure;
    }
}
} // namespace

int cmd_design(const Options &opt)
{
    return guarded("design", [&] {
        const Context c = load(opt);
        const DesignResult res = run_configured_design(c.rc);
        write_json_file((c.out / "design_report.json").string(), design_report(res));
        if (!res.feasible)
        {
            std::cerr << "design: infeasible: " << res.infeasible_reason << '\n';
            return static_cast<int>(infeasible);
        }
        write_json_file((c.out / "codebook.json").string(), codebook_to_json(res.params, *res.profile));
        std::cout << "D = " << format_double(res.params.d) << " (exact " << format_double(res.d_exact)
                  << "), gamma = " << format_double(res.gamma) << ", feasible\n";
        return static_cast<int>(ok);
    });
}

int cmd_pattern(const Options &opt)
{
    return guarded("pattern", [&] {
        const Context c = load(opt);
        const Codebook cb = load_codebook(opt, c);
        const auto freqs = spread_subcarriers(c.rc.grid, c.rc.freq_count);
        const GainGrid g = gain_grid(cb.profile, c.rc.cfg, c.rc.grid, c.angles, freqs);
        write_text(c.out / "pattern.csv", "pattern", [&](std::ostream &os) { write_pattern_csv(os, g); });
        return static_cast<int>(ok);
    });
}

int cmd_map(const Options &opt)
{
    return guarded("map", [&] {
        const Context c = load(opt);
        const Codebook cb = load_codebook(opt, c);
        const auto freqs = spread_subcarriers(c.rc.grid, c.rc.freq_count);
        const BeamMap map = extract_beam_map(gain_grid(cb.profile, c.rc.cfg, c.rc.grid, c.angles, freqs));
        write_text(c.out / "beam_map.csv", "beam map", [&](std::ostream &os) { write_beam_map_csv(os, map); });
        if (c.rc.design && c.rc.design->k_users >= 2)
        {
            const DesignResult res = run_configured_design(c.rc);
            const auto targets = served_targets(res, c.rc.design->rotation);
            const auto peaks = peak_sines(cb.profile, c.rc.cfg, c.rc.grid, res.subband_centers, c.angles);
            std::vector<double> measured;
            for (std::size_t q = 0; q < peaks.size(); ++q)
                measured.push_back(std::abs(peaks[q] - std::sin(targets[q])));
            nlohmann::json j;
            j["mapping_discrepancy"] = mapping_discrepancy(res);
            j["measured_discrepancy"] = measured;
            j["measured_peak_sin_theta"] = peaks;
            j["target_sin_theta"] = [&] {
                std::vector<double> s;
                for (double t : targets)
                    s.push_back(std::sin(t));
                return s;
            }();
            j["grid_cell"] = 2.0 / c.angles;
            write_json_file((c.out / "discrepancy.json").string(), j);
        }
        return static_cast<int>(ok);
    });
}

int cmd_sweep(const Options &opt)
{
    return guarded("sweep", [&] {
        const Context c = load(opt);
        if (!c.rc.sweep)
            throw input_error("/sweep: missing required section");
        const SweepSpec spec{c.rc.sweep->variable, c.rc.sweep->values, c.rc.link_config(), c.rc.sweep->sector_samples,
                             opt.seed ? *opt.seed : c.rc.sweep->seed};
        const SweepResult res = run_sweep(spec);
        write_text(c.out / "sweep.csv", "sweep", [&](std::ostream &os) { write_sweep_csv(os, res); });
        return static_cast<int>(ok);
    });
}

namespace
{
struct Check
{
    std::string name;
    std::string status; // pass, fail, skipped
    double measured = 0.0;
    double tolerance = 0.0;
    std::string note;
};

Check check_profile(const Codebook &cb)
{
    Check ck{"profile_consistency", "pass", 0.0, 1e-9, "rebuilt from the stored parameters"};
    DelayPhaseProfile rebuilt = DelayPhaseProfile::zeros(cb.n_t);
    try
    {
        rebuilt = build_profile(cb.params, cb.n_t);
    }
    catch (const std::invalid_argument &e)
    {
        return {ck.name, "fail", 0.0, ck.tolerance, e.what()};
    }
    // Compare delays in cycles at f_c-independent scale (relative to the largest
    // delay) and phases modulo 2 pi.
    double scale = 0.0;
    for (double t : cb.profile.delays())
        scale = std::max(scale, std::abs(t));
    for (int n = 0; n < cb.n_t; ++n)
    {
        const double dt = std::abs(cb.profile.delays()[n] - rebuilt.delays()[n]) / std::max(scale, 1e-300);
        const double dp = std::abs(std::remainder(cb.profile.phases()[n] - rebuilt.phases()[n], two_pi));
        ck.measured = std::max({ck.measured, dt, dp});
    }
    if (!(ck.measured <= ck.tolerance))
        ck.status = "fail";
    return ck;
}

Check check_factorization(const Codebook &cb, const Context &c)
{
    Check ck{"factorization_identity", "pass", 0.0, 1e-9, "relative error, floor 1e-6 N_T"};
    const SubArrayView view = SubArrayView::from(cb.params, cb.n_t, c.rc.grid);
    if (cb.params.formulation != Formulation::UniformInteger || view.d != std::floor(view.d) ||
        cb.n_t % static_cast<int>(view.d) != 0)
    {
        ck.status = "skipped";
        ck.note = "requires a uniform staircase with integer D dividing N_T";
        return ck;
    }
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> sine(-1.0, 1.0);
    std::uniform_int_distribution<int> sub(1, c.rc.grid.m_tot());
    const GainKernel kernel(cb.profile, c.rc.cfg, c.rc.grid);
    // A stored profile carries its own rounding, so deep nulls are compared
    // on an absolute scale.
    const double floor = 1e-6 * cb.n_t;
    for (int i = 0; i < 2000; ++i)
    {
        const double s = sine(rng);
        const int m = sub(rng);
        const double f = c.rc.grid.frequency(m);
        const double direct = kernel(s, f, f);
        const double split = factorized_gain(view, c.rc.cfg, c.rc.grid, s, m);
        ck.measured = std::max(ck.measured, std::abs(direct - split) / std::max(direct, floor));
    }
    if (!(ck.measured < ck.tolerance))
        ck.status = "fail";
    return ck;
}

Check check_separation(const Codebook &cb, const Context &c)
{
    Check ck{"separation_law", "pass", 0.0, 1e-12, "adjacent beam centres vs (2/D)(f_c/f_m)"};
    const SubArrayView view = SubArrayView::from(cb.params, cb.n_t, c.rc.grid);
    for (int m : spread_subcarriers(c.rc.grid, 16))
    {
        const auto centres = beam_centres(view, c.rc.grid, m);
        const double expect = 2.0 / view.d * c.rc.grid.f_c() / c.rc.grid.frequency(m);
        for (std::size_t q = 1; q < centres.size(); ++q)
            ck.measured = std::max(ck.measured, std::abs((centres[q - 1] - centres[q]) - expect));
    }
    if (!(ck.measured <= ck.tolerance))
        ck.status = "fail";
    return ck;
}

Check check_centre_argmax(const Codebook &cb, const Context &c)
{
    Check ck{"beam_centre_argmax", "pass", 0.0, 1.0, "cells between sub-array argmax and nearest closed-form centre"};
    const SubArrayView view = SubArrayView::from(cb.params, cb.n_t, c.rc.grid);
    const auto freqs = spread_subcarriers(c.rc.grid, 16);
    const BeamMap map = extract_beam_map(subarray_gain_grid(view, c.rc.grid, c.angles, freqs));
    const double cell = 2.0 / c.angles;
    for (std::size_t i = 0; i < freqs.size(); ++i)
    {
        double best = 2.0;
        for (double s : beam_centres(view, c.rc.grid, freqs[i]))
            best = std::min(best, std::abs(s - map.peak_sin_theta[i]));
        ck.measured = std::max(ck.measured, best / cell);
    }
    if (!(ck.measured <= ck.tolerance))
        ck.status = "fail";
    return ck;
}

Check check_targets(const Codebook &cb, const Context &c)
{
    Check ck{"design_hits_targets", "pass", 0.0, 1.0, "cells between gain argmax at f^(q) and the served target"};
    if (!c.rc.design || c.rc.design->k_users < 2)
    {
        ck.status = "skipped";
        ck.note = "no multi-user design section in the config";
        return ck;
    }
    const DesignResult res = run_configured_design(c.rc);
    const auto targets = served_targets(res, c.rc.design->rotation);
    const auto peaks = peak_sines(cb.profile, c.rc.cfg, c.rc.grid, res.subband_centers, c.angles);
    const double cell = 2.0 / c.angles;
    for (std::size_t q = 0; q < peaks.size(); ++q)
        ck.measured = std::max(ck.measured, std::abs(peaks[q] - std::sin(targets[q])) / cell);
    if (!(ck.measured <= ck.tolerance))
        ck.status = "fail";
    return ck;
}
} // namespace

int cmd_validate(const Options &opt)
{
    return guarded("validate", [&] {
        const Context c = load(opt);
        const Codebook cb = load_codebook(opt, c);
        const std::vector<Check> checks{check_profile(cb), check_factorization(cb, c), check_separation(cb, c),
                                        check_centre_argmax(cb, c), check_targets(cb, c)};
        nlohmann::json report = nlohmann::json::array();
        bool all_pass = true;
        for (const auto &ck : checks)
        {
            report.push_back({{"name", ck.name},
                              {"status", ck.status},
                              {"measured", ck.measured},
                              {"tolerance", ck.tolerance},
                              {"note", ck.note}});
            all_pass = all_pass && ck.status != "fail";
        }
        const nlohmann::json doc{{"passed", all_pass}, {"checks", report}};
        write_json_file((c.out / "validation.json").string(), doc);
        std::cout << doc.dump(2) << '\n';
        return static_cast<int>(all_pass ? ok : validation_failure);
    });
}

int run(int argc, const char *const *argv)
{
    CLI::App app{"staircase-ttd: staircase true-time-delay codebook design and analysis"};
    app.require_subcommand(1);
    Options opt;
    std::string out;
    std::uint64_t seed = 0;
    int angles = 0;

    auto common = [&](CLI::App *sub, bool needs_codebook) {
        sub->add_option("--config", opt.config, "scenario JSON")->required();
        if (needs_codebook)
            sub->add_option("--codebook", opt.codebook, "codebook JSON from `design`")->required();
        sub->add_option("--out", out, "output directory (overrides output.dir)");
        sub->add_option("--seed", seed, "sampler seed (overrides the config)");
        sub->add_option("--angles", angles, "sin theta grid size (overrides output.angle_grid_size)");
    };
    auto *design = app.add_subcommand("design", "design a codebook and write codebook.json + design_report.json");
    auto *pattern = app.add_subcommand("pattern", "write the gain heatmap pattern.csv");
    auto *map = app.add_subcommand("map", "write beam_map.csv and the discrepancy report");
    auto *sweep = app.add_subcommand("sweep", "write the spectral-efficiency sweep.csv");
    auto *validate = app.add_subcommand("validate", "run the invariant checks and write validation.json");
    common(design, false);
    common(pattern, true);
    common(map, true);
    common(sweep, false);
    common(validate, true);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e) == 0 ? static_cast<int>(ok) : static_cast<int>(input_failure);
    }

    for (auto *sub : {design, pattern, map, sweep, validate})
    {
        if (sub->count("--out"))
            opt.out = out;
        if (sub->count("--seed"))
            opt.seed = seed;
        if (sub->count("--angles"))
            opt.angles = angles;
    }
    if (*design)
        return cmd_design(opt);
    if (*pattern)
        return cmd_pattern(opt);
    if (*map)
        return cmd_map(opt);
    if (*sweep)
        return cmd_sweep(opt);
    return cmd_validate(opt);
}

} // namespace ttd::cli
