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

#include "ttd/link_sim.hpp"

#include "ttd/numeric.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

namespace ttd
{

std::vector<SubbandRange> subband_assignment(const LinkConfig &link)
{
    const int k = link.k_users;
    const int m_tot = link.grid.m_tot();
    if (k < 1 || m_tot % k != 0)
        throw std::invalid_argument("subband_assignment: K = " + std::to_string(k) + " does not divide M_tot = " +
                                    std::to_string(m_tot));
    return trimmed_assignment(k, m_tot);
}

std::vector<SubbandRange> trimmed_assignment(int k_users, int m_tot)
{
    if (k_users < 1 || k_users > m_tot)
        throw std::invalid_argument("trimmed_assignment: need 1 <= K <= M_tot");
    const int per_user = m_tot / k_users;
    std::vector<SubbandRange> out;
    for (int k = 0; k < k_users; ++k)
        out.push_back({k * per_user + 1, (k + 1) * per_user});
    return out;
}

std::vector<double> user_angles(const LinkConfig &link)
{
    std::vector<double> out;
    for (double s : target_sines(link.k_users, link.theta_1, link.theta_2))
        out.push_back(std::asin(s));
    return out;
}

namespace
{
RateResult finish(std::vector<double> per_user)
{
    RateResult r;
    // Equal range sizes, so the subcarrier average is the user average.
    double total = 0.0;
    for (double v : per_user)
        total += v;
    r.spectral_efficiency = total / static_cast<double>(per_user.size());
    r.per_user = std::move(per_user);
    return r;
}

void check_link(const LinkConfig &link)
{
    if (!(link.snr_linear > 0.0) || !std::isfinite(link.snr_linear))
        throw std::invalid_argument("link: SNR must be positive and finite");
    if (link.k_users < 1)
        throw std::invalid_argument("link: K must be at least 1");
}
} // namespace

RateResult spectral_efficiency(const DelayPhaseProfile &profile, const LinkConfig &link)
{
    check_link(link);
    const GainKernel kernel(profile, link.cfg, link.grid);
    const auto ranges = trimmed_assignment(link.k_users, link.grid.m_tot());
    const auto angles = user_angles(link);
    std::vector<double> per_user;
    for (std::size_t k = 0; k < ranges.size(); ++k)
    {
        const double s = std::sin(angles[k]);
        double acc = 0.0;
        for (int m = ranges[k].first; m <= ranges[k].last; ++m)
        {
            const double f = link.grid.frequency(m);
            acc += std::log2(1.0 + link.snr_linear * kernel(s, f, f));
        }
        per_user.push_back(acc / ranges[k].size());
    }
    return finish(std::move(per_user));
}

RateResult ideal_spectral_efficiency(const LinkConfig &link)
{
    check_link(link);
    const double rate = std::log2(1.0 + link.snr_linear * link.cfg.n_t());
    // Set directly: averaging K equal terms need not return the term itself.
    RateResult r = finish(std::vector<double>(static_cast<std::size_t>(link.k_users), rate));
    r.spectral_efficiency = rate;
    return r;
}

std::string to_string(Method m)
{
    switch (m)
    {
    case Method::Ideal:
        return "ideal";
    case Method::PhasedSingleBeam:
        return "phased_single_beam";
    case Method::StaircaseUniform:
        return "staircase_uniform";
    case Method::StaircaseModulo:
        return "staircase_modulo";
    }
    throw std::invalid_argument("unknown method");
}

namespace
{
// Phase-only beam towards sin_theta at f_c, squinting away elsewhere.
DelayPhaseProfile phased_beam(int n_t, double s)
{
    std::vector<double> phases;
    for (int n = 0; n < n_t; ++n)
        phases.push_back(wrap_phase(-pi * n * s));
    return {std::vector<double>(static_cast<std::size_t>(n_t), 0.0), std::move(phases)};
}

// Squint-free TTD beam towards sin_theta for the single-user case.
DelayPhaseProfile ttd_beam(int n_t, double s, double f_c)
{
    std::vector<double> delays;
    for (int n = 0; n < n_t; ++n)
        delays.push_back(-n * s / (2.0 * f_c));
    return {std::move(delays), std::vector<double>(static_cast<std::size_t>(n_t), 0.0)};
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}
} // namespace

std::vector<LabeledProfile> baseline_profiles(const LinkConfig &link)
{
    check_link(link);
    const int n_t = link.cfg.n_t();
    std::vector<LabeledProfile> out;
    out.push_back({Method::Ideal, std::nullopt, "gain oracle B = N_T"});
    out.push_back({Method::PhasedSingleBeam,
                   phased_beam(n_t, median(target_sines(link.k_users, link.theta_1, link.theta_2))),
                   "phases matched at f_c to the median user"});
    if (link.k_users == 1)
    {
        const auto beam = ttd_beam(n_t, std::sin(link.theta_1), link.grid.f_c());
        out.push_back({Method::StaircaseUniform, beam, "single user: D = 1"});
        out.push_back({Method::StaircaseModulo, beam, "single user: D = 1"});
        return out;
    }
    const DesignSpec spec{link.k_users, link.theta_1, link.theta_2, link.grid, link.cfg};
    for (auto [method, result] : {std::pair{Method::StaircaseUniform, integer_design(spec)},
                                  std::pair{Method::StaircaseModulo, two_stage_design(spec)}})
        out.push_back({method, result.profile, result.feasible ? "" : result.infeasible_reason});
    return out;
}

RateResult evaluate(const LabeledProfile &entry, const LinkConfig &link)
{
    if (entry.method == Method::Ideal)
        return ideal_spectral_efficiency(link);
    if (!entry.profile)
        throw infeasible_error(to_string(entry.method) + ": " + entry.note);
    return spectral_efficiency(*entry.profile, link);
}

namespace
{
double radical_inverse(std::uint64_t i, unsigned base)
{
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (i > 0)
    {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

bool sector_feasible(int k, double s1, double s2, const OfdmGrid &grid, const ArrayConfig &cfg)
{
    if (k == 1)
        return true;
    const DesignSpec spec{k, std::asin(s1), std::asin(s2), grid, cfg};
    return two_stage_design(spec).feasible;
}
} // namespace

SectorSample feasible_sector_sample(int k_users, const OfdmGrid &grid, const ArrayConfig &cfg, int count,
                                    std::uint64_t seed)
{
    if (count < 1)
        throw std::invalid_argument("feasible_sector_sample: count must be at least 1");
    if (k_users < 1)
        throw std::invalid_argument("feasible_sector_sample: K must be at least 1");
    // Halton (2, 3) with a seeded Cranley-Patterson shift.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double shift_1 = unit(rng);
    const double shift_2 = unit(rng);
    const double s_max = std::sin(deg_to_rad(75.0));

    SectorSample out;
    const std::uint64_t max_draws = static_cast<std::uint64_t>(count) * 1000;
    for (std::uint64_t i = 1; i <= max_draws && static_cast<int>(out.sectors.size()) < count; ++i)
    {
        const double u1 = std::fmod(radical_inverse(i, 2) + shift_1, 1.0);
        const double u2 = std::fmod(radical_inverse(i, 3) + shift_2, 1.0);
        const double s1 = -s_max + 2.0 * s_max * u1;
        const double s2 = -s_max + 2.0 * s_max * u2;
        if (s1 == s2 || !sector_feasible(k_users, s1, s2, grid, cfg))
        {
            ++out.rejected;
            continue;
        }
        out.sectors.emplace_back(std::asin(s1), std::asin(s2));
    }
    if (static_cast<int>(out.sectors.size()) < count)
    {
        std::ostringstream os;
        os << "only " << out.sectors.size() << " of " << count << " sectors satisfy ceil(D) < N_T = " << cfg.n_t()
           << " for K = " << k_users;
        out.warning = os.str();
    }
    return out;
}

std::string to_string(SweepVariable v)
{
    switch (v)
    {
    case SweepVariable::K:
        return "K";
    case SweepVariable::BW:
        return "BW";
    case SweepVariable::N_T:
        return "N_T";
    case SweepVariable::SNR:
        return "SNR";
    }
    throw std::invalid_argument("unknown sweep variable");
}

SweepVariable sweep_variable_from_string(const std::string &name)
{
    for (auto v : {SweepVariable::K, SweepVariable::BW, SweepVariable::N_T, SweepVariable::SNR})
        if (to_string(v) == name)
            return v;
    throw std::invalid_argument("unknown sweep variable '" + name + "' (expected K, BW, N_T or SNR)");
}

namespace
{
int as_count(double value, const char *what)
{
    const double r = std::round(value);
    if (r != value || r < 1.0 || r > 1e9)
        throw std::invalid_argument(std::string("sweep: ") + what + " values must be positive integers");
    return static_cast<int>(r);
}
} // namespace

LinkConfig apply_sweep_value(const LinkConfig &fixed, SweepVariable variable, double value)
{
    LinkConfig link = fixed;
    switch (variable)
    {
    case SweepVariable::K:
        link.k_users = as_count(value, "K");
        break;
    case SweepVariable::BW:
        link.grid = OfdmGrid(fixed.grid.f_c(), value, fixed.grid.m_tot());
        break;
    case SweepVariable::N_T:
        link.cfg = ArrayConfig(as_count(value, "N_T"), fixed.cfg.spacing_factor());
        break;
    case SweepVariable::SNR:
        link.snr_linear = db_to_linear(value);
        break;
    }
    return link;
}

SweepResult run_sweep(const SweepSpec &spec)
{
    if (spec.values.empty())
        throw std::invalid_argument("sweep: values must not be empty");
    for (std::size_t i = 1; i < spec.values.size(); ++i)
        if (!(spec.values[i] > spec.values[i - 1]))
            throw std::invalid_argument("sweep: values must be strictly increasing");
    if (spec.sector_samples < 1)
        throw std::invalid_argument("sweep: sector_samples must be at least 1");

    constexpr std::size_t n_methods = std::size(all_methods);
    const std::size_t n_values = spec.values.size();

    // Scenario list, fixed order: value-major, then sector.
    struct Scenario
    {
        std::size_t value;
        LinkConfig link;
    };
    std::vector<Scenario> scenarios;
    SweepResult res;
    res.variable = spec.variable;
    res.values = spec.values;
    for (Method m : all_methods)
        res.methods.push_back(to_string(m));
    for (std::size_t v = 0; v < n_values; ++v)
    {
        const LinkConfig base = apply_sweep_value(spec.fixed, spec.variable, spec.values[v]);
        const auto sample = feasible_sector_sample(base.k_users, base.grid, base.cfg, spec.sector_samples, spec.seed);
        if (sample.sectors.empty())
        {
            std::ostringstream os;
            os << "sweep: no sector satisfies ceil(D) < N_T = " << base.cfg.n_t() << " at " << to_string(spec.variable)
               << " = " << spec.values[v];
            throw infeasible_error(os.str());
        }
        res.sectors_averaged.push_back(static_cast<int>(sample.sectors.size()));
        res.sectors_skipped.push_back(sample.rejected);
        for (const auto &[t1, t2] : sample.sectors)
        {
            LinkConfig link = base;
            link.theta_1 = t1;
            link.theta_2 = t2;
            scenarios.push_back({v, std::move(link)});
        }
    }

    // Each worker fills its own slots; the reduction below runs in scenario order.
    std::vector<std::array<double, n_methods>> rates(scenarios.size());
    std::vector<std::exception_ptr> errors(scenarios.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < scenarios.size(); i = next++)
        {
            try
            {
                const auto entries = baseline_profiles(scenarios[i].link);
                for (std::size_t j = 0; j < n_methods; ++j)
                    rates[i][j] = evaluate(entries[j], scenarios[i].link).spectral_efficiency;
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned workers = spec.workers ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, scenarios.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w)
        pool.emplace_back(work);
    work();
    for (auto &t : pool)
        t.join();
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);

    res.spectral_efficiency.assign(n_methods, std::vector<double>(n_values, 0.0));
    for (std::size_t i = 0; i < scenarios.size(); ++i)
        for (std::size_t j = 0; j < n_methods; ++j)
            res.spectral_efficiency[j][scenarios[i].value] += rates[i][j];
    for (std::size_t j = 0; j < n_methods; ++j)
        for (std::size_t v = 0; v < n_values; ++v)
            res.spectral_efficiency[j][v] /= res.sectors_averaged[v];
    return res;
}

} // namespace ttd
