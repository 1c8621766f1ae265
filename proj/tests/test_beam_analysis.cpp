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

#include "ttd/beam_analysis.hpp"

#include "ttd/numeric.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace ttd;
using Catch::Approx;

namespace
{
const OfdmGrid band(60e9, 2e9, 4096);
const double f_c = 60e9;
const double bw = 2e9;

SubArrayView view_of(double d, double tj, double pj, double ts, double ps, int n_t = 32)
{
    return {d, tj, pj, ts, ps, n_t, f_c};
}
} // namespace

TEST_CASE("psi arguments", "[beam]")
{
    CHECK(psi_jump(view_of(3, 0, 0, 0, 0), 0.0, 59.3e9) == 0.0);
    CHECK(psi_jump(view_of(3, -3 * 0.5 / (2 * f_c), 0, 0, 0), 0.5, f_c) == Approx(0.0).margin(1e-15));
    // Directional lobe: with dtau_jump = -D sin(theta_o)/(2 f_c), Psi_jump(theta_o, f) vanishes at every f.
    const auto lobe = view_of(3, -3 * std::sin(pi / 6) / (2 * f_c), 0, 0, 0);
    for (int m : {1, 1500, 4096})
        CHECK(psi_jump(lobe, std::sin(pi / 6), band.frequency(m)) == Approx(0.0).margin(1e-15));
    CHECK(psi_step(view_of(2, 0, 0, 1e-12, 0.5), 0.25, f_c) == Approx(2 * f_c * 1e-12 + 0.25 + 0.5 / pi));
}

TEST_CASE("sub-array gain", "[beam]")
{
    const auto v = view_of(2, 0, 0, 0, 0, 32);
    CHECK(subarray_gain(v, 0.0, f_c) == 16.0);
    // Psi_jump = 2 at sin theta = 1, f = f_c: grating lobe.
    CHECK(subarray_gain(v, 1.0, f_c) == Approx(16.0).epsilon(1e-12));
    // N_T/D = 10, Psi_jump = 0.2: first null.
    const auto ten = view_of(3, 0, 0, 0, 0, 30);
    CHECK(subarray_gain(ten, 0.2 / 3.0, f_c) == Approx(0.0).margin(1e-25));
}

TEST_CASE("beam centres and separation law", "[beam]")
{
    const double s_o = 0.3;
    const auto v = view_of(3, -3 * s_o / (2 * f_c), 0, 0, 0);
    const int mid = 2048;
    const auto c = beam_centres(v, band, mid);
    REQUIRE(c.size() >= 2);
    const double f = band.frequency(mid);
    for (std::size_t q = 1; q < c.size(); ++q)
        CHECK(std::abs((c[q - 1] - c[q]) - (2.0 / 3.0) * f_c / f) < 1e-12);
    for (double s : c)
    {
        CHECK(s >= -1.0);
        CHECK(s <= 1.0);
        CHECK(subarray_gain(v, s, f) == Approx(32.0 / 3.0).epsilon(1e-9));
    }

    // At the carrier frequency the directional lobe is exact and copies sit 2/3 apart.
    const OfdmGrid odd(60e9, 2e9, 4097);
    REQUIRE(odd.frequency(2049) == f_c);
    const auto cc = beam_centres(v, odd, 2049);
    REQUIRE(cc.size() == 3);
    CHECK(std::abs(cc[0] - cc[1] - 2.0 / 3.0) < 1e-15);
    CHECK(std::abs(cc[1] - cc[2] - 2.0 / 3.0) < 1e-15);
    bool anchored = false;
    for (double s : cc)
        anchored = anchored || std::abs(s - s_o) < 1e-15;
    CHECK(anchored);
}

TEST_CASE("each spectral copy sweeps its whole segment", "[beam]")
{
    // D = 3, dtau_jump = 2/BW: slope -2/(3 BW) per Hz, so 2 GHz moves a copy by 4/3 > 2/3.
    const auto v = view_of(3, 2.0 / bw, 0, 0, 0);
    double lo = 2.0, hi = -2.0;
    for (int m = 1; m <= 4096; m += 4)
    {
        const auto c = beam_centres(v, band, m);
        lo = std::min(lo, c.back());
        hi = std::max(hi, c.front());
    }
    CHECK(hi > 1.0 - 1e-2);
    CHECK(lo < -1.0 + 1e-2);
}

TEST_CASE("map slope", "[beam]")
{
    CHECK(map_slope(view_of(3, 0, 0, 0, 0)) == 0.0);
    const auto v = view_of(3, 2.0 / bw, 0, 0, 0);
    CHECK(map_slope(v) == Approx(-6.6666666666666667e-10).epsilon(1e-14));

    // Finite differences of the closed-form centres away from wraps. A lobe
    // sin = 2 z f_c/(D f) - 2 f_c dtau_jump/D moves at -(sin + 2 f_c dtau_jump/D)/f;
    // the quoted slope is that rate in the limit |dtau_jump| >> 1/f_c.
    int compared = 0;
    for (int m = 1; m < 4096; m += 97)
    {
        const auto a = beam_centres(v, band, m);
        const auto b = beam_centres(v, band, m + 1);
        if (std::abs(a.front() - b.front()) > 0.1)
            continue;
        const double f = band.frequency(m);
        const double slope = (b.front() - a.front()) / (band.frequency(m + 1) - f);
        const double exact = -(a.front() + 2 * f_c * v.dtau_jump / v.d) / f;
        CHECK(slope == Approx(exact).epsilon(1e-4));
        CHECK(slope == Approx(map_slope(v)).epsilon(0.05));
        ++compared;
    }
    CHECK(compared > 10);
}

TEST_CASE("filter response", "[beam]")
{
    const auto v = view_of(2, 0, 0, 0, 0);
    CHECK(filter_response(v, 0.0, f_c) == 4.0);
    CHECK(filter_response(v, 1.0, f_c) == Approx(0.0).margin(1e-28));
    // Symmetry in Psi_o around the centre at fixed f.
    const auto w = view_of(3, 0, 0, 1e-12, 0.4);
    const double centre = filter_centre(w, OfdmGrid(60e9, 2e9, 4097), 2049);
    for (double delta : {0.01, 0.1, 0.3})
        CHECK(filter_response(w, centre + delta, f_c) ==
              Approx(filter_response(w, centre - delta, f_c)).epsilon(1e-9));
}

TEST_CASE("filter centre", "[beam]")
{
    const OfdmGrid odd(60e9, 2e9, 4097);
    CHECK(filter_centre(view_of(2, 0, 0, 0, 0), odd, 2049) == 0.0);
    CHECK(filter_centre(view_of(2, 0, 0, 0, -pi * 0.5), odd, 2049) == Approx(0.5).epsilon(1e-15));
    for (int m = 1; m <= 4096; m += 255)
    {
        const auto v = view_of(3, 0, 0, -0.3e-9, 1.7);
        const double s = filter_centre(v, band, m);
        CHECK(s >= -1.0);
        CHECK(s <= 1.0);
        if (std::abs(s) < 1.0)
            CHECK(filter_response(v, s, band.frequency(m)) == Approx(9.0).epsilon(1e-9));
        else
            CHECK(filter_response(v, s, band.frequency(m)) >= filter_response(v, -s, band.frequency(m)));
    }
}

TEST_CASE("filter centre hits the end users of a design", "[beam]")
{
    const DesignSpec spec{3, deg_to_rad(-30), deg_to_rad(45), band, ArrayConfig(32)};
    const DesignResult r = two_stage_design(spec);
    const SubArrayView v = SubArrayView::from(r.params, 32, band);
    CHECK(std::abs(filter_centre_at(v, r.subband_centers.front()) - std::sin(r.target_angles.front())) < 1e-9);
    CHECK(std::abs(filter_centre_at(v, r.subband_centers.back()) - std::sin(r.target_angles.back())) < 1e-9);
    // The trajectory is hyperbolic in f, so the middle user is only approached.
    CHECK(std::abs(filter_centre_at(v, r.subband_centers[1]) - std::sin(r.target_angles[1])) < 0.05);
}

TEST_CASE("factorization identity on the reference configuration", "[beam]")
{
    // N_T = 32, D = 2, dtau_step = -0.6/BW, dphi_step = 0.1 pi, dtau_jump = 2/BW.
    const StaircaseParams p{2, 2.0 / bw, 0.0, -0.6 / bw, 0.1 * pi, Formulation::UniformInteger};
    const ArrayConfig cfg(32);
    const auto prof = build_uniform(p, 32);
    const SubArrayView v = SubArrayView::from(p, 32, band);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> s(-1.0, 1.0);
    std::uniform_int_distribution<int> m(1, 4096);
    const GainKernel kernel(prof, cfg, band);
    for (int i = 0; i < 10000; ++i)
    {
        const double ss = s(rng);
        const int mm = m(rng);
        const double f = band.frequency(mm);
        const double direct = kernel(ss, f, f);
        const double split = factorized_gain(v, cfg, band, ss, mm);
        // Products such as 5 * dtau_step round in the profile, so nulls compare on an absolute scale.
        REQUIRE(std::abs(direct - split) / std::max(direct, 32e-6) < 1e-9);
    }
}

TEST_CASE("factorization at aligned points and filter nulls", "[beam]")
{
    const OfdmGrid odd(60e9, 2e9, 4097);
    const ArrayConfig cfg(32);
    CHECK(factorized_gain(view_of(4, 0, 0, 0, 0), cfg, odd, 0.0, 2049) == 32.0);
    // Psi_o = 1 with D = 2: sin theta = 1 at f_c with zero step.
    CHECK(factorized_gain(view_of(2, 1e-12, 0.3, 0, 0), cfg, odd, 1.0, 2049) == Approx(0.0).margin(1e-20));
    CHECK_THROWS_AS(factorized_gain(view_of(3, 0, 0, 0, 0), cfg, odd, 0.0, 2049), precondition_error);
    CHECK_THROWS_AS(factorized_gain(view_of(2.5, 0, 0, 0, 0), cfg, odd, 0.0, 2049), precondition_error);
}

TEST_CASE("gain peak in the reference configuration sits on the lobe nearest the filter centre", "[beam]")
{
    const StaircaseParams p{2, 2.0 / bw, 0.0, -0.6 / bw, 0.1 * pi, Formulation::UniformInteger};
    const ArrayConfig cfg(32);
    const SubArrayView v = SubArrayView::from(p, 32, band);
    const int angles = 2048;
    const int m = 2048;
    const int rows[] = {m};
    const BeamMap map = extract_beam_map(gain_grid(build_uniform(p, 32), cfg, band, angles, rows));
    const double centre = filter_centre(v, band, m);
    double nearest = 9.0;
    for (double s : beam_centres(v, band, m))
        if (std::abs(s - centre) < std::abs(nearest - centre))
            nearest = s;
    CHECK(std::abs(map.peak_sin_theta[0] - nearest) <= 2.0 / angles);
}

TEST_CASE("beam map extraction", "[beam]")
{
    GainGrid g;
    g.angles = {-0.5, 0.0, 0.5};
    g.freq_indices = {1, 2};
    g.freqs = {1.0, 2.0};
    g.values = {1.0, 3.0, 3.0, 5.0, 0.0, 4.0};
    const BeamMap map = extract_beam_map(g);
    CHECK(map.peak_sin_theta == std::vector<double>{0.0, -0.5});
    CHECK(map.peak_gain == std::vector<double>{3.0, 5.0});
    CHECK_THROWS_AS(extract_beam_map(GainGrid{}), std::invalid_argument);

    // Frequency-flat matched beam: constant map.
    const ArrayConfig cfg(16);
    std::vector<double> d(16);
    const double s0 = 0.25;
    for (int n = 0; n < 16; ++n)
        d[n] = -n * s0 / (2 * f_c);
    const auto freqs = spread_subcarriers(band, 8);
    const BeamMap flat = extract_beam_map(gain_grid(DelayPhaseProfile(d, std::vector<double>(16, 0.0)), cfg, band,
                                                    1024, freqs));
    for (double s : flat.peak_sin_theta)
        CHECK(s == 0.25);
}

TEST_CASE("local peaks", "[beam]")
{
    const std::vector<double> row{0.0, 2.0, 1.0, 5.0, 5.0, 0.5, 0.4};
    CHECK(local_peaks(row, 0.3) == std::vector<std::size_t>{1, 3});
    CHECK(local_peaks(row, 0.5) == std::vector<std::size_t>{3});
}

TEST_CASE("on-target gain", "[beam]")
{
    const ArrayConfig cfg(32);
    const auto zero = DelayPhaseProfile::zeros(32);
    const std::vector<double> users{deg_to_rad(-10), deg_to_rad(25)};
    const OnTargetGain b = on_target_gain(zero, cfg, band, users);
    REQUIRE(b.values.size() == 2);
    REQUIRE(b.values[0].size() == 4096);
    for (int m : {1, 2000, 4096})
        CHECK(b.values[1][m - 1] == gain(zero, cfg, band, std::sin(users[1]), m));
    CHECK_THROWS_AS(on_target_gain(zero, cfg, band, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("designed K = 5 codebook peaks each user inside its sub-band", "[beam]")
{
    const ArrayConfig cfg(32);
    const DesignResult r = two_stage_design({5, deg_to_rad(-30), deg_to_rad(40), band, cfg});
    REQUIRE(r.feasible);
    const OnTargetGain b = on_target_gain(*r.profile, cfg, band, r.target_angles);
    for (std::size_t k = 0; k < 5; ++k)
    {
        const auto &row = b.values[k];
        const auto best = std::max_element(row.begin(), row.end()) - row.begin();
        const double f_peak = band.frequency(static_cast<int>(best) + 1);
        CHECK(std::abs(f_peak - r.subband_centers[k]) <= bw / 10.0);
        for (double g : row)
        {
            CHECK(g >= 0.0);
            CHECK(g <= 32.0 + 1e-9);
        }
    }
}

TEST_CASE("half-power width", "[beam]")
{
    const OfdmGrid odd(60e9, 2e9, 4097);
    // Exact half-power width of |sin(D pi x/2)/sin(pi x/2)|^2 at f_c, from a
    // 40-digit root solve: D = 2 gives 1, D = 3 gives 0.62109..., D = 5 gives 0.36063...
    CHECK(half_power_width(view_of(2, 0, 0, 0, 0), odd, 2049, 1 << 16) == Approx(1.0).epsilon(1e-6));
    CHECK(half_power_width(view_of(3, 0, 0, 0, 0), odd, 2049, 1 << 16) ==
          Approx(0.62109482974735226).epsilon(1e-6));
    CHECK(half_power_width(view_of(5, 0, 0, 0, 0), odd, 2049, 1 << 16) ==
          Approx(0.36063486034625191).epsilon(1e-6));
}
