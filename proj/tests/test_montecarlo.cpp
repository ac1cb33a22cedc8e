// SPDX-License-Identifier: Apache-2.0
//
// sula - sparse uniform linear array analysis and simulation toolkit
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <sula/montecarlo.hpp>

using namespace sula;

namespace
{

Scenario base_scenario()
{
    return Scenario{ArrayConfig(32, 4.0), 18,         deg2rad(10.0), 20.0,
                    Beamformer::MRC,      ChannelKind::Los, OneRingParams{},
                    4000,                 1};
}

// two-sample KS distance between step CDFs on a merged grid
double ks_distance(const DistributionSeries &a, const DistributionSeries &b)
{
    double worst = 0.0;
    for (const auto &[x, f] : a.points)
        worst = std::max(worst, std::abs(f - eval_cdf(b, x)));
    for (const auto &[x, f] : b.points)
        worst = std::max(worst, std::abs(f - eval_cdf(a, x)));
    return worst;
}

} // namespace

TEST_CASE("scenario validation")
{
    Scenario s = base_scenario();
    CHECK_NOTHROW(s.validate());
    s.users = 0;
    CHECK_THROWS_AS(s.validate(), validation_error);
    s = base_scenario();
    s.beamformer = Beamformer::ZF;
    s.users = 33;
    CHECK_THROWS_AS(s.validate(), validation_error);
    s = base_scenario();
    s.theta_max = 2.0;
    CHECK_THROWS_AS(s.validate(), validation_error);
}

TEST_CASE("user angle sampling stays inside the spread")
{
    auto rng = drop_stream(1, 0);
    auto angles = sample_user_angles(1000, deg2rad(10.0), rng);
    REQUIRE(angles.size() == 1000);
    double lim = deg2rad(10.0);
    int left = 0;
    for (const auto &a : angles)
    {
        CHECK(std::abs(a.theta) <= lim);
        left += a.theta < 0.0;
    }
    // both halves populated
    CHECK(left > 300);
    CHECK(left < 700);
}

TEST_CASE("delta histogram is a density with triangular shape")
{
    auto h = delta_histogram(200000, deg2rad(10.0), 64, 3);
    double lim = 2.0 * std::sin(deg2rad(10.0));
    double bin_w = 2.0 * lim / 64;
    double mass = 0.0;
    for (const auto &[x, v] : h.points)
    {
        CHECK(std::abs(x) < lim);
        CHECK(v >= 0.0);
        mass += v * bin_w;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    // density of a difference of two i.i.d. variables peaks at zero and
    // decays monotonically (up to sampling noise) toward the edges
    double center = h.points[32].second, edge = h.points[1].second;
    CHECK(center > 4.0 * edge);
    CHECK_THROWS_AS(delta_histogram(100, deg2rad(10.0), 8, 1), validation_error);
}

TEST_CASE("simulation is deterministic in the seed and worker count")
{
    Scenario s = base_scenario();
    s.drops = 800;
    auto a = simulate_rate_cdf(s, 1);
    auto b = simulate_rate_cdf(s, 4);
    auto c = simulate_rate_cdf(s, 7);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); i++)
    {
        CHECK(a.points[i].first == b.points[i].first);   // bitwise
        CHECK(a.points[i].second == b.points[i].second); // bitwise
        CHECK(a.points[i].first == c.points[i].first);
    }
    s.seed = 2;
    auto d = simulate_rate_cdf(s, 4);
    CHECK(a.points != d.points);
}

TEST_CASE("single-user LoS rate is a deterministic step")
{
    Scenario s = base_scenario();
    s.users = 1;
    s.drops = 50;
    auto cdf = simulate_rate_cdf(s);
    REQUIRE(cdf.points.size() == 1); // identical rate every drop
    CHECK(cdf.points[0].first == doctest::Approx(std::log2(1.0 + 100.0 * 32.0)));
    CHECK(cdf.points[0].second == 1.0);
}

TEST_CASE("recorded user is exchangeable")
{
    Scenario s = base_scenario();
    s.drops = 6000;
    auto u0 = simulate_rate_cdf(s, 0, 0);
    auto u7 = simulate_rate_cdf(s, 0, 17);
    auto ur = simulate_rate_cdf(s, 0, -1);
    CHECK(ks_distance(u0, u7) < 0.05);
    CHECK(ks_distance(u0, ur) < 0.05);
    CHECK_THROWS_AS(simulate_rate_cdf(s, 0, 18), validation_error);
}

TEST_CASE("beamformer ordering at the median")
{
    Scenario s = base_scenario();
    s.users = 8;
    s.drops = 3000;
    auto median = [](const DistributionSeries &c) {
        for (const auto &[x, f] : c.points)
            if (f >= 0.5)
                return x;
        return c.points.back().first;
    };
    s.beamformer = Beamformer::MRC;
    double m_mrc = median(simulate_rate_cdf(s));
    s.beamformer = Beamformer::ZF;
    double m_zf = median(simulate_rate_cdf(s));
    s.beamformer = Beamformer::MMSE;
    double m_mmse = median(simulate_rate_cdf(s));
    CHECK(m_mmse >= m_mrc - 1e-9);
    CHECK(m_mmse >= m_zf - 1e-9);
}

TEST_CASE("two-lobe surrogate simulation matches the binomial CDF")
{
    Scenario s = base_scenario();
    s.drops = 40000;
    TwoLobeModel model(1.789, lobe_gain_for_alpha(1.789, 32), 3.24e-3);
    auto sim = simulate_two_lobe_rate_cdf(s, model);
    AnalyticScenario asc(s.users, s.array, s.theta_max, s.snr_linear());
    // simulated atoms coincide with the analytic jump points (up to rounding
    // spread), so compare the two CDFs just off each jump on both sides
    const double eps = 1e-6;
    double worst = 0.0;
    for (const auto &[x, f] : sim.points)
        worst = std::max(
            {worst,
             std::abs(eval_cdf(sim, x + eps) - rate_cdf_binomial(asc, model, x + eps)),
             std::abs(eval_cdf(sim, x - eps) - rate_cdf_binomial(asc, model, x - eps))});
    CHECK(worst < 0.02);

    s.beamformer = Beamformer::ZF;
    CHECK_THROWS_AS(simulate_two_lobe_rate_cdf(s, model), validation_error);
}

TEST_CASE("one-ring simulation runs and produces a valid CDF")
{
    Scenario s = base_scenario();
    s.channel = ChannelKind::OneRing;
    s.drops = 500;
    auto cdf = simulate_rate_cdf(s);
    CHECK_NOTHROW(cdf.validate());
    CHECK(cdf.points.back().second == doctest::Approx(1.0));
    CHECK(cdf.meta.at("channel") == "one-ring");
}
