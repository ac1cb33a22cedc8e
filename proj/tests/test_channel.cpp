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
#include <random>

#include <sula/channel.hpp>
#include <sula/rng.hpp>

using namespace sula;

TEST_CASE("OneRingParams validation and spread")
{
    OneRingParams p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.angular_spread() == doctest::Approx(std::asin(5.0 / 40.0)));

    OneRingParams bad = p;
    bad.paths = 0;
    CHECK_THROWS_AS(bad.validate(), validation_error);
    bad = p;
    bad.ring_radius_m = 50.0; // ring would enclose the BS
    CHECK_THROWS_AS(bad.validate(), validation_error);
}

TEST_CASE("LoS channel is a scaled steering vector")
{
    ArrayConfig a(16, 4.0);
    UserPlacement u{SpatialAngle(0.25), cxd(0.6, -0.8)};
    cvec h = los_channel(a, u);
    cvec v = steering_vector(a, u.angle);
    for (int m = 0; m < 16; m++)
        CHECK(std::abs(h[m] - u.path_gain * v[m]) < 1e-12);
    CHECK(h.squaredNorm() == doctest::Approx(std::norm(u.path_gain) * 16.0));
}

TEST_CASE("one-ring path structure")
{
    ArrayConfig a(16, 4.0);
    OneRingParams p;
    p.paths = 12;
    UserPlacement u{SpatialAngle(0.1)};
    auto rng = drop_stream(42, 0);
    auto paths = one_ring_paths(u, p, rng);
    REQUIRE(paths.size() == 13);
    // LoS first, at the user angle, with deterministic gain
    CHECK(paths[0].angle.theta == doctest::Approx(0.1));
    double kc = db2lin(p.rician_k_db);
    CHECK(std::abs(paths[0].gain) == doctest::Approx(std::sqrt(kc / (1.0 + kc))));
    double spread = p.angular_spread();
    double a_scatter = std::sqrt(1.0 / ((1.0 + kc) * p.paths));
    for (std::size_t l = 1; l < paths.size(); l++)
    {
        CHECK(std::abs(paths[l].gain) == doctest::Approx(a_scatter));
        CHECK(paths[l].angle.theta >= 0.1 - spread - 1e-12);
        CHECK(paths[l].angle.theta <= 0.1 + spread + 1e-12);
    }
    // total path power is normalized to 1 (per unit |beta|^2)
    double power = 0.0;
    for (const auto &pc : paths)
        power += std::norm(pc.gain);
    CHECK(power == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("one-ring channel mean power matches M")
{
    // E||h||^2 = |beta|^2 M: fixed path magnitudes and independent uniform
    // phases make the cross terms vanish in expectation.
    ArrayConfig a(32, 4.0);
    OneRingParams p;
    p.rician_k_db = 3.0; // meaningful scattered power so the test has teeth
    UserPlacement u{SpatialAngle(0.3)};
    const int draws = 100000;
    double acc = 0.0;
    for (int d = 0; d < draws; d++)
    {
        auto rng = drop_stream(123, d);
        acc += one_ring_channel(a, u, p, rng).squaredNorm();
    }
    CHECK(acc / draws == doctest::Approx(32.0).epsilon(0.02));
}

TEST_CASE("one-ring collapses to LoS for a large Rician factor")
{
    ArrayConfig a(16, 4.0);
    OneRingParams p;
    p.rician_k_db = 80.0;
    UserPlacement u{SpatialAngle(-0.2)};
    auto rng = drop_stream(5, 0);
    cvec h = one_ring_channel(a, u, p, rng);
    cvec v = los_channel(a, u);
    CHECK((h - v).norm() / v.norm() < 1e-3);
}

TEST_CASE("one-ring determinism per stream")
{
    ArrayConfig a(8, 2.0);
    OneRingParams p;
    UserPlacement u{SpatialAngle(0.0)};
    auto r1 = drop_stream(9, 4);
    auto r2 = drop_stream(9, 4);
    cvec h1 = one_ring_channel(a, u, p, r1);
    cvec h2 = one_ring_channel(a, u, p, r2);
    CHECK((h1 - h2).norm() == 0.0);
    auto r3 = drop_stream(9, 5);
    cvec h3 = one_ring_channel(a, u, p, r3);
    CHECK((h1 - h3).norm() > 1e-6);
}
