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
// ------------------------------------------------------------------------

#ifndef sula_montecarlo_H
#define sula_montecarlo_H

#include <atomic>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "analytic.hpp"
#include "beamform.hpp"
#include "channel.hpp"
#include "rng.hpp"
#include "series.hpp"

namespace sula
{

enum class ChannelKind
{
    Los,
    OneRing
};

// Full experiment description for one Monte Carlo run.
struct Scenario
{
    ArrayConfig array;
    int users;
    double theta_max; // radians
    double snr_db;
    Beamformer beamformer = Beamformer::MRC;
    ChannelKind channel = ChannelKind::Los;
    OneRingParams one_ring{};
    std::uint64_t drops = 100000;
    std::uint64_t seed = 1;

    void validate() const
    {
        if (users < 1)
            throw validation_error("Scenario: K must be >= 1");
        if (drops < 1)
            throw validation_error("Scenario: drops must be >= 1");
        if (!(theta_max > 0.0 && theta_max <= pi / 2))
            throw validation_error("Scenario: theta_max must be in (0, pi/2]");
        if (beamformer == Beamformer::ZF && users - 1 >= array.elements)
            throw validation_error("Scenario: ZF requires K-1 < M");
        if (channel == ChannelKind::OneRing)
            one_ring.validate();
    }

    double snr_linear() const { return db2lin(snr_db); }
};

inline std::vector<SpatialAngle> sample_user_angles(int users, double theta_max,
                                                    std::mt19937_64 &rng)
{
    if (users < 1 || !(theta_max >= 0.0 && theta_max <= pi / 2))
        throw validation_error("sample_user_angles: invalid parameters");
    std::uniform_real_distribution<double> dist(-theta_max, theta_max);
    std::vector<SpatialAngle> angles;
    angles.reserve(users);
    for (int k = 0; k < users; k++)
        angles.emplace_back(theta_max > 0.0 ? dist(rng) : 0.0);
    return angles;
}

namespace detail
{

// Runs fn(drop_index) for every drop, split across threads. Results must be
// written by drop index, so the schedule does not affect the output.
template <typename Fn>
inline void for_each_drop(std::uint64_t drops, unsigned n_threads, Fn &&fn)
{
    if (n_threads == 0)
        n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::uint64_t>(n_threads, drops));
    if (n_threads <= 1)
    {
        for (std::uint64_t d = 0; d < drops; d++)
            fn(d);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned w = 0; w < n_threads; w++)
        pool.emplace_back([&, w]() {
            for (std::uint64_t d = w; d < drops; d += n_threads)
                fn(d);
        });
    for (auto &th : pool)
        th.join();
}

} // namespace detail

// PDF histogram of Delta = sin(theta_k) - sin(theta_i) over random user pairs.
inline DistributionSeries delta_histogram(std::uint64_t pairs, double theta_max, int bins,
                                          std::uint64_t seed)
{
    if (bins < 16)
        throw validation_error("delta_histogram: need at least 16 bins");
    if (pairs < 1 || !(theta_max > 0.0 && theta_max <= pi / 2))
        throw validation_error("delta_histogram: invalid parameters");
    double lim = 2.0 * std::sin(theta_max);
    std::vector<std::uint64_t> counts(bins, 0);
    std::mt19937_64 rng = drop_stream(seed, 0);
    std::uniform_real_distribution<double> dist(-theta_max, theta_max);
    for (std::uint64_t i = 0; i < pairs; i++)
    {
        double d = std::sin(dist(rng)) - std::sin(dist(rng));
        int b = static_cast<int>((d + lim) / (2.0 * lim) * bins);
        counts[std::clamp(b, 0, bins - 1)]++;
    }
    DistributionSeries s;
    s.kind = SeriesKind::PdfHistogram;
    s.name = "delta_pdf";
    s.samples = pairs;
    double bin_width = 2.0 * lim / bins;
    for (int b = 0; b < bins; b++)
        s.points.emplace_back(-lim + (b + 0.5) * bin_width,
                              counts[b] / (bin_width * static_cast<double>(pairs)));
    s.meta["theta_max_deg"] = std::to_string(rad2deg(theta_max));
    s.meta["bins"] = std::to_string(bins);
    s.validate();
    return s;
}

// Empirical CDF of one user's achievable rate over independent drops.
// record_user < 0 records a uniformly chosen user per drop (users are
// exchangeable); otherwise the given index. ZF-singular drops count as rate 0.
inline DistributionSeries simulate_rate_cdf(const Scenario &sc, unsigned n_threads = 0,
                                            int record_user = 0)
{
    sc.validate();
    if (record_user >= sc.users)
        throw validation_error("simulate_rate_cdf: recorded user out of range");
    std::vector<double> rates(sc.drops);
    std::atomic<std::uint64_t> singular{0};
    double snr = sc.snr_linear();

    detail::for_each_drop(sc.drops, n_threads, [&](std::uint64_t d) {
        std::mt19937_64 rng = drop_stream(sc.seed, d);
        auto angles = sample_user_angles(sc.users, sc.theta_max, rng);
        UplinkSnapshot snap;
        snap.channels.reserve(sc.users);
        snap.snr.assign(sc.users, snr);
        for (const auto &a : angles)
        {
            UserPlacement u{a};
            snap.channels.push_back(sc.channel == ChannelKind::Los
                                        ? los_channel(sc.array, u)
                                        : one_ring_channel(sc.array, u, sc.one_ring, rng));
        }
        int k = record_user;
        if (k < 0)
            k = static_cast<int>(std::uniform_int_distribution<int>(0, sc.users - 1)(rng));
        try
        {
            rates[d] = rate_from_sinr(detail::sinr_user(snap, k, sc.beamformer));
        }
        catch (const singular_matrix_error &)
        {
            rates[d] = 0.0;
            singular.fetch_add(1, std::memory_order_relaxed);
        }
    });

    std::uint64_t bad = singular.load();
    if (bad * 1000 > sc.drops)
        std::cerr << "simulate_rate_cdf: warning: " << bad << " of " << sc.drops
                  << " drops hit a singular ZF system (recorded as rate 0)\n";

    DistributionSeries s = empirical_cdf(std::move(rates), "rate_cdf");
    s.meta["beamformer"] = to_string(sc.beamformer);
    s.meta["channel"] = sc.channel == ChannelKind::Los ? "los" : "one-ring";
    s.meta["eta"] = std::to_string(sc.array.eta);
    s.meta["elements"] = std::to_string(sc.array.elements);
    s.meta["users"] = std::to_string(sc.users);
    s.meta["theta_max_deg"] = std::to_string(rad2deg(sc.theta_max));
    s.meta["snr_db"] = std::to_string(sc.snr_db);
    s.meta["seed"] = std::to_string(sc.seed);
    s.meta["zf_singular_drops"] = std::to_string(bad);
    return s;
}

// Simulation of the approximated system: interference coefficients drawn as
// a Bernoulli(p) mixture of {g_main, g_side} in the LoS MRC SINR. Direct
// sampling counterpart of rate_cdf_binomial.
inline DistributionSeries simulate_two_lobe_rate_cdf(const Scenario &sc, const TwoLobeModel &model,
                                                     unsigned n_threads = 0)
{
    sc.validate();
    if (sc.beamformer != Beamformer::MRC || sc.channel != ChannelKind::Los)
        throw validation_error("simulate_two_lobe_rate_cdf: defined for LoS + MRC only");
    double p = lobe_collision_prob(sc.array.eta, sc.array.elements, model.alpha, sc.theta_max);
    double pm = sc.snr_linear() * sc.array.elements;
    std::vector<double> rates(sc.drops);

    detail::for_each_drop(sc.drops, n_threads, [&](std::uint64_t d) {
        std::mt19937_64 rng = drop_stream(sc.seed, d);
        std::bernoulli_distribution collide(p);
        double rho_sum = 0.0;
        for (int i = 0; i < sc.users - 1; i++)
            rho_sum += collide(rng) ? model.g_main : model.g_side;
        rates[d] = rate_from_sinr(pm / (pm * rho_sum + 1.0));
    });

    DistributionSeries s = empirical_cdf(std::move(rates), "two_lobe_rate_cdf");
    s.meta["collision_prob"] = std::to_string(p);
    s.meta["eta"] = std::to_string(sc.array.eta);
    s.meta["users"] = std::to_string(sc.users);
    s.meta["seed"] = std::to_string(sc.seed);
    return s;
}

} // namespace sula

#endif
