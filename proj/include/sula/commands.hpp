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

#ifndef sula_commands_H
#define sula_commands_H

#include <sstream>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "config.hpp"
#include "montecarlo.hpp"
#include "series.hpp"

namespace sula
{

namespace detail
{

inline std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// CSV gets one series per file: the series name is spliced into the stem
// when more than one series is emitted.
inline void emit(const std::vector<DistributionSeries> &series, const RunConfig &cfg)
{
    if (cfg.resolved_format() == "json")
    {
        write_json(series, cfg.out);
        return;
    }
    if (series.size() == 1)
    {
        write_csv(series.front(), cfg.out);
        return;
    }
    auto dot = cfg.out.rfind('.');
    std::string stem = dot == std::string::npos ? cfg.out : cfg.out.substr(0, dot);
    for (const auto &s : series)
        write_csv(s, stem + "_" + s.name + ".csv");
}

inline TwoLobeModel model_for(const RunConfig &cfg, const ArrayConfig &array)
{
    int grid = std::max(cfg.fit_grid_points,
                        static_cast<int>(64 * array.elements * array.eta) + 1);
    if (cfg.alpha && cfg.g_main && cfg.g_side)
        return TwoLobeModel(*cfg.alpha, *cfg.g_main, *cfg.g_side);
    if (cfg.alpha)
        return two_lobe_for_alpha(array, *cfg.alpha, grid);
    return fit_two_lobe(array, grid);
}

inline std::string eta_tag(double eta)
{
    std::ostringstream os;
    os << "eta" << eta;
    std::string s = os.str();
    for (auto &ch : s)
        if (ch == '.')
            ch = 'p';
    return s;
}

} // namespace detail

// Beam pattern sweep G_eta(Delta) on [-2, 2], one series per requested eta,
// with main-lobe nulls and grating-lobe positions in the metadata.
inline void cmd_beampattern(const RunConfig &cfg)
{
    cfg.validate();
    std::vector<DistributionSeries> out;
    for (double eta : cfg.etas)
    {
        ArrayConfig array(cfg.elements, eta);
        DistributionSeries s;
        s.kind = SeriesKind::Curve;
        s.name = "beampattern_" + detail::eta_tag(eta);
        s.samples = cfg.pattern_points;
        for (int i = 0; i < cfg.pattern_points; i++)
        {
            double d = -2.0 + 4.0 * i / (cfg.pattern_points - 1.0);
            s.points.emplace_back(d, beam_gain(array, SpatialAngleDifference(d)));
        }
        double null_delta = 2.0 / (array.elements * eta);
        s.meta["eta"] = detail::fmt(eta);
        s.meta["elements"] = std::to_string(cfg.elements);
        s.meta["main_lobe_nulls"] = "-" + detail::fmt(null_delta) + "," + detail::fmt(null_delta);
        s.meta["main_lobe_beamwidth"] = detail::fmt(main_lobe_beamwidth(array));
        std::string lobes;
        for (const auto &g : grating_lobe_positions(array))
            lobes += (lobes.empty() ? "" : ",") + detail::fmt(g.delta);
        s.meta["grating_lobes"] = lobes;
        s.validate();
        out.push_back(std::move(s));
    }
    detail::emit(out, cfg);
}

// Histogram of the spatial angle difference over random user pairs.
inline void cmd_delta_dist(const RunConfig &cfg)
{
    cfg.validate();
    auto s = delta_histogram(cfg.pairs, cfg.theta_max_rad(), cfg.bins, cfg.seed);
    s.meta["seed"] = std::to_string(cfg.seed);
    detail::emit({s}, cfg);
}

// Monte Carlo rate CDFs for every (eta, beamformer) pair, plus the analytic
// binomial/Gaussian curves for the LoS + MRC combinations.
inline void cmd_rate_cdf(const RunConfig &cfg)
{
    cfg.validate();
    std::vector<DistributionSeries> out;
    for (double eta : cfg.etas)
    {
        ArrayConfig array(cfg.elements, eta);
        for (const auto &bf : cfg.beamformers)
        {
            Scenario sc{array,
                        cfg.users,
                        cfg.theta_max_rad(),
                        cfg.snr_db,
                        cfg.parse_beamformer(bf),
                        cfg.channel == "los" ? ChannelKind::Los : ChannelKind::OneRing,
                        cfg.one_ring,
                        cfg.drops,
                        cfg.seed};
            auto s = simulate_rate_cdf(sc);
            s.name = "rate_cdf_" + detail::eta_tag(eta) + "_" + bf;
            out.push_back(std::move(s));

            if (cfg.channel == "los" && sc.beamformer == Beamformer::MRC)
            {
                TwoLobeModel model = detail::model_for(cfg, array);
                AnalyticScenario asc(cfg.users, array, cfg.theta_max_rad(), db2lin(cfg.snr_db));
                double rmax = cfg.rate_max > 0.0
                                  ? cfg.rate_max
                                  : rate_from_sinr(asc.snr_linear * cfg.elements) + 1.0;
                DistributionSeries thm;
                thm.kind = SeriesKind::Cdf;
                thm.name = "rate_cdf_" + detail::eta_tag(eta) + "_theorem1";
                DistributionSeries lem;
                lem.kind = SeriesKind::Cdf;
                lem.name = "rate_cdf_" + detail::eta_tag(eta) + "_lemma1";
                for (int i = 1; i <= cfg.rate_points; i++)
                {
                    double r = rmax * i / cfg.rate_points;
                    thm.points.emplace_back(r, rate_cdf_binomial(asc, model, r));
                    if (cfg.users >= 2)
                        lem.points.emplace_back(r, rate_cdf_gaussian(asc, model, r));
                }
                thm.meta["alpha"] = detail::fmt(model.alpha);
                thm.meta["g_main"] = detail::fmt(model.g_main);
                thm.meta["g_side"] = detail::fmt(model.g_side);
                thm.validate();
                out.push_back(std::move(thm));
                if (cfg.users >= 2)
                {
                    lem.meta = out.back().meta;
                    lem.validate();
                    out.push_back(std::move(lem));
                }
            }
        }
    }
    detail::emit(out, cfg);
}

// Theorem-level rate CDFs only, no simulation.
inline void cmd_analytic_cdf(const RunConfig &cfg)
{
    cfg.validate();
    std::vector<DistributionSeries> out;
    for (double eta : cfg.etas)
    {
        ArrayConfig array(cfg.elements, eta);
        TwoLobeModel model = detail::model_for(cfg, array);
        AnalyticScenario asc(cfg.users, array, cfg.theta_max_rad(), db2lin(cfg.snr_db));
        double rmax = cfg.rate_max > 0.0 ? cfg.rate_max
                                         : rate_from_sinr(asc.snr_linear * cfg.elements) + 1.0;
        DistributionSeries thm;
        thm.kind = SeriesKind::Cdf;
        thm.name = "analytic_cdf_" + detail::eta_tag(eta) + "_theorem1";
        DistributionSeries lem;
        lem.kind = SeriesKind::Cdf;
        lem.name = "analytic_cdf_" + detail::eta_tag(eta) + "_lemma1";
        for (int i = 1; i <= cfg.rate_points; i++)
        {
            double r = rmax * i / cfg.rate_points;
            thm.points.emplace_back(r, rate_cdf_binomial(asc, model, r));
            if (cfg.users >= 2)
                lem.points.emplace_back(r, rate_cdf_gaussian(asc, model, r));
        }
        thm.meta["alpha"] = detail::fmt(model.alpha);
        thm.meta["g_main"] = detail::fmt(model.g_main);
        thm.meta["g_side"] = detail::fmt(model.g_side);
        thm.meta["collision_prob"] = detail::fmt(
            lobe_collision_prob(eta, cfg.elements, model.alpha, cfg.theta_max_rad()));
        thm.validate();
        out.push_back(std::move(thm));
        if (cfg.users >= 2)
        {
            lem.meta = out.back().meta;
            lem.validate();
            out.push_back(std::move(lem));
        }
    }
    detail::emit(out, cfg);
}

// Crossover thresholds plus a sweep of the collision probability gap.
inline void cmd_crossover(const RunConfig &cfg)
{
    cfg.validate();
    double eta = cfg.etas.front();
    if (eta <= 1.0)
        throw validation_error("crossover: requires eta > 1");
    double alpha = cfg.alpha.value_or(1.6);

    DistributionSeries sweep;
    sweep.kind = SeriesKind::Curve;
    sweep.name = "collision_gap_" + detail::eta_tag(eta);
    const int n = 720;
    for (int i = 1; i <= n; i++)
    {
        double th = deg2rad(89.9 * i / n);
        sweep.points.emplace_back(rad2deg(th), collision_prob_gap(eta, cfg.elements, alpha, th));
    }
    sweep.meta["eta"] = detail::fmt(eta);
    sweep.meta["elements"] = std::to_string(cfg.elements);
    sweep.meta["alpha"] = detail::fmt(alpha);

    try
    {
        CrossoverThresholds th = crossover_thresholds(eta, cfg.elements, alpha);
        sweep.meta["theta_lower_deg"] = detail::fmt(rad2deg(th.theta_lower));
        sweep.meta["theta_upper_deg"] = detail::fmt(rad2deg(th.theta_upper));
        sweep.validate();
        detail::emit({sweep}, cfg);
    }
    catch (const no_crossover_error &)
    {
        // regime reported in-band; the caller still sees a numerical-error exit
        sweep.meta["no_crossover"] = "true";
        sweep.validate();
        detail::emit({sweep}, cfg);
        throw;
    }
}

// Two-lobe fit parameters and residual for the configured arrays.
inline void cmd_fit_lobes(const RunConfig &cfg)
{
    cfg.validate();
    std::vector<DistributionSeries> out;
    for (double eta : cfg.etas)
    {
        ArrayConfig array(cfg.elements, eta);
        double residual = 0.0;
        TwoLobeModel model =
            fit_two_lobe(array,
                         std::max(cfg.fit_grid_points,
                                  static_cast<int>(64 * array.elements * array.eta) + 1),
                         &residual);
        DistributionSeries s;
        s.kind = SeriesKind::Curve;
        s.name = "two_lobe_fit_" + detail::eta_tag(eta);
        // surrogate sampled on a coarse grid for plotting
        for (int i = 0; i < 801; i++)
        {
            double d = -2.0 + 4.0 * i / 800.0;
            s.points.emplace_back(d, two_lobe_gain(model, array, SpatialAngleDifference(d)));
        }
        s.meta["alpha"] = detail::fmt(model.alpha);
        s.meta["g_main"] = detail::fmt(model.g_main);
        s.meta["g_side"] = detail::fmt(model.g_side);
        s.meta["residual"] = detail::fmt(residual);
        s.meta["eta"] = detail::fmt(eta);
        s.meta["elements"] = std::to_string(cfg.elements);
        s.validate();
        out.push_back(std::move(s));
    }
    detail::emit(out, cfg);
}

} // namespace sula

#endif
