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
//
// Closed-form machinery: the piecewise two-lobe surrogate of the beam
// pattern, the lobe-collision probability for uniformly placed users, the
// resulting binomial and Gaussian rate CDFs, and the angular-spread
// thresholds between which a sparse array beats the collocated baseline.

#ifndef sula_analytic_H
#define sula_analytic_H

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "array.hpp"
#include "common.hpp"

namespace sula
{

// Piecewise-constant beam surrogate: gain g_main within alpha/(M*eta) of a
// lobe center 2n/eta, gain g_side elsewhere.
struct TwoLobeModel
{
    double alpha;
    double g_main;
    double g_side;

    TwoLobeModel(double a, double gm, double gs) : alpha(a), g_main(gm), g_side(gs)
    {
        if (!(a >= 0.0 && a <= 2.0))
            throw validation_error("TwoLobeModel: alpha must be in [0, 2]");
        if (!(gm > 0.0 && gm <= 1.0))
            throw validation_error("TwoLobeModel: g_main must be in (0, 1]");
        if (!(gs >= 0.0 && gs < gm))
            throw validation_error("TwoLobeModel: g_side must be in [0, g_main)");
    }

    double half_width(const ArrayConfig &array) const
    {
        return alpha / (array.elements * array.eta);
    }
};

struct AnalyticScenario
{
    int users;
    ArrayConfig array;
    double theta_max;  // radians
    double snr_linear; // P̄

    AnalyticScenario(int k, ArrayConfig a, double tmax, double snr)
        : users(k), array(a), theta_max(tmax), snr_linear(snr)
    {
        if (k < 1)
            throw validation_error("AnalyticScenario: K must be >= 1");
        if (!(tmax > 0.0 && tmax <= pi / 2) || !(std::sin(tmax) > 0.0))
            throw validation_error("AnalyticScenario: theta_max must be in (0, pi/2]");
        if (!(snr > 0.0))
            throw validation_error("AnalyticScenario: SNR must be positive");
    }
};

struct CrossoverThresholds
{
    double theta_lower; // radians
    double theta_upper;
};

// Distance from delta to the nearest lobe center 2n/eta with |n| <= floor(eta).
inline double lobe_center_distance(const ArrayConfig &array, double delta)
{
    double n_lim = std::floor(array.eta);
    double n = std::clamp(std::round(delta * array.eta / 2.0), -n_lim, n_lim);
    return std::abs(delta - 2.0 * n / array.eta);
}

inline double two_lobe_gain(const TwoLobeModel &model, const ArrayConfig &array,
                            const SpatialAngleDifference &diff)
{
    return lobe_center_distance(array, diff.delta) <= model.half_width(array) ? model.g_main
                                                                              : model.g_side;
}

// Lobe gain pinned to the pattern value at half the effective half-width,
// G_m = |sin(pi*alpha/4) / (M*sin(pi*alpha/(4M)))|^2.
inline double lobe_gain_for_alpha(double alpha, int elements)
{
    if (alpha <= 0.0)
        return 1.0;
    double u = pi * alpha / 4.0;
    double r = std::sin(u) / (elements * std::sin(u / elements));
    return r * r;
}

// Least-squares fit of the two-lobe surrogate on a uniform grid over [-2, 2].
// G_m follows lobe_gain_for_alpha, alpha is scanned on a 1e-3 grid and
// G_s is the mean pattern gain of the induced sidelobe region. The residual
// is minimized on log-gains (the dB domain patterns are judged in); the
// linear-domain objective collapses the lobe width far below the observable
// beam edge because the sidelobe floor carries almost no linear weight.
inline TwoLobeModel fit_two_lobe(const ArrayConfig &array, int grid_points = 1 << 14,
                                 double *residual_out = nullptr)
{
    if (grid_points < 64 * array.elements * array.eta)
        throw validation_error("fit_two_lobe: grid too coarse to resolve the main lobe "
                               "(need >= 64 points per lobe width)");

    std::vector<double> dist(grid_points), log_gain(grid_points);
    for (int i = 0; i < grid_points; i++)
    {
        double d = -2.0 + 4.0 * i / (grid_points - 1.0);
        dist[i] = lobe_center_distance(array, d);
        double g = beam_gain(array, SpatialAngleDifference(d));
        log_gain[i] = std::log(std::max(g, 1e-12));
    }
    std::vector<int> order(grid_points);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] < dist[b]; });

    // prefix sums over the distance-sorted points
    std::vector<double> dist_s(grid_points), cum_l(grid_points + 1, 0.0),
        cum_l2(grid_points + 1, 0.0), cum_g(grid_points + 1, 0.0);
    for (int i = 0; i < grid_points; i++)
    {
        dist_s[i] = dist[order[i]];
        double l = log_gain[order[i]];
        cum_l[i + 1] = cum_l[i] + l;
        cum_l2[i + 1] = cum_l2[i] + l * l;
        cum_g[i + 1] = cum_g[i] + std::exp(l);
    }

    double best_sse = std::numeric_limits<double>::infinity();
    double best_alpha = 0.0, best_gm = 1.0, best_gs = 0.0;
    for (int ai = 0; ai <= 2000; ai++)
    {
        double alpha = ai * 1e-3;
        double t = alpha / (array.elements * array.eta);
        auto split = std::upper_bound(dist_s.begin(), dist_s.end(), t) - dist_s.begin();
        long k = static_cast<long>(split);
        long n_side = grid_points - k;
        if (n_side == 0)
            continue;
        double gm = lobe_gain_for_alpha(alpha, array.elements);
        double gs = (cum_g[grid_points] - cum_g[k]) / n_side;
        double lm = std::log(gm), ls = std::log(std::max(gs, 1e-12));
        double sse = (cum_l2[k] - 2.0 * lm * cum_l[k] + k * lm * lm) +
                     (cum_l2[grid_points] - cum_l2[k]) -
                     2.0 * ls * (cum_l[grid_points] - cum_l[k]) + n_side * ls * ls;
        if (sse < best_sse)
        {
            best_sse = sse;
            best_alpha = alpha;
            best_gm = gm;
            best_gs = gs;
        }
    }
    if (residual_out != nullptr)
        *residual_out = best_sse;
    return TwoLobeModel(best_alpha, best_gm, std::min(best_gs, best_gm * (1.0 - 1e-12)));
}

// Surrogate at a caller-chosen alpha: G_m from lobe_gain_for_alpha, G_s the
// mean pattern gain over the induced sidelobe region.
inline TwoLobeModel two_lobe_for_alpha(const ArrayConfig &array, double alpha,
                                       int grid_points = 1 << 14)
{
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw validation_error("two_lobe_for_alpha: alpha must be in (0, 2]");
    double t = alpha / (array.elements * array.eta);
    double side_sum = 0.0;
    long n_side = 0;
    for (int i = 0; i < grid_points; i++)
    {
        double d = -2.0 + 4.0 * i / (grid_points - 1.0);
        if (lobe_center_distance(array, d) > t)
        {
            side_sum += beam_gain(array, SpatialAngleDifference(d));
            n_side++;
        }
    }
    if (n_side == 0)
        throw validation_error("two_lobe_for_alpha: no sidelobe region at this alpha");
    double gm = lobe_gain_for_alpha(alpha, array.elements);
    double gs = side_sum / n_side;
    return TwoLobeModel(alpha, gm, std::min(gs, gm * (1.0 - 1e-12)));
}

// Probability that two users land in the same main or grating lobe, computed
// by numerical integration of the joint angle density over the lobe bands.
// pdf_of_sin_theta must integrate to 1 over [-sin(theta_max), sin(theta_max)].
inline double collision_prob_numeric(double eta, int elements, double alpha, double theta_max,
                                     const std::function<double(double)> &pdf_of_sin_theta)
{
    ArrayConfig array(elements, eta);
    double s = std::sin(theta_max);
    double t = alpha / (elements * eta);
    if (!(s > 0.0))
        throw validation_error("collision_prob_numeric: sin(theta_max) must be positive");

    // 8-point Gauss-Legendre nodes/weights on [-1, 1]
    static const double gx[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                 -0.1834346424956498, 0.1834346424956498, 0.5255324099163290,
                                 0.7966664774136267, 0.9602898564975363};
    static const double gw[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                 0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};
    auto integrate = [&](double a, double b) {
        double mid = 0.5 * (a + b), half = 0.5 * (b - a), acc = 0.0;
        for (int i = 0; i < 8; i++)
            acc += gw[i] * pdf_of_sin_theta(mid + half * gx[i]);
        return acc * half;
    };

    // normalization check (composite over 256 panels)
    double norm = 0.0;
    for (int i = 0; i < 256; i++)
        norm += integrate(-s + 2.0 * s * i / 256.0, -s + 2.0 * s * (i + 1) / 256.0);
    if (std::abs(norm - 1.0) > 1e-3)
        throw validation_error("collision_prob_numeric: pdf does not integrate to 1 "
                               "over the angle support");

    int n_lobe = static_cast<int>(std::floor(eta));
    const int outer = 8192; // trapezoid panels; integrand is piecewise smooth
    double h = 2.0 * s / outer;
    auto band_mass = [&](double x) {
        double acc = 0.0, prev_hi = -std::numeric_limits<double>::infinity();
        for (int n = -n_lobe; n <= n_lobe; n++)
        {
            double lo = std::max({x + 2.0 * n / eta - t, -s, prev_hi});
            double hi = std::min(x + 2.0 * n / eta + t, s);
            if (hi > lo)
            {
                acc += integrate(lo, hi);
                prev_hi = hi;
            }
        }
        return acc;
    };
    double p = 0.0;
    for (int i = 0; i <= outer; i++)
    {
        double x = -s + h * i;
        double w = (i == 0 || i == outer) ? 0.5 : 1.0;
        p += w * pdf_of_sin_theta(x) * band_mass(x);
    }
    return std::clamp(p * h, 0.0, 1.0);
}

// Closed-form collision probability for X ~ U(-sin(theta_max), sin(theta_max)).
inline double lobe_collision_prob(double eta, int elements, double alpha, double theta_max)
{
    double s = std::sin(theta_max);
    double t = alpha / (elements * eta);
    if (!(eta >= 1.0) || elements < 2 || !(alpha >= 0.0 && alpha <= 2.0) || !(s > 0.0))
        throw validation_error("lobe_collision_prob: invalid parameters");
    if (s < 0.5 * t)
        return 1.0;
    double n_max = std::floor(eta * s - 0.5 * alpha / elements);
    double p = alpha *
               ((2.0 * n_max + 1.0) * s - 0.25 * alpha / (elements * eta) -
                n_max * (n_max + 1.0) / eta) /
               (s * s * elements * eta);
    return std::clamp(p, 0.0, 1.0);
}

// Collocated specialization; same code path as the general closed form.
inline double collocated_collision_prob(int elements, double alpha, double theta_max)
{
    return lobe_collision_prob(1.0, elements, alpha, theta_max);
}

// Exact per-lobe probability mass, including the edge-straddling case that
// the closed form drops.
inline double per_lobe_prob(int n, double eta, int elements, double alpha, double theta_max)
{
    if (std::abs(n) > static_cast<int>(std::floor(eta)))
        throw validation_error("per_lobe_prob: |n| must be <= floor(eta)");
    double s = std::sin(theta_max);
    double t = alpha / (elements * eta);
    if (!(s > 0.0))
        throw validation_error("per_lobe_prob: sin(theta_max) must be positive");
    if (n == 0)
    {
        if (2.0 * s < t)
            return 1.0;
        return (4.0 * t * s - t * t) / (4.0 * s * s);
    }
    double an = std::abs(static_cast<double>(n)) / eta;
    if (an <= s - 0.5 * t)
        return t * (s - an) / (s * s);
    if (an < s + 0.5 * t)
    {
        double e = s + 0.5 * t - an;
        return e * e / (2.0 * s * s);
    }
    return 0.0;
}

// CDF of the per-user rate under the two-lobe surrogate: the interference
// sum is a scaled Binomial(K-1, p), so F = Pr(collisions > N) with
// N = floor((Y - (K-1) G_s) / (G_m - G_s)) and Y = 1/(2^R - 1) - 1/(P̄ M).
inline double rate_cdf_binomial(const AnalyticScenario &sc, const TwoLobeModel &model,
                                double rate_threshold)
{
    if (!(rate_threshold > 0.0))
        throw validation_error("rate_cdf_binomial: rate threshold must be positive");
    double pm = sc.snr_linear * sc.array.elements;
    double y = 1.0 / (std::exp2(rate_threshold) - 1.0) - 1.0 / pm;
    double z = (y - (sc.users - 1) * model.g_side) / (model.g_main - model.g_side);
    double n_f = std::floor(z);
    if (n_f < 0.0)
        return 1.0;
    if (n_f >= sc.users - 1)
        return 0.0;
    int n = static_cast<int>(n_f);
    double p = lobe_collision_prob(sc.array.eta, sc.array.elements, model.alpha, sc.theta_max);
    if (p <= 0.0)
        return 0.0; // zero collisions almost surely, and n >= 0
    if (p >= 1.0)
        return 1.0; // K-1 collisions almost surely, and n < K-1
    // binomial tail in log space
    double cdf = 0.0;
    double lp = std::log(p), lq = std::log1p(-p);
    for (int q = 0; q <= n; q++)
        cdf += std::exp(std::lgamma(sc.users) - std::lgamma(q + 1.0) - std::lgamma(sc.users - q) +
                        q * lp + (sc.users - 1.0 - q) * lq);
    return std::clamp(1.0 - cdf, 0.0, 1.0);
}

// Gaussian large-K limit of rate_cdf_binomial.
inline double rate_cdf_gaussian(const AnalyticScenario &sc, const TwoLobeModel &model,
                                double rate_threshold)
{
    if (sc.users < 2)
        throw validation_error("rate_cdf_gaussian: needs K >= 2");
    if (!(rate_threshold > 0.0))
        throw validation_error("rate_cdf_gaussian: rate threshold must be positive");
    double pm = sc.snr_linear * sc.array.elements;
    double y = 1.0 / (std::exp2(rate_threshold) - 1.0) - 1.0 / pm;
    double p = lobe_collision_prob(sc.array.eta, sc.array.elements, model.alpha, sc.theta_max);
    double span = model.g_main - model.g_side;
    double mu = (sc.users - 1) * (model.g_side + span * p);
    double nu = (sc.users - 1) * span * span * p * (1.0 - p);
    if (nu <= 0.0) // degenerate limit: step CDF
        return y > mu ? 0.0 : (y < mu ? 1.0 : 0.5);
    return 1.0 - 0.5 * (1.0 + std::erf((y - mu) / std::sqrt(2.0 * nu)));
}

// Xi(sin theta_max) = p_col - p(eta); positive where the sparse array sees
// fewer lobe collisions than the collocated baseline.
inline double collision_prob_gap(double eta, int elements, double alpha, double theta_max)
{
    if (!(eta > 1.0))
        throw validation_error("collision_prob_gap: requires eta > 1");
    return collocated_collision_prob(elements, alpha, theta_max) -
           lobe_collision_prob(eta, elements, alpha, theta_max);
}

// Angular-spread window (theta_lower, theta_upper) inside which the sparse
// array has strictly lower collision probability than the collocated one.
inline CrossoverThresholds crossover_thresholds(double eta, int elements, double alpha)
{
    if (!(eta > 1.0))
        throw validation_error("crossover_thresholds: requires eta > 1");
    if (!(alpha >= 0.0 && alpha <= 2.0) || elements < 2)
        throw validation_error("crossover_thresholds: invalid parameters");
    double sin_lower = 0.5 * alpha / (elements * eta);
    double aM = alpha / elements;
    double disc = eta * eta - aM * (eta * eta + 1.0 - aM);
    if (disc < 0.0)
        throw no_crossover_error("crossover_thresholds: negative discriminant, no crossover "
                                 "regime for these parameters");
    double sin_upper = std::min((eta + std::sqrt(disc)) / (2.0 * eta), 1.0);
    return {std::asin(sin_lower), std::asin(sin_upper)};
}

} // namespace sula

#endif
