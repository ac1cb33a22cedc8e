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

#ifndef sula_channel_H
#define sula_channel_H

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "array.hpp"
#include "common.hpp"

namespace sula
{

struct UserPlacement
{
    SpatialAngle angle;
    cxd path_gain{1.0, 0.0}; // beta_k; unit by default, power lives in the normalized SNR
};

// One-ring scatterer geometry: a ring of radius R at range r along the LoS
// direction, subtending an angular spread of asin(R/r) around theta_k.
struct OneRingParams
{
    int paths = 10;              // scattered paths per user (LoS comes on top)
    double ring_radius_m = 5.0;  // R
    double center_range_m = 40.0; // r
    double rician_k_db = 20.0;   // LoS-to-scattered power ratio

    void validate() const
    {
        if (paths < 1)
            throw validation_error("OneRingParams: paths must be >= 1");
        if (!(ring_radius_m > 0.0))
            throw validation_error("OneRingParams: ring radius must be positive");
        if (!(center_range_m > ring_radius_m))
            throw validation_error("OneRingParams: ring must not enclose the BS (r > R)");
        if (!std::isfinite(rician_k_db))
            throw validation_error("OneRingParams: Rician factor must be finite");
    }

    double angular_spread() const { return std::asin(ring_radius_m / center_range_m); }
};

// Pure LoS channel, h = beta_k * a(theta_k).
inline cvec los_channel(const ArrayConfig &array, const UserPlacement &user)
{
    return user.path_gain * steering_vector(array, user.angle);
}

struct PathComponent
{
    SpatialAngle angle;
    cxd gain;
};

// Path set for the Rician one-ring channel. LoS power is Kc/(1+Kc) of the
// total, the remaining 1/(1+Kc) splits equally over the scattered paths, each
// with fixed magnitude and uniform random phase. Path angles are i.i.d.
// uniform over theta_k +- asin(R/r), clipped to the visible half space.
// Mean power works out to E||h||^2 = |beta_k|^2 * M.
inline std::vector<PathComponent> one_ring_paths(const UserPlacement &user,
                                                 const OneRingParams &params,
                                                 std::mt19937_64 &rng)
{
    params.validate();
    double kc = db2lin(params.rician_k_db);
    double spread = params.angular_spread();
    double a_los = std::sqrt(kc / (1.0 + kc));
    double a_scatter = std::sqrt(1.0 / ((1.0 + kc) * params.paths));

    std::vector<PathComponent> paths;
    paths.reserve(params.paths + 1);
    paths.push_back({user.angle, user.path_gain * a_los});

    std::uniform_real_distribution<double> angle_dist(user.angle.theta - spread,
                                                      user.angle.theta + spread);
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * pi);
    for (int l = 0; l < params.paths; l++)
    {
        double th = std::clamp(angle_dist(rng), -pi / 2, pi / 2);
        double ph = phase_dist(rng);
        paths.push_back({SpatialAngle(th), user.path_gain * std::polar(a_scatter, ph)});
    }
    return paths;
}

inline cvec one_ring_channel(const ArrayConfig &array, const UserPlacement &user,
                             const OneRingParams &params, std::mt19937_64 &rng)
{
    cvec h = cvec::Zero(array.elements);
    for (const auto &p : one_ring_paths(user, params, rng))
        h += p.gain * steering_vector(array, p.angle);
    return h;
}

} // namespace sula

#endif
