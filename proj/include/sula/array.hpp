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

#ifndef sula_array_H
#define sula_array_H

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "common.hpp"

namespace sula
{

using cvec = Eigen::VectorXcd;

// ULA with M elements spaced eta * lambda/2 apart.
// eta = 1 is the collocated baseline, eta > 1 a sparse array.
struct ArrayConfig
{
    int elements;
    double eta;

    ArrayConfig(int m, double spacing) : elements(m), eta(spacing)
    {
        if (m < 2)
            throw validation_error("ArrayConfig: at least 2 elements required");
        if (!(spacing >= 1.0) || !std::isfinite(spacing))
            throw validation_error("ArrayConfig: eta must be >= 1");
    }

    bool collocated() const { return eta == 1.0; }
};

// Direction of arrival, theta in [-pi/2, pi/2].
struct SpatialAngle
{
    double theta;
    double sin_theta;

    explicit SpatialAngle(double t) : theta(t), sin_theta(std::sin(t))
    {
        if (!(t >= -pi / 2 - 1e-12 && t <= pi / 2 + 1e-12))
            throw validation_error("SpatialAngle: theta outside [-pi/2, pi/2]");
    }
};

// Delta = sin(theta_k) - sin(theta_i), in [-2, 2].
struct SpatialAngleDifference
{
    double delta;

    explicit SpatialAngleDifference(double d) : delta(d)
    {
        if (!(std::abs(d) <= 2.0 + 1e-12))
            throw validation_error("SpatialAngleDifference: |delta| must be <= 2");
    }
};

// Array response vector with unit path gain: element m is exp(j*pi*eta*m*sin(theta)).
inline cvec steering_vector(const ArrayConfig &array, const SpatialAngle &angle)
{
    cvec a(array.elements);
    double phase_step = pi * array.eta * angle.sin_theta;
    for (int m = 0; m < array.elements; m++)
        a[m] = std::polar(1.0, phase_step * static_cast<double>(m));
    return a;
}

// Beam pattern G_eta(Delta) = |sin(pi*M*eta*Delta/2) / (M*sin(pi*eta*Delta/2))|^2.
// The 0/0 points at Delta = 2n/eta (main and grating lobes) evaluate to the limit 1.
inline double beam_gain(const ArrayConfig &array, const SpatialAngleDifference &diff)
{
    double x = 0.5 * pi * array.eta * diff.delta;
    double den = std::sin(x);
    if (std::abs(den) < 1e-9) // lobe center, numerator vanishes with the denominator
        return 1.0;
    double r = std::sin(static_cast<double>(array.elements) * x) / (array.elements * den);
    return r * r;
}

// Squared normalized channel correlation |h_k^H h_i|^2 / (||h_k||^2 ||h_i||^2).
inline double correlation_from_channels(const cvec &h_k, const cvec &h_i)
{
    if (h_k.size() != h_i.size())
        throw validation_error("correlation_from_channels: length mismatch");
    double nk = h_k.squaredNorm(), ni = h_i.squaredNorm();
    if (nk < 1e-300 || ni < 1e-300)
        throw degenerate_channel_error("correlation_from_channels: zero-norm channel");
    double c = std::norm(h_k.dot(h_i)); // dot() conjugates the first argument
    return c / (nk * ni);
}

// Null-to-null beamwidth of the main lobe in Delta, BW = 4/(M*eta).
inline double main_lobe_beamwidth(const ArrayConfig &array)
{
    return 4.0 / (array.elements * array.eta);
}

// Grating lobe positions Delta = 2n/eta, n = +-1 .. +-floor(eta), ascending.
// Collocated arrays only hit the end-fire boundary Delta = +-2.
inline std::vector<SpatialAngleDifference> grating_lobe_positions(const ArrayConfig &array)
{
    int n_max = static_cast<int>(std::floor(array.eta));
    std::vector<SpatialAngleDifference> out;
    for (int n = -n_max; n <= n_max; n++)
    {
        if (n == 0)
            continue;
        double d = 2.0 * n / array.eta;
        if (std::abs(d) <= 2.0 + 1e-12)
            out.emplace_back(std::clamp(d, -2.0, 2.0));
    }
    return out;
}

} // namespace sula

#endif
