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

#ifndef sula_common_H
#define sula_common_H

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace sula
{

using cxd = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Invalid parameters, malformed configs, violated preconditions.
class validation_error : public std::invalid_argument
{
  public:
    explicit validation_error(const std::string &msg) : std::invalid_argument(msg) {}
};

// Base for runtime numerical failures (exit code 3 at the CLI).
class numerical_error : public std::runtime_error
{
  public:
    explicit numerical_error(const std::string &msg) : std::runtime_error(msg) {}
};

// Channel with (near-)zero norm where a direction is required.
class degenerate_channel_error : public numerical_error
{
  public:
    explicit degenerate_channel_error(const std::string &msg) : numerical_error(msg) {}
};

// Rank-deficient or ill-conditioned linear system.
class singular_matrix_error : public numerical_error
{
  public:
    explicit singular_matrix_error(const std::string &msg, double cond_estimate = 0.0)
        : numerical_error(msg), cond(cond_estimate) {}
    double cond; // condition estimate at the point of failure
};

// Crossover thresholds do not exist for the requested parameters.
class no_crossover_error : public numerical_error
{
  public:
    explicit no_crossover_error(const std::string &msg) : numerical_error(msg) {}
};

class io_error : public std::runtime_error
{
  public:
    explicit io_error(const std::string &msg) : std::runtime_error(msg) {}
};

inline double deg2rad(double deg) { return deg * pi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / pi; }
inline double db2lin(double db) { return std::pow(10.0, db / 10.0); }

} // namespace sula

#endif
