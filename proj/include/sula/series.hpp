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

#ifndef sula_series_H
#define sula_series_H

#include <algorithm>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "common.hpp"

namespace sula
{

enum class SeriesKind
{
    Cdf,
    PdfHistogram,
    Curve // generic (x, value) sweep
};

inline const char *to_string(SeriesKind k)
{
    switch (k)
    {
    case SeriesKind::Cdf:
        return "cdf";
    case SeriesKind::PdfHistogram:
        return "pdf-histogram";
    default:
        return "curve";
    }
}

// Universal output type: an ordered (x, value) series with metadata.
struct DistributionSeries
{
    SeriesKind kind = SeriesKind::Curve;
    std::string name;
    std::vector<std::pair<double, double>> points; // x strictly increasing
    std::map<std::string, std::string> meta;
    std::size_t samples = 0;

    void validate() const
    {
        for (std::size_t i = 1; i < points.size(); i++)
            if (!(points[i].first > points[i - 1].first))
                throw validation_error("DistributionSeries '" + name + "': x not strictly increasing");
        if (kind == SeriesKind::Cdf)
            for (std::size_t i = 0; i < points.size(); i++)
            {
                double v = points[i].second;
                if (v < 0.0 || v > 1.0 + 1e-12 || (i > 0 && v < points[i - 1].second - 1e-12))
                    throw validation_error("DistributionSeries '" + name + "': invalid CDF values");
            }
    }
};

// Empirical CDF from samples; equal values collapse into one step.
inline DistributionSeries empirical_cdf(std::vector<double> samples, std::string name)
{
    DistributionSeries s;
    s.kind = SeriesKind::Cdf;
    s.name = std::move(name);
    s.samples = samples.size();
    std::sort(samples.begin(), samples.end());
    double n = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < samples.size(); i++)
        if (i + 1 == samples.size() || samples[i + 1] > samples[i])
            s.points.emplace_back(samples[i], (i + 1) / n);
    s.validate();
    return s;
}

// Step-CDF evaluation: F(x) = value of the last point with x_i <= x.
inline double eval_cdf(const DistributionSeries &s, double x)
{
    auto it = std::upper_bound(s.points.begin(), s.points.end(), x,
                               [](double v, const std::pair<double, double> &p) { return v < p.first; });
    return it == s.points.begin() ? 0.0 : std::prev(it)->second;
}

inline void write_csv(const DistributionSeries &s, const std::string &path)
{
    std::ofstream f(path);
    if (!f)
        throw io_error("cannot open '" + path + "' for writing");
    f.precision(17);
    f << "# name=" << s.name << "\n# kind=" << to_string(s.kind) << "\n# samples=" << s.samples
      << "\n";
    for (const auto &[k, v] : s.meta)
        f << "# " << k << "=" << v << "\n";
    f << "x,value\n";
    for (const auto &[x, v] : s.points)
        f << x << "," << v << "\n";
    if (!f)
        throw io_error("write failure on '" + path + "'");
}

inline nlohmann::json to_json(const DistributionSeries &s)
{
    nlohmann::json j;
    j["name"] = s.name;
    j["kind"] = to_string(s.kind);
    j["samples"] = s.samples;
    j["meta"] = s.meta;
    auto &pts = j["points"] = nlohmann::json::array();
    for (const auto &[x, v] : s.points)
        pts.push_back({x, v});
    return j;
}

inline void write_json(const std::vector<DistributionSeries> &series, const std::string &path)
{
    nlohmann::json j;
    j["schema_version"] = 1;
    auto &arr = j["series"] = nlohmann::json::array();
    for (const auto &s : series)
        arr.push_back(to_json(s));
    std::ofstream f(path);
    if (!f)
        throw io_error("cannot open '" + path + "' for writing");
    f << j.dump(2) << "\n";
    if (!f)
        throw io_error("write failure on '" + path + "'");
}

inline DistributionSeries series_from_json(const nlohmann::json &j)
{
    DistributionSeries s;
    std::string kind = j.at("kind");
    s.kind = kind == "cdf" ? SeriesKind::Cdf
                           : (kind == "pdf-histogram" ? SeriesKind::PdfHistogram : SeriesKind::Curve);
    s.name = j.at("name");
    s.samples = j.at("samples");
    for (auto &[k, v] : j.at("meta").items())
        s.meta[k] = v;
    for (const auto &p : j.at("points"))
        s.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return s;
}

} // namespace sula

#endif
