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

#ifndef sula_config_H
#define sula_config_H

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "beamform.hpp"
#include "channel.hpp"
#include "common.hpp"

namespace sula
{

// CLI-boundary experiment description. Angles are in degrees and powers in
// dB here; conversion to radians / linear scale happens exactly once, when a
// Scenario or AnalyticScenario is built from this.
struct RunConfig
{
    int schema_version = 1;
    int elements = 32;
    std::vector<double> etas = {4.0};
    int users = 18;
    double theta_max_deg = 10.0;
    double snr_db = 20.0;
    std::vector<std::string> beamformers = {"mrc"};
    std::string channel = "los";
    OneRingParams one_ring{};
    std::uint64_t drops = 100000;
    std::uint64_t seed = 1;
    std::optional<double> alpha, g_main, g_side; // two-lobe overrides
    int bins = 64;
    std::uint64_t pairs = 1000000;
    int fit_grid_points = 1 << 14;
    int pattern_points = 4001;
    int rate_points = 200;
    double rate_max = 0.0; // <= 0: derived from the single-user rate
    std::string out = "out.json";
    std::string format; // "", "csv" or "json"; empty = from file extension

    void validate() const
    {
        if (schema_version != 1)
            throw validation_error("config: unsupported schema_version");
        if (elements < 2)
            throw validation_error("config: M must be >= 2");
        if (etas.empty())
            throw validation_error("config: need at least one eta");
        for (double e : etas)
            if (!(e >= 1.0))
                throw validation_error("config: eta values must be >= 1");
        if (users < 1)
            throw validation_error("config: K must be >= 1");
        if (!(theta_max_deg > 0.0 && theta_max_deg <= 90.0))
            throw validation_error("config: theta_max_deg must be in (0, 90]");
        if (beamformers.empty())
            throw validation_error("config: need at least one beamformer");
        for (const auto &b : beamformers)
            if (b != "mrc" && b != "zf" && b != "mmse")
                throw validation_error("config: unknown beamformer '" + b + "'");
        if (channel != "los" && channel != "one-ring")
            throw validation_error("config: channel must be 'los' or 'one-ring'");
        if (drops < 1)
            throw validation_error("config: drops must be >= 1");
        if (!format.empty() && format != "csv" && format != "json")
            throw validation_error("config: format must be 'csv' or 'json'");
        // alpha alone is fine (gains derived); explicit gains need all three
        if ((g_main || g_side) && !(alpha && g_main && g_side))
            throw validation_error("config: g_main and g_side require alpha and each other");
    }

    Beamformer parse_beamformer(const std::string &b) const
    {
        if (b == "mrc")
            return Beamformer::MRC;
        if (b == "zf")
            return Beamformer::ZF;
        return Beamformer::MMSE;
    }

    double theta_max_rad() const { return deg2rad(theta_max_deg); }

    std::string resolved_format() const
    {
        if (!format.empty())
            return format;
        auto dot = out.rfind('.');
        std::string ext = dot == std::string::npos ? "" : out.substr(dot + 1);
        return ext == "csv" ? "csv" : "json";
    }
};

namespace detail
{

inline void reject_unknown_keys(const nlohmann::json &j, const std::set<std::string> &allowed,
                                const std::string &where)
{
    for (auto &[key, value] : j.items())
        if (allowed.find(key) == allowed.end())
            throw validation_error("config: unknown key '" + key + "' in " + where);
}

} // namespace detail

inline RunConfig parse_config(const nlohmann::json &j)
{
    static const std::set<std::string> keys = {
        "schema_version", "M", "eta", "K", "theta_max_deg", "snr_db", "beamformer", "channel",
        "one_ring", "drops", "seed", "alpha", "g_main", "g_side", "bins", "pairs",
        "fit_grid_points", "pattern_points", "rate_points", "rate_max", "out", "format"};
    detail::reject_unknown_keys(j, keys, "config");

    RunConfig c;
    if (j.contains("schema_version"))
        c.schema_version = j["schema_version"];
    if (j.contains("M"))
        c.elements = j["M"];
    if (j.contains("eta"))
    {
        c.etas.clear();
        if (j["eta"].is_array())
            for (const auto &e : j["eta"])
                c.etas.push_back(e.get<double>());
        else
            c.etas.push_back(j["eta"].get<double>());
    }
    if (j.contains("K"))
        c.users = j["K"];
    if (j.contains("theta_max_deg"))
        c.theta_max_deg = j["theta_max_deg"];
    if (j.contains("snr_db"))
        c.snr_db = j["snr_db"];
    if (j.contains("beamformer"))
    {
        c.beamformers.clear();
        if (j["beamformer"].is_array())
            for (const auto &b : j["beamformer"])
                c.beamformers.push_back(b.get<std::string>());
        else
            c.beamformers.push_back(j["beamformer"].get<std::string>());
    }
    if (j.contains("channel"))
        c.channel = j["channel"];
    if (j.contains("one_ring"))
    {
        static const std::set<std::string> ring_keys = {"paths", "ring_radius_m",
                                                        "center_range_m", "rician_k_db"};
        const auto &r = j["one_ring"];
        detail::reject_unknown_keys(r, ring_keys, "one_ring");
        if (r.contains("paths"))
            c.one_ring.paths = r["paths"];
        if (r.contains("ring_radius_m"))
            c.one_ring.ring_radius_m = r["ring_radius_m"];
        if (r.contains("center_range_m"))
            c.one_ring.center_range_m = r["center_range_m"];
        if (r.contains("rician_k_db"))
            c.one_ring.rician_k_db = r["rician_k_db"];
    }
    if (j.contains("drops"))
        c.drops = j["drops"];
    if (j.contains("seed"))
        c.seed = j["seed"];
    if (j.contains("alpha"))
        c.alpha = j["alpha"].get<double>();
    if (j.contains("g_main"))
        c.g_main = j["g_main"].get<double>();
    if (j.contains("g_side"))
        c.g_side = j["g_side"].get<double>();
    if (j.contains("bins"))
        c.bins = j["bins"];
    if (j.contains("pairs"))
        c.pairs = j["pairs"];
    if (j.contains("fit_grid_points"))
        c.fit_grid_points = j["fit_grid_points"];
    if (j.contains("pattern_points"))
        c.pattern_points = j["pattern_points"];
    if (j.contains("rate_points"))
        c.rate_points = j["rate_points"];
    if (j.contains("rate_max"))
        c.rate_max = j["rate_max"];
    if (j.contains("out"))
        c.out = j["out"];
    if (j.contains("format"))
        c.format = j["format"];
    return c;
}

inline RunConfig load_config(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw io_error("cannot open config file '" + path + "'");
    nlohmann::json j;
    try
    {
        f >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw validation_error("config: parse error in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

} // namespace sula

#endif
