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
// Command-line front door. Exit codes: 0 success, 2 validation error,
// 3 numerical error (singularity / no crossover), 4 I/O error.

#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <sula/commands.hpp>

namespace
{

struct Overrides
{
    std::string config_path;
    std::vector<double> etas;
    std::vector<std::string> beamformers;
    double alpha = 0.0, g_main = 0.0, g_side = 0.0;
};

void add_common(CLI::App *cmd, sula::RunConfig &cfg, Overrides &ov)
{
    cmd->add_option("--config", ov.config_path, "JSON config file (flags override file values)");
    cmd->add_option("-M,--elements", cfg.elements, "Number of array elements");
    cmd->add_option("--eta", ov.etas, "Element spacing in half-wavelengths (repeatable)");
    cmd->add_option("-K,--users", cfg.users, "Number of users");
    cmd->add_option("--theta-max-deg", cfg.theta_max_deg, "Angular spread, degrees");
    cmd->add_option("--snr-db", cfg.snr_db, "Normalized per-user SNR, dB");
    cmd->add_option("--beamformer", ov.beamformers, "mrc, zf or mmse (repeatable)");
    cmd->add_option("--channel", cfg.channel, "los or one-ring");
    cmd->add_option("--drops", cfg.drops, "Monte Carlo drops");
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--alpha", ov.alpha, "Two-lobe alpha override");
    cmd->add_option("--g-main", ov.g_main, "Two-lobe main gain override");
    cmd->add_option("--g-side", ov.g_side, "Two-lobe side gain override");
    cmd->add_option("--bins", cfg.bins, "Histogram bins");
    cmd->add_option("--pairs", cfg.pairs, "User pairs for delta-dist");
    cmd->add_option("-o,--out", cfg.out, "Output file path");
    cmd->add_option("--format", cfg.format, "csv or json (default: from extension)");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"sparse vs collocated ULA analysis toolkit"};
    app.require_subcommand(1);

    struct Sub
    {
        CLI::App *cmd;
        sula::RunConfig cfg;
        Overrides ov;
        std::function<void(const sula::RunConfig &)> run;
    };
    std::vector<Sub> subs;
    subs.reserve(6);
    auto add = [&](const char *name, const char *desc,
                   std::function<void(const sula::RunConfig &)> fn) {
        subs.push_back({app.add_subcommand(name, desc), {}, {}, std::move(fn)});
        add_common(subs.back().cmd, subs.back().cfg, subs.back().ov);
    };
    add("beampattern", "Beam pattern G_eta(Delta) with null/grating annotations",
        sula::cmd_beampattern);
    add("delta-dist", "PDF histogram of the spatial angle difference", sula::cmd_delta_dist);
    add("rate-cdf", "Monte Carlo rate CDFs plus analytic curves", sula::cmd_rate_cdf);
    add("analytic-cdf", "Binomial / Gaussian rate CDFs without simulation",
        sula::cmd_analytic_cdf);
    add("crossover", "Crossover thresholds and collision-gap sweep", sula::cmd_crossover);
    add("fit-lobes", "Two-lobe surrogate fit", sula::cmd_fit_lobes);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e) == 0 ? 0 : 2;
    }

    for (auto &sub : subs)
    {
        if (!sub.cmd->parsed())
            continue;
        try
        {
            sula::RunConfig cfg;
            if (!sub.ov.config_path.empty())
                cfg = sula::load_config(sub.ov.config_path);
            // flags override the file: re-parse the flag values onto cfg
            cfg.elements = sub.cmd->count("--elements") ? sub.cfg.elements : cfg.elements;
            cfg.users = sub.cmd->count("--users") ? sub.cfg.users : cfg.users;
            if (sub.cmd->count("--theta-max-deg"))
                cfg.theta_max_deg = sub.cfg.theta_max_deg;
            if (sub.cmd->count("--snr-db"))
                cfg.snr_db = sub.cfg.snr_db;
            if (sub.cmd->count("--channel"))
                cfg.channel = sub.cfg.channel;
            if (sub.cmd->count("--drops"))
                cfg.drops = sub.cfg.drops;
            if (sub.cmd->count("--seed"))
                cfg.seed = sub.cfg.seed;
            if (sub.cmd->count("--bins"))
                cfg.bins = sub.cfg.bins;
            if (sub.cmd->count("--pairs"))
                cfg.pairs = sub.cfg.pairs;
            if (sub.cmd->count("--out"))
                cfg.out = sub.cfg.out;
            if (sub.cmd->count("--format"))
                cfg.format = sub.cfg.format;
            if (sub.cmd->count("--alpha"))
                cfg.alpha = sub.ov.alpha;
            if (sub.cmd->count("--g-main"))
                cfg.g_main = sub.ov.g_main;
            if (sub.cmd->count("--g-side"))
                cfg.g_side = sub.ov.g_side;
            if (!sub.ov.etas.empty())
                cfg.etas = sub.ov.etas;
            if (!sub.ov.beamformers.empty())
                cfg.beamformers = sub.ov.beamformers;
            sub.run(cfg);
            return 0;
        }
        catch (const sula::validation_error &e)
        {
            std::cerr << "validation error: " << e.what() << "\n";
            return 2;
        }
        catch (const sula::numerical_error &e)
        {
            std::cerr << "numerical error: " << e.what() << "\n";
            return 3;
        }
        catch (const sula::io_error &e)
        {
            std::cerr << "I/O error: " << e.what() << "\n";
            return 4;
        }
        catch (const std::exception &e)
        {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 2;
}
