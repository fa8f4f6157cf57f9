//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rwmlab_cli.cpp
//! Command-line front end: rwmlab <tag> --config FILE [--seed N] [--out DIR]
//---------------------------------------------------------------------------//
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rwmlab/harness.hpp"
#include "rwmlab/kernels.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Random-walk Metropolis experiments on discontinuous targets"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    for (char const* tag :
         {"simulate", "sweep", "theory", "diffusion", "coupling", "pseudo"})
    {
        auto* sub = app.add_subcommand(tag, std::string("run a '") + tag
                                                + "' experiment");
        sub->add_option("--config", config_path, "JSON experiment config")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--out", out_dir, "directory for CSV output");
    }
    CLI11_PARSE(app, argc, argv);

    try
    {
        auto cfg = rwmlab::ExperimentConfig::from_file(config_path);
        cfg.tag = rwmlab::experiment_tag_from_string(
            app.get_subcommands().front()->get_name());
        if (cfg.tag == rwmlab::ExperimentTag::pseudo)
        {
            cfg.kind = rwmlab::KernelKind::pseudo;
        }
        if (seed)
        {
            cfg.seed = *seed;
        }
        for (auto const& path : rwmlab::run_experiment(cfg, out_dir))
        {
            std::cout << path.string() << '\n';
        }
    }
    catch (std::invalid_argument const& e)
    {
        std::cerr << fmt::format("rwmlab: invalid configuration: {}\n", e.what());
        return 2;
    }
    catch (std::exception const& e)
    {
        std::cerr << fmt::format("rwmlab: {}\n", e.what());
        return 1;
    }
    return 0;
}
