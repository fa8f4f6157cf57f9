//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rwmlab/harness.hpp
//! JSON-configured, seeded, multi-chain experiments with CSV output.
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kernels.hpp"
#include "target_model.hpp"

namespace rwmlab
{
//---------------------------------------------------------------------------//
enum class ExperimentTag
{
    simulate,
    sweep,
    theory,
    diffusion,
    coupling,
    pseudo,
};

std::string_view to_string(ExperimentTag t);
ExperimentTag experiment_tag_from_string(std::string_view name);

enum class StartKind
{
    stationary,  //!< i.i.d. draws from f
    uniform,  //!< uniform on the unit cube
};

enum class MonitorKind
{
    mean,  //!< coordinate average of the state
    variance,  //!< coordinate variance of the state
};

//---------------------------------------------------------------------------//
//! One point of the (d, l, c) parameter grid.
struct Combination
{
    std::size_t index{0};
    std::size_t d{1};
    double l{1};
    double c{1};
};

//---------------------------------------------------------------------------//
struct ExperimentConfig
{
    ExperimentTag tag{ExperimentTag::simulate};
    GSpec target;
    KernelKind kind{KernelKind::rwm};
    std::vector<std::size_t> d{100};
    std::vector<double> l{4};
    std::vector<double> c{1};
    std::uint64_t n_iters{10000};
    std::uint64_t n_chains{1};
    //! Unset: 0 for stationary starts, 10 d^2 for uniform starts.
    std::optional<std::uint64_t> burn_in;
    std::uint64_t seed{0};
    std::string output;
    StartKind start{StartKind::stationary};
    MonitorKind monitor{MonitorKind::mean};
    std::vector<double> t_grid{0.05, 0.1, 0.2};
    //! 0 means hardware concurrency, further capped by RWM_THREADS.
    std::size_t threads{0};

    static ExperimentConfig from_json(nlohmann::json const& j);
    static ExperimentConfig from_file(std::filesystem::path const& path);
    nlohmann::json to_json() const;

    //! Grid in d-major, then l, then c order.
    std::vector<Combination> combinations() const;

    std::uint64_t burn_in_for(std::size_t d) const;

    //! Throws std::invalid_argument describing the first problem found.
    void validate() const;
};

//---------------------------------------------------------------------------//
struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    //! Column index by name; throws if absent.
    std::size_t column(std::string_view name) const;
    void write(std::filesystem::path const& path) const;
    std::string to_string() const;
};

//! Column names of the run-summary CSV.
std::vector<std::string> const& summary_columns();

//! Outputs of one experiment: the main table and any companion tables.
struct ExperimentResult
{
    CsvTable table;
    std::optional<CsvTable> trace;  //!< uniform-start convergence trace
};

//---------------------------------------------------------------------------//
//! Run without touching the filesystem.
ExperimentResult execute_experiment(ExperimentConfig const& config);

//! Run and write CSV file(s); returns the paths written.
std::vector<std::filesystem::path>
run_experiment(ExperimentConfig const& config,
               std::filesystem::path const& out_dir = {});

//! Uniform-on-the-cube start: first-transition ESJD, convergence trace and
//! iterations to stabilization per (d, l, c).
ExperimentResult uniform_start_experiment(ExperimentConfig const& config);

//---------------------------------------------------------------------------//
//! Worker count: requested (0 = hardware) capped by RWM_THREADS and n_tasks.
std::size_t worker_count(std::size_t requested, std::size_t n_tasks);

//! Run task(i) for i in [0, n) on a pool; rethrows the first failure.
void parallel_for(std::size_t n,
                  std::size_t workers,
                  std::function<void(std::size_t)> const& task);

//---------------------------------------------------------------------------//
}  // namespace rwmlab
