//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rwmlab/diagnostics.hpp
//! Estimators linking simulated chains to their limiting behaviour.
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "chain_state.hpp"
#include "kernels.hpp"
#include "rng.hpp"
#include "target_model.hpp"
#include "theory.hpp"

namespace rwmlab
{
//---------------------------------------------------------------------------//
/*!
 * Row-major record of chain states, one row per iteration.
 */
class Trajectory
{
  public:
    explicit Trajectory(std::size_t d) : d_(d) {}

    void push(ChainState const& s);
    std::size_t dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return d_ ? data_.size() / d_ : 0; }
    std::span<double const> row(std::size_t t) const
    {
        return {data_.data() + t * d_, d_};
    }
    //! Coordinate i across all recorded iterations.
    std::vector<double> component(std::size_t i) const;

  private:
    std::size_t d_;
    std::vector<double> data_;
};

//---------------------------------------------------------------------------//
struct RunSummary
{
    std::uint64_t n_iters{0};
    double accept_rate{0};
    double esjd_scaled{0};  //!< d * mean over iterations of sum_i (dx_i)^2
    double iact_first{0};  //!< IACT of coordinate 1, in iterations
    std::vector<std::pair<std::size_t, double>> acf;
    double b_mean{0};  //!< mean of b_d^l over iterations
    double b_var{0};
    double p_d{0};  //!< mean acceptance over windows of ceil(d^0.4)
    double omega_inv_mean{0};
    double omega_inv_m2{0};  //!< mean of (1/Omega_d)^2
};

/*!
 * Streaming collector of the RunSummary statistics.
 *
 * Call record() once per iteration with the post-step state.
 */
class RunAccumulator
{
  public:
    RunAccumulator(std::size_t d, double l, bool unit_support, bool keep_series = true);

    void record(ChainState const& before, ChainState const& after, bool accepted);

    //! Finish; IACT uses max_lag = series length / 50 when 0 is passed.
    RunSummary summary(std::size_t max_lag = 0) const;

    std::vector<double> const& first_component() const { return series_; }
    double accepted_sq_jump_mean() const;

  private:
    std::size_t d_;
    double l_;
    bool unit_;
    bool keep_series_;
    std::size_t window_;
    std::uint64_t n_{0};
    std::uint64_t accepted_{0};
    double sq_jump_sum_{0};
    double b_sum_{0};
    double b_sum_sq_{0};
    double omega_sum_{0};
    double omega_sum_sq_{0};
    std::uint64_t window_accepts_{0};
    std::uint64_t window_fill_{0};
    double window_prop_sum_{0};
    std::uint64_t windows_{0};
    std::vector<double> series_;
};

//---------------------------------------------------------------------------//
//! Number of coordinates in (0, r/d) or (1 - r/d, 1); requires 0 <= r <= l.
std::size_t boundary_count(ChainState const& state, double r, double l, std::size_t d);

//! P(0 < x + sigma Z < 1) for Z ~ U[-1, 1].
double omega_component(double x, double sigma) noexcept;

//! Exact acceptance probability of a proposal under the uniform target.
double uniform_accept_oracle(ChainState const& state, double l, std::size_t d);

//! 1 / Omega_d(x): inverse hypercube acceptance probability.
double omega_inv(ChainState const& state, double l, std::size_t d);

//! Draw from the stationary law of the hypercube walk's jump chain: i.i.d.
//! components with density proportional to omega_component(x, l / d).
ChainState sample_omega_weighted(std::size_t d, double l, Rng& rng);

//! Monte Carlo acceptance probability J_d(x) from n_mc fresh proposals.
McEstimate estimate_J(TargetDensity const& target,
                      KernelConfig const& cfg,
                      ChainState const& state,
                      std::size_t n_mc,
                      Rng& rng);

//! Lower bound exp(-l g*) 2^(-b_d^l(x)) on J_d(x).
double acceptance_lower_bound(TargetDensity const& target,
                              KernelConfig const& cfg,
                              ChainState const& state);

//! d times the mean squared jump per iteration.
double esjd(Trajectory const& trajectory);

//! Mean of b_d^r after k jump-chain steps from `start`, over n_rep replicas.
McEstimate estimate_lambda(TargetDensity const& target,
                           KernelConfig const& cfg,
                           ChainState const& start,
                           double r,
                           std::size_t k,
                           std::size_t n_rep,
                           Rng& rng);

//! Jump-count window [ceil(d^0.3), ceil(d^0.5)] accepted by estimate_lambda.
std::pair<std::size_t, std::size_t> lambda_window(std::size_t d);

//! Default P_d window length ceil(d^0.4).
std::size_t default_window(std::size_t d);

//! Fraction of accepted RWM moves over `window` iterations from `start`.
double estimate_P_d(TargetDensity const& target,
                    KernelConfig const& cfg,
                    ChainState const& start,
                    std::size_t window,
                    Rng& rng);

//---------------------------------------------------------------------------//
struct BoundaryStats
{
    std::vector<double> r_grid;
    std::vector<std::size_t> counts;  //!< b_d^r for each r in r_grid
    bool in_f1{true};  //!< b_d^l <= gamma log d
    double f4_stat{0};  //!< |mean g'(x_j)^2 - E_f[g'(X)^2]|
};

//! Boundary counts on r_grid (default: 0, l/8, ..., l) and the F-set checks.
BoundaryStats fd_statistics(TargetDensity const& target,
                            ChainState const& state,
                            double l,
                            double gamma = 0.5,
                            std::vector<double> r_grid = {});

//---------------------------------------------------------------------------//
//! Autocorrelations rho(0..max_lag) via FFT; requires a non-constant series.
std::vector<double> autocorrelation(std::span<double const> series, std::size_t max_lag);

//! Integrated autocorrelation time with Geyer's initial positive sequence.
//! Requires series.size() >= 50 * max_lag; a constant series gives +inf.
double iact(std::span<double const> series, std::size_t max_lag);

//---------------------------------------------------------------------------//
}  // namespace rwmlab
