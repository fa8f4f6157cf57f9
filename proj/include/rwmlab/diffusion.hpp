//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rwmlab/diffusion.hpp
//! Reflected Langevin diffusions and their autocorrelation oracles.
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rng.hpp"
#include "target_model.hpp"

namespace rwmlab
{
//---------------------------------------------------------------------------//
/*!
 * dV = sqrt(speed) dB + drift(V) dt, reflected at the support boundary.
 *
 * An empty drift means the Langevin drift speed * g'(v) / 2 of the target.
 */
struct DiffusionConfig
{
    double speed{1};
    double step{1e-4};
    double horizon{1};
    Support support{Support::unit};
    std::function<double(double)> drift;
    std::size_t record_stride{1};  //!< keep every n-th Euler step

    //! Default Euler step 1e-4 / speed.
    static DiffusionConfig for_target(TargetDensity const& target,
                                      double speed,
                                      double horizon);

    //! Throws std::invalid_argument on speed <= 0 or step > 1e-3 horizon.
    void validate() const;
};

struct DiffusionPath
{
    std::vector<double> times;
    std::vector<double> values;
};

//! Fold a point back into [0, 1] (or [0, inf)) by mirror reflection.
double reflect(double v, Support support) noexcept;

//! Euler-Maruyama with reflection by folding; v0 must be in the support.
DiffusionPath simulate_reflected_langevin(TargetDensity const& target,
                                          DiffusionConfig const& cfg,
                                          double v0,
                                          Rng& rng);

//! Stationary autocorrelation of reflected BM on [0, 1] with variance rate
//! phi: sum over odd k of 96/(pi^4 k^4) exp(-k^2 pi^2 phi t / 2).
double reflected_bm_autocorr(double phi, double t);

//! Sample autocorrelation of `series` at a single lag.
double lag_autocorrelation(std::span<double const> series, std::size_t lag);

struct AutocorrComparison
{
    double t{0};
    std::size_t lag{0};
    double chain_rho{1};
    double diffusion_rho{1};
};

/*!
 * Pair the lag-ceil(t d^2) autocorrelation of a chain's first coordinate
 * with that of the limiting diffusion at time t.
 *
 * The uniform target uses the spectral formula; other targets use a long
 * Euler simulation drawn from `rng`.
 */
std::vector<AutocorrComparison>
chain_vs_diffusion_autocorr(std::span<double const> first_component,
                            std::size_t d,
                            double l,
                            TargetDensity const& target,
                            std::span<double const> t_grid,
                            Rng& rng);

//---------------------------------------------------------------------------//
}  // namespace rwmlab
