//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rwmlab/theory.hpp
//! Closed-form limits for RWM on densities with boundary discontinuities.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "rng.hpp"
#include "target_model.hpp"

namespace rwmlab
{
//---------------------------------------------------------------------------//
//! Monte Carlo estimate with its standard error.
struct McEstimate
{
    double value{0};
    double std_error{0};
};

//---------------------------------------------------------------------------//
//! Limiting diffusion speed, acceptance rate and the optimal l.
struct ScalingPrediction
{
    double phi{0};
    double aoar{1};
    double l_opt{0};
};

// Unit interval: phi(l) = (l^2/3) exp(-f* l / 2)
double phi(double l, double fstar);
double aoar(double l, double fstar);
double optimal_l(double fstar);

// Half-line: phi(l) = (l^2/3) exp(-f* l / 4)
double phi_halfline(double l, double fstar);
double aoar_halfline(double l, double fstar);
double optimal_l_halfline(double fstar);

// Metropolis-within-Gibbs updating a fraction c of coordinates.
double phi_mwg(double l, double fstar, double c);
double aoar_mwg(double l, double fstar, double c);
double optimal_l_mwg(double fstar, double c);

//! Speed, acceptance rate and optimum for the given support and fraction c.
ScalingPrediction predict_scaling(double l,
                                  double fstar,
                                  Support support = Support::unit,
                                  double c = 1);

//! Jump-chain boundary intensity lambda(r) = f* r (1 + r / 2l), 0 <= r <= l.
double lambda_intensity(double r, double l, double fstar);

//! Limits of the first two moments of 1/Omega_d along the jump chain:
//! exp(f* l / 2) and exp(f* l (4 log 2 - 3/2)).
std::pair<double, double> omega_inv_moment_limits(double l, double fstar);

//---------------------------------------------------------------------------//
//! Jump point of a piecewise-smooth density with its one-sided limits.
struct Discontinuity
{
    double location{0};
    double left{0};  //!< f(a-)
    double right{0};  //!< f(a+)
};

/*!
 * Support endpoints plus interior jumps, in increasing order.
 *
 * The first entry is the lower endpoint (left limit 0) and the last the
 * upper endpoint (right limit 0); interior limits must be positive.
 */
struct InteriorDiscontinuitySpec
{
    std::vector<Discontinuity> points;

    //! Endpoints only: f(a+) = lower, f(b-) = upper.
    static InteriorDiscontinuitySpec
    boundary_only(double lower, double upper, double a = 0, double b = 1);

    //! Throws std::invalid_argument if the layout or limits are invalid.
    void validate() const;
};

//! Poisson draw by Knuth's product method (means above 30 are split).
std::uint64_t sample_poisson(double mean, Rng& rng);

//! Limit of d times the ESJD: (l^2/3) E[1 ∧ prod (f-/f+)^(Y+ - Y-)].
McEstimate esjd_limit_interior(double l,
                               InteriorDiscontinuitySpec const& spec,
                               std::size_t n_mc,
                               Rng& rng);

//---------------------------------------------------------------------------//
}  // namespace rwmlab
