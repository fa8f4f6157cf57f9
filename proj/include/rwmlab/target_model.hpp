//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rwmlab/target_model.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chain_state.hpp"
#include "rng.hpp"

namespace rwmlab
{
//---------------------------------------------------------------------------//
enum class Family
{
    uniform,  //!< g = 0
    linear,  //!< g(x) = -theta x; params = {theta}
    quadratic,  //!< g(x) = -(x - mu)^2 / (2 s^2); params = {mu, s}
    polynomial,  //!< g(x) = sum_k a_k x^k; params = {a_0, a_1, ...}
};

enum class Support
{
    unit,  //!< open interval (0, 1)
    halfline,  //!< open half-line (0, inf)
};

std::string_view to_string(Family f);
std::string_view to_string(Support s);
Family family_from_string(std::string_view name);
Support support_from_string(std::string_view name);

//---------------------------------------------------------------------------//
//! Raised when a log-density specification cannot define a valid target.
class InvalidTarget : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//---------------------------------------------------------------------------//
/*!
 * Log-density term g of a one-dimensional target f ∝ exp(g) on its support.
 */
struct GSpec
{
    Family family{Family::uniform};
    std::vector<double> params;
    Support support{Support::unit};

    static GSpec uniform() { return {}; }
    static GSpec linear(double theta, Support s = Support::unit)
    {
        return {Family::linear, {theta}, s};
    }
    static GSpec quadratic(double mu, double s)
    {
        return {Family::quadratic, {mu, s}, Support::unit};
    }
    static GSpec polynomial(std::vector<double> coeffs, Support s = Support::unit)
    {
        return {Family::polynomial, std::move(coeffs), s};
    }

    double g(double x) const noexcept
    {
        switch (family)
        {
            case Family::uniform:
                return 0;
            case Family::linear:
                return -params[0] * x;
            case Family::quadratic: {
                double u = (x - params[0]) / params[1];
                return -0.5 * u * u;
            }
            case Family::polynomial: {
                double acc = 0;
                for (auto it = params.rbegin(); it != params.rend(); ++it)
                {
                    acc = acc * x + *it;
                }
                return acc;
            }
        }
        return 0;
    }

    double gprime(double x) const noexcept
    {
        switch (family)
        {
            case Family::uniform:
                return 0;
            case Family::linear:
                return -params[0];
            case Family::quadratic:
                return -(x - params[0]) / (params[1] * params[1]);
            case Family::polynomial: {
                double acc = 0;
                for (std::size_t k = params.size(); k-- > 1;)
                {
                    acc = acc * x + static_cast<double>(k) * params[k];
                }
                return acc;
            }
        }
        return 0;
    }

    bool operator==(GSpec const&) const = default;
};

//---------------------------------------------------------------------------//
/*!
 * Monotone cubic (PCHIP) interpolant of the inverse CDF on a fixed grid.
 *
 * Knots live in the unit coordinate t: t = x on the unit interval, and
 * t = x / (1 + x) on the half-line.
 */
class InverseCdfTable
{
  public:
    InverseCdfTable() = default;
    InverseCdfTable(std::vector<double> cdf, std::vector<double> t);

    //! Unit coordinate t with F(t) = u.
    double operator()(double u) const;

    std::size_t size() const { return cdf_.size(); }
    std::vector<double> const& cdf() const { return cdf_; }
    std::vector<double> const& knots() const { return t_; }

    bool operator==(InverseCdfTable const&) const = default;

  private:
    std::vector<double> cdf_;
    std::vector<double> t_;
    std::vector<double> slope_;
};

//---------------------------------------------------------------------------//
/*!
 * Normalized product-target marginal f(x) = exp(g(x)) / Z.
 *
 * Immutable after construction by normalize().
 */
class TargetDensity
{
  public:
    GSpec const& gspec() const noexcept { return gspec_; }
    Support support() const noexcept { return gspec_.support; }
    bool is_uniform() const noexcept { return gspec_.family == Family::uniform; }

    //! Normalizing constant Z = ∫ exp(g).
    double normalizer() const noexcept { return std::exp(log_z_); }
    double log_normalizer() const noexcept { return log_z_; }
    //! Boundary density: mean of the two edge limits, or f(0+) on the half-line.
    double fstar() const noexcept { return fstar_; }
    //! sup |g'| over the support.
    double gstar() const noexcept { return gstar_; }
    //! E_f[g'(X)^2].
    double e_gprime_sq() const noexcept { return e_gprime_sq_; }
    //! E_f[X] and Var_f[X], by quadrature.
    double mean() const noexcept { return mean_; }
    double variance() const noexcept { return variance_; }

    double g(double x) const noexcept { return gspec_.g(x); }
    double gprime(double x) const noexcept { return gspec_.gprime(x); }

    //! Open-support membership; the endpoints themselves are outside.
    bool in_support(double x) const noexcept
    {
        return x > 0 && (gspec_.support == Support::halfline || x < 1);
    }

    //! Normalized density, zero off the open support.
    double density(double x) const noexcept;

    //! Distribution function F(x).
    double cdf(double x) const;

    //! Quantile by the cached inverse-CDF table.
    double quantile(double u) const;

    //! One draw from f; strictly inside the open support.
    double sample(Rng& rng) const;

    InverseCdfTable const& inverse_cdf() const noexcept { return table_; }

    bool operator==(TargetDensity const&) const = default;

  private:
    friend TargetDensity normalize(GSpec const& gspec);

    GSpec gspec_;
    double log_z_{0};
    double fstar_{1};
    double gstar_{0};
    double e_gprime_sq_{0};
    double mean_{0.5};
    double variance_{1.0 / 12};
    InverseCdfTable table_;
};

//---------------------------------------------------------------------------//
// Validate g and compute Z, f*, g*, E[g'^2] and the sampling table.
TargetDensity normalize(GSpec const& gspec);

// Sum of g(y_i) - g(x_i), or -inf if any y_i leaves the open support.
double log_density_ratio(TargetDensity const& target,
                         ChainState const& x,
                         ChainState const& y);

// d i.i.d. draws from f.
ChainState sample_iid(TargetDensity const& target, std::size_t d, Rng& rng);

//---------------------------------------------------------------------------//
}  // namespace rwmlab
