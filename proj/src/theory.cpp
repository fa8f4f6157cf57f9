//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file theory.cpp
//---------------------------------------------------------------------------//
#include "rwmlab/theory.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rwmlab
{
namespace
{
void require_positive(double v, char const* what)
{
    if (!(v > 0))
    {
        throw std::invalid_argument(std::string(what) + " must be positive");
    }
}

void require_fraction(double c)
{
    if (!(c > 0 && c <= 1))
    {
        throw std::invalid_argument("update fraction c must lie in (0, 1]");
    }
}
}  // namespace

//---------------------------------------------------------------------------//
double phi(double l, double fstar)
{
    require_positive(fstar, "f*");
    return l * l / 3 * std::exp(-fstar * l / 2);
}

double aoar(double l, double fstar)
{
    require_positive(fstar, "f*");
    return std::exp(-fstar * l / 2);
}

double optimal_l(double fstar)
{
    require_positive(fstar, "f*");
    return 4 / fstar;
}

double phi_halfline(double l, double fstar)
{
    require_positive(fstar, "f*");
    return l * l / 3 * std::exp(-fstar * l / 4);
}

double aoar_halfline(double l, double fstar)
{
    require_positive(fstar, "f*");
    return std::exp(-fstar * l / 4);
}

double optimal_l_halfline(double fstar)
{
    require_positive(fstar, "f*");
    return 8 / fstar;
}

double phi_mwg(double l, double fstar, double c)
{
    require_positive(fstar, "f*");
    require_fraction(c);
    return c * l * l / 3 * std::exp(-c * fstar * l / 2);
}

double aoar_mwg(double l, double fstar, double c)
{
    require_positive(fstar, "f*");
    require_fraction(c);
    return std::exp(-c * fstar * l / 2);
}

double optimal_l_mwg(double fstar, double c)
{
    require_positive(fstar, "f*");
    require_fraction(c);
    return 4 / (c * fstar);
}

ScalingPrediction
predict_scaling(double l, double fstar, Support support, double c)
{
    if (support == Support::halfline)
    {
        if (c != 1)
        {
            throw std::invalid_argument(
                "block updates are only modelled on the unit interval");
        }
        return {phi_halfline(l, fstar), aoar_halfline(l, fstar),
                optimal_l_halfline(fstar)};
    }
    return {phi_mwg(l, fstar, c), aoar_mwg(l, fstar, c),
            optimal_l_mwg(fstar, c)};
}

double lambda_intensity(double r, double l, double fstar)
{
    require_positive(l, "l");
    if (!(r >= 0 && r <= l))
    {
        throw std::invalid_argument("lambda_intensity: r must lie in [0, l]");
    }
    return fstar * r * (1 + r / (2 * l));
}

std::pair<double, double> omega_inv_moment_limits(double l, double fstar)
{
    double first = std::exp(fstar * l / 2);
    double second = std::exp(fstar * l * (4 * std::numbers::ln2 - 1.5));
    return {first, second};
}

//---------------------------------------------------------------------------//
InteriorDiscontinuitySpec
InteriorDiscontinuitySpec::boundary_only(double lower,
                                         double upper,
                                         double a,
                                         double b)
{
    return {{{a, 0.0, lower}, {b, upper, 0.0}}};
}

void InteriorDiscontinuitySpec::validate() const
{
    if (points.size() < 2)
    {
        throw std::invalid_argument(
            "discontinuity spec needs both support endpoints");
    }
    if (points.front().left != 0 || points.back().right != 0)
    {
        throw std::invalid_argument(
            "density must vanish outside the support endpoints");
    }
    for (std::size_t j = 0; j < points.size(); ++j)
    {
        auto const& p = points[j];
        if (j > 0 && !(p.location > points[j - 1].location))
        {
            throw std::invalid_argument(
                "discontinuity locations must be strictly increasing");
        }
        if (!(p.left >= 0) || !(p.right >= 0) || !std::isfinite(p.left)
            || !std::isfinite(p.right))
        {
            throw std::invalid_argument("one-sided limits must be finite and "
                                        "non-negative");
        }
        bool lower = j == 0;
        bool upper = j + 1 == points.size();
        if ((!lower && !(p.left > 0)) || (!upper && !(p.right > 0)))
        {
            throw std::invalid_argument(
                "density must be strictly positive inside the support "
                "(a zero limit makes the chain reducible)");
        }
    }
}

//---------------------------------------------------------------------------//
std::uint64_t sample_poisson(double mean, Rng& rng)
{
    if (!(mean >= 0) || !std::isfinite(mean))
    {
        throw std::invalid_argument("poisson mean must be finite and >= 0");
    }
    constexpr double chunk = 30;
    std::uint64_t total = 0;
    // Sums of independent Poisson variables are Poisson, so large means are
    // drawn in pieces that keep exp(-mean) well away from underflow.
    while (mean > chunk)
    {
        total += sample_poisson(chunk, rng);
        mean -= chunk;
    }
    double limit = std::exp(-mean);
    double prod = rng.uniform_open();
    std::uint64_t k = 0;
    while (prod > limit)
    {
        ++k;
        prod *= rng.uniform_open();
    }
    return total + k;
}

McEstimate esjd_limit_interior(double l,
                               InteriorDiscontinuitySpec const& spec,
                               std::size_t n_mc,
                               Rng& rng)
{
    require_positive(l, "l");
    spec.validate();
    if (n_mc < 10000)
    {
        throw std::invalid_argument(
            "esjd_limit_interior: n_mc must be >= 10^4");
    }
    double const scale = l * l / 3;
    double sum = 0;
    double sum_sq = 0;
    for (std::size_t s = 0; s < n_mc; ++s)
    {
        double log_prod = 0;
        bool zero = false;
        for (auto const& p : spec.points)
        {
            auto y_plus = static_cast<double>(sample_poisson(l * p.right / 4, rng));
            auto y_minus = static_cast<double>(sample_poisson(l * p.left / 4, rng));
            double e = y_plus - y_minus;
            if (e == 0)
            {
                continue;  // 0^0 = 1
            }
            if (p.left == 0 || p.right == 0)
            {
                // (f-/f+)^e with a zero base (directly, or via its
                // reciprocal and -e) kills the product.
                zero = true;
                continue;
            }
            log_prod += e * (std::log(p.left) - std::log(p.right));
        }
        double v = zero ? 0.0 : scale * std::min(1.0, std::exp(log_prod));
        sum += v;
        sum_sq += v * v;
    }
    auto n = static_cast<double>(n_mc);
    double mean = sum / n;
    double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
    return {mean, std::sqrt(var / n)};
}

//---------------------------------------------------------------------------//
}  // namespace rwmlab
