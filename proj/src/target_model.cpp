//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file target_model.cpp
//---------------------------------------------------------------------------//
#include "rwmlab/target_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rwmlab/quadrature.hpp"

namespace rwmlab
{
namespace
{
//---------------------------------------------------------------------------//
constexpr double quad_tol = 1e-10;
constexpr std::size_t grid_cells = 4096;
constexpr std::size_t refined_cells = 64;
constexpr std::size_t refine_factor = 4;

double halfline_x(double t)
{
    return t / (1 - t);
}

//! Polynomial coefficients with trailing zeros removed.
std::vector<double> trimmed(std::vector<double> coeffs)
{
    while (!coeffs.empty() && coeffs.back() == 0)
    {
        coeffs.pop_back();
    }
    return coeffs;
}

void validate(GSpec const& gs)
{
    for (double p : gs.params)
    {
        if (!std::isfinite(p))
        {
            throw InvalidTarget("non-finite parameter in log-density spec");
        }
    }
    auto require_params = [&](std::size_t n) {
        if (gs.params.size() != n)
        {
            throw InvalidTarget(std::string(to_string(gs.family))
                                + " family expects "
                                + std::to_string(n) + " parameter(s)");
        }
    };
    switch (gs.family)
    {
        case Family::uniform:
            require_params(0);
            if (gs.support == Support::halfline)
            {
                throw InvalidTarget(
                    "uniform density is not integrable on the half-line");
            }
            break;
        case Family::linear:
            require_params(1);
            if (gs.support == Support::halfline && !(gs.params[0] > 0))
            {
                throw InvalidTarget(
                    "linear family on the half-line needs theta > 0");
            }
            break;
        case Family::quadratic:
            require_params(2);
            if (!(gs.params[1] > 0))
            {
                throw InvalidTarget("quadratic family needs s > 0");
            }
            if (gs.support == Support::halfline)
            {
                throw InvalidTarget(
                    "quadratic g has unbounded g' on the half-line");
            }
            break;
        case Family::polynomial:
            if (gs.support == Support::halfline)
            {
                auto c = trimmed(gs.params);
                if (c.size() > 2)
                {
                    throw InvalidTarget("polynomial of degree >= 2 has "
                                        "unbounded g' on the half-line");
                }
                if (c.size() < 2 || !(c[1] < 0))
                {
                    throw InvalidTarget("polynomial g is not integrable on "
                                        "the half-line unless its slope is "
                                        "negative");
                }
            }
            break;
    }
}

//! sup |g'| over [0, 1] for a polynomial: dense scan, then golden section.
double poly_gstar(GSpec const& gs)
{
    constexpr std::size_t n = 4096;
    auto absg = [&](double x) { return std::fabs(gs.gprime(x)); };
    double best = std::max(absg(0.0), absg(1.0));
    for (std::size_t i = 1; i < n; ++i)
    {
        double x = static_cast<double>(i) / n;
        if (absg(x) < best)
        {
            continue;
        }
        double a = static_cast<double>(i - 1) / n;
        double b = static_cast<double>(i + 1) / n;
        constexpr double invphi = 0.6180339887498949;
        double c = b - invphi * (b - a);
        double d = a + invphi * (b - a);
        for (int it = 0; it < 80; ++it)
        {
            if (absg(c) > absg(d))
            {
                b = d;
            }
            else
            {
                a = c;
            }
            c = b - invphi * (b - a);
            d = a + invphi * (b - a);
        }
        best = std::max({best, absg(x), absg(0.5 * (a + b))});
    }
    return best;
}

//! Knot positions in t with the boundary cells refined.
std::vector<double> table_knots(Support support)
{
    std::vector<double> t;
    t.reserve(grid_cells + 2 * refined_cells * refine_factor + 1);
    for (std::size_t i = 0; i < grid_cells; ++i)
    {
        bool refine = i < refined_cells
                      || (support == Support::unit
                          && i >= grid_cells - refined_cells);
        std::size_t sub = refine ? refine_factor : 1;
        for (std::size_t j = 0; j < sub; ++j)
        {
            t.push_back((static_cast<double>(i)
                         + static_cast<double>(j) / static_cast<double>(sub))
                        / static_cast<double>(grid_cells));
        }
    }
    t.push_back(1.0);
    return t;
}

//! Fritsch-Butland / PCHIP slopes for data (x, y), x strictly increasing.
std::vector<double> pchip_slopes(std::vector<double> const& x,
                                 std::vector<double> const& y)
{
    std::size_t n = x.size();
    std::vector<double> m(n, 0.0);
    if (n < 2)
    {
        return m;
    }
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k)
    {
        h[k] = x[k + 1] - x[k];
        delta[k] = (y[k + 1] - y[k]) / h[k];
    }
    if (n == 2)
    {
        m[0] = m[1] = delta[0];
        return m;
    }
    for (std::size_t k = 1; k + 1 < n; ++k)
    {
        if (delta[k - 1] * delta[k] <= 0)
        {
            m[k] = 0;
            continue;
        }
        double w1 = 2 * h[k] + h[k - 1];
        double w2 = h[k] + 2 * h[k - 1];
        m[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double s = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (std::signbit(s) != std::signbit(d0) || s == 0)
        {
            return 0.0;
        }
        if (std::signbit(d0) != std::signbit(d1) && std::fabs(s) > 3 * std::fabs(d0))
        {
            return 3 * d0;
        }
        return s;
    };
    m[0] = endpoint(h[0], h[1], delta[0], delta[1]);
    m[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return m;
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
std::string_view to_string(Family f)
{
    switch (f)
    {
        case Family::uniform:
            return "uniform";
        case Family::linear:
            return "linear";
        case Family::quadratic:
            return "quadratic";
        case Family::polynomial:
            return "polynomial";
    }
    return "?";
}

std::string_view to_string(Support s)
{
    return s == Support::unit ? "unit" : "halfline";
}

Family family_from_string(std::string_view name)
{
    for (auto f : {Family::uniform, Family::linear, Family::quadratic,
                   Family::polynomial})
    {
        if (name == to_string(f))
        {
            return f;
        }
    }
    throw InvalidTarget("unknown density family '" + std::string(name) + "'");
}

Support support_from_string(std::string_view name)
{
    if (name == "unit")
    {
        return Support::unit;
    }
    if (name == "halfline")
    {
        return Support::halfline;
    }
    throw InvalidTarget("unknown support '" + std::string(name) + "'");
}

//---------------------------------------------------------------------------//
InverseCdfTable::InverseCdfTable(std::vector<double> cdf, std::vector<double> t)
{
    // Zero-mass cells would make the inverse multivalued; keep strictly
    // increasing CDF values only.
    for (std::size_t k = 0; k < cdf.size(); ++k)
    {
        if (cdf_.empty() || cdf[k] > cdf_.back())
        {
            cdf_.push_back(cdf[k]);
            t_.push_back(t[k]);
        }
    }
    slope_ = pchip_slopes(cdf_, t_);
}

double InverseCdfTable::operator()(double u) const
{
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t k = it == cdf_.begin()
                        ? 0
                        : static_cast<std::size_t>(it - cdf_.begin()) - 1;
    k = std::min(k, cdf_.size() - 2);
    double h = cdf_[k + 1] - cdf_[k];
    double s = (u - cdf_[k]) / h;
    double s2 = s * s;
    double s3 = s2 * s;
    double h00 = 2 * s3 - 3 * s2 + 1;
    double h10 = s3 - 2 * s2 + s;
    double h01 = -2 * s3 + 3 * s2;
    double h11 = s3 - s2;
    return h00 * t_[k] + h10 * h * slope_[k] + h01 * t_[k + 1]
           + h11 * h * slope_[k + 1];
}

//---------------------------------------------------------------------------//
double TargetDensity::density(double x) const noexcept
{
    if (!in_support(x))
    {
        return 0;
    }
    return std::exp(gspec_.g(x) - log_z_);
}

double TargetDensity::cdf(double x) const
{
    if (x <= 0)
    {
        return 0;
    }
    if (gspec_.support == Support::unit && x >= 1)
    {
        return 1;
    }
    if (is_uniform())
    {
        return x;
    }
    double t = gspec_.support == Support::unit ? x : x / (1 + x);
    // Locate the knot at or below t, then integrate the remainder of the cell.
    auto const& knots = table_.knots();
    auto const& cdfs = table_.cdf();
    auto it = std::upper_bound(knots.begin(), knots.end(), t);
    std::size_t k = static_cast<std::size_t>(it - knots.begin()) - 1;
    double base = cdfs[k];
    double x0 = gspec_.support == Support::unit ? knots[k]
                                                : halfline_x(knots[k]);
    // The closed cell includes the endpoint, where density() is zero.
    double rest = integrate_simpson(
        [this](double y) { return std::exp(gspec_.g(y) - log_z_); }, x0, x,
        1e-13, 1);
    return std::min(1.0, base + rest);
}

double TargetDensity::quantile(double u) const
{
    if (is_uniform())
    {
        return u;
    }
    double t = table_(u);
    return gspec_.support == Support::unit ? t : halfline_x(t);
}

double TargetDensity::sample(Rng& rng) const
{
    double u = rng.uniform_open();
    if (is_uniform())
    {
        return u;
    }
    double t = table_(u);
    constexpr double lo = std::numeric_limits<double>::min();
    constexpr double hi = 1 - std::numeric_limits<double>::epsilon();
    t = std::clamp(t, lo, hi);
    return gspec_.support == Support::unit ? t : halfline_x(t);
}

//---------------------------------------------------------------------------//
TargetDensity normalize(GSpec const& gspec)
{
    validate(gspec);

    TargetDensity td;
    td.gspec_ = gspec;
    if (gspec.family == Family::uniform)
    {
        td.log_z_ = 0;
        td.fstar_ = 1;
        td.gstar_ = 0;
        td.e_gprime_sq_ = 0;
        td.mean_ = 0.5;
        td.variance_ = 1.0 / 12;
        std::vector<double> t{0.0, 1.0};
        td.table_ = InverseCdfTable(t, t);
        return td;
    }

    bool const unit = gspec.support == Support::unit;

    // Shift g by its largest grid value so exp() cannot overflow.
    double gref = -std::numeric_limits<double>::infinity();
    if (unit)
    {
        for (std::size_t i = 0; i <= grid_cells; ++i)
        {
            gref = std::max(gref, gspec.g(static_cast<double>(i) / grid_cells));
        }
    }
    else
    {
        gref = gspec.g(0.0);
    }

    // Shifted density in the unit coordinate t.
    auto shifted = [&](double t) -> double {
        if (unit)
        {
            return std::exp(gspec.g(t) - gref);
        }
        if (t >= 1)
        {
            return 0;
        }
        double x = halfline_x(t);
        double jac = 1 / ((1 - t) * (1 - t));
        double v = std::exp(gspec.g(x) - gref) * jac;
        return std::isfinite(v) ? v : 0.0;
    };
    double zs = integrate_simpson(shifted, 0.0, 1.0, quad_tol);
    if (!(zs > 0) || !std::isfinite(zs))
    {
        throw InvalidTarget("log-density does not integrate to a positive "
                            "finite value");
    }
    td.log_z_ = gref + std::log(zs);

    // Moments in t-space: x(t), x(t)^2, g'(x(t))^2 weighted by the density.
    auto moment = [&](auto&& h) {
        return integrate_simpson(
                   [&](double t) {
                       double w = shifted(t);
                       if (w == 0)
                       {
                           return 0.0;
                       }
                       double x = unit ? t : halfline_x(t);
                       return h(x) * w;
                   },
                   0.0, 1.0, quad_tol)
               / zs;
    };

    if (unit)
    {
        td.fstar_ = 0.5
                    * (std::exp(gspec.g(0.0) - td.log_z_)
                       + std::exp(gspec.g(1.0) - td.log_z_));
    }
    else
    {
        td.fstar_ = std::exp(gspec.g(0.0) - td.log_z_);
    }

    switch (gspec.family)
    {
        case Family::linear:
            td.gstar_ = std::fabs(gspec.params[0]);
            td.e_gprime_sq_ = gspec.params[0] * gspec.params[0];
            break;
        case Family::quadratic: {
            double mu = gspec.params[0];
            double s2 = gspec.params[1] * gspec.params[1];
            td.gstar_ = std::max(std::fabs(mu), std::fabs(1 - mu)) / s2;
            td.e_gprime_sq_ = moment([&](double x) {
                double gp = gspec.gprime(x);
                return gp * gp;
            });
            break;
        }
        case Family::polynomial:
            if (unit)
            {
                td.gstar_ = poly_gstar(gspec);
                td.e_gprime_sq_ = moment([&](double x) {
                    double gp = gspec.gprime(x);
                    return gp * gp;
                });
            }
            else
            {
                td.gstar_ = std::fabs(gspec.params[1]);
                td.e_gprime_sq_ = gspec.params[1] * gspec.params[1];
            }
            break;
        case Family::uniform:
            break;
    }

    td.mean_ = moment([](double x) { return x; });
    double m2 = moment([](double x) { return x * x; });
    td.variance_ = m2 - td.mean_ * td.mean_;

    // Inverse-CDF table from cellwise integrals of the shifted density.
    std::vector<double> knots = table_knots(gspec.support);
    std::vector<double> cdf(knots.size(), 0.0);
    for (std::size_t k = 0; k + 1 < knots.size(); ++k)
    {
        cdf[k + 1] = cdf[k]
                     + integrate_simpson(shifted, knots[k], knots[k + 1],
                                         1e-14, 1);
    }
    double total = cdf.back();
    for (double& c : cdf)
    {
        c /= total;
    }
    cdf.back() = 1.0;
    td.table_ = InverseCdfTable(std::move(cdf), std::move(knots));
    return td;
}

//---------------------------------------------------------------------------//
double log_density_ratio(TargetDensity const& target,
                         ChainState const& x,
                         ChainState const& y)
{
    if (x.dim() != y.dim())
    {
        throw std::invalid_argument("log_density_ratio: dimension mismatch ("
                                    + std::to_string(x.dim()) + " vs "
                                    + std::to_string(y.dim()) + ")");
    }
    double acc = 0;
    for (std::size_t i = 0; i < y.dim(); ++i)
    {
        if (!target.in_support(y.x[i]))
        {
            return -std::numeric_limits<double>::infinity();
        }
        acc += target.g(y.x[i]) - target.g(x.x[i]);
    }
    return acc;
}

ChainState sample_iid(TargetDensity const& target, std::size_t d, Rng& rng)
{
    ChainState s;
    s.x.resize(d);
    for (auto& xi : s.x)
    {
        xi = target.sample(rng);
    }
    return s;
}

//---------------------------------------------------------------------------//
}  // namespace rwmlab
