//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file diffusion.cpp
//---------------------------------------------------------------------------//
#include "rwmlab/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "rwmlab/theory.hpp"

namespace rwmlab
{
//---------------------------------------------------------------------------//
DiffusionConfig DiffusionConfig::for_target(TargetDensity const& target,
                                            double speed,
                                            double horizon)
{
    DiffusionConfig cfg;
    cfg.speed = speed;
    cfg.step = 1e-4 / speed;
    cfg.horizon = horizon;
    cfg.support = target.support();
    return cfg;
}

void DiffusionConfig::validate() const
{
    if (!(speed > 0))
    {
        throw std::invalid_argument("diffusion: speed must be positive");
    }
    if (!(step > 0) || !(horizon > 0) || step > 1e-3 * horizon)
    {
        throw std::invalid_argument(
            "diffusion: need 0 < step <= 1e-3 * horizon");
    }
    if (record_stride == 0)
    {
        throw std::invalid_argument("diffusion: record_stride must be >= 1");
    }
}

//---------------------------------------------------------------------------//
double reflect(double v, Support support) noexcept
{
    if (support == Support::halfline)
    {
        return std::fabs(v);
    }
    // Mirror images of [0,1] have period 2.
    if (v < 0 || v > 1)
    {
        v = std::fmod(std::fabs(v), 2.0);
        if (v > 1)
        {
            v = 2 - v;
        }
    }
    return v;
}

DiffusionPath simulate_reflected_langevin(TargetDensity const& target,
                                          DiffusionConfig const& cfg,
                                          double v0,
                                          Rng& rng)
{
    cfg.validate();
    if (!target.in_support(v0))
    {
        throw std::invalid_argument("diffusion: v0 outside the open support");
    }
    auto drift = cfg.drift;
    if (!drift)
    {
        double half_speed = 0.5 * cfg.speed;
        drift = [&target, half_speed](double v) {
            return half_speed * target.gprime(v);
        };
    }
    auto n_steps = static_cast<std::size_t>(std::ceil(cfg.horizon / cfg.step));
    double noise = std::sqrt(cfg.speed * cfg.step);
    std::normal_distribution<double> normal;

    DiffusionPath path;
    std::size_t n_rec = n_steps / cfg.record_stride + 1;
    path.times.reserve(n_rec);
    path.values.reserve(n_rec);
    path.times.push_back(0);
    path.values.push_back(v0);

    double v = v0;
    for (std::size_t i = 1; i <= n_steps; ++i)
    {
        double mu = drift(v);
        if (!std::isfinite(mu))
        {
            throw std::domain_error("diffusion: non-finite drift at v = "
                                    + std::to_string(v));
        }
        v = reflect(v + mu * cfg.step + noise * normal(rng), cfg.support);
        if (i % cfg.record_stride == 0)
        {
            path.times.push_back(static_cast<double>(i) * cfg.step);
            path.values.push_back(v);
        }
    }
    return path;
}

//---------------------------------------------------------------------------//
double reflected_bm_autocorr(double phi, double t)
{
    if (!(phi > 0) || !(t >= 0))
    {
        throw std::invalid_argument(
            "reflected_bm_autocorr: need phi > 0 and t >= 0");
    }
    if (t == 0)
    {
        return 1;
    }
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    constexpr double c = 96 / (pi2 * pi2);
    double sum = 0;
    for (int k = 1;; k += 2)
    {
        double k2 = static_cast<double>(k) * k;
        double term = c / (k2 * k2) * std::exp(-k2 * pi2 * phi * t / 2);
        sum += term;
        if (term < 1e-12)
        {
            break;
        }
    }
    return sum;
}

double lag_autocorrelation(std::span<double const> series, std::size_t lag)
{
    std::size_t n = series.size();
    if (lag >= n)
    {
        throw std::invalid_argument("lag_autocorrelation: lag >= length");
    }
    double mean = 0;
    for (double v : series)
    {
        mean += v;
    }
    mean /= static_cast<double>(n);
    double c0 = 0;
    double ck = 0;
    for (std::size_t t = 0; t < n; ++t)
    {
        double a = series[t] - mean;
        c0 += a * a;
        if (t + lag < n)
        {
            ck += a * (series[t + lag] - mean);
        }
    }
    if (!(c0 > 0))
    {
        throw std::domain_error("lag_autocorrelation: constant series");
    }
    return ck / c0;
}

std::vector<AutocorrComparison>
chain_vs_diffusion_autocorr(std::span<double const> first_component,
                            std::size_t d,
                            double l,
                            TargetDensity const& target,
                            std::span<double const> t_grid,
                            Rng& rng)
{
    if (t_grid.empty())
    {
        return {};
    }
    double t_max = *std::max_element(t_grid.begin(), t_grid.end());
    auto d2 = static_cast<double>(d) * static_cast<double>(d);
    auto needed = static_cast<std::size_t>(std::ceil(t_max * d2 * 20));
    if (first_component.size() < needed)
    {
        throw std::invalid_argument(
            "chain_vs_diffusion_autocorr: trajectory has "
            + std::to_string(first_component.size())
            + " iterations, need at least " + std::to_string(needed));
    }

    bool const halfline = target.support() == Support::halfline;
    double speed = halfline ? phi_halfline(l, target.fstar())
                            : phi(l, target.fstar());

    // Euler reference path, sampled every 1e-3 / speed time units.
    DiffusionPath ref;
    double ref_dt = 0;
    if (!target.is_uniform())
    {
        auto cfg = DiffusionConfig::for_target(target, speed, 1000 / speed);
        cfg.record_stride = 10;
        ref_dt = cfg.step * static_cast<double>(cfg.record_stride);
        Rng sim = rng.split(0);
        ref = simulate_reflected_langevin(target, cfg, target.sample(sim), sim);
    }

    std::vector<AutocorrComparison> out;
    for (double t : t_grid)
    {
        AutocorrComparison row;
        row.t = t;
        row.lag = static_cast<std::size_t>(std::ceil(t * d2));
        row.chain_rho = row.lag == 0
                            ? 1.0
                            : lag_autocorrelation(first_component, row.lag);
        if (t == 0)
        {
            row.diffusion_rho = 1;
        }
        else if (target.is_uniform())
        {
            row.diffusion_rho = reflected_bm_autocorr(speed, t);
        }
        else
        {
            auto ref_lag = static_cast<std::size_t>(std::lround(t / ref_dt));
            row.diffusion_rho = lag_autocorrelation(ref.values, ref_lag);
        }
        out.push_back(row);
    }
    return out;
}

//---------------------------------------------------------------------------//
}  // namespace rwmlab
