//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file diagnostics.cpp
//---------------------------------------------------------------------------//
#include "rwmlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>

#include <fftw3.h>

namespace rwmlab
{
namespace
{
McEstimate mean_and_se(double sum, double sum_sq, std::size_t n)
{
    auto nn = static_cast<double>(n);
    double mean = sum / nn;
    double var = n > 1 ? std::max(0.0, (sum_sq - nn * mean * mean) / (nn - 1))
                       : 0.0;
    return {mean, std::sqrt(var / nn)};
}

//! FFTW planning is not thread-safe.
std::mutex& fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

std::size_t next_pow2(std::size_t n)
{
    std::size_t p = 1;
    while (p < n)
    {
        p <<= 1;
    }
    return p;
}
}  // namespace

//---------------------------------------------------------------------------//
void Trajectory::push(ChainState const& s)
{
    if (s.dim() != d_)
    {
        throw std::invalid_argument("trajectory: dimension mismatch");
    }
    data_.insert(data_.end(), s.x.begin(), s.x.end());
}

std::vector<double> Trajectory::component(std::size_t i) const
{
    std::vector<double> out(size());
    for (std::size_t t = 0; t < out.size(); ++t)
    {
        out[t] = data_[t * d_ + i];
    }
    return out;
}

//---------------------------------------------------------------------------//
RunAccumulator::RunAccumulator(std::size_t d, double l, bool unit_support, bool keep_series)
    : d_(d), l_(l), unit_(unit_support), keep_series_(keep_series),
      window_(default_window(d))
{
}

void RunAccumulator::record(ChainState const& before,
                            ChainState const& after,
                            bool accepted)
{
    ++n_;
    if (accepted)
    {
        ++accepted_;
        ++window_accepts_;
        double sq = 0;
        for (std::size_t i = 0; i < d_; ++i)
        {
            double dx = after.x[i] - before.x[i];
            sq += dx * dx;
        }
        sq_jump_sum_ += sq;
    }
    if (++window_fill_ == window_)
    {
        window_prop_sum_ += static_cast<double>(window_accepts_)
                            / static_cast<double>(window_);
        ++windows_;
        window_fill_ = 0;
        window_accepts_ = 0;
    }
    auto b = static_cast<double>(boundary_count(after, l_, l_, d_));
    b_sum_ += b;
    b_sum_sq_ += b * b;
    if (unit_)
    {
        double w = omega_inv(after, l_, d_);
        omega_sum_ += w;
        omega_sum_sq_ += w * w;
    }
    if (keep_series_)
    {
        series_.push_back(after.x[0]);
    }
}

double RunAccumulator::accepted_sq_jump_mean() const
{
    return accepted_ ? sq_jump_sum_ / static_cast<double>(accepted_) : 0.0;
}

RunSummary RunAccumulator::summary(std::size_t max_lag) const
{
    RunSummary s;
    s.n_iters = n_;
    if (n_ == 0)
    {
        return s;
    }
    auto n = static_cast<double>(n_);
    s.accept_rate = static_cast<double>(accepted_) / n;
    s.esjd_scaled = static_cast<double>(d_) * sq_jump_sum_ / n;
    s.b_mean = b_sum_ / n;
    s.b_var = std::max(0.0, b_sum_sq_ / n - s.b_mean * s.b_mean);
    s.p_d = windows_ ? window_prop_sum_ / static_cast<double>(windows_)
                     : s.accept_rate;
    if (unit_)
    {
        s.omega_inv_mean = omega_sum_ / n;
        s.omega_inv_m2 = omega_sum_sq_ / n;
    }
    s.iact_first = std::numeric_limits<double>::quiet_NaN();
    if (keep_series_ && series_.size() >= 100)
    {
        std::size_t lag = max_lag ? max_lag : series_.size() / 50;
        s.iact_first = iact(series_, lag);
        auto [lo, hi] = std::minmax_element(series_.begin(), series_.end());
        if (*lo != *hi)
        {
            auto rho = autocorrelation(series_, lag);
            for (std::size_t k = 1; k <= lag; k *= 2)
            {
                s.acf.emplace_back(k, rho[k]);
            }
        }
    }
    return s;
}

//---------------------------------------------------------------------------//
std::size_t
boundary_count(ChainState const& state, double r, double l, std::size_t d)
{
    if (!(r >= 0 && r <= l))
    {
        throw std::invalid_argument("boundary_count: r must lie in [0, l]");
    }
    double edge = r / static_cast<double>(d);
    std::size_t count = 0;
    for (double x : state.x)
    {
        if ((x > 0 && x < edge) || (x > 1 - edge && x < 1))
        {
            ++count;
        }
    }
    return count;
}

double omega_component(double x, double sigma) noexcept
{
    return 0.5 * (std::min(1.0, x / sigma) + std::min(1.0, (1 - x) / sigma));
}

double uniform_accept_oracle(ChainState const& state, double l, std::size_t d)
{
    double sigma = l / static_cast<double>(d);
    double p = 1;
    for (double x : state.x)
    {
        if (x < sigma || x > 1 - sigma)
        {
            p *= omega_component(x, sigma);
        }
    }
    return p;
}

double omega_inv(ChainState const& state, double l, std::size_t d)
{
    return 1 / uniform_accept_oracle(state, l, d);
}

ChainState sample_omega_weighted(std::size_t d, double l, Rng& rng)
{
    KernelConfig cfg{l, d};
    cfg.validate();
    double sigma = cfg.sigma();
    // Interior mass 1 - 2 sigma out of the total 1 - sigma / 2.
    double p_interior = (1 - 2 * sigma) / (1 - sigma / 2);
    ChainState s(d, 0.0);
    for (auto& x : s.x)
    {
        if (rng.uniform01() < p_interior)
        {
            x = sigma + (1 - 2 * sigma) * rng.uniform_open();
            continue;
        }
        // Strip density (1 + u) / 2 on u = distance / sigma in (0, 1).
        bool upper = rng.uniform01() < 0.5;
        double u = std::sqrt(1 + 3 * rng.uniform_open()) - 1;
        x = upper ? 1 - sigma * u : sigma * u;
    }
    return s;
}

McEstimate estimate_J(TargetDensity const& target,
                      KernelConfig const& cfg,
                      ChainState const& state,
                      std::size_t n_mc,
                      Rng& rng)
{
    if (n_mc < 1000)
    {
        throw std::invalid_argument("estimate_J: n_mc must be >= 1000");
    }
    StepWorkspace ws;
    std::size_t hits = 0;
    ChainState trial = state;
    for (std::size_t i = 0; i < n_mc; ++i)
    {
        if (rwm_update(target, cfg, trial, rng, ws))
        {
            ++hits;
            trial.x = state.x;
        }
    }
    // Standard error from the Agresti-Coull centre (hits + 2) / (n + 4), which
    // stays positive when every trial accepts or every trial rejects.
    auto n = static_cast<double>(n_mc);
    double centre = (static_cast<double>(hits) + 2) / (n + 4);
    return {static_cast<double>(hits) / n,
            std::sqrt(centre * (1 - centre) / n)};
}

double acceptance_lower_bound(TargetDensity const& target,
                              KernelConfig const& cfg,
                              ChainState const& state)
{
    auto b = static_cast<double>(boundary_count(state, cfg.l, cfg.l, cfg.d));
    return std::exp(-cfg.l * target.gstar()) * std::exp2(-b);
}

double esjd(Trajectory const& trajectory)
{
    std::size_t n = trajectory.size();
    if (n < 2)
    {
        throw std::invalid_argument("esjd: trajectory needs at least 2 states");
    }
    double total = 0;
    for (std::size_t t = 0; t + 1 < n; ++t)
    {
        auto a = trajectory.row(t);
        auto b = trajectory.row(t + 1);
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            double dx = b[i] - a[i];
            total += dx * dx;
        }
    }
    return static_cast<double>(trajectory.dim()) * total
           / static_cast<double>(n - 1);
}

std::pair<std::size_t, std::size_t> lambda_window(std::size_t d)
{
    auto dd = static_cast<double>(d);
    return {static_cast<std::size_t>(std::ceil(std::pow(dd, 0.3))),
            static_cast<std::size_t>(std::ceil(std::pow(dd, 0.5)))};
}

std::size_t default_window(std::size_t d)
{
    return static_cast<std::size_t>(
        std::ceil(std::pow(static_cast<double>(d), 0.4)));
}

McEstimate estimate_lambda(TargetDensity const& target,
                           KernelConfig const& cfg,
                           ChainState const& start,
                           double r,
                           std::size_t k,
                           std::size_t n_rep,
                           Rng& rng)
{
    auto [lo, hi] = lambda_window(cfg.d);
    if (k < lo || k > hi)
    {
        throw std::invalid_argument(
            "estimate_lambda: k = " + std::to_string(k) + " outside ["
            + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    if (n_rep < 2)
    {
        throw std::invalid_argument("estimate_lambda: need >= 2 replicas");
    }
    StepWorkspace ws;
    double sum = 0;
    double sum_sq = 0;
    for (std::size_t rep = 0; rep < n_rep; ++rep)
    {
        Rng child = rng.split(rep);
        ChainState s = start;
        for (std::size_t j = 0; j < k; ++j)
        {
            pseudo_rwm_update(target, cfg, s, child, ws);
        }
        auto b = static_cast<double>(boundary_count(s, r, cfg.l, cfg.d));
        sum += b;
        sum_sq += b * b;
    }
    return mean_and_se(sum, sum_sq, n_rep);
}

double estimate_P_d(TargetDensity const& target,
                    KernelConfig const& cfg,
                    ChainState const& start,
                    std::size_t window,
                    Rng& rng)
{
    if (window == 0)
    {
        throw std::invalid_argument("estimate_P_d: window must be positive");
    }
    StepWorkspace ws;
    ChainState s = start;
    std::size_t accepted = 0;
    for (std::size_t t = 0; t < window; ++t)
    {
        accepted += rwm_update(target, cfg, s, rng, ws) ? 1 : 0;
    }
    return static_cast<double>(accepted) / static_cast<double>(window);
}

//---------------------------------------------------------------------------//
BoundaryStats fd_statistics(TargetDensity const& target,
                            ChainState const& state,
                            double l,
                            double gamma,
                            std::vector<double> r_grid)
{
    if (!(gamma > 0))
    {
        throw std::invalid_argument("fd_statistics: gamma must be positive");
    }
    std::size_t d = state.dim();
    if (r_grid.empty())
    {
        for (int j = 0; j <= 8; ++j)
        {
            r_grid.push_back(l * j / 8);
        }
    }
    BoundaryStats bs;
    bs.r_grid = std::move(r_grid);
    for (double r : bs.r_grid)
    {
        bs.counts.push_back(boundary_count(state, r, l, d));
    }
    auto bl = static_cast<double>(boundary_count(state, l, l, d));
    bs.in_f1 = bl <= gamma * std::log(static_cast<double>(d));
    double sum = 0;
    for (double x : state.x)
    {
        double gp = target.gprime(x);
        sum += gp * gp;
    }
    bs.f4_stat = std::fabs(sum / static_cast<double>(d) - target.e_gprime_sq());
    return bs;
}

//---------------------------------------------------------------------------//
std::vector<double>
autocorrelation(std::span<double const> series, std::size_t max_lag)
{
    std::size_t n = series.size();
    if (n < 2 || max_lag >= n)
    {
        throw std::invalid_argument("autocorrelation: max_lag must be < n");
    }
    double mean = 0;
    for (double v : series)
    {
        mean += v;
    }
    mean /= static_cast<double>(n);

    std::size_t m = next_pow2(n + max_lag + 1);
    std::size_t nc = m / 2 + 1;
    auto* buf = static_cast<double*>(fftw_malloc(sizeof(double) * m));
    auto* spec = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * nc));
    if (!buf || !spec)
    {
        fftw_free(buf);
        fftw_free(spec);
        throw std::bad_alloc();
    }
    fftw_plan fwd;
    fftw_plan inv;
    {
        std::lock_guard lock(fftw_planner_mutex());
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(m), buf, spec, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(static_cast<int>(m), spec, buf, FFTW_ESTIMATE);
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        buf[i] = series[i] - mean;
    }
    std::fill(buf + n, buf + m, 0.0);
    fftw_execute(fwd);
    for (std::size_t k = 0; k < nc; ++k)
    {
        double re = spec[k][0];
        double im = spec[k][1];
        spec[k][0] = re * re + im * im;
        spec[k][1] = 0;
    }
    fftw_execute(inv);

    std::vector<double> rho(max_lag + 1);
    double c0 = buf[0];
    for (std::size_t k = 0; k <= max_lag; ++k)
    {
        rho[k] = buf[k] / c0;
    }
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
    }
    fftw_free(buf);
    fftw_free(spec);
    if (!(c0 > 0))
    {
        throw std::domain_error("autocorrelation: constant series");
    }
    return rho;
}

double iact(std::span<double const> series, std::size_t max_lag)
{
    if (max_lag < 1 || series.size() < 50 * max_lag)
    {
        throw std::invalid_argument(
            "iact: series length " + std::to_string(series.size())
            + " is shorter than 50 * max_lag = " + std::to_string(50 * max_lag));
    }
    auto [lo, hi] = std::minmax_element(series.begin(), series.end());
    if (*lo == *hi)
    {
        return std::numeric_limits<double>::infinity();
    }
    auto rho = autocorrelation(series, max_lag);
    double tau = -1;
    for (std::size_t k = 0; 2 * k + 1 <= max_lag; ++k)
    {
        double pair = rho[2 * k] + rho[2 * k + 1];
        if (!(pair > 0))
        {
            break;
        }
        tau += 2 * pair;
    }
    return std::max(tau, 0.5);
}

//---------------------------------------------------------------------------//
}  // namespace rwmlab
