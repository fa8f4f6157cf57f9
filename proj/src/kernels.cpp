//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file kernels.cpp
//---------------------------------------------------------------------------//
#include "rwmlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rwmlab
{
namespace
{
//---------------------------------------------------------------------------//
//! Metropolis test: U is always consumed; log U < 0 <= log_ratio needs no log.
bool metropolis_accept(double log_ratio, Rng& rng)
{
    double u = rng.uniform_open();
    return log_ratio >= 0 || std::log(u) < log_ratio;
}

/*!
 * Full-dimensional proposal. With UseDensity false the density ratio is
 * ignored (hypercube walk); the RNG stream is consumed identically.
 */
template<bool UseDensity>
bool full_update(TargetDensity const* target,
                 double sigma,
                 Support support,
                 ChainState& state,
                 Rng& rng,
                 StepWorkspace& ws)
{
    std::size_t const d = state.dim();
    ws.proposal.resize(d);
    bool const density = UseDensity && !target->is_uniform();
    double log_ratio = 0;
    for (std::size_t i = 0; i < d; ++i)
    {
        double xi = state.x[i];
        double y = xi + sigma * rng.uniform_pm1();
        if (!(y > 0) || (support == Support::unit && !(y < 1)))
        {
            rng.discard(d - i);
            return false;
        }
        ws.proposal[i] = y;
        if (density)
        {
            log_ratio += target->g(y) - target->g(xi);
        }
    }
    if (!metropolis_accept(log_ratio, rng))
    {
        return false;
    }
    state.x.swap(ws.proposal);
    return true;
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
std::string_view to_string(KernelKind k)
{
    switch (k)
    {
        case KernelKind::rwm:
            return "rwm";
        case KernelKind::mwg:
            return "mwg";
        case KernelKind::rwh:
            return "rwh";
        case KernelKind::pseudo:
            return "pseudo";
    }
    return "?";
}

KernelKind kernel_kind_from_string(std::string_view name)
{
    for (auto k :
         {KernelKind::rwm, KernelKind::mwg, KernelKind::rwh, KernelKind::pseudo})
    {
        if (name == to_string(k))
        {
            return k;
        }
    }
    throw std::invalid_argument("unknown kernel kind '" + std::string(name)
                                + "'");
}

//---------------------------------------------------------------------------//
std::size_t KernelConfig::block_size() const noexcept
{
    if (kind != KernelKind::mwg)
    {
        return d;
    }
    // Guard against c*d landing a hair above an integer.
    double cd = c * static_cast<double>(d);
    auto k = static_cast<std::size_t>(std::ceil(cd - 1e-9 * cd));
    return std::clamp<std::size_t>(k, 1, d);
}

void KernelConfig::validate() const
{
    if (!(l > 0) || !std::isfinite(l))
    {
        throw std::invalid_argument("kernel config: l must be positive");
    }
    if (d < 1)
    {
        throw std::invalid_argument("kernel config: d must be >= 1");
    }
    if (!(sigma() < 0.5))
    {
        throw std::invalid_argument(
            "kernel config: sigma = l/d = " + std::to_string(sigma())
            + " must be < 1/2");
    }
    if (kind == KernelKind::mwg)
    {
        if (!(c > 0 && c <= 1))
        {
            throw std::invalid_argument("kernel config: c must lie in (0, 1]");
        }
        if (c * static_cast<double>(d) < 1 - 1e-12)
        {
            throw std::invalid_argument("kernel config: c*d must be >= 1");
        }
    }
}

//---------------------------------------------------------------------------//
StuckStateError::StuckStateError(ChainState state, std::uint64_t trials)
    : std::runtime_error("jump chain stuck: no proposal accepted after "
                         + std::to_string(trials) + " trials"),
      state_(std::move(state)),
      trials_(trials)
{
}

//---------------------------------------------------------------------------//
bool rwm_update(TargetDensity const& target,
                KernelConfig const& cfg,
                ChainState& state,
                Rng& rng,
                StepWorkspace& ws)
{
    return full_update<true>(
        &target, cfg.sigma(), target.support(), state, rng, ws);
}

bool mwg_update(TargetDensity const& target,
                KernelConfig const& cfg,
                ChainState& state,
                Rng& rng,
                StepWorkspace& ws)
{
    std::size_t const d = state.dim();
    std::size_t const k = cfg.block_size();
    if (k >= d)
    {
        return rwm_update(target, cfg, state, rng, ws);
    }

    ws.index.resize(d);
    std::iota(ws.index.begin(), ws.index.end(), std::size_t{0});
    for (std::size_t j = 0; j < k; ++j)
    {
        std::size_t r = j + static_cast<std::size_t>(rng.uniform_index(d - j));
        std::swap(ws.index[j], ws.index[r]);
    }

    double const sigma = cfg.sigma();
    bool const unit = target.support() == Support::unit;
    bool const density = !target.is_uniform();
    ws.proposal.resize(k);
    double log_ratio = 0;
    for (std::size_t j = 0; j < k; ++j)
    {
        double xi = state.x[ws.index[j]];
        double y = xi + sigma * rng.uniform_pm1();
        if (!(y > 0) || (unit && !(y < 1)))
        {
            rng.discard(k - j);
            return false;
        }
        ws.proposal[j] = y;
        if (density)
        {
            log_ratio += target.g(y) - target.g(xi);
        }
    }
    if (!metropolis_accept(log_ratio, rng))
    {
        return false;
    }
    for (std::size_t j = 0; j < k; ++j)
    {
        state.x[ws.index[j]] = ws.proposal[j];
    }
    return true;
}

bool rwh_update(KernelConfig const& cfg,
                ChainState& state,
                Rng& rng,
                StepWorkspace& ws)
{
    return full_update<false>(
        nullptr, cfg.sigma(), Support::unit, state, rng, ws);
}

bool kernel_update(TargetDensity const& target,
                   KernelConfig const& cfg,
                   ChainState& state,
                   Rng& rng,
                   StepWorkspace& ws)
{
    switch (cfg.kind)
    {
        case KernelKind::rwm:
            return rwm_update(target, cfg, state, rng, ws);
        case KernelKind::mwg:
            return mwg_update(target, cfg, state, rng, ws);
        case KernelKind::rwh:
            return rwh_update(cfg, state, rng, ws);
        case KernelKind::pseudo:
            break;
    }
    throw std::invalid_argument(
        "kernel_update: pseudo kernel produces jumps, not iterations");
}

bool coupled_update(TargetDensity const& target,
                    KernelConfig const& cfg,
                    ChainState& x_rwm,
                    ChainState& x_rwh,
                    Rng& rng,
                    StepWorkspace& ws)
{
    if (x_rwm.dim() != x_rwh.dim())
    {
        throw std::invalid_argument("coupled step: dimension mismatch");
    }
    std::size_t const d = x_rwm.dim();
    double const sigma = cfg.sigma();
    bool const equal = x_rwm == x_rwh;

    ws.increment.resize(d);
    for (auto& z : ws.increment)
    {
        z = sigma * rng.uniform_pm1();
    }
    double u = rng.uniform_open();

    auto inside = [&](ChainState const& s) {
        for (std::size_t i = 0; i < d; ++i)
        {
            double y = s.x[i] + ws.increment[i];
            if (!(y > 0 && y < 1))
            {
                return false;
            }
        }
        return true;
    };

    bool rwh_ok = inside(x_rwh);
    bool rwm_ok = false;
    if (inside(x_rwm))
    {
        double log_ratio = 0;
        if (!target.is_uniform())
        {
            for (std::size_t i = 0; i < d; ++i)
            {
                log_ratio += target.g(x_rwm.x[i] + ws.increment[i])
                             - target.g(x_rwm.x[i]);
            }
        }
        rwm_ok = log_ratio >= 0 || std::log(u) < log_ratio;
    }
    if (rwh_ok)
    {
        for (std::size_t i = 0; i < d; ++i)
        {
            x_rwh.x[i] += ws.increment[i];
        }
    }
    if (rwm_ok)
    {
        for (std::size_t i = 0; i < d; ++i)
        {
            x_rwm.x[i] += ws.increment[i];
        }
    }
    return equal && rwm_ok != rwh_ok;
}

//---------------------------------------------------------------------------//
namespace
{
void require_kind(KernelConfig const& cfg, KernelKind kind, char const* op)
{
    if (cfg.kind != kind)
    {
        throw std::invalid_argument(std::string(op) + ": kernel kind is "
                                    + std::string(to_string(cfg.kind)));
    }
}
}  // namespace

Transition rwm_step(TargetDensity const& target,
                    KernelConfig const& cfg,
                    ChainState const& state,
                    Rng& rng)
{
    require_kind(cfg, KernelKind::rwm, "rwm_step");
    Transition t{state, false};
    StepWorkspace ws;
    t.accepted = rwm_update(target, cfg, t.state, rng, ws);
    return t;
}

Transition mwg_step(TargetDensity const& target,
                    KernelConfig const& cfg,
                    ChainState const& state,
                    Rng& rng)
{
    require_kind(cfg, KernelKind::mwg, "mwg_step");
    Transition t{state, false};
    StepWorkspace ws;
    t.accepted = mwg_update(target, cfg, t.state, rng, ws);
    return t;
}

Transition rwh_step(KernelConfig const& cfg, ChainState const& state, Rng& rng)
{
    require_kind(cfg, KernelKind::rwh, "rwh_step");
    Transition t{state, false};
    StepWorkspace ws;
    t.accepted = rwh_update(cfg, t.state, rng, ws);
    return t;
}

CoupledTransition coupled_rwm_rwh_step(TargetDensity const& target,
                                       KernelConfig const& cfg,
                                       ChainState const& x_rwm,
                                       ChainState const& x_rwh,
                                       Rng& rng)
{
    CoupledTransition t{x_rwm, x_rwh, false};
    StepWorkspace ws;
    t.decoupled = coupled_update(target, cfg, t.rwm, t.rwh, rng, ws);
    return t;
}

//---------------------------------------------------------------------------//
std::uint64_t pseudo_rwm_update(TargetDensity const& target,
                                KernelConfig const& cfg,
                                ChainState& state,
                                Rng& rng,
                                StepWorkspace& ws,
                                std::uint64_t trial_cap)
{
    for (std::uint64_t trials = 1; trials <= trial_cap; ++trials)
    {
        if (rwm_update(target, cfg, state, rng, ws))
        {
            return trials;
        }
    }
    throw StuckStateError(state, trial_cap);
}

JumpChainStep pseudo_rwm_step(TargetDensity const& target,
                              KernelConfig const& cfg,
                              ChainState const& state,
                              Rng& rng,
                              std::uint64_t trial_cap)
{
    if (cfg.kind != KernelKind::pseudo && cfg.kind != KernelKind::rwm)
    {
        throw std::invalid_argument("pseudo_rwm_step: needs an rwm or pseudo "
                                    "kernel config");
    }
    JumpChainStep step{state, 0};
    StepWorkspace ws;
    step.holding
        = pseudo_rwm_update(target, cfg, step.state, rng, ws, trial_cap);
    return step;
}

//---------------------------------------------------------------------------//
std::uint64_t sample_geometric(double p, Rng& rng)
{
    if (!(p > 0 && p <= 1))
    {
        throw std::invalid_argument("geometric: p must lie in (0, 1]");
    }
    double u = rng.uniform_open();
    if (p == 1)
    {
        return 1;
    }
    double k = std::floor(std::log(u) / std::log1p(-p));
    constexpr double cap = 1.8e19;
    return k >= cap ? std::numeric_limits<std::uint64_t>::max()
                    : 1 + static_cast<std::uint64_t>(k);
}

std::pair<std::uint64_t, std::uint64_t>
couple_geometrics(double p, double q, Rng& rng)
{
    if (!(q <= p))
    {
        throw std::invalid_argument(
            "couple_geometrics: requires q <= p (order the arguments)");
    }
    if (!(q > 0) || p > 1)
    {
        throw std::invalid_argument(
            "couple_geometrics: probabilities must lie in (0, 1]");
    }
    std::uint64_t x = sample_geometric(p, rng);
    bool keep = rng.uniform01() < q / p;
    std::uint64_t z = sample_geometric(q, rng);
    return {x, keep ? x : x + z};
}

//---------------------------------------------------------------------------//
}  // namespace rwmlab
