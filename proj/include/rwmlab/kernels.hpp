//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rwmlab/kernels.hpp
//! Random-walk Metropolis, Metropolis-within-Gibbs, the hypercube walk and
//! the jump-chain construction, all with U[-1,1] proposal increments.
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chain_state.hpp"
#include "rng.hpp"
#include "target_model.hpp"

namespace rwmlab
{
//---------------------------------------------------------------------------//
enum class KernelKind
{
    rwm,  //!< full-dimensional random-walk Metropolis
    mwg,  //!< Metropolis-within-Gibbs on a random block of ceil(c d) coords
    rwh,  //!< random walk on the hypercube: accept iff inside (0,1)^d
    pseudo,  //!< jump chain of RWM with geometric holding times
};

std::string_view to_string(KernelKind k);
KernelKind kernel_kind_from_string(std::string_view name);

//---------------------------------------------------------------------------//
struct KernelConfig
{
    double l{1};
    std::size_t d{1};
    KernelKind kind{KernelKind::rwm};
    double c{1};  //!< update fraction, mwg only

    //! Proposal scale sigma_d = l / d.
    double sigma() const noexcept { return l / static_cast<double>(d); }

    //! Number of coordinates moved per proposal.
    std::size_t block_size() const noexcept;

    //! Throws std::invalid_argument on l <= 0, sigma >= 1/2, or bad c.
    void validate() const;
};

//---------------------------------------------------------------------------//
//! Accepted jump-chain position and the number of trials spent before it.
struct JumpChainStep
{
    ChainState state;
    std::uint64_t holding{1};
};

struct Transition
{
    ChainState state;
    bool accepted{false};
};

struct CoupledTransition
{
    ChainState rwm;
    ChainState rwh;
    bool decoupled{false};
};

//---------------------------------------------------------------------------//
//! A jump-chain step exceeded its trial cap; carries the offending state.
class StuckStateError : public std::runtime_error
{
  public:
    StuckStateError(ChainState state, std::uint64_t trials);

    ChainState const& state() const noexcept { return state_; }
    std::uint64_t trials() const noexcept { return trials_; }

  private:
    ChainState state_;
    std::uint64_t trials_;
};

//---------------------------------------------------------------------------//
/*!
 * Scratch buffers reused across in-place updates.
 */
struct StepWorkspace
{
    std::vector<double> proposal;
    std::vector<double> increment;
    std::vector<std::size_t> index;
};

//---------------------------------------------------------------------------//
// In-place updates. RNG consumption per proposal is fixed: one word per moved
// coordinate (in coordinate order for rwm/rwh, in selection order for mwg),
// then one word for the acceptance uniform. Proposals that leave the support
// skip the remaining words so the stream position does not depend on where
// the exit happened.

bool rwm_update(TargetDensity const& target,
                KernelConfig const& cfg,
                ChainState& state,
                Rng& rng,
                StepWorkspace& ws);

//! Block selection consumes `block_size()` words first (partial
//! Fisher-Yates over an identity permutation); skipped when the block is
//! the full coordinate set, which makes c = 1 identical to rwm_update.
bool mwg_update(TargetDensity const& target,
                KernelConfig const& cfg,
                ChainState& state,
                Rng& rng,
                StepWorkspace& ws);

bool rwh_update(KernelConfig const& cfg,
                ChainState& state,
                Rng& rng,
                StepWorkspace& ws);

//! Dispatch on cfg.kind (rwm, mwg or rwh).
bool kernel_update(TargetDensity const& target,
                   KernelConfig const& cfg,
                   ChainState& state,
                   Rng& rng,
                   StepWorkspace& ws);

//! Shared increment and acceptance uniform for an RWM and an RWH chain.
bool coupled_update(TargetDensity const& target,
                    KernelConfig const& cfg,
                    ChainState& x_rwm,
                    ChainState& x_rwh,
                    Rng& rng,
                    StepWorkspace& ws);

//---------------------------------------------------------------------------//
// Value-returning forms.

Transition rwm_step(TargetDensity const& target,
                    KernelConfig const& cfg,
                    ChainState const& state,
                    Rng& rng);

Transition mwg_step(TargetDensity const& target,
                    KernelConfig const& cfg,
                    ChainState const& state,
                    Rng& rng);

Transition rwh_step(KernelConfig const& cfg, ChainState const& state, Rng& rng);

CoupledTransition coupled_rwm_rwh_step(TargetDensity const& target,
                                       KernelConfig const& cfg,
                                       ChainState const& x_rwm,
                                       ChainState const& x_rwh,
                                       Rng& rng);

inline constexpr std::uint64_t default_trial_cap = 1'000'000'000;

//! Repeats RWM proposals until one is accepted.
JumpChainStep pseudo_rwm_step(TargetDensity const& target,
                              KernelConfig const& cfg,
                              ChainState const& state,
                              Rng& rng,
                              std::uint64_t trial_cap = default_trial_cap);

//! In-place jump: returns the holding time of the state being left.
std::uint64_t pseudo_rwm_update(TargetDensity const& target,
                                KernelConfig const& cfg,
                                ChainState& state,
                                Rng& rng,
                                StepWorkspace& ws,
                                std::uint64_t trial_cap = default_trial_cap);

//---------------------------------------------------------------------------//
//! Geometric on {1, 2, ...} with success probability p.
std::uint64_t sample_geometric(double p, Rng& rng);

//! Geometric(p) and Geometric(q) with P(X != Y) = (p - q) / p, q <= p.
std::pair<std::uint64_t, std::uint64_t>
couple_geometrics(double p, double q, Rng& rng);

//---------------------------------------------------------------------------//
}  // namespace rwmlab
