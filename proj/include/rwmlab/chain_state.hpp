//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rwmlab/chain_state.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rwmlab
{
//---------------------------------------------------------------------------//
//! Current position x^d of a chain; one entry per coordinate.
struct ChainState
{
    std::vector<double> x;

    ChainState() = default;
    explicit ChainState(std::vector<double> values) : x(std::move(values)) {}
    ChainState(std::initializer_list<double> values) : x(values) {}
    ChainState(std::size_t d, double value) : x(d, value) {}

    std::size_t dim() const noexcept { return x.size(); }
    std::span<double const> values() const noexcept { return x; }

    bool operator==(ChainState const&) const = default;
};

//---------------------------------------------------------------------------//
}  // namespace rwmlab
