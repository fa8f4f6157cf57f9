//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rwmlab/rng.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace rwmlab
{
//---------------------------------------------------------------------------//
//! SplitMix64 finalizer; used for key derivation only.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

//---------------------------------------------------------------------------//
/*!
 * Counter-based Philox4x32-10 generator producing 64-bit words.
 *
 * The state is a 64-bit key, a 64-bit stream id and a 64-bit position; the
 * word at a given position is a pure function of those three, so any stream
 * can be reconstructed or skipped ahead in O(1).
 *
 * Stream splitting used by the experiment harness:
 *   key    = mix64(seed)
 *   stream = (combination << 32) | chain
 * Sub-streams inside one chain (replicas, oracle draws) come from split(i),
 * which rekeys with mix64(key ^ mix64(i + 1)) and keeps the stream id.
 */
class Rng
{
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0) noexcept
        : key_(mix64(seed)), stream_(stream)
    {
    }

    //! Stream for chain `chain` of parameter combination `combination`.
    static Rng for_chain(std::uint64_t seed,
                         std::uint64_t combination,
                         std::uint64_t chain) noexcept
    {
        return Rng(seed, (combination << 32) | (chain & 0xFFFFFFFFull));
    }

    //! Raw Philox key (no seed mixing); for known-answer checks.
    static Rng with_key(std::uint64_t key, std::uint64_t stream) noexcept
    {
        Rng rng;
        rng.key_ = key;
        rng.stream_ = stream;
        return rng;
    }

    //! Independent child stream.
    [[nodiscard]] Rng split(std::uint64_t sub) const noexcept
    {
        Rng child;
        child.key_ = mix64(key_ ^ mix64(sub + 1));
        child.stream_ = stream_;
        return child;
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept
    {
        if ((pos_ & 1u) == 0)
        {
            fill(pos_ >> 1);
        }
        return buf_[pos_++ & 1u];
    }

    //! Skip the next n words.
    void discard(std::uint64_t n) noexcept
    {
        pos_ += n;
        if (pos_ & 1u)
        {
            fill(pos_ >> 1);
        }
    }

    std::uint64_t position() const noexcept { return pos_; }
    std::uint64_t stream() const noexcept { return stream_; }

    //! Uniform on [0, 1) with 53 random bits.
    double uniform01() noexcept
    {
        return static_cast<double>((*this)() >> 11) * 0x1p-53;
    }

    //! Uniform on the open interval (0, 1).
    double uniform_open() noexcept
    {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1p-53;
    }

    //! Uniform on the open interval (-1, 1), symmetric about zero.
    double uniform_pm1() noexcept
    {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1p-52 - 1.0;
    }

    //! Unbiased integer in [0, n) (Lemire's multiply-and-reject).
    std::uint64_t uniform_index(std::uint64_t n) noexcept
    {
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n)
        {
            std::uint64_t threshold = (0 - n) % n;
            while (low < threshold)
            {
                m = static_cast<unsigned __int128>((*this)()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    //! One Philox4x32-10 block: counter words in, output words out.
    static std::array<std::uint32_t, 4>
    philox_block(std::array<std::uint32_t, 4> ctr, std::uint64_t key) noexcept
    {
        std::uint32_t k0 = static_cast<std::uint32_t>(key);
        std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
        for (int round = 0; round < 10; ++round)
        {
            std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ k0,
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ k1,
                   static_cast<std::uint32_t>(p0)};
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        return ctr;
    }

  private:
    void fill(std::uint64_t block) noexcept
    {
        auto out = philox_block({static_cast<std::uint32_t>(block),
                                 static_cast<std::uint32_t>(block >> 32),
                                 static_cast<std::uint32_t>(stream_),
                                 static_cast<std::uint32_t>(stream_ >> 32)},
                                key_);
        buf_[0] = (std::uint64_t{out[1]} << 32) | out[0];
        buf_[1] = (std::uint64_t{out[3]} << 32) | out[2];
    }

    std::uint64_t key_{0};
    std::uint64_t stream_{0};
    std::uint64_t pos_{0};
    std::array<std::uint64_t, 2> buf_{};
};

//---------------------------------------------------------------------------//
}  // namespace rwmlab
