//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file kernels.test.cpp
//---------------------------------------------------------------------------//
#include "rwmlab/kernels.hpp"

#include <cmath>
#include <vector>

#include <doctest.h>

#include "rwmlab/diagnostics.hpp"
#include "stats.hpp"

using namespace rwmlab;

namespace
{
double long_run_acceptance(TargetDensity const& t, KernelConfig const& k,
                           std::uint64_t n, std::uint64_t seed)
{
    Rng rng(seed);
    auto s = sample_iid(t, k.d, rng);
    StepWorkspace ws;
    std::uint64_t acc = 0;
    for (std::uint64_t i = 0; i < n; ++i)
    {
        acc += kernel_update(t, k, s, rng, ws) ? 1 : 0;
    }
    return static_cast<double>(acc) / static_cast<double>(n);
}
}  // namespace

TEST_CASE("kernel config validation")
{
    CHECK_THROWS_AS((KernelConfig{0, 10}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((KernelConfig{5, 10}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((KernelConfig{4, 100, KernelKind::mwg, 0}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((KernelConfig{4, 100, KernelKind::mwg, 1.5}.validate()),
                    std::invalid_argument);
    CHECK_NOTHROW((KernelConfig{4, 100, KernelKind::mwg, 0.1}.validate()));
    CHECK(KernelConfig{4, 100, KernelKind::mwg, 0.1}.block_size() == 10);
    CHECK(KernelConfig{4, 100, KernelKind::mwg, 0.2}.block_size() == 20);
    CHECK(KernelConfig{4, 100, KernelKind::rwm, 0.2}.block_size() == 100);
}

TEST_CASE("rwm under the uniform target")
{
    auto u = normalize(GSpec::uniform());
    KernelConfig k{4, 10};
    Rng rng(3);

    SUBCASE("interior states always accept")
    {
        ChainState s(10, 0.5);
        for (int i = 0; i < 1000; ++i)
        {
            ChainState x(10, 0.5);
            auto t = rwm_step(u, k, x, rng);
            CHECK(t.accepted);
        }
        (void)s;
    }
    SUBCASE("exits from the cube are rejected")
    {
        // Near the corner: roughly half the proposals leave the cube.
        ChainState x(10, 0.5);
        x.x[0] = 0.01;
        int rejected = 0;
        for (int i = 0; i < 4000; ++i)
        {
            auto t = rwm_step(u, k, x, rng);
            if (t.accepted)
            {
                CHECK(t.state.x[0] > 0);
                CHECK(t.state.x[0] != x.x[0]);
            }
            else
            {
                CHECK(t.state == x);
                ++rejected;
            }
        }
        // P(reject) = 1 - omega(0.01) = 1/2 - 0.01/(2 * 0.4) = 0.4875
        CHECK(rejected / 4000.0 == doctest::Approx(0.4875).epsilon(0.1));
    }
}

TEST_CASE("rwm long-run acceptance matches the finite-d oracle")
{
    auto u = normalize(GSpec::uniform());
    // (1 - l/(2d))^d at d = 100, l = 4
    double oracle = 0.13261955589475294;
    double a = long_run_acceptance(u, {4, 100}, 500000, 21);
    CHECK(std::fabs(a - oracle) < 0.005);
}

TEST_CASE("mwg")
{
    auto u = normalize(GSpec::uniform());
    auto lin = normalize(GSpec::linear(2));

    SUBCASE("c = 1 reproduces rwm exactly")
    {
        Rng r1(8);
        Rng r2(8);
        auto x = sample_iid(lin, 20, r1);
        r2 = r1;
        KernelConfig full{4, 20, KernelKind::rwm};
        KernelConfig block{4, 20, KernelKind::mwg, 1.0};
        ChainState a = x;
        ChainState b = x;
        StepWorkspace wa;
        StepWorkspace wb;
        for (int i = 0; i < 2000; ++i)
        {
            CHECK(rwm_update(lin, full, a, r1, wa) == mwg_update(lin, block, b, r2, wb));
        }
        CHECK(a == b);
    }
    SUBCASE("c = 0.1 moves exactly 10 of 100 coordinates")
    {
        KernelConfig k{4, 100, KernelKind::mwg, 0.1};
        Rng rng(4);
        ChainState x(100, 0.5);
        for (int i = 0; i < 200; ++i)
        {
            auto t = mwg_step(u, k, x, rng);
            REQUIRE(t.accepted);
            int moved = 0;
            for (std::size_t j = 0; j < 100; ++j)
            {
                moved += t.state.x[j] != x.x[j] ? 1 : 0;
            }
            CHECK(moved == 10);
        }
    }
    SUBCASE("optimal block scaling accepts about exp(-2)")
    {
        // d = 200, c = 0.2, l = 4 / c = 20: finite-d rate (1 - sigma/2)^(c d)
        KernelConfig k{20, 200, KernelKind::mwg, 0.2};
        double finite = std::pow(1 - 0.05, 40);
        double a = long_run_acceptance(u, k, 400000, 31);
        CHECK(std::fabs(a - finite) < 0.004);
        CHECK(std::fabs(a - std::exp(-2.0)) < 0.012);
    }
}

TEST_CASE("rwh")
{
    auto u = normalize(GSpec::uniform());
    Rng rng(6);

    SUBCASE("interior states always accept")
    {
        KernelConfig k{4, 50, KernelKind::rwh};
        ChainState x(50, 0.3);
        for (int i = 0; i < 500; ++i)
        {
            CHECK(rwh_step(k, x, rng).accepted);
        }
    }
    SUBCASE("identical to rwm under the uniform target")
    {
        KernelConfig k{4, 30};
        Rng r1(17);
        auto x = sample_iid(u, 30, r1);
        Rng r2 = r1;
        ChainState a = x;
        ChainState b = x;
        StepWorkspace wa;
        StepWorkspace wb;
        for (int i = 0; i < 5000; ++i)
        {
            rwm_update(u, k, a, r1, wa);
            rwh_update(k, b, r2, wb);
        }
        CHECK(a == b);
    }
    SUBCASE("one dimension at sigma/2 accepts with probability 0.75")
    {
        KernelConfig k{0.4, 1, KernelKind::rwh};
        ChainState x({0.2});
        int acc = 0;
        int const n = 200000;
        for (int i = 0; i < n; ++i)
        {
            acc += rwh_step(k, x, rng).accepted ? 1 : 0;
        }
        CHECK(acc / double(n) == doctest::Approx(0.75).epsilon(0.01));
    }
}

TEST_CASE("coupled rwm and rwh")
{
    SUBCASE("uniform target never decouples")
    {
        auto u = normalize(GSpec::uniform());
        KernelConfig k{4, 50};
        Rng rng(2);
        auto x = sample_iid(u, 50, rng);
        ChainState w = x;
        StepWorkspace ws;
        for (int i = 0; i < 20000; ++i)
        {
            CHECK_FALSE(coupled_update(u, k, x, w, rng, ws));
        }
        CHECK(x == w);
    }
    SUBCASE("proposals leaving the cube keep equal states equal")
    {
        auto lin = normalize(GSpec::linear(2));
        KernelConfig k{0.4, 1};
        Rng rng(9);
        for (int i = 0; i < 2000; ++i)
        {
            ChainState x({1e-3});
            auto t = coupled_rwm_rwh_step(lin, k, x, x, rng);
            if (!(t.rwh.x[0] != x.x[0]))
            {
                CHECK(t.rwm == x);
            }
            CHECK((t.rwm == t.rwh) != t.decoupled);
        }
    }
    SUBCASE("decoupling frequency falls with dimension")
    {
        auto lin = normalize(GSpec::linear(2));
        auto freq = [&](std::size_t d) {
            KernelConfig k{4, d};
            Rng rng(100 + d);
            auto x = sample_iid(lin, d, rng);
            ChainState w = x;
            StepWorkspace ws;
            int n = 0;
            for (int i = 0; i < 100000; ++i)
            {
                if (coupled_update(lin, k, x, w, rng, ws))
                {
                    ++n;
                    w = x;
                }
            }
            return n / 1e5;
        };
        double f50 = freq(50);
        double f200 = freq(200);
        MESSAGE("decoupling frequency d=50: " << f50 << ", d=200: " << f200);
        CHECK(f200 < f50);
    }
}

TEST_CASE("jump chain")
{
    auto u = normalize(GSpec::uniform());
    Rng rng(12);

    SUBCASE("interior states hold for one step")
    {
        KernelConfig k{4, 20};
        ChainState x(20, 0.5);
        for (int i = 0; i < 500; ++i)
        {
            CHECK(pseudo_rwm_step(u, k, x, rng).holding == 1);
        }
    }
    SUBCASE("mean holding at sigma/2 in one dimension is 4/3")
    {
        KernelConfig k{0.4, 1};
        ChainState x({0.2});
        double sum = 0;
        int const n = 200000;
        for (int i = 0; i < n; ++i)
        {
            sum += static_cast<double>(pseudo_rwm_step(u, k, x, rng).holding);
        }
        CHECK(sum / n == doctest::Approx(4.0 / 3).epsilon(0.01));
    }
    SUBCASE("expanded jump chain has the rwm marginal")
    {
        // Expand each jump by its holding time and compare the first
        // coordinate at iteration T with plain rwm at iteration T.
        auto lin = normalize(GSpec::linear(2));
        KernelConfig k{1.2, 3};
        std::uint64_t const horizon = 25;
        std::vector<double> from_jumps;
        std::vector<double> from_rwm;
        StepWorkspace ws;
        for (int rep = 0; rep < 4000; ++rep)
        {
            ChainState start({0.05, 0.5, 0.9});
            Rng ra(1000 + rep);
            ChainState s = start;
            for (std::uint64_t t = 0; t < horizon; ++t)
            {
                rwm_update(lin, k, s, ra, ws);
            }
            from_rwm.push_back(s.x[0]);

            Rng rb = Rng(1000 + rep).split(77);
            ChainState j = start;
            ChainState at_horizon = start;
            std::uint64_t clock = 0;
            while (clock < horizon)
            {
                auto step = pseudo_rwm_step(lin, k, j, rb);
                clock += step.holding;
                if (clock <= horizon)
                {
                    j = step.state;
                }
            }
            from_jumps.push_back(j.x[0]);
            (void)at_horizon;
        }
        CHECK(test::ks2_pvalue(from_rwm, from_jumps) > 0.01);
    }
    SUBCASE("trial cap raises a stuck-state error")
    {
        auto lin = normalize(GSpec::linear(50));
        KernelConfig k{0.4, 1};
        ChainState x({1e-9});
        CHECK_THROWS_AS(pseudo_rwm_step(lin, k, x, rng, 1), StuckStateError);
    }
}

TEST_CASE("geometric coupling")
{
    Rng rng(44);
    CHECK(couple_geometrics(1, 1, rng) == std::pair<std::uint64_t, std::uint64_t>{1, 1});
    CHECK_THROWS_AS(couple_geometrics(0.25, 0.5, rng), std::invalid_argument);
    CHECK_THROWS_AS(couple_geometrics(0.5, 0, rng), std::invalid_argument);

    int const n = 1000000;
    int differ = 0;
    std::vector<double> hx(12, 0);
    std::vector<double> hy(20, 0);
    for (int i = 0; i < n; ++i)
    {
        auto [x, y] = couple_geometrics(0.5, 0.25, rng);
        REQUIRE(y >= x);
        differ += x != y ? 1 : 0;
        hx[std::min<std::uint64_t>(x, hx.size()) - 1] += 1;
        hy[std::min<std::uint64_t>(y, hy.size()) - 1] += 1;
    }
    CHECK(differ / double(n) == doctest::Approx(0.5).epsilon(0.005));

    auto expected = [&](double p, std::size_t bins) {
        std::vector<double> e(bins);
        for (std::size_t k = 0; k + 1 < bins; ++k)
        {
            e[k] = n * p * std::pow(1 - p, static_cast<double>(k));
        }
        e[bins - 1] = n * std::pow(1 - p, static_cast<double>(bins - 1));
        return e;
    };
    CHECK(test::chi_square_pvalue(hx, expected(0.5, hx.size())) > 0.01);
    CHECK(test::chi_square_pvalue(hy, expected(0.25, hy.size())) > 0.01);
}

TEST_CASE("acceptance probability lower bound")
{
    // For stationary linear-target states, J_d(x) >= exp(-l g*) 2^(-b_d^l).
    auto lin = normalize(GSpec::linear(2));
    KernelConfig k{4, 100};
    Rng rng(55);
    for (int i = 0; i < 1000; ++i)
    {
        auto x = sample_iid(lin, 100, rng);
        Rng mc = rng.split(static_cast<std::uint64_t>(i));
        auto j = estimate_J(lin, k, x, 1000, mc);
        double bound = acceptance_lower_bound(lin, k, x);
        REQUIRE(j.value + 3 * j.std_error >= bound);
    }
}
