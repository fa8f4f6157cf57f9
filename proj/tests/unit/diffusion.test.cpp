//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file diffusion.test.cpp
//---------------------------------------------------------------------------//
#include "rwmlab/diffusion.hpp"

#include <cmath>
#include <vector>

#include <doctest.h>

#include "rwmlab/diagnostics.hpp"
#include "rwmlab/theory.hpp"
#include "stats.hpp"

using namespace rwmlab;

namespace
{
//! First lag (in time units) at which the path autocorrelation drops below 1/e.
double efolding_time(DiffusionPath const& p)
{
    double dt = p.times[1] - p.times[0];
    auto rho = autocorrelation(p.values, p.values.size() / 50);
    for (std::size_t k = 1; k < rho.size(); ++k)
    {
        if (rho[k] < std::exp(-1.0))
        {
            double frac = (rho[k - 1] - std::exp(-1.0)) / (rho[k - 1] - rho[k]);
            return (static_cast<double>(k - 1) + frac) * dt;
        }
    }
    return std::nan("");
}
}  // namespace

TEST_CASE("reflection folds into the support")
{
    CHECK(reflect(0.3, Support::unit) == 0.3);
    CHECK(reflect(-0.2, Support::unit) == doctest::Approx(0.2));
    CHECK(reflect(1.25, Support::unit) == doctest::Approx(0.75));
    CHECK(reflect(2.25, Support::unit) == doctest::Approx(0.25));
    CHECK(reflect(-1.5, Support::unit) == doctest::Approx(0.5));
    CHECK(reflect(-3.0, Support::halfline) == 3.0);
}

TEST_CASE("config validation")
{
    auto u = normalize(GSpec::uniform());
    auto cfg = DiffusionConfig::for_target(u, 1, 1);
    CHECK(cfg.step == doctest::Approx(1e-4));
    cfg.step = 0.01;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = DiffusionConfig::for_target(u, 0, 1);
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    Rng rng(1);
    CHECK_THROWS_AS(simulate_reflected_langevin(
                        u, DiffusionConfig::for_target(u, 1, 1), 1.5, rng),
                    std::invalid_argument);

    DiffusionConfig bad = DiffusionConfig::for_target(u, 1, 1);
    bad.drift = [](double) { return std::nan(""); };
    CHECK_THROWS_AS(simulate_reflected_langevin(u, bad, 0.5, rng), std::domain_error);
}

TEST_CASE("zero drift gives Brownian increments with variance phi t")
{
    auto u = normalize(GSpec::uniform());
    double speed = 0.7217881772619343;
    double t = 0.002;
    DiffusionConfig cfg = DiffusionConfig::for_target(u, speed, t);
    cfg.step = t / 1000;
    cfg.record_stride = 1000;
    Rng rng(8);
    double s2 = 0;
    double s4 = 0;
    int const n = 10000;
    for (int i = 0; i < n; ++i)
    {
        auto path = simulate_reflected_langevin(u, cfg, 0.5, rng);
        double dv = path.values.back() - 0.5;
        s2 += dv * dv;
        s4 += dv * dv * dv * dv;
    }
    double var = s2 / n;
    double se = std::sqrt((s4 / n - var * var) / n);
    CHECK(std::fabs(var - speed * t) < 3 * se);
}

TEST_CASE("long-run marginal is the target")
{
    for (auto spec : {GSpec::uniform(), GSpec::linear(2)})
    {
        auto target = normalize(spec);
        double speed = phi(4 / target.fstar(), target.fstar());
        auto cfg = DiffusionConfig::for_target(target, speed, 50 / speed);
        cfg.step = 1e-3 / speed;
        cfg.record_stride = 50000;
        Rng rng(19);
        std::vector<double> ends;
        for (int i = 0; i < 400; ++i)
        {
            ends.push_back(
                simulate_reflected_langevin(target, cfg, 0.9, rng).values.back());
        }
        CHECK(test::ks_pvalue(ends, [&](double x) { return target.cdf(x); }) > 0.01);
    }
}

TEST_CASE("half-line reflected diffusion has exponential marginal")
{
    auto target = normalize(GSpec::linear(1, Support::halfline));
    double speed = phi_halfline(8, 1);
    auto cfg = DiffusionConfig::for_target(target, speed, 4000 / speed);
    cfg.step = 2e-3 / speed;
    cfg.record_stride = 50;
    Rng rng(23);
    auto path = simulate_reflected_langevin(target, cfg, 1.0, rng);
    double mean = 0;
    for (double v : path.values)
    {
        mean += v;
    }
    mean /= static_cast<double>(path.values.size());
    CHECK(mean == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("speed is a time change")
{
    auto u = normalize(GSpec::uniform());
    auto efold = [&](double speed, std::uint64_t seed) {
        auto cfg = DiffusionConfig::for_target(u, speed, 400 / speed);
        cfg.step = 2e-4 / speed;
        cfg.record_stride = 20;
        Rng rng(seed);
        return efolding_time(simulate_reflected_langevin(u, cfg, 0.5, rng));
    };
    double slow = efold(1.0, 5);
    double fast = efold(2.0, 6);
    MESSAGE("e-folding times: " << slow << " and " << fast);
    CHECK(slow / fast == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("reflected Brownian motion autocorrelation")
{
    CHECK(reflected_bm_autocorr(1, 0) == 1.0);
    CHECK(reflected_bm_autocorr(1, 1e-10) == doctest::Approx(1.0).epsilon(1e-6));
    double speed = 0.7217881772619343;
    CHECK(reflected_bm_autocorr(speed, 0.1)
          == doctest::Approx(0.690703244813545).epsilon(1e-12));
    double prev = 1;
    for (double t = 0.01; t < 2; t += 0.05)
    {
        double r = reflected_bm_autocorr(speed, t);
        CHECK(r < prev);
        prev = r;
    }
    CHECK_THROWS_AS(reflected_bm_autocorr(0, 1), std::invalid_argument);
}

TEST_CASE("chain against diffusion autocorrelation")
{
    auto u = normalize(GSpec::uniform());
    std::size_t const d = 10;
    KernelConfig k{4, d};
    Rng rng(33);
    auto s = sample_iid(u, d, rng);
    StepWorkspace ws;
    std::vector<double> series;
    for (int i = 0; i < 400000; ++i)
    {
        rwm_update(u, k, s, rng, ws);
        series.push_back(s.x[0]);
    }
    std::vector<double> grid{0.0, 0.1};
    Rng ref(1);
    auto rows = chain_vs_diffusion_autocorr(series, d, 4, u, grid, ref);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].chain_rho == 1.0);
    CHECK(rows[0].lag == 0);
    CHECK(rows[1].lag == 10);
    CHECK(rows[1].diffusion_rho == doctest::Approx(0.690703244813545));
    CHECK(std::fabs(rows[1].chain_rho - rows[1].diffusion_rho) < 0.1);

    std::vector<double> too_short(100, 0.5);
    CHECK_THROWS_AS(chain_vs_diffusion_autocorr(too_short, d, 4, u, grid, ref),
                    std::invalid_argument);
}
