//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file target_model.test.cpp
//---------------------------------------------------------------------------//
#include "rwmlab/target_model.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

using namespace rwmlab;

namespace
{
// Reference values from 30-digit quadrature of the closed forms.
constexpr double linear2_z = 0.43233235838169365;
constexpr double linear2_fstar = 1.3130352854993315;
constexpr double linear2_mean = 0.3434823572503343;
constexpr double linear2_var = 0.06898458475842238;

double sample_mean(TargetDensity const& t, int n, std::uint64_t seed)
{
    Rng rng(seed);
    double sum = 0;
    for (int i = 0; i < n; ++i)
    {
        sum += t.sample(rng);
    }
    return sum / n;
}
}  // namespace

TEST_CASE("uniform target constants")
{
    auto t = normalize(GSpec::uniform());
    CHECK(t.normalizer() == 1.0);
    CHECK(t.fstar() == 1.0);
    CHECK(t.gstar() == 0.0);
    CHECK(t.e_gprime_sq() == 0.0);
    CHECK(t.mean() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t.variance() == doctest::Approx(1.0 / 12).epsilon(1e-12));
    CHECK(t.cdf(0.3) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("linear target on the unit interval")
{
    auto t = normalize(GSpec::linear(2));
    CHECK(t.normalizer() == doctest::Approx(linear2_z).epsilon(1e-12));
    CHECK(std::fabs(t.fstar() - linear2_fstar) < 1e-12);
    CHECK(t.gstar() == 2.0);
    CHECK(t.e_gprime_sq() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(t.mean() == doctest::Approx(linear2_mean).epsilon(1e-10));
    CHECK(t.variance() == doctest::Approx(linear2_var).epsilon(1e-10));
    CHECK(t.cdf(0.3) == doctest::Approx(0.5218073030606149).epsilon(1e-10));
    for (double u : {1e-6, 0.1, 0.5, 0.9, 1 - 1e-6})
    {
        CHECK(t.cdf(t.quantile(u)) == doctest::Approx(u).epsilon(1e-8));
    }
}

TEST_CASE("standard exponential on the half-line")
{
    auto t = normalize(GSpec::linear(1, Support::halfline));
    CHECK(t.normalizer() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(t.fstar() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(t.gstar() == 1.0);
    CHECK(t.mean() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(t.variance() == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(t.cdf(2.0) == doctest::Approx(1 - std::exp(-2.0)).epsilon(1e-10));
    CHECK(t.quantile(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-8));
}

TEST_CASE("quadratic and polynomial targets")
{
    auto q = normalize(GSpec::quadratic(0.3, 0.2));
    CHECK(q.normalizer() == doctest::Approx(0.46771686807090100).epsilon(1e-10));
    CHECK(q.fstar() == doctest::Approx(0.34939937041888672).epsilon(1e-10));
    CHECK(q.gstar() == doctest::Approx(0.7 / 0.04).epsilon(1e-12));
    CHECK(q.mean() == doctest::Approx(0.32757779316963052).epsilon(1e-10));
    CHECK(q.e_gprime_sq() == doctest::Approx(19.712239885731647).epsilon(1e-9));

    auto p = normalize(GSpec::polynomial({0.3, 1.0, -2.0, 0.5}));
    CHECK(p.normalizer() == doctest::Approx(1.3156070718033512).epsilon(1e-10));
    CHECK(p.fstar() == doctest::Approx(0.82417828511723460).epsilon(1e-10));
    CHECK(p.gstar() == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(p.mean() == doctest::Approx(0.45786715396407672).epsilon(1e-10));
    CHECK(p.variance() == doctest::Approx(0.07552788899424650).epsilon(1e-9));
    CHECK(p.e_gprime_sq() == doctest::Approx(0.66688114690123131).epsilon(1e-9));
}

TEST_CASE("g derivative matches finite differences")
{
    for (auto const& spec : {GSpec::linear(2), GSpec::quadratic(0.5, 1),
                             GSpec::polynomial({0.3, 1.0, -2.0, 0.5})})
    {
        for (double x : {0.1, 0.37, 0.8})
        {
            double h = 1e-6;
            double fd = (spec.g(x + h) - spec.g(x - h)) / (2 * h);
            CHECK(spec.gprime(x) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("normalize is deterministic")
{
    auto spec = GSpec::polynomial({0.3, 1.0, -2.0, 0.5});
    CHECK(normalize(spec) == normalize(spec));
}

TEST_CASE("invalid targets are rejected")
{
    CHECK_THROWS_AS(normalize({Family::linear, {}, Support::unit}), InvalidTarget);
    CHECK_THROWS_AS(normalize(GSpec::linear(-1, Support::halfline)), InvalidTarget);
    CHECK_THROWS_AS(normalize(GSpec::quadratic(0.5, 0)), InvalidTarget);
    CHECK_THROWS_AS(normalize({Family::uniform, {}, Support::halfline}),
                    InvalidTarget);
    CHECK_THROWS_AS(
        normalize(GSpec::linear(std::numeric_limits<double>::quiet_NaN())),
        InvalidTarget);
    CHECK_THROWS_AS(normalize(GSpec::polynomial({0, 0, -1}, Support::halfline)),
                    InvalidTarget);
}

TEST_CASE("log density ratio")
{
    auto u = normalize(GSpec::uniform());
    CHECK(log_density_ratio(u, ChainState({0.2, 0.7}), ChainState({0.9, 0.1}))
          == 0.0);
    CHECK(log_density_ratio(u, ChainState({0.2, 0.7}), ChainState({1.2, 0.1}))
          == -std::numeric_limits<double>::infinity());

    auto lin = normalize(GSpec::linear(2));
    CHECK(log_density_ratio(lin, ChainState({0.5, 0.5}), ChainState({0.6, 0.4}))
          == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(log_density_ratio(lin, ChainState({0.5, 0.5}), ChainState({0.6, 0.5}))
          == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(log_density_ratio(lin, ChainState({0.5}), ChainState({1.0}))
          == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(
        log_density_ratio(lin, ChainState({0.5}), ChainState({0.5, 0.5})),
        std::invalid_argument);
}

TEST_CASE("iid sampling")
{
    Rng rng(5);
    auto u = normalize(GSpec::uniform());
    auto s = sample_iid(u, 3, rng);
    CHECK(s.dim() == 3);
    for (double x : s.x)
    {
        CHECK(x > 0);
        CHECK(x < 1);
    }

    // 1e6 draws: standard error is sqrt(var / n) < 3e-4.
    auto lin = normalize(GSpec::linear(2));
    CHECK(std::fabs(sample_mean(lin, 1000000, 11) - linear2_mean) < 0.001);
    auto q = normalize(GSpec::quadratic(0.5, 1));
    CHECK(std::fabs(sample_mean(q, 1000000, 12) - 0.5) < 0.001);
    auto e = normalize(GSpec::linear(1, Support::halfline));
    CHECK(std::fabs(sample_mean(e, 1000000, 13) - 1.0) < 0.005);
}
