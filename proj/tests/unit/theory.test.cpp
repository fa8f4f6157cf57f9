//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file theory.test.cpp
//---------------------------------------------------------------------------//
#include "rwmlab/theory.hpp"

#include <cmath>

#include <doctest.h>

using namespace rwmlab;

TEST_CASE("speed and acceptance on the unit interval")
{
    // 16/3 exp(-2)
    CHECK(phi(4, 1) == doctest::Approx(0.7217881772619343).epsilon(1e-14));
    CHECK(phi(1e-9, 1) < 1e-17);
    for (double l : {1.0, 2.0, 3.0, 3.9, 4.1, 5.0, 6.0, 8.0})
    {
        CHECK(phi(4, 1) > phi(l, 1));
    }
    CHECK(aoar(4, 1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(optimal_l(1) == 4.0);
    CHECK(optimal_l(2) == 2.0);
    CHECK(aoar(optimal_l(1.3130352854993315), 1.3130352854993315)
          == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(phi(4, 0), std::invalid_argument);
}

TEST_CASE("half-line and block-update scaling")
{
    CHECK(aoar_halfline(8, 1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(optimal_l_halfline(1) == 8.0);
    CHECK(phi_halfline(8, 1) == doctest::Approx(2.8871527090477374).epsilon(1e-14));

    CHECK(phi_mwg(3, 1.3, 1) == doctest::Approx(phi(3, 1.3)).epsilon(1e-15));
    CHECK(phi_mwg(optimal_l_mwg(1, 0.2), 1, 0.2) / phi(4, 1)
          == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(optimal_l_mwg(1, 0.5) == 8.0);
    CHECK(aoar_mwg(optimal_l_mwg(2, 0.25), 2, 0.25)
          == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(phi_mwg(4, 1, 0), std::invalid_argument);

    auto p = predict_scaling(8, 1, Support::halfline);
    CHECK(p.l_opt == 8.0);
    CHECK(p.aoar == doctest::Approx(std::exp(-2.0)));
    auto q = predict_scaling(20, 1, Support::unit, 0.2);
    CHECK(q.l_opt == doctest::Approx(20.0));
}

TEST_CASE("boundary intensity")
{
    CHECK(lambda_intensity(0, 4, 1) == 0.0);
    CHECK(lambda_intensity(4, 4, 1) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(lambda_intensity(1, 4, 1) == doctest::Approx(1.125).epsilon(1e-15));
    CHECK(lambda_intensity(2, 4, 1) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK_THROWS_AS(lambda_intensity(5, 4, 1), std::invalid_argument);
}

TEST_CASE("inverse acceptance moment limits")
{
    auto [m1, m2] = omega_inv_moment_limits(4, 1);
    CHECK(m1 == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
    // exp(f* l (4 ln 2 - 3/2)) = exp(5.0903...)
    CHECK(m2 == doctest::Approx(162.4475026500064).epsilon(1e-12));
    auto [z1, z2] = omega_inv_moment_limits(1e-12, 1);
    CHECK(z1 == doctest::Approx(1.0));
    CHECK(z2 == doctest::Approx(1.0));
}

TEST_CASE("poisson sampler")
{
    Rng rng(3);
    for (double mean : {0.5, 4.0, 75.0})
    {
        double s = 0;
        double s2 = 0;
        int const n = 200000;
        for (int i = 0; i < n; ++i)
        {
            auto k = static_cast<double>(sample_poisson(mean, rng));
            s += k;
            s2 += k * k;
        }
        double m = s / n;
        CHECK(m == doctest::Approx(mean).epsilon(0.01));
        CHECK(s2 / n - m * m == doctest::Approx(mean).epsilon(0.03));
    }
    CHECK(sample_poisson(0, rng) == 0);
}

TEST_CASE("interior-discontinuity ESJD limit")
{
    Rng rng(77);
    auto boundary = InteriorDiscontinuitySpec::boundary_only(1, 1);

    auto e = esjd_limit_interior(4, boundary, 1000000, rng);
    double exact = 16.0 / 3 * std::exp(-2.0);
    CHECK(std::fabs(e.value - exact) < 3 * e.std_error);

    auto tiny = esjd_limit_interior(1e-4, boundary, 10000, rng);
    CHECK(tiny.value < 1e-8);

    // A continuous interior point contributes a ratio of one.
    InteriorDiscontinuitySpec flat{{{0, 0, 1}, {0.4, 1, 1}, {1, 1, 0}}};
    Rng r1(5);
    Rng r2(5);
    auto with_point = esjd_limit_interior(4, flat, 200000, r1);
    auto without = esjd_limit_interior(4, boundary, 200000, r2);
    CHECK(std::fabs(with_point.value - exact)
          < 3 * with_point.std_error + 1e-12);
    CHECK(std::fabs(without.value - exact) < 3 * without.std_error + 1e-12);

    CHECK_THROWS_AS(esjd_limit_interior(4, boundary, 10, rng),
                    std::invalid_argument);
    InteriorDiscontinuitySpec bad{{{0, 0, 1}, {0.4, 0, 1}, {1, 1, 0}}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
