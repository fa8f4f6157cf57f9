//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rwmlab/quadrature.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <stdexcept>

namespace rwmlab
{
namespace detail
{
template<class F>
double simpson_step(F const& f,
                    double a,
                    double fa,
                    double m,
                    double fm,
                    double b,
                    double fb,
                    double whole,
                    double tol,
                    int depth,
                    int min_depth)
{
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0)
    {
        throw std::runtime_error("adaptive Simpson: recursion limit reached");
    }
    if (min_depth <= 0 && std::fabs(delta) <= 15 * tol)
    {
        return left + right + delta / 15;
    }
    return simpson_step(f, a, fa, lm, flm, m, fm, left, tol / 2, depth - 1,
                        min_depth - 1)
           + simpson_step(f, m, fm, rm, frm, b, fb, right, tol / 2, depth - 1,
                          min_depth - 1);
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Adaptive Simpson quadrature of f over [a, b] to an absolute tolerance.
 *
 * The interval is bisected at least `min_depth` times before the error
 * estimate is trusted, so narrow features are not skipped by the first
 * coarse estimate.
 */
template<class F>
double integrate_simpson(F const& f,
                         double a,
                         double b,
                         double abs_tol = 1e-10,
                         int min_depth = 4,
                         int max_depth = 60)
{
    double fa = f(a);
    double fb = f(b);
    double m = 0.5 * (a + b);
    double fm = f(m);
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return detail::simpson_step(
        f, a, fa, m, fm, b, fb, whole, abs_tol, max_depth, min_depth);
}

//---------------------------------------------------------------------------//
}  // namespace rwmlab
