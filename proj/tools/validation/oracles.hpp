// SPDX-License-Identifier: Apache-2.0
//
// sosf - statistics of second order scattering fading channels
// Copyright (C) 2026 The sosf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SOSF_VALIDATION_ORACLES_HPP
#define SOSF_VALIDATION_ORACLES_HPP

// Reference values computed by routes that share no code path with sosf::specfun:
// integral representations on trapezoid rules, brute-force series in long double, and
// changes of variable different from the ones used in the library.
namespace sosf::oracle
{
    // e^-z I_k(z) = (1/pi) int_0^pi exp(z (cos t - 1)) cos(k t) dt, periodic trapezoid rule.
    double bessel_i_scaled(int k, double z);

    // e^z K_nu(z) = int_0^inf exp(-z (cosh t - 1)) cosh(nu t) dt, trapezoid rule on the real line.
    double bessel_k_scaled(int nu, double z);

    // e^x E1(x) = int_0^inf exp(-x (e^v - 1)) dv.
    double exp_integral_e1_scaled(double x);

    // Q1(a, b) = e^{-(a^2+b^2)/2} sum_k (a/b)^k I_k(ab), each I_k from its power series
    // in long double (the complementary sum is used for a >= b). Meant for a b <= ~200.
    double marcum_q1_series(double a, double b);

    // Q1(a, b) = int_b^inf x exp(-(x - a)^2 / 2) [e^{-ax} I0(ax)] dx, with the scaled I0
    // from bessel_i_scaled().
    double marcum_q1_integral(double a, double b);

    // e^x Gamma(a, x, b) through t = x e^v:
    //   int_0^inf (x e^v)^a exp(-x (e^v - 1) - (b / x) e^-v) dv,  x > 0.
    double gen_inc_gamma_scaled(int a, double x, double b);

    // int_0^b Gamma(0, x, z) dz with the library's Gamma, and the right-hand side
    // e^-x - Gamma(1, x, b) of the identity it should equal.
    double gamma_identity_lhs(double x, double b);
    double gamma_identity_rhs(double x, double b);
} // namespace sosf::oracle

#endif
