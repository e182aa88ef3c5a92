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

#ifndef SOSF_SPECFUN_HPP
#define SOSF_SPECFUN_HPP

#include <numbers>

// Special functions needed by the SOSF statistics. All functions are pure and thread-safe.
// Domain violations throw std::domain_error.
namespace sosf::specfun
{
    struct SpecFunResult
    {
        double value = 0.0;
        double est_abs_error = 0.0;
    };

    // Modified Bessel functions of the first kind, orders 0 and 1. Negative z follows the
    // parity I0(-z) = I0(z), I1(-z) = -I1(z).
    // The *_scaled variants return exp(-z) I_n(z) and never overflow.
    double bessel_i0(double z);
    double bessel_i1(double z);
    double bessel_i0_scaled(double z);
    double bessel_i1_scaled(double z);

    // Modified Bessel functions of the second kind, orders 0 and 1, for z > 0.
    // The *_scaled variants return exp(z) K_n(z). z == 0 is a pole and throws.
    double bessel_k0(double z);
    double bessel_k1(double z);
    double bessel_k0_scaled(double z);
    double bessel_k1_scaled(double z);

    // Exponential integral E1(x) = int_x^inf e^-t / t dt for x > 0, and exp(x) E1(x).
    double exp_integral_e1(double x);
    double exp_integral_e1_scaled(double x);

    // First-order Marcum Q function for a, b >= 0. Absolute error below 1e-10 for
    // arguments up to 1e3; see the implementation notes in specfun.cpp.
    double marcum_q1(double a, double b);

    // Generalized incomplete gamma function
    //   Gamma(a, x, b) = int_x^inf t^(a-1) exp(-t) exp(-b/t) dt
    // for a in {0, 1}, x >= 0 and b >= 0. Gamma(0, 0, 0) diverges and throws.
    double gen_inc_gamma(int a, double x, double b);

    // exp(x) Gamma(a, x, b), the form every SOSF closed form actually needs; stays finite
    // for arguments where exp(-x) underflows.
    double gen_inc_gamma_scaled(int a, double x, double b);
    SpecFunResult gen_inc_gamma_scaled_ex(int a, double x, double b);

    constexpr double euler_gamma() noexcept { return std::numbers::egamma; }
} // namespace sosf::specfun

#endif
