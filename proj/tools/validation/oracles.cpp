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

#include "oracles.hpp"

#include "sosf/quadrature.hpp"
#include "sosf/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sosf::oracle
{
    namespace
    {
        quad::QuadratureSpec tight() { return quad::QuadratureSpec::adaptive_finite(1e-14, 1e-300, 200000); }

        double integrate(const quad::Integrand &f, double lo, double hi, const std::vector<double> &breaks,
                         const quad::QuadratureSpec &spec = tight())
        {
            const auto r = quad::integrate_finite_adaptive(f, lo, hi, breaks, spec);
            return r.value;
        }

        // I_k(z) by its power series, all in long double.
        long double bessel_i_series(int k, long double z)
        {
            const long double h = z / 2;
            long double term = 1.0L;
            for (int j = 1; j <= k; ++j)
                term *= h / j;
            long double sum = term;
            const long double h2 = h * h;
            for (int m = 1; m < 100000; ++m)
            {
                term *= h2 / (static_cast<long double>(m) * (m + k));
                sum += term;
                if (term < sum * 1e-21L)
                    break;
            }
            return sum;
        }
    } // namespace

    double bessel_i_scaled(int k, double z)
    {
        if (z < 0.0 || k < 0)
            throw std::domain_error("oracle::bessel_i_scaled: need z >= 0, k >= 0");
        const int n = 64 + 12 * static_cast<int>(std::ceil(std::sqrt(z))) + 2 * k;
        const double h = std::numbers::pi / n;
        long double sum = 0.0L;
        for (int j = 0; j <= n; ++j)
        {
            const double t = j * h;
            const double w = (j == 0 || j == n) ? 0.5 : 1.0;
            sum += w * std::exp(z * (std::cos(t) - 1.0)) * std::cos(k * t);
        }
        return static_cast<double>(sum * h / std::numbers::pi);
    }

    double bessel_k_scaled(int nu, double z)
    {
        if (!(z > 0.0))
            throw std::domain_error("oracle::bessel_k_scaled: need z > 0");
        const double h = 0.02;
        const double t_max = std::acosh(1.0 + 760.0 / z);
        long double sum = 0.5L; // t = 0
        for (int j = 1; j * h <= t_max; ++j)
        {
            const double t = j * h;
            sum += std::exp(-z * (std::cosh(t) - 1.0)) * std::cosh(nu * t);
        }
        return static_cast<double>(sum * h);
    }

    double exp_integral_e1_scaled(double x)
    {
        if (!(x > 0.0))
            throw std::domain_error("oracle::exp_integral_e1_scaled: need x > 0");
        const double v_max = std::log1p(760.0 / x);
        const double v_knee = std::max(0.0, std::log1p(1.0 / x));
        std::vector<double> breaks;
        for (double d : {-3.0, -1.0, 0.0, 1.0, 2.0, 4.0})
            breaks.push_back(v_knee + d);
        return integrate([x](double v) { return std::exp(-x * std::expm1(v)); }, 0.0, v_max, breaks);
    }

    double marcum_q1_series(double a, double b)
    {
        if (a < 0.0 || b < 0.0)
            throw std::domain_error("oracle::marcum_q1_series: need a, b >= 0");
        if (b == 0.0)
            return 1.0;
        if (a == 0.0)
            return std::exp(-0.5 * b * b);
        const long double z = static_cast<long double>(a) * b;
        const bool lower = a < b;
        const long double r = lower ? static_cast<long double>(a) / b : static_cast<long double>(b) / a;
        long double sum = 0.0L;
        long double rk = lower ? 1.0L : r;
        for (int k = lower ? 0 : 1; k < 5000; ++k)
        {
            const long double t = rk * bessel_i_series(k, z);
            sum += t;
            if (t < sum * 1e-22L && k > z)
                break;
            rk *= r;
        }
        const long double pref = std::exp(-(static_cast<long double>(a) * a + static_cast<long double>(b) * b) / 2);
        const long double s = pref * sum;
        return static_cast<double>(lower ? s : 1.0L - s);
    }

    double marcum_q1_integral(double a, double b)
    {
        if (a < 0.0 || b < 0.0)
            throw std::domain_error("oracle::marcum_q1_integral: need a, b >= 0");
        const double hi = std::max(a, b) + 40.0;
        auto f = [a](double x) {
            const double d = x - a;
            return x * std::exp(-0.5 * d * d) * bessel_i_scaled(0, a * x);
        };
        std::vector<double> breaks;
        for (double d : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0})
            breaks.push_back(a + d);
        // Q1 is only needed to an absolute accuracy here.
        const auto spec = quad::QuadratureSpec::adaptive_finite(1e-13, 1e-15, 20000);
        if (a < b)
            return integrate(f, b, hi, breaks, spec);
        // Integrate the smaller complementary piece when b is below the peak.
        return 1.0 - integrate(f, 0.0, b, breaks, spec);
    }

    double gen_inc_gamma_scaled(int a, double x, double b)
    {
        if (!(x > 0.0) || b < 0.0)
            throw std::domain_error("oracle::gen_inc_gamma_scaled: need x > 0, b >= 0");
        const double ad = a;
        auto f = [ad, x, b](double v) {
            const double y = x * std::exp(v);
            return std::pow(y, ad) * std::exp(-x * std::expm1(v) - b / y);
        };
        // Stationary point of a v - x e^v - (b/x) e^-v, in y = x e^v.
        const double y_star = 0.5 * (ad + std::sqrt(ad * ad + 4.0 * b));
        const double v_star = y_star > 0.0 ? std::log(y_star / x) : 0.0;
        const double sigma = y_star > 0.0 ? 1.0 / std::sqrt(y_star + b / y_star) : 1.0;
        const double v_max = std::max(std::log1p(800.0 / x), v_star + 60.0 * sigma);
        std::vector<double> breaks;
        for (double d : {-10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0})
            breaks.push_back(v_star + d * sigma);
        breaks.push_back(std::log1p(1.0 / x));
        std::sort(breaks.begin(), breaks.end());
        return integrate(f, 0.0, v_max, breaks);
    }

    double gamma_identity_lhs(double x, double b)
    {
        auto f = [x](double z) { return specfun::gen_inc_gamma(0, x, z); };
        const auto r = quad::integrate_finite_adaptive(f, 0.0, b, quad::QuadratureSpec::adaptive_finite(1e-12, 1e-15, 20000));
        return r.value;
    }

    double gamma_identity_rhs(double x, double b) { return std::exp(-x) - specfun::gen_inc_gamma(1, x, b); }
} // namespace sosf::oracle
