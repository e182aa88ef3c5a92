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

#include "sosf/quadrature.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

using namespace sosf::quad;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Gauss-Laguerre rule structure", "[quadrature]")
{
    for (int n : {2, 8, 32, 64, 128}) {
        CAPTURE(n);
        const auto &rule = gauss_laguerre_rule(n);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        REQUIRE(rule.weights.size() == static_cast<std::size_t>(n));
        CHECK_THAT(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0), WithinRel(1.0, 1e-13));
        CHECK(rule.nodes.front() > 0.0);
        for (std::size_t i = 1; i < rule.nodes.size(); ++i)
            CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        for (double w : rule.weights)
            CHECK(w >= 0.0);
    }
    CHECK(&gauss_laguerre_rule(64) == &gauss_laguerre_rule(64));
    CHECK_THROWS_AS(gauss_laguerre_rule(1), std::invalid_argument);
}

TEST_CASE("Gauss-Laguerre integrates polynomials exactly", "[quadrature]")
{
    const auto &rule = gauss_laguerre_rule(20);
    double factorial = 1.0;
    for (int k = 0; k < 30; ++k) {
        if (k > 0)
            factorial *= k;
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            sum += rule.weights[i] * std::pow(rule.nodes[i], k);
        CAPTURE(k);
        CHECK_THAT(sum, WithinRel(factorial, 1e-11));
    }
}

TEST_CASE("exponential mixture averages", "[quadrature]")
{
    const auto gl = QuadratureSpec::gauss_laguerre(64, 1e-12);
    auto r = integrate_exp_mixture([](double) { return 1.0; }, gl);
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinRel(1.0, 1e-14));

    r = integrate_exp_mixture([](double x) { return std::cos(x); }, gl);
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinAbs(0.5, 1e-12));

    r = integrate_exp_mixture([](double x) { return 1.0 / (1.0 + x); }, gl);
    CHECK_THAT(r.value, WithinRel(0.596347362323194, 1e-9));

    // log singularity at 0 needs the adaptive path
    const auto at = QuadratureSpec::adaptive_truncated(1e-11, 1e-16, 200000);
    r = integrate_exp_mixture([](double x) { return std::log(x); }, at);
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinAbs(-std::numbers::egamma, 1e-9));
}

TEST_CASE("finite adaptive integration", "[quadrature]")
{
    const auto spec = QuadratureSpec::adaptive_finite(1e-12, 1e-15);
    auto r = integrate_finite_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, spec);
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinRel(2.0 / 3.0, 1e-11));

    r = integrate_finite_adaptive([](double x) { return std::log(x); }, 0.0, 1.0, spec, true);
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinRel(-1.0, 1e-11));

    const double kink[] = {0.3};
    r = integrate_finite_adaptive([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, kink, spec);
    CHECK_THAT(r.value, WithinRel(0.5 * (0.09 + 0.49), 1e-12));
    CHECK(r.est_error >= 0.0);
    CHECK(r.nodes_used > 0);

    CHECK_THROWS_AS(integrate_finite_adaptive([](double) { return std::nan(""); }, 0.0, 1.0, spec),
                    quadrature_error);
    CHECK_THROWS_AS(integrate_finite_adaptive([](double x) { return x; }, 1.0, 0.0, spec), std::invalid_argument);
}

TEST_CASE("oscillatory Bessel integrand", "[quadrature]")
{
    // int_0^inf z exp(-c z^2) J0(k z) dz = exp(-k^2 / (4c)) / (2c)
    const double c = 0.3;
    const double k = 2.5;
    auto spec = QuadratureSpec::adaptive_finite(1e-11, 1e-14, 400000);
    const auto r = integrate_oscillatory_legacy(
        [=](double z) { return z * std::exp(-c * z * z) * std::cyl_bessel_j(0.0, k * z); }, c, k, spec);
    CHECK_THAT(r.value, WithinAbs(std::exp(-k * k / (4.0 * c)) / (2.0 * c), 1e-11));
    CHECK_THROWS_AS(integrate_oscillatory_legacy([](double) { return 0.0; }, 0.0, 1.0, spec), std::domain_error);
}

TEST_CASE("quadrature spec validation", "[quadrature]")
{
    QuadratureSpec s;
    s.rel_tol = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = QuadratureSpec{};
    s.truncation_eps = 1.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    CHECK_NOTHROW(QuadratureSpec::gauss_laguerre().validate());
    CHECK(to_string(Method::GaussLaguerre) != to_string(Method::AdaptiveFinite));
}
