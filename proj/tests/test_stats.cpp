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

#include "sosf/rice.hpp"
#include "sosf/specfun.hpp"
#include "sosf/stats.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace sosf;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    ChannelSpec chan(double a, double b, double mean = 1.0) { return ChannelSpec(SosfParams(a, b), mean); }

    EvalPolicy general()
    {
        EvalPolicy p;
        p.dispatch = Dispatch::ForceGeneral;
        return p;
    }

    // Channels covering every region of the parameter triangle.
    std::vector<SosfParams> sample_params()
    {
        return {SosfParams(0.0, 0.0), SosfParams(0.0, 0.5),  SosfParams(0.4, 0.6), SosfParams(0.5, 0.0),
                SosfParams(0.3, 0.3), SosfParams(0.2, 0.7),  SosfParams(0.6, 0.1), SosfParams(0.05, 0.9),
                SosfParams(0.9, 0.05), SosfParams(1.0, 0.0)};
    }
} // namespace

TEST_CASE("reference densities", "[stats]")
{
    CHECK_THAT(pdf(chan(0, 0), 1.0), WithinRel(std::exp(-1.0), 1e-14));
    CHECK_THAT(pdf(chan(1, 0), 1.0), WithinRel(2.0 * 0.11389387274953355, 1e-13));
    CHECK_THAT(pdf(chan(0.3, 0.3), 1.0), WithinRel(0.376614826100777148403, 1e-10));
    CHECK_THAT(pdf(chan(0.2, 0.5, 4.0), 2.0), WithinRel(0.159836386587060649631, 1e-10));
    CHECK_THAT(pdf(chan(0.2, 0.7, 10.0), 3.0), WithinRel(0.0597172206320010735150, 1e-10));
}

TEST_CASE("reference distribution values", "[stats]")
{
    CHECK_THAT(cdf(chan(0.3, 0.3), 1.0), WithinRel(0.63806864456741803881, 1e-10));
    CHECK_THAT(cdf(chan(0.2, 0.7, 10.0), 1.0), WithinRel(0.030629842303863455044, 1e-9));
    CHECK_THAT(cdf(chan(0.28, 0.7, 100.0), 1.0), WithinRel(0.0022503753424651588729, 1e-9));
    CHECK_THAT(cdf(chan(0.2, 0.7, 100.0), 1.0), WithinRel(0.0025120682023375162432, 1e-9));
    CHECK_THAT(cdf(chan(1, 0), 1.0), WithinRel(1.0 - 2.0 * 0.13986588181652243, 1e-13));
    CHECK_THAT(outage_probability(chan(0, 0, 10.0), 1.0), WithinRel(0.0951625819640404, 1e-13));
    CHECK_THAT(mgf(chan(0.4, 0.3, 2.0), -0.5), WithinRel(0.507526486260085629222, 1e-10));
    CHECK_THAT(mgf(chan(1, 0), -1.0), WithinRel(0.596347362323194, 1e-13));
}

TEST_CASE("closed forms agree with the mixture integral", "[stats]")
{
    for (const auto &p : sample_params()) {
        if (classify(p) == FadingKind::Sosf)
            continue;
        const ChannelSpec s(p, 3.0);
        for (double g : {0.01, 0.4, 2.9, 9.0, 20.0}) {
            CAPTURE(p.alpha(), p.beta(), g);
            CHECK_THAT(cdf(s, g, general()), WithinAbs(cdf(s, g), 1e-9));
            CHECK_THAT(survival(s, g, general()), WithinAbs(survival(s, g), 1e-9));
            CHECK_THAT(pdf(s, g, general()), WithinRel(pdf(s, g), 1e-7));
        }
        for (double sv : {-0.01, -0.3, -4.0}) {
            CAPTURE(p.alpha(), p.beta(), sv);
            CHECK_THAT(mgf(s, sv, general()), WithinRel(mgf(s, sv), 1e-8));
        }
    }
    // the general MGF closed form
    for (const auto &p : {SosfParams(0.3, 0.3), SosfParams(0.2, 0.7), SosfParams(0.6, 0.1)})
        for (double sv : {-0.05, -1.0, -7.0})
            CHECK_THAT(mgf(ChannelSpec(p, 2.0), sv, general()), WithinRel(mgf(ChannelSpec(p, 2.0), sv), 1e-8));
}

TEST_CASE("legacy oscillatory density matches the mixture", "[stats][legacy]")
{
    CHECK_THAT(pdf_legacy(chan(0, 0), 1.0), WithinAbs(std::exp(-1.0), 1e-6));
    CHECK_THAT(pdf_legacy(chan(0.5, 0.0), 0.5), WithinAbs(pdf(chan(0.5, 0.0), 0.5), 1e-5));
    CHECK_THAT(pdf_legacy(chan(0.2, 0.5, 4.0), 2.0), WithinAbs(0.159836386587060649631, 1e-7));
    CHECK_THAT(pdf_legacy(chan(0.3, 0.3), 1.0), WithinAbs(0.376614826100777148403, 1e-7));
    CHECK_THROWS_AS(pdf_legacy(chan(0.4, 0.6), 1.0), std::domain_error);
}

TEST_CASE("distribution shape properties", "[stats][property]")
{
    for (const auto &p : sample_params()) {
        const ChannelSpec s(p, 2.0);
        CAPTURE(p.alpha(), p.beta());
        CHECK(cdf(s, 0.0) == 0.0);
        double prev = 0.0;
        for (double g = 0.02; g < 40.0; g *= 1.15) {
            const double f = cdf(s, g);
            CHECK(f >= prev - 1e-15);
            CHECK(f <= 1.0);
            // both sides are separate mixture integrals at rel_tol 1e-9
            CHECK_THAT(f + survival(s, g), WithinAbs(1.0, 1e-9));
            prev = f;
        }
        CHECK(cdf(s, 1e4) > 1.0 - 1e-9);
    }
}

TEST_CASE("density is the derivative of the distribution", "[stats][property]")
{
    for (const auto &p : sample_params()) {
        const ChannelSpec s(p, 2.0);
        for (double g : {0.05, 0.7, 1.9, 6.0}) {
            CAPTURE(p.alpha(), p.beta(), g);
            const double h = 1e-4 * g;
            const double d = (cdf(s, g + h) - cdf(s, g - h)) / (2.0 * h);
            CHECK_THAT(d, WithinAbs(pdf(s, g), 1e-4));
        }
    }
}

TEST_CASE("mgf properties", "[stats][property]")
{
    for (const auto &p : sample_params()) {
        const ChannelSpec s(p, 5.0);
        CAPTURE(p.alpha(), p.beta());
        CHECK_THAT(mgf(s, -1e-8), WithinAbs(1.0, 1e-6));
        double prev = 0.0;
        for (double sv = -50.0; sv < -1e-4; sv *= 0.8) {
            const double m = mgf(s, sv);
            CHECK(m > prev);
            CHECK(m <= 1.0);
            prev = m;
        }
    }
    CHECK_THROWS_AS(mgf(chan(0.3, 0.3), 0.0), std::domain_error);
    CHECK_THROWS_AS(mgf(chan(0.3, 0.3), 0.5), std::domain_error);
    CHECK_THAT(mgf(chan(0, 1, 3.0), -0.2), WithinRel(std::exp(-0.6), 1e-15));
}

TEST_CASE("incomplete gamma argument of the mgf stays positive", "[stats][property]")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double a = 0.01 + 0.98 * u(rng);
        const double b = (1.0 - a) * u(rng);
        const double mean = std::pow(10.0, 4.0 * u(rng) - 1.0);
        const double s = -std::pow(10.0, 6.0 * u(rng) - 4.0);
        const double x = (s * (1.0 - a - b) * mean - 1.0) / (s * mean * a);
        CHECK(x > 0.0);
        CHECK(std::isfinite(mgf(ChannelSpec(SosfParams(a, b), mean), s)));
    }
}

TEST_CASE("mixture averaging recovers simple moments", "[stats]")
{
    const auto q = quad::QuadratureSpec::gauss_laguerre(64, 1e-12);
    for (const auto &p : sample_params()) {
        if (classify(p) == FadingKind::Dr)
            continue;
        const ChannelSpec s(p, 4.0);
        CAPTURE(p.alpha(), p.beta());
        CHECK_THAT(average_over_mixture([](double, double) { return 1.0; }, s, q), WithinRel(1.0, 1e-13));
        CHECK_THAT(average_over_mixture([](double m, double) { return m; }, s, q), WithinRel(4.0, 1e-12));
        // LOS power is the same in every slice
        CHECK_THAT(average_over_mixture([](double m, double k) { return m * k / (1.0 + k); }, s, q),
                   WithinAbs(p.beta() * 4.0, 1e-11));
    }
    // a sharply peaked metric forces the adaptive fallback
    const ChannelSpec s = chan(0.3, 0.3);
    const auto r = average_over_mixture_ex([](double m, double) { return std::log(m - 0.7 + 1e-12); }, s, q);
    CHECK(r.converged);
}

TEST_CASE("behaviour at gamma = 0", "[stats][edge]")
{
    CHECK_THROWS_AS(pdf(chan(1, 0), 0.0), divergence_error);
    EvalPolicy inf_ok;
    inf_ok.infinite_density_at_zero = true;
    CHECK(std::isinf(pdf(chan(1, 0), 0.0, inf_ok)));
    CHECK(std::isfinite(pdf(chan(0.4, 0.6), 0.0)));
    CHECK(std::isfinite(pdf(chan(0.5, 0.0), 0.0)));
    CHECK_THAT(pdf(chan(0, 0, 2.0), 0.0), WithinRel(0.5, 1e-15));
    CHECK_THROWS_AS(pdf(chan(0.3, 0.3), -1.0), std::domain_error);
}

TEST_CASE("static channel", "[stats][edge]")
{
    const ChannelSpec s = chan(0, 1, 5.0);
    CHECK_THROWS_AS(pdf(s, 5.0), degenerate_distribution_error);
    CHECK(cdf(s, 4.999) == 0.0);
    CHECK(cdf(s, 5.0) == 1.0);
    CHECK(resolve_route(s, general()).closed_form);
    CHECK_THROWS_AS(tail_coefficient(s), degenerate_distribution_error);
}

TEST_CASE("dispatch routes", "[stats]")
{
    EvalPolicy closed;
    closed.dispatch = Dispatch::ForceClosedForm;
    CHECK_FALSE(resolve_route(chan(0.3, 0.3), {}).closed_form);
    CHECK(resolve_route(chan(0.0, 0.3), {}).closed_form);
    CHECK(resolve_route(chan(0.0, 0.3), {}).kind == FadingKind::Rice);
    CHECK_FALSE(resolve_route(chan(0.0, 0.3), general()).closed_form);
    CHECK_THROWS_AS(pdf(chan(0.3, 0.3), 1.0, closed), std::domain_error);
    CHECK_THROWS_AS(cdf(chan(0.3, 0.3), 1.0, closed), std::domain_error);
    CHECK_NOTHROW(mgf(chan(0.3, 0.3), -1.0, closed));
}

TEST_CASE("limits between neighbouring special cases", "[stats][property]")
{
    // RDR approaches DR as alpha -> 1
    const ChannelSpec rdr = chan(1.0 - 1e-6, 0.0, 2.0);
    const ChannelSpec dr = chan(1.0, 0.0, 2.0);
    for (double g : {0.01, 0.5, 2.0, 8.0}) {
        CHECK_THAT(pdf(rdr, g), WithinAbs(pdf(dr, g), 1e-4));
        CHECK_THAT(cdf(rdr, g), WithinAbs(cdf(dr, g), 1e-4));
    }
    // a tiny LOS component on the general route tends to RDR
    for (double g : {0.1, 1.0, 5.0})
        CHECK_THAT(cdf(chan(0.5, 1e-8), g, general()), WithinAbs(cdf(chan(0.5, 0.0), g), 1e-4));
}

TEST_CASE("low-SNR tail coefficient", "[stats][tail]")
{
    CHECK(tail_coefficient(chan(0, 0)).coeff_a == 1.0);
    CHECK_THAT(tail_coefficient(chan(0, 1.0 / 2.0)).coeff_a, WithinRel(rice::tail_coefficient(1.0), 1e-15));
    CHECK_THAT(tail_coefficient(chan(0.5, 0)).coeff_a, WithinRel(2.0 * 0.596347362323194, 1e-13));
    CHECK_THAT(tail_coefficient(chan(0.3, 0.3)).coeff_a, WithinRel(0.961219904370642776318, 1e-10));
    CHECK_THAT(tail_coefficient(chan(0.2, 0.7)).coeff_a, WithinRel(0.245277084187007677034, 1e-10));
    CHECK(tail_coefficient(chan(0.3, 0.3)).diversity_d == 1.0);
    CHECK_THROWS_AS(tail_coefficient(chan(1, 0)), divergence_error);

    // the approximation is tight deep in the tail
    for (const auto &p : {SosfParams(0.3, 0.3), SosfParams(0.2, 0.7), SosfParams(0.0, 0.4), SosfParams(0.4, 0.6)}) {
        const ChannelSpec s(p, 100.0);
        const double g = 1e-4;
        CAPTURE(p.alpha(), p.beta());
        CHECK_THAT(tail_cdf_approx(s, g), WithinRel(cdf(s, g), 1e-3));
    }
}

TEST_CASE("stronger LOS is not always better", "[stats]")
{
    // at beta = 0.7 more double-Rayleigh power lowers the outage at gamma = 1, mean 20 dB
    CHECK(cdf(chan(0.28, 0.7, 100.0), 1.0) < cdf(chan(0.2, 0.7, 100.0), 1.0));
}

TEST_CASE("upper tail point", "[stats]")
{
    const ChannelSpec s = chan(0, 0, 1.0);
    const double g = upper_tail_point(s, 1e-6);
    CHECK(survival(s, g) <= 1e-6);
    CHECK(survival(s, g / 2.0) > 1e-6);
    CHECK_THROWS_AS(upper_tail_point(s, 0.0), std::invalid_argument);
}
