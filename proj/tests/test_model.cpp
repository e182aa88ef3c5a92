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

#include "sosf/model.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

using namespace sosf;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("parameter triangle is enforced", "[model]")
{
    CHECK_NOTHROW(SosfParams(0.0, 0.0));
    CHECK_NOTHROW(SosfParams(1.0, 0.0));
    CHECK_NOTHROW(SosfParams(0.0, 1.0));
    CHECK_NOTHROW(SosfParams(0.3, 0.7));
    CHECK_THROWS_WITH(SosfParams(0.6, 0.6), ContainsSubstring("triangle constraint violated"));
    CHECK_THROWS_WITH(SosfParams(-0.1, 0.2), ContainsSubstring("alpha >= 0"));
    CHECK_THROWS_WITH(SosfParams(0.1, -0.2), ContainsSubstring("beta >= 0"));
    CHECK_THROWS_AS(SosfParams(std::nan(""), 0.2), std::domain_error);
    CHECK(SosfParams(0.2, 0.3).rayleigh_fraction() == Catch::Approx(0.5));
    CHECK(SosfParams(0.3, 0.7).rayleigh_fraction() >= 0.0);
}

TEST_CASE("mean SNR must be positive", "[model]")
{
    CHECK_THROWS_AS(ChannelSpec(SosfParams(0.2, 0.2), 0.0), std::domain_error);
    CHECK_THROWS_AS(ChannelSpec(SosfParams(0.2, 0.2), -1.0), std::domain_error);
    CHECK_THROWS_AS(ChannelSpec(SosfParams(0.2, 0.2), INFINITY), std::domain_error);
    const ChannelSpec s(SosfParams(0.2, 0.3), 7.0);
    CHECK(s.alpha() == 0.2);
    CHECK(s.beta() == 0.3);
    CHECK(s.mean_snr() == 7.0);
}

TEST_CASE("weights and parameters round trip", "[model]")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double a = u(rng);
        double b = u(rng);
        if (a + b > 1.0) {
            a = 1.0 - a;
            b = 1.0 - b;
        }
        const SosfParams p(a, b);
        const auto w = weights_from_params(p);
        CHECK_THAT(w.w0 * w.w0 + w.w1 * w.w1 + w.w2 * w.w2, WithinAbs(1.0, 1e-14));
        const auto q = params_from_weights(w);
        CHECK_THAT(q.alpha(), WithinAbs(a, 1e-14));
        CHECK_THAT(q.beta(), WithinAbs(b, 1e-14));
    }
    // unnormalized weights are scaled to unit power
    const auto q = params_from_weights({2.0, 2.0, 4.0});
    CHECK_THAT(q.alpha(), WithinRel(16.0 / 24.0, 1e-15));
    CHECK_THAT(q.beta(), WithinRel(4.0 / 24.0, 1e-15));
    const auto n = WeightTriple{3.0, 0.0, 4.0}.normalized();
    CHECK_THAT(n.w0, WithinRel(0.6, 1e-15));
    CHECK_THAT(n.w2, WithinRel(0.8, 1e-15));
    CHECK_THROWS_AS(params_from_weights({0.0, 0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(params_from_weights({-1.0, 0.5, 0.5}), std::domain_error);
}

TEST_CASE("special case classification", "[model]")
{
    CHECK(classify(SosfParams(0.0, 1.0)) == FadingKind::Static);
    CHECK(classify(SosfParams(1.0, 0.0)) == FadingKind::Dr);
    CHECK(classify(SosfParams(0.0, 0.0)) == FadingKind::Rayleigh);
    CHECK(classify(SosfParams(0.0, 0.4)) == FadingKind::Rice);
    CHECK(classify(SosfParams(0.4, 0.6)) == FadingKind::Drlos);
    CHECK(classify(SosfParams(0.4, 0.0)) == FadingKind::Rdr);
    CHECK(classify(SosfParams(0.3, 0.3)) == FadingKind::Sosf);
    CHECK(classify(SosfParams(1e-10, 0.3)) == FadingKind::Rice);
    CHECK(classify(SosfParams(1e-10, 0.3), 0.0) == FadingKind::Sosf);
    CHECK(classify(SosfParams(0.5, 1e-3), 1e-2) == FadingKind::Rdr);
    CHECK(to_string(FadingKind::Drlos) == "drlos");
    CHECK(to_string(FadingKind::Static) == "static");
}

TEST_CASE("conditional Rician parameters", "[model]")
{
    const ChannelSpec s(SosfParams(0.2, 0.5), 4.0);
    for (double x : {0.0, 0.3, 1.0, 5.0}) {
        const auto c = conditional_rice(s, x);
        CHECK_THAT(c.k_factor, WithinRel(0.5 / (0.3 + 0.2 * x), 1e-15));
        CHECK_THAT(c.mean_snr, WithinRel(4.0 * (0.8 + 0.2 * x), 1e-15));
    }
    // K_x (1 + K_x)^-1 gamma_x recovers the LOS power beta * mean SNR
    for (double x : {0.1, 2.0}) {
        const auto c = conditional_rice(s, x);
        CHECK_THAT(c.mean_snr * c.k_factor / (1.0 + c.k_factor), WithinRel(0.5 * 4.0, 1e-14));
    }
    CHECK(conditional_rice(ChannelSpec(SosfParams(0.5, 0.0), 1.0), 0.0).k_factor == 0.0);
    CHECK_THROWS_AS(conditional_rice(ChannelSpec(SosfParams(0.4, 0.6), 1.0), 0.0), std::domain_error);
    CHECK_THROWS_AS(conditional_rice(ChannelSpec(SosfParams(1.0, 0.0), 1.0), 0.0), std::domain_error);
    CHECK_THROWS_AS(conditional_rice(s, -1.0), std::domain_error);
}

TEST_CASE("decibel conversion", "[model]")
{
    CHECK_THAT(db_to_linear(40.0), WithinRel(1e4, 1e-15));
    CHECK_THAT(db_to_linear(-3.0), WithinRel(0.501187233627272, 1e-14));
    for (double db = -30.0; db <= 60.0; db += 0.7)
        CHECK_THAT(linear_to_db(db_to_linear(db)), WithinAbs(db, 1e-12));
    CHECK_THROWS_AS(linear_to_db(0.0), std::domain_error);
}
