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

#include "sosf/capacity.hpp"
#include "sosf/montecarlo.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace sosf;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    constexpr double kLog2e = std::numbers::log2e;
    constexpr double kEuler = std::numbers::egamma;

    double t_of(double a, double b, Dispatch d = Dispatch::Auto)
    {
        return capacity_loss(ChannelSpec(SosfParams(a, b), 1.0), default_loss_quadrature(), d).t_bits;
    }
} // namespace

TEST_CASE("capacity loss of the special cases", "[capacity]")
{
    CHECK(t_of(0, 1) == 0.0);
    CHECK_THAT(t_of(0, 0), WithinRel(0.832746177276867, 1e-13));
    CHECK_THAT(t_of(1, 0), WithinRel(1.665492354553734, 1e-13));
    CHECK_THAT(t_of(0, 0.5), WithinRel(0.6834959, 1e-7));
    CHECK_THAT(t_of(0.5, 0.5), WithinRel(0.6713717, 1e-7));
    // e^1 E1(1) from the standard library
    const double rdr = kLog2e * kEuler + 1.0 - kLog2e * std::exp(1.0) * -std::expint(-1.0);
    CHECK_THAT(t_of(0.5, 0), WithinRel(rdr, 1e-13));
    CHECK(capacity_loss(ChannelSpec(SosfParams(0.5, 0.5), 1.0)).route == FadingKind::Drlos);
}

TEST_CASE("reference loss values for interior points", "[capacity]")
{
    CHECK_THAT(t_of(0.3, 0.3), WithinRel(0.829933434395269157957, 1e-10));
    CHECK_THAT(t_of(0.2, 0.7), WithinRel(0.443634561308190670192, 1e-10));
    CHECK_THAT(t_of(0.1, 0.7), WithinRel(0.461869965179522441453, 1e-10));
    CHECK_THAT(t_of(0.299, 0.7), WithinRel(0.420747836898378004863, 1e-9));
    CHECK_THAT(t_of(0.001, 0.7), WithinRel(0.469728286244519668650, 1e-10));
}

TEST_CASE("general loss integral reproduces the closed forms", "[capacity][property]")
{
    for (const auto &[a, b] : std::vector<std::pair<double, double>>{
             {0, 0}, {0, 0.2}, {0, 0.9}, {0.3, 0.7}, {0.8, 0.2}, {0.2, 0}, {0.7, 0}, {1, 0}}) {
        CAPTURE(a, b);
        CHECK_THAT(t_of(a, b, Dispatch::ForceGeneral), WithinAbs(t_of(a, b), 1e-8));
    }
    // vanishing LOS on the general route tends to RDR
    CHECK_THAT(t_of(0.4, 1e-8, Dispatch::ForceGeneral), WithinAbs(t_of(0.4, 0.0), 1e-4));
    CHECK_THROWS_AS(t_of(0.3, 0.3, Dispatch::ForceClosedForm), std::domain_error);
}

TEST_CASE("loss stays within its range over the triangle", "[capacity][property]")
{
    const double t_max = 2.0 * kLog2e * kEuler;
    for (double a = 0.0; a <= 1.0 + 1e-12; a += 0.05) {
        for (double b = 0.0; a + b <= 1.0 + 1e-12; b += 0.05) {
            const double aa = std::min(a, 1.0);
            const double bb = std::min(b, 1.0 - aa);
            const double t = t_of(aa, bb);
            CAPTURE(aa, bb);
            CHECK(t >= -1e-12);
            CHECK(t <= t_max + 1e-9);
        }
    }
}

TEST_CASE("asymptotic capacity", "[capacity]")
{
    const auto lo = capacity_asymptotic(ChannelSpec(SosfParams(0.3, 0.3), 1e3));
    const auto hi = capacity_asymptotic(ChannelSpec(SosfParams(0.3, 0.3), 1e6));
    CHECK(lo.method == CapacityMethod::AsymptoticHighSnr);
    // the loss does not depend on the mean SNR
    CHECK_THAT(hi.bits_per_use - lo.bits_per_use, WithinAbs(std::log2(1e3), 1e-9));
    CHECK_THAT(capacity_asymptotic(ChannelSpec(SosfParams(0, 0), 1e4)).bits_per_use,
               WithinAbs(13.2877123795494 - 0.832746177276867, 1e-9));
    // no clamping at low SNR
    CHECK(capacity_asymptotic(ChannelSpec(SosfParams(1, 0), 1.0)).bits_per_use < 0.0);
}

TEST_CASE("exact ergodic capacity", "[capacity]")
{
    CHECK_THAT(capacity_exact(ChannelSpec(SosfParams(0, 1), 1e4)).bits_per_use,
               WithinRel(std::log2(1.0 + 1e4), 1e-15));
    CHECK_THAT(capacity_exact(ChannelSpec(SosfParams(0, 0), 1e4)).bits_per_use,
               WithinAbs(12.4563560414944589290, 1e-8));
    CHECK_THAT(capacity_exact(ChannelSpec(SosfParams(0, 0), 100.0)).bits_per_use,
               WithinAbs(5.88404823368347345476, 1e-8));
    const auto r = capacity_exact(ChannelSpec(SosfParams(0.3, 0.3), 100.0));
    CHECK(r.method == CapacityMethod::ExactQuadrature);
    CHECK(r.est_error >= 0.0);
    CHECK(r.est_error < 1e-6);
}

TEST_CASE("exact capacity approaches the asymptote at high SNR", "[capacity][property]")
{
    for (const auto &p : {SosfParams(0, 0), SosfParams(0.3, 0.3), SosfParams(0.2, 0.7), SosfParams(1, 0),
                          SosfParams(0.5, 0.5)}) {
        const ChannelSpec s(p, 1e4);
        const double exact = capacity_exact(s).bits_per_use;
        const double asym = capacity_asymptotic(s).bits_per_use;
        CAPTURE(p.alpha(), p.beta());
        CHECK(exact >= asym - 1e-9);
        CHECK(exact - asym < 0.05);
    }
}

TEST_CASE("capacity ordering of the canonical channels", "[capacity]")
{
    const double mean = 1e4;
    const double c_static = capacity_exact(ChannelSpec(SosfParams(0, 1), mean)).bits_per_use;
    const double c_rice = capacity_exact(ChannelSpec(SosfParams(0, 0.5), mean)).bits_per_use;
    const double c_rayleigh = capacity_exact(ChannelSpec(SosfParams(0, 0), mean)).bits_per_use;
    const double c_dr = capacity_exact(ChannelSpec(SosfParams(1, 0), mean)).bits_per_use;
    CHECK(c_static >= c_rice);
    CHECK(c_rice >= c_rayleigh);
    CHECK(c_rayleigh >= c_dr);
}

TEST_CASE("exact capacity agrees with Monte Carlo", "[capacity][mc]")
{
    const ChannelSpec s(SosfParams(0.3, 0.3), 100.0);
    mc::McConfig cfg;
    cfg.n_samples = 4000000;
    cfg.seed = 99;
    const double grid[] = {1.0};
    const auto sum = mc::estimate(s, cfg, grid);
    CHECK_THAT(sum.capacity_hat, WithinAbs(capacity_exact(s).bits_per_use, 4.0 * sum.capacity_se));
}

TEST_CASE("derivative of the loss along alpha", "[capacity][derivative]")
{
    // RDR edge has an analytic derivative
    CHECK_THAT(capacity_loss_dalpha(0.0, 0.5), WithinAbs(0.555999447305616990041, 1e-6));
    CHECK_THAT(capacity_loss_dalpha(0.0, 0.2), WithinAbs(0.228870941086769793434, 1e-6));
    CHECK_THAT(capacity_loss_dalpha(0.0, 0.5, default_loss_quadrature(), 1e-3, true),
               WithinAbs(0.555999447305616990041, 1e-8));
    // strong LOS: adding double-Rayleigh power reduces the loss
    CHECK(capacity_loss_dalpha(0.7, 0.1) < 0.0);
    CHECK(t_of(0.299, 0.7) < t_of(0.001, 0.7));
    // triangle edges fall back to one-sided differences
    CHECK(std::isfinite(capacity_loss_dalpha(0.3, 0.0)));
    CHECK(std::isfinite(capacity_loss_dalpha(0.3, 0.7)));
    CHECK_THROWS_AS(capacity_loss_dalpha(0.3, 0.3, default_loss_quadrature(), 1e-2), std::invalid_argument);
    CHECK_THROWS_AS(capacity_loss_dalpha(1.0 - 1e-7, 0.0), std::domain_error);
}
