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

#ifndef SOSF_CAPACITY_HPP
#define SOSF_CAPACITY_HPP

#include "sosf/model.hpp"
#include "sosf/quadrature.hpp"
#include "sosf/stats.hpp"

// Average capacity E[log2(1 + gamma)] with normalized bandwidth, and its high-SNR form
//   C ~ log2(mean) - t,
// where the capacity loss t does not depend on the mean SNR.
namespace sosf
{
    enum class CapacityMethod
    {
        ExactQuadrature,
        AsymptoticHighSnr,
        MonteCarlo
    };

    std::string_view to_string(CapacityMethod m);

    struct CapacityResult
    {
        // May be negative for the asymptotic form at low SNR.
        double bits_per_use = 0.0;
        CapacityMethod method = CapacityMethod::ExactQuadrature;
        double est_error = 0.0;
    };

    struct CapacityLoss
    {
        double t_bits = 0.0;
        double est_error = 0.0;
        // Kind whose closed form was used, or Sosf for the integral.
        FadingKind route = FadingKind::Sosf;
    };

    // Outer integral over gamma for capacity_exact().
    quad::QuadratureSpec default_capacity_quadrature();
    // Mixture integral inside the loss t.
    quad::QuadratureSpec default_loss_quadrature();

    // Outer adaptive integral over log(gamma), cut where the survival function drops below
    // 1e-12 and 1e-18 mean below zero; the inner density is pdf() under `policy`.
    CapacityResult capacity_exact(const ChannelSpec &spec,
                                  const quad::QuadratureSpec &quad = default_capacity_quadrature(),
                                  const EvalPolicy &policy = {});

    // t = -log2(beta) - log2(e) int_0^inf E1(beta / d(x)) e^-x dx,  d(x) = 1 - alpha - beta + alpha x.
    // For beta < 1e-10 the equivalent form log2(e) (gamma_e - int ln d(x) e^-x dx) is used.
    // Dispatch::Auto takes the closed forms on the special edges and vertices.
    CapacityLoss capacity_loss(const ChannelSpec &spec, const quad::QuadratureSpec &quad = default_loss_quadrature(),
                               Dispatch dispatch = Dispatch::Auto, double classify_tol = kDefaultClassifyTol);

    // log2(mean) - t.
    CapacityResult capacity_asymptotic(const ChannelSpec &spec,
                                       const quad::QuadratureSpec &quad = default_loss_quadrature(),
                                       Dispatch dispatch = Dispatch::Auto);

    // d t / d alpha at fixed beta by central differences with step h in [1e-6, 1e-3].
    // With richardson the steps h and h/2 are combined (fourth order). Where alpha - h or
    // alpha + h leaves the triangle a first-order one-sided difference is taken instead.
    double capacity_loss_dalpha(double beta, double alpha,
                                const quad::QuadratureSpec &quad = default_loss_quadrature(), double h = 1e-4,
                                bool richardson = false);
} // namespace sosf

#endif
