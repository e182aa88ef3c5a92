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

#ifndef SOSF_STATS_HPP
#define SOSF_STATS_HPP

#include "sosf/model.hpp"
#include "sosf/quadrature.hpp"

#include <functional>
#include <stdexcept>

// First-order statistics of the instantaneous SNR of an SOSF channel.
//
// Conditioned on X = |G3|^2 = x the channel is Rician with (K_x, mean_x) from
// conditional_rice(), and X ~ Exp(1). Every general-case quantity here is therefore an
// average of a Rician quantity against e^-x, computed by average_over_mixture(). The
// special cases of the model (Rice, DRLOS, RDR, DR, Rayleigh, static) also have closed
// forms; Dispatch::Auto uses them, Dispatch::ForceGeneral always goes through the mixture.
namespace sosf
{
    enum class Dispatch
    {
        Auto,
        ForceGeneral,
        ForceClosedForm
    };

    struct EvalPolicy
    {
        Dispatch dispatch = Dispatch::Auto;
        quad::QuadratureSpec quad = quad::QuadratureSpec::gauss_laguerre(64, 1e-9);
        double classify_tol = kDefaultClassifyTol;
        // pdf() at gamma = 0 on the DR point: +inf when set, divergence_error otherwise.
        bool infinite_density_at_zero = false;
    };

    // The distribution is a point mass (static channel) and has no density.
    class degenerate_distribution_error : public std::domain_error
    {
      public:
        using std::domain_error::domain_error;
    };

    // A quantity that diverges at the requested point (DR density at 0, DR tail coefficient).
    class divergence_error : public std::domain_error
    {
      public:
        using std::domain_error::domain_error;
    };

    // Which evaluator a given spec and policy resolve to.
    struct Route
    {
        FadingKind kind = FadingKind::Sosf;
        bool closed_form = false;
    };
    Route resolve_route(const ChannelSpec &spec, const EvalPolicy &policy);

    double pdf(const ChannelSpec &spec, double gamma, const EvalPolicy &policy = {});
    double cdf(const ChannelSpec &spec, double gamma, const EvalPolicy &policy = {});

    // 1 - cdf, evaluated directly (no cancellation in the upper tail).
    double survival(const ChannelSpec &spec, double gamma, const EvalPolicy &policy = {});

    double outage_probability(const ChannelSpec &spec, double gamma_th, const EvalPolicy &policy = {});

    // Moment generating function E[exp(s gamma)] for s < 0.
    double mgf(const ChannelSpec &spec, double s, const EvalPolicy &policy = {});

    // Density from the product-of-J0 integral with Gaussian damping. Slow and only defined
    // for 1 - alpha - beta > 0; it exists as an independent check of pdf().
    quad::QuadratureSpec default_legacy_quadrature();
    double pdf_legacy(const ChannelSpec &spec, double gamma,
                      const quad::QuadratureSpec &quad = default_legacy_quadrature());

    // Low-SNR behaviour F(g) ~ (a / d) (g / mean)^d with diversity order d = 1.
    struct TailApprox
    {
        double coeff_a = 0.0;
        double diversity_d = 1.0;
    };
    TailApprox tail_coefficient(const ChannelSpec &spec, double classify_tol = kDefaultClassifyTol);
    double tail_cdf_approx(const ChannelSpec &spec, double gamma, double classify_tol = kDefaultClassifyTol);

    // Average of a Rician performance metric H_R(mean_x, K_x) over X ~ Exp(1):
    //   int_0^inf H_R(mean_x, K_x) e^-x dx.
    // The metric must be finite and non-negative on the reachable (mean_x, K_x).
    // A Gauss-Laguerre spec whose own error estimate misses the tolerance falls back to
    // the adaptive truncated rule; the _ex form reports which result was kept.
    using RicianMetric = std::function<double(double mean_snr, double k_factor)>;
    quad::QuadratureResult average_over_mixture_ex(const RicianMetric &metric, const ChannelSpec &spec,
                                                   const quad::QuadratureSpec &quad);
    // Throws quad::quadrature_error when neither rule converges.
    double average_over_mixture(const RicianMetric &metric, const ChannelSpec &spec,
                                const quad::QuadratureSpec &quad);

    // Smallest probed SNR (doubling from the mean) where survival() drops below tail_mass.
    double upper_tail_point(const ChannelSpec &spec, double tail_mass, const EvalPolicy &policy = {});
} // namespace sosf

#endif
