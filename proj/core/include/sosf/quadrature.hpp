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

#ifndef SOSF_QUADRATURE_HPP
#define SOSF_QUADRATURE_HPP

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sosf::quad
{
    using Integrand = std::function<double(double)>;

    enum class Method
    {
        GaussLaguerre,     // N-node rule against the weight e^-x on [0, inf)
        AdaptiveTruncated, // adaptive Gauss-Kronrod on [0, -ln(truncation_eps)]
        AdaptiveFinite     // adaptive Gauss-Kronrod on a finite interval
    };

    std::string to_string(Method m);

    // Tolerances and budget for one integration.
    // For GaussLaguerre, max_nodes is the node count of the rule. For the adaptive
    // methods it is the budget of integrand evaluations.
    struct QuadratureSpec
    {
        Method method = Method::GaussLaguerre;
        double rel_tol = 1e-9;
        double abs_tol = 1e-14;
        int max_nodes = 64;
        double truncation_eps = 1e-12;

        // Throws std::invalid_argument when a field is out of range.
        void validate() const;

        static QuadratureSpec gauss_laguerre(int nodes = 64, double rel_tol = 1e-9);
        static QuadratureSpec adaptive_truncated(double rel_tol = 1e-10, double truncation_eps = 1e-12,
                                                 int max_evals = 60000);
        static QuadratureSpec adaptive_finite(double rel_tol = 1e-10, double abs_tol = 1e-14,
                                              int max_evals = 60000);
    };

    struct QuadratureResult
    {
        double value = 0.0;
        double est_error = 0.0;
        int nodes_used = 0;
        bool converged = false;
    };

    // Raised when the integrand returns NaN.
    class quadrature_error : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };

    // Gauss-Laguerre nodes and weights for the weight e^-x. Tables are computed once per
    // node count and cached; the returned reference stays valid for the program lifetime.
    struct LaguerreRule
    {
        std::vector<double> nodes;
        std::vector<double> weights;
    };
    const LaguerreRule &gauss_laguerre_rule(int n);

    // Integral of f(x) e^-x over [0, inf).
    //
    // GaussLaguerre evaluates the rule with spec.max_nodes nodes and a second, smaller rule
    // (3/4 of the nodes); their difference is the error estimate. AdaptiveTruncated cuts the
    // range at -ln(truncation_eps) and integrates f(x) e^-x adaptively. No rule ever
    // evaluates f at x = 0.
    QuadratureResult integrate_exp_mixture(const Integrand &f, const QuadratureSpec &spec);

    // Integral of f over [lo, hi] by globally adaptive 7/15-point Gauss-Kronrod.
    // With log_singular_lo the substitution x = lo + (hi - lo) u^3 is applied first, which
    // makes an integrable logarithmic singularity at lo harmless.
    QuadratureResult integrate_finite_adaptive(const Integrand &f, double lo, double hi,
                                               const QuadratureSpec &spec, bool log_singular_lo = false);

    // Same as integrate_finite_adaptive, but the interval is pre-split at the given interior
    // breakpoints (ignored when outside (lo, hi)). The evaluation budget is shared.
    QuadratureResult integrate_finite_adaptive(const Integrand &f, double lo, double hi,
                                               std::span<const double> breakpoints, const QuadratureSpec &spec,
                                               bool log_singular_lo = false);

    // Integral over [0, inf) of an integrand carrying a Gaussian envelope exp(-damping z^2),
    // such as the product-of-J0 form of the SOSF density. The range is cut where the
    // envelope tail drops below truncation_eps, then split into panels one oscillation
    // period long (2 pi / max_frequency) that are integrated adaptively.
    // damping == 0 is refused: without the envelope the integral does not converge absolutely.
    QuadratureResult integrate_oscillatory_legacy(const Integrand &g, double damping, double max_frequency,
                                                  const QuadratureSpec &spec);
} // namespace sosf::quad

#endif
