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
#include "sosf/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sosf
{
    namespace
    {
        constexpr double kLog2e = std::numbers::log2e;
        constexpr double kGammaE = std::numbers::egamma;
        // Below this LOS fraction the E1 form is a difference of two large terms.
        constexpr double kSmallBeta = 1e-10;
        constexpr double kUpperTailMass = 1e-12;
        constexpr double kLowerCut = 1e-18;

        quad::QuadratureResult mixture(const quad::Integrand &f, const quad::QuadratureSpec &spec)
        {
            quad::QuadratureResult r = quad::integrate_exp_mixture(f, spec);
            if (r.converged || spec.method != quad::Method::GaussLaguerre)
                return r;
            auto fallback = quad::QuadratureSpec::adaptive_truncated(spec.rel_tol, 1e-17, 200000);
            fallback.abs_tol = spec.abs_tol;
            quad::QuadratureResult r2 = quad::integrate_exp_mixture(f, fallback);
            r2.nodes_used += r.nodes_used;
            return r2;
        }

        CapacityLoss loss_integral(const ChannelSpec &spec, const quad::QuadratureSpec &quad)
        {
            const double a = spec.alpha();
            const double b = spec.beta();
            const double c = spec.params().rayleigh_fraction();
            CapacityLoss out;
            out.route = FadingKind::Sosf;
            quad::QuadratureResult r;
            if (b < kSmallBeta)
            {
                // E1(z) = -gamma_e - ln z + O(z)
                r = mixture([a, c](double x) { return std::log(c + a * x); }, quad);
                out.t_bits = kLog2e * (kGammaE - r.value);
            }
            else
            {
                r = mixture(
                    [a, b, c](double x) {
                        const double d = c + a * x;
                        if (!(d > 0.0))
                            return 0.0;
                        const double z = b / d;
                        return z > 745.0 ? 0.0 : specfun::exp_integral_e1(z);
                    },
                    quad);
                out.t_bits = -std::log2(b) - kLog2e * r.value;
            }
            if (!r.converged)
                throw quad::quadrature_error("capacity_loss: mixture integral did not converge");
            out.est_error = kLog2e * r.est_error;
            return out;
        }

        double loss_at(double alpha, double beta, const quad::QuadratureSpec &quad)
        {
            return capacity_loss(ChannelSpec(SosfParams(alpha, beta), 1.0), quad).t_bits;
        }
    } // namespace

    std::string_view to_string(CapacityMethod m)
    {
        switch (m)
        {
        case CapacityMethod::ExactQuadrature:
            return "exact";
        case CapacityMethod::AsymptoticHighSnr:
            return "asymptotic";
        case CapacityMethod::MonteCarlo:
            return "montecarlo";
        }
        return "unknown";
    }

    quad::QuadratureSpec default_capacity_quadrature() { return quad::QuadratureSpec::adaptive_finite(1e-10, 1e-13, 20000); }

    quad::QuadratureSpec default_loss_quadrature() { return quad::QuadratureSpec::gauss_laguerre(64, 1e-11); }

    CapacityResult capacity_exact(const ChannelSpec &spec, const quad::QuadratureSpec &quad, const EvalPolicy &policy)
    {
        CapacityResult out;
        out.method = CapacityMethod::ExactQuadrature;
        const double mean = spec.mean_snr();
        if (classify(spec.params(), policy.classify_tol) == FadingKind::Static)
        {
            out.bits_per_use = std::log2(1.0 + mean);
            return out;
        }

        const double upper = upper_tail_point(spec, kUpperTailMass, policy);
        const double lower = mean * kLowerCut;
        // gamma = e^u spreads the low-SNR tail and tames the log singularity of the DR density.
        auto f = [&spec, &policy](double u) {
            const double g = std::exp(u);
            return std::log2(1.0 + g) * pdf(spec, g, policy) * g;
        };
        std::vector<double> breaks{std::log(mean * 1e-6), std::log(mean * 1e-3), std::log(mean)};
        if (spec.beta() > 0.0)
            breaks.push_back(std::log(spec.beta() * mean));
        std::sort(breaks.begin(), breaks.end());
        const auto r = quad::integrate_finite_adaptive(f, std::log(lower), std::log(upper), breaks, quad);
        if (!r.converged)
            throw quad::quadrature_error("capacity_exact: outer integral did not converge");

        // Above the cut: int log2(1+g) pdf <= S(U) (log2(1+U) + log2 e), with S(U) <= 1e-12.
        // Below it the contribution is of order (lower / mean) log2(1 + lower), negligible.
        const double tail = survival(spec, upper, policy) * (std::log2(1.0 + upper) + kLog2e);
        out.bits_per_use = r.value;
        out.est_error = r.est_error + tail;
        return out;
    }

    CapacityLoss capacity_loss(const ChannelSpec &spec, const quad::QuadratureSpec &quad, Dispatch dispatch,
                               double classify_tol)
    {
        const FadingKind kind = classify(spec.params(), classify_tol);
        if (dispatch == Dispatch::ForceGeneral)
            return loss_integral(spec, quad);
        if (kind == FadingKind::Sosf)
        {
            if (dispatch == Dispatch::ForceClosedForm)
                throw std::domain_error("capacity_loss: no closed form for an interior SOSF point");
            return loss_integral(spec, quad);
        }

        const double a = spec.alpha();
        const double b = spec.beta();
        CapacityLoss out;
        out.route = kind;
        switch (kind)
        {
        case FadingKind::Static:
            out.t_bits = 0.0;
            break;
        case FadingKind::Rayleigh:
            out.t_bits = kLog2e * kGammaE;
            break;
        case FadingKind::Dr:
            out.t_bits = 2.0 * kLog2e * kGammaE;
            break;
        case FadingKind::Rice:
            out.t_bits = -std::log2(b) - kLog2e * specfun::exp_integral_e1(b / (1.0 - b));
            break;
        case FadingKind::Drlos:
            out.t_bits = -std::log2(b) - kLog2e * 2.0 * specfun::bessel_k0(2.0 * std::sqrt(b / (1.0 - b)));
            break;
        case FadingKind::Rdr:
        {
            const double x = (1.0 - a) / a;
            out.t_bits = kLog2e * kGammaE - std::log2(1.0 - a) - kLog2e * specfun::exp_integral_e1_scaled(x);
            break;
        }
        default:
            break;
        }
        return out;
    }

    CapacityResult capacity_asymptotic(const ChannelSpec &spec, const quad::QuadratureSpec &quad, Dispatch dispatch)
    {
        const CapacityLoss t = capacity_loss(spec, quad, dispatch);
        CapacityResult out;
        out.method = CapacityMethod::AsymptoticHighSnr;
        out.bits_per_use = std::log2(spec.mean_snr()) - t.t_bits;
        out.est_error = t.est_error;
        return out;
    }

    double capacity_loss_dalpha(double beta, double alpha, const quad::QuadratureSpec &quad, double h, bool richardson)
    {
        if (!(h >= 1e-6 && h <= 1e-3))
            throw std::invalid_argument("capacity_loss_dalpha: step h must lie in [1e-6, 1e-3]");
        const SosfParams centre(alpha, beta); // validates the point itself
        const double alpha_max = 1.0 - beta;
        const bool lo_ok = alpha - h >= 0.0;
        const bool hi_ok = alpha + h <= alpha_max;

        if (lo_ok && hi_ok)
        {
            auto central = [&](double step) {
                return (loss_at(alpha + step, beta, quad) - loss_at(alpha - step, beta, quad)) / (2.0 * step);
            };
            const double d1 = central(h);
            if (!richardson)
                return d1;
            return (4.0 * central(0.5 * h) - d1) / 3.0;
        }
        if (hi_ok)
            return (loss_at(alpha + h, beta, quad) - loss_at(alpha, beta, quad)) / h;
        if (lo_ok)
            return (loss_at(alpha, beta, quad) - loss_at(alpha - h, beta, quad)) / h;
        throw std::domain_error("capacity_loss_dalpha: the alpha range 1 - beta is narrower than the step h");
    }
} // namespace sosf
