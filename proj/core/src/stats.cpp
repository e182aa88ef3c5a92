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

#include "sosf/stats.hpp"
#include "sosf/rice.hpp"
#include "sosf/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sosf
{
    namespace
    {
        using specfun::bessel_i0_scaled;
        using specfun::bessel_i1_scaled;
        using specfun::bessel_k0;
        using specfun::bessel_k0_scaled;
        using specfun::bessel_k1;
        using specfun::bessel_k1_scaled;
        using specfun::exp_integral_e1_scaled;
        using specfun::gen_inc_gamma_scaled;

        double rice_k(const ChannelSpec &spec)
        {
            const double b = spec.beta();
            return b / (1.0 - b);
        }

        void check_gamma(double gamma, const char *fn)
        {
            if (!(gamma >= 0.0) || std::isnan(gamma))
                throw std::domain_error(std::string(fn) + ": SNR must be non-negative");
        }

        double static_cdf(const ChannelSpec &spec, double gamma) { return gamma < spec.mean_snr() ? 0.0 : 1.0; }

        // --- closed-form densities ------------------------------------------------------

        double pdf_drlos(const ChannelSpec &spec, double gamma)
        {
            // alpha + beta = 1, so 1 - beta plays the role of alpha.
            const double b = spec.beta();
            const double om = 1.0 - b;
            const double mean = spec.mean_snr();
            const double w = 2.0 * std::sqrt(b / om);
            const double u = 2.0 * std::sqrt(gamma / (om * mean));
            const double pre = 2.0 / (om * mean);
            if (gamma < b * mean)
            {
                // I0(u) K0(w), u < w
                return pre * bessel_i0_scaled(u) * bessel_k0_scaled(w) * std::exp(u - w);
            }
            // K0(u) I0(w), u >= w
            return pre * bessel_k0_scaled(u) * bessel_i0_scaled(w) * std::exp(w - u);
        }

        double pdf_rdr(const ChannelSpec &spec, double gamma)
        {
            const double a = spec.alpha();
            const double mean = spec.mean_snr();
            const double x = (1.0 - a) / a;
            return gen_inc_gamma_scaled(0, x, gamma / (a * mean)) / (a * mean);
        }

        double pdf_dr(const ChannelSpec &spec, double gamma)
        {
            const double mean = spec.mean_snr();
            return 2.0 / mean * bessel_k0(2.0 * std::sqrt(gamma / mean));
        }

        // --- closed-form distribution functions -----------------------------------------

        double cdf_drlos(const ChannelSpec &spec, double gamma)
        {
            const double b = spec.beta();
            const double om = 1.0 - b;
            const double mean = spec.mean_snr();
            const double w = 2.0 * std::sqrt(b / om);
            const double u = 2.0 * std::sqrt(gamma / (om * mean));
            const double root_g = std::sqrt(gamma / mean);
            const double pre = 2.0 / std::sqrt(om);
            if (gamma < b * mean)
                return pre * root_g * bessel_k0_scaled(w) * bessel_i1_scaled(u) * std::exp(u - w);
            const double c = w * bessel_k0_scaled(w) * bessel_i1_scaled(w);
            const double i0k1_ww = bessel_i0_scaled(w) * bessel_k1_scaled(w);
            const double i0k1_wu = bessel_i0_scaled(w) * bessel_k1_scaled(u) * std::exp(w - u);
            return c + pre * (std::sqrt(b) * i0k1_ww - root_g * i0k1_wu);
        }

        double survival_drlos(const ChannelSpec &spec, double gamma)
        {
            const double b = spec.beta();
            const double mean = spec.mean_snr();
            if (gamma < b * mean)
                return 1.0 - cdf_drlos(spec, gamma);
            // c + pre sqrt(beta) I0(w) K1(w) = 1, leaving the last term.
            const double om = 1.0 - b;
            const double w = 2.0 * std::sqrt(b / om);
            const double u = 2.0 * std::sqrt(gamma / (om * mean));
            return 2.0 / std::sqrt(om) * std::sqrt(gamma / mean) * bessel_i0_scaled(w) * bessel_k1_scaled(u) *
                   std::exp(w - u);
        }

        double survival_rdr(const ChannelSpec &spec, double gamma)
        {
            const double a = spec.alpha();
            const double x = (1.0 - a) / a;
            return gen_inc_gamma_scaled(1, x, gamma / (a * spec.mean_snr()));
        }

        double survival_dr(const ChannelSpec &spec, double gamma)
        {
            if (gamma == 0.0)
                return 1.0;
            const double r = std::sqrt(gamma / spec.mean_snr());
            return 2.0 * r * bessel_k1(2.0 * r);
        }

        // --- closed-form MGFs -----------------------------------------------------------

        double mgf_sosf_closed(const ChannelSpec &spec, double s)
        {
            const double a = spec.alpha();
            const double b = spec.beta();
            const double mean = spec.mean_snr();
            const double sga = s * mean * a;
            // Lower limit of the incomplete gamma integral; positive for every s < 0.
            const double x = (s * spec.params().rayleigh_fraction() * mean - 1.0) / sga;
            if (!(x > 0.0))
                throw std::domain_error("mgf: generalized incomplete gamma argument is not positive");
            return -1.0 / sga * gen_inc_gamma_scaled(0, x, b / a);
        }

        double mgf_drlos_closed(const ChannelSpec &spec, double s)
        {
            const double a = spec.alpha();
            const double sga = s * spec.mean_snr() * a;
            return -1.0 / sga * gen_inc_gamma_scaled(0, -1.0 / sga, (1.0 - a) / a);
        }

        double mgf_rdr_closed(const ChannelSpec &spec, double s)
        {
            const double a = spec.alpha();
            const double mean = spec.mean_snr();
            const double sga = s * mean * a;
            const double x = (s * (1.0 - a) * mean - 1.0) / sga;
            return -1.0 / sga * exp_integral_e1_scaled(x);
        }

        double mgf_dr_closed(const ChannelSpec &spec, double s)
        {
            const double sg = s * spec.mean_snr();
            return -1.0 / sg * exp_integral_e1_scaled(-1.0 / sg);
        }

        bool at_dr_point(const ChannelSpec &spec, double tol)
        {
            return std::abs(spec.alpha() - 1.0) <= tol && spec.beta() <= tol;
        }

        double mixture_or_throw(const RicianMetric &metric, const ChannelSpec &spec, const EvalPolicy &policy)
        {
            return average_over_mixture(metric, spec, policy.quad);
        }
    } // namespace

    Route resolve_route(const ChannelSpec &spec, const EvalPolicy &policy)
    {
        Route r;
        r.kind = classify(spec.params(), policy.classify_tol);
        if (r.kind == FadingKind::Static)
        {
            r.closed_form = true;
            return r;
        }
        switch (policy.dispatch)
        {
        case Dispatch::Auto:
            r.closed_form = r.kind != FadingKind::Sosf;
            break;
        case Dispatch::ForceGeneral:
            r.closed_form = false;
            break;
        case Dispatch::ForceClosedForm:
            r.closed_form = true;
            break;
        }
        return r;
    }

    quad::QuadratureResult average_over_mixture_ex(const RicianMetric &metric, const ChannelSpec &spec,
                                                   const quad::QuadratureSpec &quad)
    {
        auto integrand = [&metric, &spec](double x) {
            const ConditionalRice c = conditional_rice(spec, x);
            return metric(c.mean_snr, c.k_factor);
        };
        quad::QuadratureResult r = quad::integrate_exp_mixture(integrand, quad);
        if (r.converged || quad.method != quad::Method::GaussLaguerre)
            return r;

        auto fallback = quad::QuadratureSpec::adaptive_truncated(quad.rel_tol, 1e-16, 200000);
        fallback.abs_tol = quad.abs_tol;
        quad::QuadratureResult r2 = quad::integrate_exp_mixture(integrand, fallback);
        r2.nodes_used += r.nodes_used;
        return r2;
    }

    double average_over_mixture(const RicianMetric &metric, const ChannelSpec &spec,
                                const quad::QuadratureSpec &quad)
    {
        const quad::QuadratureResult r = average_over_mixture_ex(metric, spec, quad);
        if (!r.converged)
            throw quad::quadrature_error("average_over_mixture: quadrature did not converge (estimated error " +
                                         std::to_string(r.est_error) + " for value " + std::to_string(r.value) +
                                         ")");
        return r.value;
    }

    double pdf(const ChannelSpec &spec, double gamma, const EvalPolicy &policy)
    {
        check_gamma(gamma, "pdf");
        const Route route = resolve_route(spec, policy);
        if (route.kind == FadingKind::Static)
            throw degenerate_distribution_error("pdf: the static channel is a point mass at the mean SNR");
        if (gamma == 0.0 && at_dr_point(spec, policy.classify_tol))
        {
            if (policy.infinite_density_at_zero)
                return std::numeric_limits<double>::infinity();
            throw divergence_error("pdf: the double-Rayleigh density diverges logarithmically at gamma = 0");
        }

        if (!route.closed_form)
            return mixture_or_throw([gamma](double m, double k) { return rice::pdf(gamma, k, m); }, spec, policy);

        switch (route.kind)
        {
        case FadingKind::Rayleigh:
        case FadingKind::Rice:
            return rice::pdf(gamma, rice_k(spec), spec.mean_snr());
        case FadingKind::Drlos:
            return pdf_drlos(spec, gamma);
        case FadingKind::Rdr:
            return pdf_rdr(spec, gamma);
        case FadingKind::Dr:
            return pdf_dr(spec, gamma);
        default:
            throw std::domain_error("pdf: no closed form for the general SOSF density");
        }
    }

    double survival(const ChannelSpec &spec, double gamma, const EvalPolicy &policy)
    {
        check_gamma(gamma, "survival");
        const Route route = resolve_route(spec, policy);
        if (route.kind == FadingKind::Static)
            return 1.0 - static_cdf(spec, gamma);
        if (gamma == 0.0)
            return 1.0;
        if (!route.closed_form)
            return mixture_or_throw([gamma](double m, double k) { return rice::survival(gamma, k, m); }, spec,
                                    policy);
        switch (route.kind)
        {
        case FadingKind::Rayleigh:
        case FadingKind::Rice:
            return rice::survival(gamma, rice_k(spec), spec.mean_snr());
        case FadingKind::Drlos:
            return survival_drlos(spec, gamma);
        case FadingKind::Rdr:
            return survival_rdr(spec, gamma);
        case FadingKind::Dr:
            return survival_dr(spec, gamma);
        default:
            throw std::domain_error("survival: no closed form for the general SOSF distribution");
        }
    }

    double cdf(const ChannelSpec &spec, double gamma, const EvalPolicy &policy)
    {
        check_gamma(gamma, "cdf");
        const Route route = resolve_route(spec, policy);
        if (route.kind == FadingKind::Static)
            return static_cdf(spec, gamma);
        if (gamma == 0.0)
            return 0.0;
        if (!route.closed_form)
            return mixture_or_throw([gamma](double m, double k) { return rice::cdf(gamma, k, m); }, spec, policy);
        switch (route.kind)
        {
        case FadingKind::Rayleigh:
        case FadingKind::Rice:
            return rice::cdf(gamma, rice_k(spec), spec.mean_snr());
        case FadingKind::Drlos:
            return cdf_drlos(spec, gamma);
        case FadingKind::Rdr:
            return 1.0 - survival_rdr(spec, gamma);
        case FadingKind::Dr:
            return 1.0 - survival_dr(spec, gamma);
        default:
            throw std::domain_error("cdf: no closed form for the general SOSF distribution");
        }
    }

    double outage_probability(const ChannelSpec &spec, double gamma_th, const EvalPolicy &policy)
    {
        return cdf(spec, gamma_th, policy);
    }

    double mgf(const ChannelSpec &spec, double s, const EvalPolicy &policy)
    {
        if (!(s < 0.0))
            throw std::domain_error("mgf: only s < 0 is supported");
        const Route route = resolve_route(spec, policy);
        if (route.kind == FadingKind::Static)
            return std::exp(s * spec.mean_snr());
        // The general MGF has a closed form too, so Auto never integrates.
        if (policy.dispatch == Dispatch::ForceGeneral)
            return mixture_or_throw([s](double m, double k) { return rice::mgf(s, k, m); }, spec, policy);

        switch (route.kind)
        {
        case FadingKind::Rayleigh:
        case FadingKind::Rice:
            return rice::mgf(s, rice_k(spec), spec.mean_snr());
        case FadingKind::Drlos:
            return mgf_drlos_closed(spec, s);
        case FadingKind::Rdr:
            return mgf_rdr_closed(spec, s);
        case FadingKind::Dr:
            return mgf_dr_closed(spec, s);
        default:
            return mgf_sosf_closed(spec, s);
        }
    }

    quad::QuadratureSpec default_legacy_quadrature()
    {
        return quad::QuadratureSpec::adaptive_finite(1e-10, 1e-12, 400000);
    }

    double pdf_legacy(const ChannelSpec &spec, double gamma, const quad::QuadratureSpec &quad)
    {
        check_gamma(gamma, "pdf_legacy");
        const double a = spec.alpha();
        const double b = spec.beta();
        const double mean = spec.mean_snr();
        const double diffuse = 1.0 - a - b;
        if (!(diffuse > 0.0))
            throw std::domain_error("pdf_legacy: unsupported region alpha + beta = 1 (undamped oscillatory integral)");
        const double damping = mean * diffuse / 4.0;
        const double k1 = std::sqrt(gamma);
        const double k2 = std::sqrt(b * mean);
        auto g = [=](double z) {
            const double j = std::cyl_bessel_j(0.0, k1 * z) * std::cyl_bessel_j(0.0, k2 * z);
            return 2.0 * j / (4.0 + a * mean * z * z) * std::exp(-damping * z * z) * z;
        };
        const auto r = quad::integrate_oscillatory_legacy(g, damping, std::max(k1, k2), quad);
        if (!r.converged)
            throw quad::quadrature_error("pdf_legacy: oscillatory quadrature did not converge");
        return r.value;
    }

    TailApprox tail_coefficient(const ChannelSpec &spec, double classify_tol)
    {
        const FadingKind kind = classify(spec.params(), classify_tol);
        TailApprox t;
        t.diversity_d = 1.0;
        switch (kind)
        {
        case FadingKind::Static:
            throw degenerate_distribution_error("tail_coefficient: the static channel has no low-SNR tail");
        case FadingKind::Dr:
            throw divergence_error("tail_coefficient: diverges at the double-Rayleigh point; the DR CDF tail is "
                                   "logarithmic, F ~ (g/mean) ln(mean/g), not of diversity-order form");
        case FadingKind::Rayleigh:
        case FadingKind::Rice:
            t.coeff_a = rice::tail_coefficient(rice_k(spec));
            return t;
        default:
        {
            const double a = spec.alpha();
            const double x = spec.params().rayleigh_fraction() / a;
            t.coeff_a = gen_inc_gamma_scaled(0, x, spec.beta() / a) / a;
            return t;
        }
        }
    }

    double tail_cdf_approx(const ChannelSpec &spec, double gamma, double classify_tol)
    {
        check_gamma(gamma, "tail_cdf_approx");
        const TailApprox t = tail_coefficient(spec, classify_tol);
        return t.coeff_a / t.diversity_d * std::pow(gamma / spec.mean_snr(), t.diversity_d);
    }

    double upper_tail_point(const ChannelSpec &spec, double tail_mass, const EvalPolicy &policy)
    {
        if (!(tail_mass > 0.0 && tail_mass < 1.0))
            throw std::invalid_argument("upper_tail_point: tail_mass must lie in (0, 1)");
        double g = spec.mean_snr();
        for (int i = 0; i < 200; ++i)
        {
            if (survival(spec, g, policy) <= tail_mass)
                return g;
            g *= 2.0;
        }
        return g;
    }
} // namespace sosf
