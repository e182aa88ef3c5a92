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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>

namespace sosf::quad
{
    namespace
    {
        // 15-point Kronrod abscissae on [-1, 1] (non-negative half) and weights, with the
        // embedded 7-point Gauss weights for the odd-indexed abscissae.
        constexpr std::array<double, 8> xgk = {
            0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
        constexpr std::array<double, 8> wgk = {
            0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
        constexpr std::array<double, 4> wg = {
            0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
            0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

        constexpr double epmach = std::numeric_limits<double>::epsilon();
        constexpr double uflow = std::numeric_limits<double>::min();

        struct Panel
        {
            double lo;
            double hi;
            double value;
            double error;
        };

        struct PanelOrder
        {
            bool operator()(const Panel &a, const Panel &b) const { return a.error < b.error; }
        };

        double checked(double v)
        {
            if (std::isnan(v))
                throw quadrature_error("integrand returned NaN");
            return v;
        }

        // One Gauss-Kronrod 7/15 panel with the QUADPACK error heuristic.
        Panel gk15(const Integrand &f, double lo, double hi)
        {
            const double center = 0.5 * (lo + hi);
            const double half = 0.5 * (hi - lo);
            const double fc = checked(f(center));
            double resk = fc * wgk[7];
            double resg = fc * wg[3];
            double resabs = std::abs(resk);
            std::array<double, 7> f1{}, f2{};
            for (int j = 0; j < 7; ++j)
            {
                const double dx = half * xgk[j];
                f1[j] = checked(f(center - dx));
                f2[j] = checked(f(center + dx));
                resk += wgk[j] * (f1[j] + f2[j]);
                resabs += wgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
                if (j % 2 == 1)
                    resg += wg[j / 2] * (f1[j] + f2[j]);
            }
            const double mean = 0.5 * resk;
            double resasc = wgk[7] * std::abs(fc - mean);
            for (int j = 0; j < 7; ++j)
                resasc += wgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

            const double result = resk * half;
            resabs *= std::abs(half);
            resasc *= std::abs(half);
            double err = std::abs((resk - resg) * half);
            if (resasc != 0.0 && err != 0.0)
                err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
            if (resabs > uflow / (50.0 * epmach))
                err = std::max(epmach * 50.0 * resabs, err);
            return {lo, hi, result, err};
        }

        QuadratureResult adaptive(const Integrand &f, std::vector<double> edges, const QuadratureSpec &spec)
        {
            std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
            double total = 0.0;
            double total_err = 0.0;
            int evals = 0;
            for (std::size_t i = 0; i + 1 < edges.size(); ++i)
            {
                Panel p = gk15(f, edges[i], edges[i + 1]);
                evals += 15;
                total += p.value;
                total_err += p.error;
                heap.push(p);
            }

            // Panels too narrow to split further are parked here.
            std::vector<Panel> frozen;
            bool converged = false;
            while (true)
            {
                if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)))
                {
                    converged = true;
                    break;
                }
                if (heap.empty() || evals + 30 > spec.max_nodes)
                    break;
                Panel worst = heap.top();
                heap.pop();
                const double mid = 0.5 * (worst.lo + worst.hi);
                if (!(mid > worst.lo && mid < worst.hi) ||
                    (worst.hi - worst.lo) < 100.0 * epmach * std::max(std::abs(worst.lo), std::abs(worst.hi)))
                {
                    frozen.push_back(worst);
                    continue;
                }
                Panel left = gk15(f, worst.lo, mid);
                Panel right = gk15(f, mid, worst.hi);
                evals += 30;
                total += left.value + right.value - worst.value;
                total_err += left.error + right.error - worst.error;
                heap.push(left);
                heap.push(right);
            }

            // Re-sum to remove drift of the running totals.
            double value = 0.0;
            double err = 0.0;
            for (const auto &p : frozen)
            {
                value += p.value;
                err += p.error;
            }
            while (!heap.empty())
            {
                value += heap.top().value;
                err += heap.top().error;
                heap.pop();
            }
            QuadratureResult r;
            r.value = value;
            r.est_error = err;
            r.nodes_used = evals;
            r.converged = converged && err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
            return r;
        }

        std::vector<double> make_edges(double lo, double hi, std::span<const double> breakpoints)
        {
            std::vector<double> edges{lo};
            std::vector<double> inner;
            for (double b : breakpoints)
                if (b > lo && b < hi)
                    inner.push_back(b);
            std::sort(inner.begin(), inner.end());
            inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
            edges.insert(edges.end(), inner.begin(), inner.end());
            edges.push_back(hi);
            return edges;
        }

        std::unique_ptr<LaguerreRule> build_laguerre(int n)
        {
            // Newton iteration on L_n with the classical asymptotic starting values;
            // long double keeps the small weights accurate for n in the low hundreds.
            auto rule = std::make_unique<LaguerreRule>();
            rule->nodes.resize(static_cast<std::size_t>(n));
            rule->weights.resize(static_cast<std::size_t>(n));
            const long double nn = n;
            long double z = 0.0L;
            for (int i = 0; i < n; ++i)
            {
                if (i == 0)
                    z = 3.0L / (1.0L + 2.4L * nn);
                else if (i == 1)
                    z += 15.0L / (1.0L + 2.5L * nn);
                else
                {
                    const long double ai = i - 1;
                    z += ((1.0L + 2.55L * ai) / (1.9L * ai)) * (z - static_cast<long double>(rule->nodes[i - 2]));
                }
                long double p1 = 1.0L, p2 = 0.0L, pp = 0.0L;
                for (int it = 0; it < 100; ++it)
                {
                    p1 = 1.0L;
                    p2 = 0.0L;
                    for (int j = 1; j <= n; ++j)
                    {
                        const long double p3 = p2;
                        p2 = p1;
                        p1 = ((2.0L * j - 1.0L - z) * p2 - (j - 1.0L) * p3) / j;
                    }
                    pp = nn * (p1 - p2) / z;
                    const long double z1 = z;
                    z = z1 - p1 / pp;
                    if (std::fabs(z - z1) <= 4.0L * std::numeric_limits<long double>::epsilon() * std::fabs(z))
                        break;
                }
                // Re-evaluate at the converged node for the weight.
                p1 = 1.0L;
                p2 = 0.0L;
                for (int j = 1; j <= n; ++j)
                {
                    const long double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0L * j - 1.0L - z) * p2 - (j - 1.0L) * p3) / j;
                }
                pp = nn * (p1 - p2) / z;
                rule->nodes[i] = static_cast<double>(z);
                rule->weights[i] = static_cast<double>(-1.0L / (pp * nn * p2));
            }
            return rule;
        }

        double laguerre_sum(const Integrand &f, const LaguerreRule &rule)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                s += rule.weights[i] * checked(f(rule.nodes[i]));
            return s;
        }
    } // namespace

    std::string to_string(Method m)
    {
        switch (m)
        {
        case Method::GaussLaguerre:
            return "gauss-laguerre";
        case Method::AdaptiveTruncated:
            return "adaptive-truncated";
        case Method::AdaptiveFinite:
            return "adaptive-finite";
        }
        return "unknown";
    }

    void QuadratureSpec::validate() const
    {
        if (!(rel_tol > 0.0 && rel_tol < 1.0))
            throw std::invalid_argument("QuadratureSpec: rel_tol must lie in (0, 1)");
        if (!(abs_tol > 0.0 && abs_tol < 1.0))
            throw std::invalid_argument("QuadratureSpec: abs_tol must lie in (0, 1)");
        if (max_nodes < 15)
            throw std::invalid_argument("QuadratureSpec: max_nodes must be at least 15");
        if (!(truncation_eps > 0.0 && truncation_eps < 1.0))
            throw std::invalid_argument("QuadratureSpec: truncation_eps must lie in (0, 1)");
    }

    QuadratureSpec QuadratureSpec::gauss_laguerre(int nodes, double rel_tol)
    {
        QuadratureSpec s;
        s.method = Method::GaussLaguerre;
        s.max_nodes = nodes;
        s.rel_tol = rel_tol;
        return s;
    }

    QuadratureSpec QuadratureSpec::adaptive_truncated(double rel_tol, double truncation_eps, int max_evals)
    {
        QuadratureSpec s;
        s.method = Method::AdaptiveTruncated;
        s.rel_tol = rel_tol;
        s.truncation_eps = truncation_eps;
        s.max_nodes = max_evals;
        return s;
    }

    QuadratureSpec QuadratureSpec::adaptive_finite(double rel_tol, double abs_tol, int max_evals)
    {
        QuadratureSpec s;
        s.method = Method::AdaptiveFinite;
        s.rel_tol = rel_tol;
        s.abs_tol = abs_tol;
        s.max_nodes = max_evals;
        return s;
    }

    const LaguerreRule &gauss_laguerre_rule(int n)
    {
        if (n < 2)
            throw std::invalid_argument("gauss_laguerre_rule: need at least 2 nodes");
        static std::mutex mtx;
        static std::map<int, std::unique_ptr<LaguerreRule>> cache;
        std::lock_guard<std::mutex> lock(mtx);
        auto &slot = cache[n];
        if (!slot)
            slot = build_laguerre(n);
        return *slot;
    }

    QuadratureResult integrate_exp_mixture(const Integrand &f, const QuadratureSpec &spec)
    {
        spec.validate();
        if (spec.method == Method::GaussLaguerre)
        {
            const int n = spec.max_nodes;
            const int n2 = std::max(2, (3 * n) / 4);
            const double q = laguerre_sum(f, gauss_laguerre_rule(n));
            const double q2 = laguerre_sum(f, gauss_laguerre_rule(n2));
            QuadratureResult r;
            r.value = q;
            r.est_error = std::abs(q - q2);
            r.nodes_used = n + n2;
            r.converged = r.est_error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(q));
            return r;
        }

        const double x_max = -std::log(spec.truncation_eps);
        const std::array<double, 4> breaks = {0.5, 2.0, 6.0, 14.0};
        auto weighted = [&f](double x) { return f(x) * std::exp(-x); };
        QuadratureSpec inner = spec;
        inner.method = Method::AdaptiveFinite;
        return adaptive(weighted, make_edges(0.0, x_max, breaks), inner);
    }

    QuadratureResult integrate_finite_adaptive(const Integrand &f, double lo, double hi, const QuadratureSpec &spec,
                                               bool log_singular_lo)
    {
        return integrate_finite_adaptive(f, lo, hi, std::span<const double>{}, spec, log_singular_lo);
    }

    QuadratureResult integrate_finite_adaptive(const Integrand &f, double lo, double hi,
                                               std::span<const double> breakpoints, const QuadratureSpec &spec,
                                               bool log_singular_lo)
    {
        spec.validate();
        if (!(lo < hi))
            throw std::invalid_argument("integrate_finite_adaptive: need lo < hi");
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw std::invalid_argument("integrate_finite_adaptive: bounds must be finite");

        if (!log_singular_lo)
            return adaptive(f, make_edges(lo, hi, breakpoints), spec);

        // x = lo + w u^3, dx = 3 w u^2 du, u in [0, 1]
        const double w = hi - lo;
        auto g = [&f, lo, w](double u) { return f(lo + w * u * u * u) * 3.0 * w * u * u; };
        std::vector<double> mapped;
        mapped.reserve(breakpoints.size());
        for (double b : breakpoints)
            if (b > lo && b < hi)
                mapped.push_back(std::cbrt((b - lo) / w));
        return adaptive(g, make_edges(0.0, 1.0, mapped), spec);
    }

    QuadratureResult integrate_oscillatory_legacy(const Integrand &g, double damping, double max_frequency,
                                                  const QuadratureSpec &spec)
    {
        spec.validate();
        if (!(damping > 0.0))
            throw std::domain_error("integrate_oscillatory_legacy: zero Gaussian damping (alpha + beta = 1); "
                                    "the product-of-J0 integral is only defined for 1 - alpha - beta > 0");
        if (!(max_frequency >= 0.0) || !std::isfinite(max_frequency))
            throw std::invalid_argument("integrate_oscillatory_legacy: max_frequency must be finite and >= 0");

        // |g| <= z exp(-c z^2) / 2, so the tail beyond Z is below exp(-c Z^2) / (4 c).
        const double log_term = std::log(1.0 / (4.0 * damping * spec.truncation_eps));
        const double z_max = std::sqrt(std::max(log_term, 1.0) / damping);

        std::vector<double> breaks;
        if (max_frequency > 0.0)
        {
            const double period = 2.0 * std::numbers::pi / max_frequency;
            for (double z = period; z < z_max; z += period)
                breaks.push_back(z);
        }
        QuadratureSpec inner = spec;
        inner.method = Method::AdaptiveFinite;
        inner.max_nodes = std::max(spec.max_nodes, static_cast<int>(15 * (breaks.size() + 1) * 40));
        return adaptive(g, make_edges(0.0, z_max, breaks), inner);
    }
} // namespace sosf::quad
