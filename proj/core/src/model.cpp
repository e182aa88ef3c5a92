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

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sosf
{
    namespace
    {
        // Slack for rounding in alpha + beta computed from normalized weights.
        constexpr double kTriangleSlack = 1e-12;
    } // namespace

    SosfParams::SosfParams(double alpha, double beta) : alpha_(alpha), beta_(beta)
    {
        if (!std::isfinite(alpha) || !std::isfinite(beta))
            throw std::domain_error("SOSF parameters must be finite");
        if (alpha < 0.0)
        {
            std::ostringstream os;
            os << "triangle constraint violated: alpha >= 0 (alpha = " << alpha << ")";
            throw std::domain_error(os.str());
        }
        if (beta < 0.0)
        {
            std::ostringstream os;
            os << "triangle constraint violated: beta >= 0 (beta = " << beta << ")";
            throw std::domain_error(os.str());
        }
        if (alpha + beta > 1.0 + kTriangleSlack)
        {
            std::ostringstream os;
            os << "triangle constraint violated: alpha + beta <= 1 (alpha + beta = " << alpha + beta << ")";
            throw std::domain_error(os.str());
        }
    }

    double SosfParams::rayleigh_fraction() const noexcept
    {
        const double r = 1.0 - alpha_ - beta_;
        return r > 0.0 ? r : 0.0;
    }

    WeightTriple WeightTriple::normalized() const
    {
        const double norm = std::sqrt(w0 * w0 + w1 * w1 + w2 * w2);
        if (!(norm > 0.0))
            throw std::domain_error("weights: at least one weight must be positive");
        return {w0 / norm, w1 / norm, w2 / norm};
    }

    ChannelSpec::ChannelSpec(SosfParams params, double mean_snr) : params_(params), mean_snr_(mean_snr)
    {
        if (!(mean_snr > 0.0) || !std::isfinite(mean_snr))
            throw std::domain_error("mean SNR must be finite and positive");
    }

    std::string_view to_string(FadingKind kind)
    {
        switch (kind)
        {
        case FadingKind::Sosf:
            return "sosf";
        case FadingKind::Rice:
            return "rice";
        case FadingKind::Drlos:
            return "drlos";
        case FadingKind::Rdr:
            return "rdr";
        case FadingKind::Dr:
            return "dr";
        case FadingKind::Rayleigh:
            return "rayleigh";
        case FadingKind::Static:
            return "static";
        }
        return "unknown";
    }

    SosfParams params_from_weights(const WeightTriple &w)
    {
        if (!std::isfinite(w.w0) || !std::isfinite(w.w1) || !std::isfinite(w.w2))
            throw std::domain_error("weights must be finite");
        if (w.w0 < 0.0 || w.w1 < 0.0 || w.w2 < 0.0)
            throw std::domain_error("weights must be non-negative");
        const double p0 = w.w0 * w.w0;
        const double p1 = w.w1 * w.w1;
        const double p2 = w.w2 * w.w2;
        const double total = p0 + p1 + p2;
        if (!(total > 0.0))
            throw std::domain_error("weights: at least one weight must be positive");
        return SosfParams(p2 / total, p0 / total);
    }

    WeightTriple weights_from_params(const SosfParams &p)
    {
        return {std::sqrt(p.beta()), std::sqrt(p.rayleigh_fraction()), std::sqrt(p.alpha())};
    }

    FadingKind classify(const SosfParams &p, double tol)
    {
        const double a = p.alpha();
        const double b = p.beta();
        const auto near = [tol](double v, double target) { return std::abs(v - target) <= tol; };

        if (near(a, 0.0) && near(b, 1.0))
            return FadingKind::Static;
        if (near(a, 1.0) && near(b, 0.0))
            return FadingKind::Dr;
        if (near(a, 0.0) && near(b, 0.0))
            return FadingKind::Rayleigh;
        if (near(a, 0.0))
            return FadingKind::Rice;
        if (near(a + b, 1.0))
            return FadingKind::Drlos;
        if (near(b, 0.0))
            return FadingKind::Rdr;
        return FadingKind::Sosf;
    }

    ConditionalRice conditional_rice(const ChannelSpec &spec, double x)
    {
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::domain_error("conditional_rice: x must be finite and non-negative");
        const double a = spec.alpha();
        const double b = spec.beta();
        // 1 - beta - alpha (1 - x) written as (1 - alpha - beta) + alpha x
        const double diffuse = spec.params().rayleigh_fraction() + a * x;
        ConditionalRice out;
        out.mean_snr = spec.mean_snr() * ((1.0 - a) + a * x);
        if (!(out.mean_snr > 0.0))
            throw std::domain_error("conditional_rice: conditional mean SNR vanishes at x = 0 when alpha = 1");
        if (b == 0.0)
        {
            out.k_factor = 0.0;
            return out;
        }
        if (!(diffuse > 0.0))
            throw std::domain_error("conditional_rice: K_x pole at x = 0 on the alpha + beta = 1 edge");
        out.k_factor = b / diffuse;
        return out;
    }

    double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

    double linear_to_db(double linear)
    {
        if (!(linear > 0.0))
            throw std::domain_error("linear_to_db: value must be positive");
        return 10.0 * std::log10(linear);
    }
} // namespace sosf
