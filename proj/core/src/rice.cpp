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

#include <cmath>
#include <stdexcept>

namespace sosf::rice
{
    namespace
    {
        void check(double k, double mean_snr)
        {
            if (!(k >= 0.0) || !(mean_snr > 0.0))
                throw std::domain_error("rice: need K >= 0 and mean SNR > 0");
        }
    } // namespace

    double pdf(double gamma, double k, double mean_snr)
    {
        check(k, mean_snr);
        if (gamma < 0.0)
            return 0.0;
        const double scale = (1.0 + k) / mean_snr;
        if (k == 0.0)
            return scale * std::exp(-scale * gamma);
        // e^{-K - (1+K) g/mean} I0(z) = exp(-(sqrt K - sqrt((1+K) g / mean))^2) e^{-z} I0(z)
        const double root_k = std::sqrt(k);
        const double root_g = std::sqrt(scale * gamma);
        const double z = 2.0 * root_k * root_g;
        const double d = root_k - root_g;
        return scale * std::exp(-d * d) * specfun::bessel_i0_scaled(z);
    }

    double survival(double gamma, double k, double mean_snr)
    {
        check(k, mean_snr);
        if (gamma <= 0.0)
            return 1.0;
        const double scale = (1.0 + k) / mean_snr;
        if (k == 0.0)
            return std::exp(-scale * gamma);
        return specfun::marcum_q1(std::sqrt(2.0 * k), std::sqrt(2.0 * scale * gamma));
    }

    double cdf(double gamma, double k, double mean_snr)
    {
        check(k, mean_snr);
        if (gamma <= 0.0)
            return 0.0;
        if (k == 0.0)
            return -std::expm1(-gamma / mean_snr);
        return 1.0 - survival(gamma, k, mean_snr);
    }

    double mgf(double s, double k, double mean_snr)
    {
        check(k, mean_snr);
        if (s > 0.0)
            throw std::domain_error("rice::mgf: only s <= 0 is supported");
        const double denom = 1.0 + k - s * mean_snr;
        return (1.0 + k) / denom * std::exp(k * s * mean_snr / denom);
    }

    double tail_coefficient(double k)
    {
        if (!(k >= 0.0))
            throw std::domain_error("rice::tail_coefficient: need K >= 0");
        return (1.0 + k) * std::exp(-k);
    }
} // namespace sosf::rice
