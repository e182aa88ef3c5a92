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

#ifndef SOSF_RICE_HPP
#define SOSF_RICE_HPP

// SNR statistics of Rician fading with factor k and mean SNR mean_snr (linear).
// Every mixture path in stats.cpp is built on these.
namespace sosf::rice
{
    // (1+K)/mean e^{-K} e^{-(1+K) g / mean} I0(2 sqrt(K (1+K) g / mean)), evaluated with the
    // exponentials folded into a scaled I0 so that large K does not overflow.
    double pdf(double gamma, double k, double mean_snr);

    // 1 - Q1(sqrt(2K), sqrt(2 (1+K) g / mean))
    double cdf(double gamma, double k, double mean_snr);

    // Q1(sqrt(2K), sqrt(2 (1+K) g / mean))
    double survival(double gamma, double k, double mean_snr);

    // (1+K) / (1+K - s mean) exp(K s mean / (1+K - s mean)), for s <= 0.
    double mgf(double s, double k, double mean_snr);

    // Low-SNR power offset (1+K) e^{-K}: F(g) ~ a g / mean as g -> 0 (diversity order 1).
    double tail_coefficient(double k);
} // namespace sosf::rice

#endif
