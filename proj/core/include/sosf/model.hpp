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

#ifndef SOSF_MODEL_HPP
#define SOSF_MODEL_HPP

#include <string>
#include <string_view>

// Channel parameterization of the SOSF model
//
//   S = w0 e^{j phi} + w1 G1 + w2 G2 G3,    G_i ~ CN(0, 1) independent,
//
// described either by the weight triple (w0, w1, w2) or by the power fractions
//
//   alpha = w2^2 / (w0^2 + w1^2 + w2^2),   beta = w0^2 / (w0^2 + w1^2 + w2^2).
//
// The LOS phase phi does not affect envelope statistics and is not represented.
namespace sosf
{
    // Power fractions of the double-Rayleigh (alpha) and LOS (beta) components.
    // Invariant: alpha >= 0, beta >= 0, alpha + beta <= 1.
    class SosfParams
    {
      public:
        // Throws std::domain_error naming the violated triangle constraint.
        SosfParams(double alpha, double beta);

        double alpha() const noexcept { return alpha_; }
        double beta() const noexcept { return beta_; }

        // Diffuse Rayleigh fraction 1 - alpha - beta, computed without cancellation noise
        // below zero.
        double rayleigh_fraction() const noexcept;

        friend bool operator==(const SosfParams &, const SosfParams &) = default;

      private:
        double alpha_;
        double beta_;
    };

    // Non-negative component weights. Need not be normalized.
    struct WeightTriple
    {
        double w0 = 0.0; // LOS
        double w1 = 0.0; // Rayleigh
        double w2 = 0.0; // double-Rayleigh

        WeightTriple normalized() const;
    };

    enum class FadingKind
    {
        Sosf,
        Rice,
        Drlos,
        Rdr,
        Dr,
        Rayleigh,
        Static
    };

    std::string_view to_string(FadingKind kind);

    // Rician parameters of the channel conditioned on the mixing variable X = |G3|^2 = x.
    struct ConditionalRice
    {
        double k_factor = 0.0; // K_x
        double mean_snr = 0.0; // conditional mean SNR, linear
    };

    // Shape plus average SNR (linear units).
    class ChannelSpec
    {
      public:
        ChannelSpec(SosfParams params, double mean_snr);

        const SosfParams &params() const noexcept { return params_; }
        double mean_snr() const noexcept { return mean_snr_; }
        double alpha() const noexcept { return params_.alpha(); }
        double beta() const noexcept { return params_.beta(); }

      private:
        SosfParams params_;
        double mean_snr_;
    };

    inline constexpr double kDefaultClassifyTol = 1e-9;

    // alpha = w2^2 / sum, beta = w0^2 / sum. Throws std::domain_error for all-zero or
    // negative weights.
    SosfParams params_from_weights(const WeightTriple &w);

    // Normalized triple (sqrt(beta), sqrt(1 - alpha - beta), sqrt(alpha)).
    WeightTriple weights_from_params(const SosfParams &p);

    // Most specific special case whose defining constraints hold within tol, with precedence
    // Static > DR > Rayleigh > Rice > DRLOS > RDR > SOSF.
    FadingKind classify(const SosfParams &p, double tol = kDefaultClassifyTol);

    // K_x = beta / (1 - beta - alpha (1 - x)),  mean_x = mean_snr (1 - alpha (1 - x)).
    // Throws std::domain_error at the K_x pole (x = 0 on the DRLOS edge with beta > 0) and
    // for x < 0.
    ConditionalRice conditional_rice(const ChannelSpec &spec, double x);

    // dB <-> linear SNR.
    double db_to_linear(double db);
    double linear_to_db(double linear);
} // namespace sosf

#endif
