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

#ifndef SOSF_MONTECARLO_HPP
#define SOSF_MONTECARLO_HPP

#include "sosf/model.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

// Monte Carlo realizations of the SOSF SNR.
//
// Samples are produced in fixed-size batches. Batch i draws from std::mt19937_64 seeded
// through std::seed_seq{seed_lo, seed_hi, i_lo, i_hi}, so a stream depends only on
// (seed, method, n_samples, batch_size) and not on the number of threads. Standard normals
// come from the Marsaglia polar method; uniforms are (u64 >> 11) * 2^-53.
namespace sosf::mc
{
    enum class Method
    {
        ThreeGaussian, // |w0 e^{j phi} + w1 G1 + w2 G2 G3|^2 mean
        TwoGaussian    // |w0 e^{j phi} + sqrt(w1^2 + w2^2 x) G|^2 mean,  x ~ Exp(1)
    };

    std::string_view to_string(Method m);

    struct McConfig
    {
        std::int64_t n_samples = 1000000;
        std::uint64_t seed = 1;
        Method method = Method::ThreeGaussian;
        std::int64_t batch_size = 65536;
        unsigned threads = 1;

        // Throws std::invalid_argument.
        void validate() const;
    };

    // gamma samples in stream order. With mixing_out, the mixing variable x (|G3|^2 or the
    // exponential draw) of each sample is stored alongside.
    std::vector<double> sample_snr(const ChannelSpec &spec, const McConfig &cfg,
                                   std::vector<double> *mixing_out = nullptr);

    // Calls fn(batch_index, gammas) for every batch, in batch order.
    void for_each_batch(const ChannelSpec &spec, const McConfig &cfg,
                        const std::function<void(std::int64_t, std::span<const double>)> &fn);

    struct EcdfPoint
    {
        double gamma = 0.0;
        double f_hat = 0.0;
        double std_error = 0.0;
    };

    struct OutagePoint
    {
        double gamma_th = 0.0;
        double p_hat = 0.0;
        double std_error = 0.0;
    };

    struct McSummary
    {
        std::int64_t n = 0;
        double mean_snr_hat = 0.0;
        double mean_snr_se = 0.0;
        std::vector<EcdfPoint> ecdf_grid;
        double capacity_hat = 0.0;
        double capacity_se = 0.0;
        std::vector<OutagePoint> outage;
        // sup |F_hat - F| over the grid points, when an analytic cdf was supplied.
        double ks_stat = 0.0;
    };

    using CdfFn = std::function<double(double)>;

    // Single pass over the stream. ECDF values are P(gamma <= g). Batches are reduced
    // separately and merged in batch order, so the result is bit-exact for any thread count.
    McSummary estimate(const ChannelSpec &spec, const McConfig &cfg, std::span<const double> grid,
                       std::span<const double> outage_thresholds = {}, const CdfFn &cdf = {});

    // Upper bound on sup_g |F_n(g) - F(g)| for sorted samples. F is evaluated at about
    // `probes` order statistics; monotonicity of both functions bounds the gaps between probes.
    double ecdf_sup_distance(std::span<const double> sorted_samples, const CdfFn &cdf, int probes = 10000);

    // Two-sample Kolmogorov-Smirnov statistic (sorts copies of its inputs).
    double ks_two_sample(std::span<const double> a, std::span<const double> b);

    // 1% critical value 1.63 sqrt((n + m) / (n m)).
    double ks_critical_1pct(std::int64_t n, std::int64_t m);

    // Two-sample KS between streams drawn with cfg_a and cfg_b.
    double compare_methods(const ChannelSpec &spec, const McConfig &cfg_a, const McConfig &cfg_b);

    // One gamma per line after `#` metadata lines and a `gamma` header.
    void write_samples_csv(std::ostream &os, const ChannelSpec &spec, const McConfig &cfg,
                           std::span<const double> samples);
} // namespace sosf::mc

#endif
