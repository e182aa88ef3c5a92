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

#include "sosf/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace sosf::mc
{
    namespace
    {
        class Stream
        {
          public:
            Stream(std::uint64_t seed, std::uint64_t batch)
            {
                std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                  static_cast<std::uint32_t>(batch), static_cast<std::uint32_t>(batch >> 32)};
                eng_.seed(seq);
            }

            // [0, 1) with 53 random bits
            double uniform() { return static_cast<double>(eng_() >> 11) * 0x1p-53; }

            // Marsaglia polar method; the second variate of each pair is kept for the next call.
            double normal()
            {
                if (has_spare_)
                {
                    has_spare_ = false;
                    return spare_;
                }
                double u, v, s;
                do
                {
                    u = 2.0 * uniform() - 1.0;
                    v = 2.0 * uniform() - 1.0;
                    s = u * u + v * v;
                } while (s >= 1.0 || s == 0.0);
                const double m = std::sqrt(-2.0 * std::log(s) / s);
                spare_ = v * m;
                has_spare_ = true;
                return u * m;
            }

            // CN(0, 1): unit power circular Gaussian
            void complex_normal(double &re, double &im)
            {
                re = normal() * std::numbers::sqrt2 * 0.5;
                im = normal() * std::numbers::sqrt2 * 0.5;
            }

            double exponential() { return -std::log1p(-uniform()); }

          private:
            std::mt19937_64 eng_;
            bool has_spare_ = false;
            double spare_ = 0.0;
        };

        struct Weights
        {
            double w0, w1, w2;
        };

        void generate_batch(const ChannelSpec &spec, const McConfig &cfg, std::int64_t batch, double *gamma,
                            double *mixing, std::int64_t count)
        {
            const WeightTriple wt = weights_from_params(spec.params());
            const Weights w{wt.w0, wt.w1, wt.w2};
            const double mean = spec.mean_snr();
            Stream rng(cfg.seed, static_cast<std::uint64_t>(batch));
            for (std::int64_t i = 0; i < count; ++i)
            {
                const double phi = 2.0 * std::numbers::pi * rng.uniform();
                double zr, zi, x;
                if (cfg.method == Method::ThreeGaussian)
                {
                    double g1r, g1i, g2r, g2i, g3r, g3i;
                    rng.complex_normal(g1r, g1i);
                    rng.complex_normal(g2r, g2i);
                    rng.complex_normal(g3r, g3i);
                    x = g3r * g3r + g3i * g3i;
                    const double pr = g2r * g3r - g2i * g3i;
                    const double pi = g2r * g3i + g2i * g3r;
                    zr = w.w1 * g1r + w.w2 * pr;
                    zi = w.w1 * g1i + w.w2 * pi;
                }
                else
                {
                    x = rng.exponential();
                    const double s = std::sqrt(w.w1 * w.w1 + w.w2 * w.w2 * x);
                    double gr, gi;
                    rng.complex_normal(gr, gi);
                    zr = s * gr;
                    zi = s * gi;
                }
                // |w0 e^{j phi} + z|^2 = |w0 + z e^{-j phi}|^2; keeps the static case exact.
                const double c = std::cos(phi);
                const double sn = std::sin(phi);
                const double rr = w.w0 + (zr * c + zi * sn);
                const double ri = zi * c - zr * sn;
                gamma[i] = mean * (rr * rr + ri * ri);
                if (mixing)
                    mixing[i] = x;
            }
        }

        std::int64_t batch_count(const McConfig &cfg) { return (cfg.n_samples + cfg.batch_size - 1) / cfg.batch_size; }

        // Fills out[b * batch_size ...] for batches [first, last), spread over cfg.threads.
        void generate_range(const ChannelSpec &spec, const McConfig &cfg, std::int64_t first, std::int64_t last,
                            double *gamma, double *mixing, std::int64_t offset)
        {
            auto work = [&](std::int64_t b) {
                const std::int64_t start = b * cfg.batch_size;
                const std::int64_t count = std::min(cfg.batch_size, cfg.n_samples - start);
                generate_batch(spec, cfg, b, gamma + (start - offset), mixing ? mixing + (start - offset) : nullptr,
                               count);
            };
            const unsigned nt = std::max(1u, cfg.threads);
            if (nt == 1 || last - first == 1)
            {
                for (std::int64_t b = first; b < last; ++b)
                    work(b);
                return;
            }
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < nt; ++t)
                pool.emplace_back([&, t] {
                    for (std::int64_t b = first + t; b < last; b += nt)
                        work(b);
                });
            for (auto &th : pool)
                th.join();
        }

        // Per-batch partial sums, merged pairwise (Chan et al.) in batch order.
        struct Moments
        {
            double n = 0.0;
            double mean = 0.0;
            double m2 = 0.0;

            void merge(const Moments &o)
            {
                if (o.n == 0.0)
                    return;
                const double total = n + o.n;
                const double delta = o.mean - mean;
                mean += delta * o.n / total;
                m2 += o.m2 + delta * delta * n * o.n / total;
                n = total;
            }
        };

        Moments moments_of(std::span<const double> v, double (*f)(double))
        {
            Moments m;
            m.n = static_cast<double>(v.size());
            double s = 0.0;
            for (double g : v)
                s += f(g);
            m.mean = s / m.n;
            for (double g : v)
            {
                const double d = f(g) - m.mean;
                m.m2 += d * d;
            }
            return m;
        }

        double identity(double g) { return g; }
        double log2p1(double g) { return std::log2(1.0 + g); }

        double standard_error(const Moments &m)
        {
            if (m.n < 2.0)
                return 0.0;
            return std::sqrt(m.m2 / (m.n - 1.0) / m.n);
        }
    } // namespace

    std::string_view to_string(Method m) { return m == Method::ThreeGaussian ? "three-gaussian" : "two-gaussian"; }

    void McConfig::validate() const
    {
        if (n_samples <= 0)
            throw std::invalid_argument("McConfig: n_samples must be positive");
        if (batch_size <= 0)
            throw std::invalid_argument("McConfig: batch_size must be positive");
    }

    std::vector<double> sample_snr(const ChannelSpec &spec, const McConfig &cfg, std::vector<double> *mixing_out)
    {
        cfg.validate();
        std::vector<double> out(static_cast<std::size_t>(cfg.n_samples));
        if (mixing_out)
            mixing_out->assign(out.size(), 0.0);
        generate_range(spec, cfg, 0, batch_count(cfg), out.data(), mixing_out ? mixing_out->data() : nullptr, 0);
        return out;
    }

    void for_each_batch(const ChannelSpec &spec, const McConfig &cfg,
                        const std::function<void(std::int64_t, std::span<const double>)> &fn)
    {
        cfg.validate();
        const std::int64_t nb = batch_count(cfg);
        const std::int64_t group = std::max(1u, cfg.threads);
        std::vector<double> buf(static_cast<std::size_t>(group * cfg.batch_size));
        for (std::int64_t first = 0; first < nb; first += group)
        {
            const std::int64_t last = std::min(nb, first + group);
            const std::int64_t offset = first * cfg.batch_size;
            generate_range(spec, cfg, first, last, buf.data(), nullptr, offset);
            for (std::int64_t b = first; b < last; ++b)
            {
                const std::int64_t start = b * cfg.batch_size;
                const std::int64_t count = std::min(cfg.batch_size, cfg.n_samples - start);
                fn(b, std::span<const double>(buf.data() + (start - offset), static_cast<std::size_t>(count)));
            }
        }
    }

    McSummary estimate(const ChannelSpec &spec, const McConfig &cfg, std::span<const double> grid,
                       std::span<const double> outage_thresholds, const CdfFn &cdf)
    {
        // Grid and thresholds share one counting pass over a sorted list of cut points.
        std::vector<double> cuts(grid.begin(), grid.end());
        cuts.insert(cuts.end(), outage_thresholds.begin(), outage_thresholds.end());
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        std::vector<std::int64_t> bucket(cuts.size() + 1, 0);

        Moments snr, cap;
        for_each_batch(spec, cfg, [&](std::int64_t, std::span<const double> g) {
            snr.merge(moments_of(g, identity));
            cap.merge(moments_of(g, log2p1));
            for (double v : g)
                ++bucket[static_cast<std::size_t>(std::lower_bound(cuts.begin(), cuts.end(), v) - cuts.begin())];
        });

        // count(gamma <= cuts[k]) = sum of buckets 0..k
        std::vector<std::int64_t> below(cuts.size(), 0);
        std::int64_t acc = 0;
        for (std::size_t k = 0; k < cuts.size(); ++k)
        {
            acc += bucket[k];
            below[k] = acc;
        }
        const double n = static_cast<double>(cfg.n_samples);
        auto fraction = [&](double g) {
            const auto k = static_cast<std::size_t>(std::lower_bound(cuts.begin(), cuts.end(), g) - cuts.begin());
            return static_cast<double>(below[k]) / n;
        };
        auto se = [n](double p) { return std::sqrt(p * (1.0 - p) / n); };

        McSummary s;
        s.n = cfg.n_samples;
        s.mean_snr_hat = snr.mean;
        s.mean_snr_se = standard_error(snr);
        s.capacity_hat = cap.mean;
        s.capacity_se = standard_error(cap);
        for (double g : grid)
        {
            const double p = fraction(g);
            s.ecdf_grid.push_back({g, p, se(p)});
            if (cdf)
                s.ks_stat = std::max(s.ks_stat, std::abs(p - cdf(g)));
        }
        for (double th : outage_thresholds)
        {
            const double p = fraction(th);
            s.outage.push_back({th, p, se(p)});
        }
        return s;
    }

    double ecdf_sup_distance(std::span<const double> sorted, const CdfFn &cdf, int probes)
    {
        if (sorted.empty())
            throw std::invalid_argument("ecdf_sup_distance: no samples");
        if (probes < 2)
            throw std::invalid_argument("ecdf_sup_distance: need at least two probes");
        const auto n = static_cast<std::int64_t>(sorted.size());
        const double nd = static_cast<double>(n);
        const std::int64_t m = std::min<std::int64_t>(probes, n);

        double bound = 0.0;
        double prev_f = 0.0, prev_fn = 0.0;
        std::int64_t last_idx = -1;
        for (std::int64_t j = 0; j < m; ++j)
        {
            const std::int64_t idx = m == 1 ? 0 : (j * (n - 1)) / (m - 1);
            if (idx == last_idx)
                continue;
            last_idx = idx;
            const double x = sorted[static_cast<std::size_t>(idx)];
            const double le = static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
            const double lt = static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
            const double f = cdf(x);
            const double fn = le / nd, fn_left = lt / nd;
            bound = std::max({bound, fn - f, f - fn_left});
            // Between the previous probe and x both functions are sandwiched by their end values.
            bound = std::max({bound, fn_left - prev_f, f - prev_fn});
            prev_f = f;
            prev_fn = fn;
        }
        return bound;
    }

    double ks_two_sample(std::span<const double> a, std::span<const double> b)
    {
        if (a.empty() || b.empty())
            throw std::invalid_argument("ks_two_sample: empty sample");
        std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        const double n = static_cast<double>(x.size()), m = static_cast<double>(y.size());
        std::size_t i = 0, j = 0;
        double d = 0.0;
        while (i < x.size() && j < y.size())
        {
            const double v = std::min(x[i], y[j]);
            while (i < x.size() && x[i] <= v)
                ++i;
            while (j < y.size() && y[j] <= v)
                ++j;
            d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
        }
        return d;
    }

    double ks_critical_1pct(std::int64_t n, std::int64_t m)
    {
        const double nd = static_cast<double>(n), md = static_cast<double>(m);
        return 1.63 * std::sqrt((nd + md) / (nd * md));
    }

    double compare_methods(const ChannelSpec &spec, const McConfig &cfg_a, const McConfig &cfg_b)
    {
        const auto a = sample_snr(spec, cfg_a);
        const auto b = sample_snr(spec, cfg_b);
        return ks_two_sample(a, b);
    }

    void write_samples_csv(std::ostream &os, const ChannelSpec &spec, const McConfig &cfg,
                           std::span<const double> samples)
    {
        const auto old_prec = os.precision(17);
        os << "# sosf monte carlo samples\n"
           << "# alpha=" << spec.alpha() << " beta=" << spec.beta() << " mean_snr=" << spec.mean_snr() << '\n'
           << "# method=" << to_string(cfg.method) << " seed=" << cfg.seed << " n_samples=" << cfg.n_samples
           << " batch_size=" << cfg.batch_size << '\n'
           << "gamma\n";
        for (double g : samples)
            os << g << '\n';
        os.precision(old_prec);
    }
} // namespace sosf::mc
