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

// sosf: evaluate SOSF channel statistics, emit figure data as CSV, run the validation suite.

#include "table.hpp"

#include "checks.hpp"
#include "sosf/capacity.hpp"
#include "sosf/montecarlo.hpp"
#include "sosf/stats.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#ifndef SOSF_VERSION
#define SOSF_VERSION "0.0.0"
#endif

namespace
{
    using namespace sosf;
    using cli::Table;

    constexpr int kExitOk = 0;
    constexpr int kExitValidation = 1;
    constexpr int kExitUsage = 2;

    struct usage_error : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    std::string g_command_line;

    // --- shared options -------------------------------------------------------------

    struct ChannelArgs
    {
        std::optional<double> alpha, beta, w0, w1, w2, snr_db, snr;
    };

    struct EvalArgs
    {
        std::string dispatch = "auto";
        int nodes = 64;
        double rel_tol = 1e-9;
    };

    struct OutputArgs
    {
        std::string path;
        std::string format = "csv";
    };

    void add_channel(CLI::App *app, ChannelArgs &c, bool snr)
    {
        app->add_option("--alpha", c.alpha, "double-Rayleigh power fraction");
        app->add_option("--beta", c.beta, "LOS power fraction");
        app->add_option("--w0", c.w0, "LOS weight");
        app->add_option("--w1", c.w1, "Rayleigh weight");
        app->add_option("--w2", c.w2, "double-Rayleigh weight");
        if (snr)
        {
            auto *db = app->add_option("--snr-db", c.snr_db, "mean SNR in dB");
            auto *lin = app->add_option("--snr", c.snr, "mean SNR, linear");
            db->excludes(lin);
        }
    }

    void add_eval(CLI::App *app, EvalArgs &e)
    {
        app->add_option("--dispatch", e.dispatch, "auto, general or closed")
            ->check(CLI::IsMember({"auto", "general", "closed"}));
        app->add_option("--quad-nodes", e.nodes, "Gauss-Laguerre nodes")->check(CLI::Range(2, 512));
        app->add_option("--quad-rel-tol", e.rel_tol, "relative tolerance of the mixture integral")
            ->check(CLI::Range(1e-15, 1e-1));
    }

    void add_output(CLI::App *app, OutputArgs &o)
    {
        app->add_option("-o,--output", o.path, "output file (default stdout; relative to $SOSF_OUTPUT_DIR if set)");
        app->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    }

    bool has_channel(const ChannelArgs &c) { return c.alpha || c.beta || c.w0 || c.w1 || c.w2; }

    SosfParams resolve_params(const ChannelArgs &c)
    {
        const bool ab = c.alpha || c.beta;
        const bool w = c.w0 || c.w1 || c.w2;
        if (ab && w)
            throw usage_error("give either --alpha/--beta or --w0/--w1/--w2, not both");
        if (ab)
        {
            if (!(c.alpha && c.beta))
                throw usage_error("--alpha and --beta must be given together");
            return SosfParams(*c.alpha, *c.beta);
        }
        if (w)
        {
            if (!(c.w0 && c.w1 && c.w2))
                throw usage_error("--w0, --w1 and --w2 must be given together");
            return params_from_weights({*c.w0, *c.w1, *c.w2});
        }
        throw usage_error("no channel given: use --alpha/--beta or --w0/--w1/--w2");
    }

    double resolve_snr(const ChannelArgs &c)
    {
        if (c.snr_db)
            return db_to_linear(*c.snr_db);
        if (c.snr)
            return *c.snr;
        throw usage_error("no mean SNR given: use --snr-db or --snr");
    }

    EvalPolicy make_policy(const EvalArgs &e)
    {
        EvalPolicy p;
        p.dispatch = e.dispatch == "general" ? Dispatch::ForceGeneral
                     : e.dispatch == "closed" ? Dispatch::ForceClosedForm
                                              : Dispatch::Auto;
        p.quad = quad::QuadratureSpec::gauss_laguerre(e.nodes, e.rel_tol);
        p.infinite_density_at_zero = true;
        return p;
    }

    // 12 significant digits: 0.1 * 3 prints as 0.3
    double snap(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::strtod(buf, nullptr);
    }

    // "start:stop:step" (inclusive) or "v1,v2,...".
    std::vector<double> parse_grid(const std::string &text)
    {
        std::vector<double> out;
        auto number = [&text](const std::string &s) {
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(s, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || used != s.size())
                throw usage_error("bad grid '" + text + "'");
            return v;
        };
        if (text.find(':') != std::string::npos)
        {
            std::vector<std::string> parts;
            std::stringstream ss(text);
            for (std::string p; std::getline(ss, p, ':');)
                parts.push_back(p);
            if (parts.size() != 3)
                throw usage_error("grid '" + text + "' must be start:stop:step");
            const double a = number(parts[0]), b = number(parts[1]), h = number(parts[2]);
            if (!(h > 0.0) || b < a)
                throw usage_error("grid '" + text + "' needs step > 0 and stop >= start");
            const auto n = static_cast<long long>(std::floor((b - a) / h + 1e-9));
            if (n > 10000000)
                throw usage_error("grid '" + text + "' is too large");
            for (long long i = 0; i <= n; ++i)
                out.push_back(snap(a + static_cast<double>(i) * h));
            return out;
        }
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ',');)
            out.push_back(number(p));
        if (out.empty())
            throw usage_error("empty grid");
        return out;
    }

    Table header(const std::string &command)
    {
        Table t;
        t.add_meta("tool", std::string("sosf ") + SOSF_VERSION);
        t.add_meta("command", command);
        t.add_meta("argv", g_command_line);
        return t;
    }

    std::string num(double v) { return cli::format_number(v); }

    void describe_channel(Table &t, const ChannelSpec &spec)
    {
        t.add_meta("alpha", num(spec.alpha()));
        t.add_meta("beta", num(spec.beta()));
        t.add_meta("mean_snr", num(spec.mean_snr()));
        t.add_meta("mean_snr_db", num(linear_to_db(spec.mean_snr())));
        t.add_meta("kind", std::string(to_string(classify(spec.params()))));
    }

    void describe_policy(Table &t, const EvalPolicy &p, const ChannelSpec &spec)
    {
        const Route r = resolve_route(spec, p);
        t.add_meta("route", std::string(to_string(r.kind)) + (r.closed_form ? " closed-form" : " mixture-integral"));
        t.add_meta("quadrature", quad::to_string(p.quad.method) + " nodes=" + std::to_string(p.quad.max_nodes) +
                                     " rel_tol=" + num(p.quad.rel_tol));
    }

    cli::Format format_of(const OutputArgs &o) { return o.format == "json" ? cli::Format::Json : cli::Format::Csv; }

    // NaN in place of a value the distribution does not have.
    template <class F> double guarded(F &&f, std::string &note)
    {
        try
        {
            return f();
        }
        catch (const degenerate_distribution_error &e)
        {
            note = e.what();
        }
        catch (const divergence_error &e)
        {
            note = e.what();
        }
        return std::numeric_limits<double>::quiet_NaN();
    }

    // Evaluates fn(i) for i in [0, n) on `threads` workers; results keep index order.
    template <class R, class F> std::vector<R> parallel_map(std::size_t n, unsigned threads, F &&fn)
    {
        std::vector<R> out(n);
        std::vector<std::exception_ptr> err(n);
        auto work = [&](std::size_t first) {
            for (std::size_t i = first; i < n; i += std::max(1u, threads))
                try
                {
                    out[i] = fn(i);
                }
                catch (...)
                {
                    err[i] = std::current_exception();
                }
        };
        if (threads <= 1)
            work(0);
        else
        {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back(work, t);
            for (auto &th : pool)
                th.join();
        }
        for (auto &e : err)
            if (e)
                std::rethrow_exception(e);
        return out;
    }

    // --- eval -------------------------------------------------------------------------

    struct EvalCmd
    {
        ChannelArgs ch;
        EvalArgs ev;
        OutputArgs out;
        std::string grid = "0:5:0.1";
        std::string s_grid;
    };

    int run_eval(const EvalCmd &c)
    {
        const ChannelSpec spec(resolve_params(c.ch), resolve_snr(c.ch));
        const EvalPolicy pol = make_policy(c.ev);
        Table t = header("eval");
        describe_channel(t, spec);
        describe_policy(t, pol, spec);
        std::string note;
        if (!c.s_grid.empty())
        {
            t.columns = {"s", "mgf"};
            for (double s : parse_grid(c.s_grid))
                t.rows.push_back({s, mgf(spec, s, pol)});
        }
        else
        {
            t.columns = {"gamma", "pdf", "cdf"};
            for (double g : parse_grid(c.grid))
            {
                const double p = guarded([&] { return pdf(spec, g, pol); }, note);
                t.rows.push_back({g, p, cdf(spec, g, pol)});
            }
        }
        if (!note.empty())
            t.add_meta("note", note);
        cli::emit(t, format_of(c.out), c.out.path);
        return kExitOk;
    }

    // --- capacity ---------------------------------------------------------------------

    struct CapacityCmd
    {
        ChannelArgs ch;
        EvalArgs ev;
        OutputArgs out;
        std::string snr_db = "0:40:5";
        unsigned threads = 1;
    };

    std::vector<validation::NamedChannel> channels_or_presets(const ChannelArgs &ch,
                                                              const std::vector<validation::NamedChannel> &presets)
    {
        if (!has_channel(ch))
            return presets;
        return {{"custom", resolve_params(ch)}};
    }

    int run_capacity(const CapacityCmd &c)
    {
        if (c.ch.snr_db || c.ch.snr)
            throw usage_error("capacity sweeps the mean SNR: use --snr-db-range instead of --snr-db/--snr");
        const auto chans = channels_or_presets(c.ch, validation::capacity_channels());
        const auto grid = parse_grid(c.snr_db);
        const EvalPolicy pol = make_policy(c.ev);
        Table t = header("capacity");
        t.add_meta("bandwidth", "1 (bits per channel use)");
        t.add_meta("quadrature", quad::to_string(pol.quad.method) + " nodes=" + std::to_string(pol.quad.max_nodes) +
                                     " rel_tol=" + num(pol.quad.rel_tol));
        t.columns = {"channel", "alpha", "beta", "snr_db", "c_exact", "c_exact_err", "c_asymptotic", "t_bits"};

        struct Job
        {
            std::size_t ch;
            double db;
        };
        std::vector<Job> jobs;
        for (std::size_t i = 0; i < chans.size(); ++i)
            for (double db : grid)
                jobs.push_back({i, db});
        const auto rows = parallel_map<std::vector<cli::Cell>>(jobs.size(), c.threads, [&](std::size_t k) {
            const auto &nc = chans[jobs[k].ch];
            const ChannelSpec spec(nc.params, db_to_linear(jobs[k].db));
            const auto ex = capacity_exact(spec, default_capacity_quadrature(), pol);
            const auto as = capacity_asymptotic(spec, default_loss_quadrature(), pol.dispatch);
            return std::vector<cli::Cell>{nc.name, nc.params.alpha(), nc.params.beta(), jobs[k].db,
                                          ex.bits_per_use, ex.est_error, as.bits_per_use,
                                          std::log2(spec.mean_snr()) - as.bits_per_use};
        });
        t.rows = rows;
        cli::emit(t, format_of(c.out), c.out.path);
        return kExitOk;
    }

    // --- outage -----------------------------------------------------------------------

    struct OutageCmd
    {
        ChannelArgs ch;
        EvalArgs ev;
        OutputArgs out;
        std::string snr_db = "0:40:2";
        double gamma_th_db = 0.0;
    };

    int run_outage(const OutageCmd &c)
    {
        if (c.ch.snr_db || c.ch.snr)
            throw usage_error("outage sweeps the mean SNR: use --snr-db-range instead of --snr-db/--snr");
        const auto chans = channels_or_presets(c.ch, validation::outage_channels());
        const auto grid = parse_grid(c.snr_db);
        const EvalPolicy pol = make_policy(c.ev);
        const double th = db_to_linear(c.gamma_th_db);
        Table t = header("outage");
        t.add_meta("gamma_th_db", num(c.gamma_th_db));
        t.columns = {"channel", "alpha", "beta", "snr_db", "op_exact", "op_tail", "tail_flag"};
        bool divergent = false;
        for (const auto &nc : chans)
            for (double db : grid)
            {
                const ChannelSpec spec(nc.params, db_to_linear(db));
                double tail = std::numeric_limits<double>::quiet_NaN();
                std::string flag = "ok";
                try
                {
                    tail = tail_cdf_approx(spec, th, pol.classify_tol);
                }
                catch (const divergence_error &)
                {
                    flag = "divergent-coefficient";
                    divergent = true;
                }
                catch (const degenerate_distribution_error &)
                {
                    flag = "degenerate";
                }
                t.rows.push_back({nc.name, nc.params.alpha(), nc.params.beta(), db, outage_probability(spec, th, pol),
                                  tail, flag});
            }
        if (divergent)
            t.add_meta("footnote", "divergent-coefficient: the DR tail is F ~ (g/mean) ln(mean/g); no diversity-order "
                                   "approximation exists, op_tail is nan");
        cli::emit(t, format_of(c.out), c.out.path);
        return kExitOk;
    }

    // --- sweep ------------------------------------------------------------------------

    struct SweepCmd
    {
        EvalArgs ev;
        OutputArgs out;
        double delta = 0.02;
        bool derivative = false;
        std::string betas = "0,0.1,0.3,0.5,0.7,0.9";
        double alpha_step = 0.02;
        double h = 1e-4;
        bool richardson = false;
        unsigned threads = 1;
    };

    int run_sweep(const SweepCmd &c)
    {
        if (!(c.delta > 0.0 && c.delta <= 1.0))
            throw usage_error("--delta must lie in (0, 1]");
        const auto q = quad::QuadratureSpec::gauss_laguerre(c.ev.nodes, std::min(c.ev.rel_tol, 1e-11));
        Table t = header(c.derivative ? "sweep derivative" : "sweep");
        long long skipped = 0;

        if (!c.derivative)
        {
            const auto n = static_cast<long long>(std::llround(1.0 / c.delta));
            std::vector<std::pair<double, double>> pts;
            for (long long i = 0; i <= n; ++i)
                for (long long j = 0; j <= n; ++j)
                {
                    const double a = std::min(1.0, static_cast<double>(i) * c.delta);
                    const double b = std::min(1.0, static_cast<double>(j) * c.delta);
                    if (a + b > 1.0 + 1e-12)
                    {
                        ++skipped;
                        continue;
                    }
                    pts.emplace_back(a, std::min(b, 1.0 - a));
                }
            t.columns = {"alpha", "beta", "t_bits"};
            t.add_meta("delta", num(c.delta));
            const auto vals = parallel_map<double>(pts.size(), c.threads, [&](std::size_t k) {
                return capacity_loss(ChannelSpec(SosfParams(pts[k].first, pts[k].second), 1.0), q).t_bits;
            });
            for (std::size_t k = 0; k < pts.size(); ++k)
                t.rows.push_back({pts[k].first, pts[k].second, vals[k]});
        }
        else
        {
            if (!(c.alpha_step > 0.0))
                throw usage_error("--alpha-step must be positive");
            std::vector<std::pair<double, double>> pts;
            for (double b : parse_grid(c.betas))
            {
                if (b < 0.0 || b >= 1.0)
                {
                    ++skipped;
                    continue;
                }
                for (long long k = 0;; ++k)
                {
                    const double a = static_cast<double>(k) * c.alpha_step;
                    if (a > 1.0 - b + 1e-12)
                        break;
                    pts.emplace_back(b, std::min(a, 1.0 - b));
                }
            }
            t.columns = {"beta", "alpha", "dt_dalpha"};
            t.add_meta("h", num(c.h));
            t.add_meta("richardson", c.richardson ? "yes" : "no");
            const auto vals = parallel_map<double>(pts.size(), c.threads, [&](std::size_t k) {
                try
                {
                    return capacity_loss_dalpha(pts[k].first, pts[k].second, q, c.h, c.richardson);
                }
                catch (const std::domain_error &)
                {
                    return std::numeric_limits<double>::quiet_NaN();
                }
            });
            for (std::size_t k = 0; k < pts.size(); ++k)
            {
                if (std::isnan(vals[k]))
                {
                    ++skipped;
                    continue;
                }
                t.rows.push_back({pts[k].first, pts[k].second, vals[k]});
            }
        }
        t.add_meta("skipped_points", std::to_string(skipped));
        std::cerr << "sweep: " << t.rows.size() << " points, " << skipped << " skipped outside the triangle\n";
        cli::emit(t, format_of(c.out), c.out.path);
        return kExitOk;
    }

    // --- simulate ---------------------------------------------------------------------

    struct SimulateCmd
    {
        ChannelArgs ch;
        EvalArgs ev;
        OutputArgs out;
        long long n = 1000000;
        std::uint64_t seed = 1;
        std::string method = "three";
        long long batch = 65536;
        unsigned threads = 1;
        std::string grid;
        std::string thresholds;
        std::string samples_out;
    };

    int run_simulate(const SimulateCmd &c)
    {
        const ChannelSpec spec(resolve_params(c.ch), resolve_snr(c.ch));
        const EvalPolicy pol = make_policy(c.ev);
        mc::McConfig cfg;
        cfg.n_samples = c.n;
        cfg.seed = c.seed;
        cfg.method = c.method == "two" ? mc::Method::TwoGaussian : mc::Method::ThreeGaussian;
        cfg.batch_size = c.batch;
        cfg.threads = c.threads;

        std::vector<double> grid;
        if (c.grid.empty())
            for (int i = 0; i <= 20; ++i)
                grid.push_back(spec.mean_snr() * 0.25 * i);
        else
            grid = parse_grid(c.grid);
        const std::vector<double> ths = c.thresholds.empty() ? std::vector<double>{} : parse_grid(c.thresholds);

        const auto cdf_fn = [&](double g) { return cdf(spec, g, pol); };
        const mc::McSummary s = mc::estimate(spec, cfg, grid, ths, cdf_fn);

        Table t = header("simulate");
        describe_channel(t, spec);
        t.add_meta("method", std::string(mc::to_string(cfg.method)));
        t.add_meta("seed", std::to_string(cfg.seed));
        t.add_meta("n_samples", std::to_string(cfg.n_samples));
        t.add_meta("batch_size", std::to_string(cfg.batch_size));
        t.add_meta("prng", "mt19937_64 per batch via seed_seq, Marsaglia polar normals");
        t.add_meta("mean_snr_hat", num(s.mean_snr_hat) + " +- " + num(s.mean_snr_se));
        t.add_meta("capacity_hat", num(s.capacity_hat) + " +- " + num(s.capacity_se));
        t.add_meta("capacity_exact", num(capacity_exact(spec, default_capacity_quadrature(), pol).bits_per_use));
        for (const auto &o : s.outage)
            t.add_meta("outage@" + num(o.gamma_th),
                       num(o.p_hat) + " +- " + num(o.std_error) + " (analytic " + num(cdf_fn(o.gamma_th)) + ")");
        t.add_meta("ks_stat_on_grid", num(s.ks_stat));
        t.columns = {"gamma", "ecdf", "ecdf_se", "cdf_analytic", "pdf_analytic"};
        for (const auto &p : s.ecdf_grid)
        {
            std::string note;
            const double d = guarded([&] { return pdf(spec, p.gamma, pol); }, note);
            t.rows.push_back({p.gamma, p.f_hat, p.std_error, cdf_fn(p.gamma), d});
        }
        cli::emit(t, format_of(c.out), c.out.path);

        if (!c.samples_out.empty())
        {
            const std::string path = cli::resolve_output_path(c.samples_out);
            std::ofstream f(path);
            if (!f)
                throw std::runtime_error("cannot open " + path);
            mc::write_samples_csv(f, spec, cfg, mc::sample_snr(spec, cfg));
        }
        return kExitOk;
    }

    // --- validate ---------------------------------------------------------------------

    struct ValidateCmd
    {
        std::vector<std::string> only;
        std::optional<double> tolerance;
        long long mc_samples = 1000000;
        std::uint64_t seed = validation::ValidateOptions{}.seed;
        bool list = false;
        std::string output;
    };

    int run_validate(const ValidateCmd &c)
    {
        if (c.list)
        {
            for (const auto &i : validation::check_catalog())
                std::cout << i.name << "  (criterion " << i.criterion << ")  " << i.description << '\n';
            return kExitOk;
        }
        validation::ValidateOptions opt;
        opt.only = c.only;
        opt.tolerance = c.tolerance;
        opt.mc_samples = c.mc_samples;
        opt.seed = c.seed;

        const auto results = validation::run_checks(opt, [](const validation::CheckResult &r) {
            std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << "  error=" << num(r.measured_error)
                      << " tol=" << num(r.tolerance) << "  (" << num(std::round(r.seconds * 100) / 100) << " s)\n";
        });

        bool ok = true;
        nlohmann::json checks = nlohmann::json::array();
        for (const auto &r : results)
        {
            ok = ok && r.passed;
            checks.push_back({{"check", r.name},
                              {"status", r.passed ? "pass" : "fail"},
                              {"measured_error", std::isfinite(r.measured_error) ? nlohmann::json(r.measured_error)
                                                                                 : nlohmann::json(nullptr)},
                              {"tolerance", r.tolerance},
                              {"criterion", r.criterion},
                              {"seconds", r.seconds},
                              {"detail", r.detail}});
        }
        nlohmann::json report{{"tool", std::string("sosf ") + SOSF_VERSION},
                              {"argv", g_command_line},
                              {"seed", c.seed},
                              {"mc_samples", c.mc_samples},
                              {"all_passed", ok},
                              {"checks", checks}};
        const std::string path = cli::resolve_output_path(c.output);
        if (path.empty())
            std::cout << report.dump(2) << '\n';
        else
        {
            std::ofstream f(path);
            if (!f)
                throw std::runtime_error("cannot open " + path);
            f << report.dump(2) << '\n';
        }
        return ok ? kExitOk : kExitValidation;
    }
    // The --config file is read here and its keys are appended as options, skipping any key
    // already present on the command line. Lines are `key = value`; `#` starts a comment;
    // `flag = true` turns a flag on.
    std::vector<std::string> expand_config(int argc, char **argv)
    {
        std::vector<std::string> args(argv, argv + argc);
        std::string path;
        for (std::size_t i = 1; i < args.size(); ++i)
        {
            if (args[i] == "--config" && i + 1 < args.size())
                path = args[i + 1];
            else if (args[i].rfind("--config=", 0) == 0)
                path = args[i].substr(9);
        }
        if (path.empty())
            return args;

        std::ifstream f(path);
        if (!f)
            throw std::runtime_error("cannot read config file " + path);
        auto on_command_line = [&args](const std::string &key) {
            const std::string flag = "--" + key;
            return std::any_of(args.begin(), args.end(),
                               [&](const std::string &a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
        };
        auto trim = [](std::string v) {
            const auto b = v.find_first_not_of(" \t\r");
            const auto e = v.find_last_not_of(" \t\r");
            v = b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
            if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front())
                v = v.substr(1, v.size() - 2);
            return v;
        };
        std::vector<std::string> extra;
        int line_no = 0;
        for (std::string line; std::getline(f, line);)
        {
            ++line_no;
            if (const auto h = line.find('#'); h != std::string::npos)
                line.erase(h);
            line = trim(line);
            if (line.empty() || line.front() == '[')
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty() || key == "config" || on_command_line(key))
                continue;
            if (value == "true")
                extra.push_back("--" + key);
            else if (value != "false")
            {
                extra.push_back("--" + key);
                extra.push_back(value);
            }
        }
        args.insert(args.end(), extra.begin(), extra.end());
        return args;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"sosf: statistics of second order scattering fading channels"};
    app.set_version_flag("--version", std::string(SOSF_VERSION));
    app.require_subcommand(1);

    EvalCmd eval;
    auto *se = app.add_subcommand("eval", "pdf and cdf on a gamma grid, or the mgf on an s grid");
    add_channel(se, eval.ch, true);
    add_eval(se, eval.ev);
    add_output(se, eval.out);
    se->add_option("--grid", eval.grid, "gamma grid, start:stop:step or a comma list (linear SNR)");
    se->add_option("--s-grid", eval.s_grid, "s grid for the mgf (s < 0)");

    CapacityCmd capacity;
    auto *sc = app.add_subcommand("capacity", "exact and asymptotic average capacity over a mean-SNR sweep");
    add_channel(sc, capacity.ch, true);
    add_eval(sc, capacity.ev);
    add_output(sc, capacity.out);
    sc->add_option("--snr-db-range", capacity.snr_db, "mean SNR grid in dB");
    sc->add_option("--threads", capacity.threads, "worker threads")->check(CLI::Range(1u, 256u));

    OutageCmd outage;
    auto *so = app.add_subcommand("outage", "exact and tail-approximated outage probability over a mean-SNR sweep");
    add_channel(so, outage.ch, true);
    add_eval(so, outage.ev);
    add_output(so, outage.out);
    so->add_option("--snr-db-range", outage.snr_db, "mean SNR grid in dB");
    so->add_option("--gamma-th-db", outage.gamma_th_db, "outage threshold in dB");

    SweepCmd sweep;
    auto *sw = app.add_subcommand("sweep", "capacity loss over the (alpha, beta) triangle, or its alpha derivative");
    add_eval(sw, sweep.ev);
    add_output(sw, sweep.out);
    sw->add_option("--delta", sweep.delta, "grid step in alpha and beta");
    sw->add_flag("--derivative", sweep.derivative, "emit dt/dalpha for the --betas list instead");
    sw->add_option("--betas", sweep.betas, "beta values for --derivative");
    sw->add_option("--alpha-step", sweep.alpha_step, "alpha step for --derivative");
    sw->add_option("--fd-step", sweep.h, "finite-difference step")->check(CLI::Range(1e-6, 1e-3));
    sw->add_flag("--richardson", sweep.richardson, "Richardson-extrapolated differences");
    sw->add_option("--threads", sweep.threads, "worker threads")->check(CLI::Range(1u, 256u));

    SimulateCmd sim;
    auto *ss = app.add_subcommand("simulate", "Monte Carlo ECDF and capacity with analytic overlay");
    add_channel(ss, sim.ch, true);
    add_eval(ss, sim.ev);
    add_output(ss, sim.out);
    ss->add_option("-n,--n", sim.n, "number of samples")->check(CLI::PositiveNumber);
    ss->add_option("--seed", sim.seed, "PRNG seed");
    ss->add_option("--method", sim.method, "three or two (Gaussian construction)")
        ->check(CLI::IsMember({"three", "two"}));
    ss->add_option("--batch", sim.batch, "batch size")->check(CLI::PositiveNumber);
    ss->add_option("--threads", sim.threads, "worker threads")->check(CLI::Range(1u, 256u));
    ss->add_option("--grid", sim.grid, "ECDF grid (default 0..5 mean in steps of mean/4)");
    ss->add_option("--thresholds", sim.thresholds, "outage thresholds (linear SNR)");
    ss->add_option("--samples-out", sim.samples_out, "also export the raw samples as CSV");

    ValidateCmd val;
    auto *sv = app.add_subcommand("validate", "run the cross-oracle validation suite (JSON report)");
    sv->add_option("--only", val.only, "run only these checks")->delimiter(',');
    sv->add_option("--tolerance", val.tolerance, "override every check tolerance");
    sv->add_option("--mc-samples", val.mc_samples, "Monte Carlo samples per stream")->check(CLI::PositiveNumber);
    sv->add_option("--seed", val.seed, "seed of the random grids and Monte Carlo streams");
    sv->add_flag("--list", val.list, "list the checks and exit");
    sv->add_option("-o,--output", val.output, "report file (default stdout)");

    std::string config_path;
    for (auto *sub : {se, sc, so, sw, ss, sv})
        sub->add_option("--config", config_path, "key = value file supplying any option; the command line wins");

    std::vector<std::string> args;
    try
    {
        args = expand_config(argc, argv);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    // Recorded with the config keys expanded, so the header alone re-runs the job. The
    // output path is left out: the same job written to two files gives identical files.
    g_command_line = "sosf";
    for (std::size_t i = 1; i < args.size(); ++i)
    {
        if ((args[i] == "-o" || args[i] == "--output" || args[i] == "--config") && i + 1 < args.size())
        {
            ++i;
            continue;
        }
        if (args[i].rfind("--output=", 0) == 0 || args[i].rfind("--config=", 0) == 0)
            continue;
        g_command_line += " " + args[i];
    }
    std::vector<char *> cargs;
    for (auto &a : args)
        cargs.push_back(a.data());

    try
    {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try
    {
        if (se->parsed())
            return run_eval(eval);
        if (sc->parsed())
            return run_capacity(capacity);
        if (so->parsed())
            return run_outage(outage);
        if (sw->parsed())
            return run_sweep(sweep);
        if (ss->parsed())
            return run_simulate(sim);
        if (sv->parsed())
            return run_validate(val);
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const std::domain_error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
