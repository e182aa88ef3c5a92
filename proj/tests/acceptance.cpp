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

// Acceptance runner: one PASS/FAIL line per criterion. Criteria 1-9 group the validation checks
// and apply the runtime budgets; criterion 10 times the full `sosf validate` run of the built CLI.

#include "checks.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace
{
    struct Criterion
    {
        int id;
        const char *title;
        double budget_s; // 0 means no runtime limit
    };

    const std::vector<Criterion> kCriteria = {
        {1, "special functions vs independent oracles", 10.0},
        {2, "integral identity for Gamma(0,x,z)", 30.0},
        {3, "pdf normalization and mean", 120.0},
        {4, "mixture pdf vs legacy oscillatory integral", 120.0},
        {5, "closed forms vs general mixture", 0.0},
        {6, "Monte Carlo ECDF and two-sample KS", 180.0},
        {7, "capacity loss, AWGN and asymptotic gap", 0.0},
        {8, "sign of dt/dalpha", 0.0},
        {9, "low-SNR tail approximation", 0.0},
        {10, "full validate run exits 0 in under 10 minutes", 600.0},
    };

    struct Outcome
    {
        bool passed = true;
        double seconds = 0.0;
        std::string detail;
    };

    void print(const Criterion &c, const Outcome &o)
    {
        char line[512];
        std::snprintf(line, sizeof line, "criterion %2d: %s  %-48s %8.2f s%s%s", c.id, o.passed ? "PASS" : "FAIL",
                      c.title, o.seconds, o.detail.empty() ? "" : "  ", o.detail.c_str());
        std::cout << line << std::endl;
    }

    Outcome run_cli_validate()
    {
        namespace fs = std::filesystem;
        const fs::path report = fs::temp_directory_path() / "sosf_acceptance_report.json";
        const std::string cmd = std::string("\"") + SOSF_CLI_PATH + "\" validate -o \"" + report.string() + "\" > /dev/null 2>&1";
        const auto t0 = std::chrono::steady_clock::now();
        const int status = std::system(cmd.c_str());
        Outcome o;
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        o.passed = code == 0 && o.seconds < 600.0;
        o.detail = "exit code " + std::to_string(code);
        std::error_code ec;
        fs::remove(report, ec);
        return o;
    }
} // namespace

int main()
{
    using sosf::validation::CheckResult;
    std::map<int, std::vector<CheckResult>> by_criterion;
    sosf::validation::run_checks({}, [&](const CheckResult &r) {
        by_criterion[r.criterion].push_back(r);
        std::printf("  check %-24s %s  error %.3e  tol %.3e  %.2f s\n", r.name.c_str(), r.passed ? "pass" : "FAIL",
                    r.measured_error, r.tolerance, r.seconds);
        std::fflush(stdout);
    });

    bool all = true;
    for (const auto &c : kCriteria) {
        Outcome o;
        if (c.id == 10) {
            o = run_cli_validate();
        } else {
            const auto it = by_criterion.find(c.id);
            if (it == by_criterion.end()) {
                o.passed = false;
                o.detail = "no checks registered";
            } else {
                int failed = 0;
                for (const auto &r : it->second) {
                    o.seconds += r.seconds;
                    if (!r.passed) {
                        ++failed;
                        o.detail += (o.detail.empty() ? "" : ", ") + r.name;
                    }
                }
                o.passed = failed == 0;
                if (c.budget_s > 0.0 && o.seconds >= c.budget_s) {
                    o.passed = false;
                    o.detail += (o.detail.empty() ? "" : "; ") + std::string("over the runtime budget");
                }
                if (failed == 0 && o.detail.empty())
                    o.detail = std::to_string(it->second.size()) + (it->second.size() == 1 ? " check" : " checks");
            }
        }
        all = all && o.passed;
        print(c, o);
    }
    std::cout << (all ? "acceptance: all criteria pass" : "acceptance: FAILED") << std::endl;
    return all ? 0 : 1;
}
