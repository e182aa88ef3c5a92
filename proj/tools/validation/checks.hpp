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

#ifndef SOSF_VALIDATION_CHECKS_HPP
#define SOSF_VALIDATION_CHECKS_HPP

#include "sosf/model.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

// Cross-oracle checks run by `sosf validate` and by the acceptance test.
namespace sosf::validation
{
    struct CheckResult
    {
        std::string name;
        int criterion = 0; // acceptance criterion the check belongs to
        bool passed = false;
        double measured_error = 0.0;
        double tolerance = 0.0;
        double seconds = 0.0;
        std::string detail;
    };

    struct ValidateOptions
    {
        // Replaces the tolerance of every check when set.
        std::optional<double> tolerance;
        // Names of the checks to run; empty runs all of them.
        std::vector<std::string> only;
        std::uint64_t seed = 20260417;
        std::int64_t mc_samples = 1000000;
    };

    struct CheckInfo
    {
        std::string name;
        int criterion;
        std::string description;
    };

    const std::vector<CheckInfo> &check_catalog();

    // Throws std::invalid_argument for an unknown name.
    CheckResult run_check(const std::string &name, const ValidateOptions &opt);

    // Runs the selected checks in catalog order; on_result is called after each one.
    std::vector<CheckResult> run_checks(const ValidateOptions &opt,
                                        const std::function<void(const CheckResult &)> &on_result = {});

    // (alpha, beta) points used for the distribution checks: vertices, edges, near-vertices
    // and interior; the static vertex is left out because it has no density.
    const std::vector<SosfParams> &standard_grid();

    // Channels compared in the capacity plots.
    struct NamedChannel
    {
        std::string name;
        SosfParams params;
    };
    const std::vector<NamedChannel> &capacity_channels();
    const std::vector<NamedChannel> &outage_channels();
} // namespace sosf::validation

#endif
