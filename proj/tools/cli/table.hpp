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

#ifndef SOSF_CLI_TABLE_HPP
#define SOSF_CLI_TABLE_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sosf::cli
{
    using Cell = std::variant<double, long long, std::string>;

    // Rows of figure data plus `#` metadata lines.
    struct Table
    {
        std::vector<std::pair<std::string, std::string>> meta;
        std::vector<std::string> columns;
        std::vector<std::vector<Cell>> rows;

        void add_meta(std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); }
    };

    enum class Format
    {
        Csv,
        Json
    };

    void write_csv(std::ostream &os, const Table &t);
    void write_json(std::ostream &os, const Table &t);

    // Shortest representation that round-trips (17 significant digits at most).
    std::string format_number(double v);

    // Writes to stdout for an empty path or "-". A relative path is placed under
    // $SOSF_OUTPUT_DIR when that variable is set. Returns the path written, if any.
    std::string emit(const Table &t, Format fmt, const std::string &path);
    std::string resolve_output_path(const std::string &path);
} // namespace sosf::cli

#endif
