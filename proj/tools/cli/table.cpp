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

#include "table.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace sosf::cli
{
    namespace
    {
        std::string cell_text(const Cell &c)
        {
            if (const auto *d = std::get_if<double>(&c))
                return format_number(*d);
            if (const auto *i = std::get_if<long long>(&c))
                return std::to_string(*i);
            return std::get<std::string>(c);
        }

        nlohmann::json cell_json(const Cell &c)
        {
            if (const auto *d = std::get_if<double>(&c))
                return std::isfinite(*d) ? nlohmann::json(*d) : nlohmann::json(format_number(*d));
            if (const auto *i = std::get_if<long long>(&c))
                return *i;
            return std::get<std::string>(c);
        }
    } // namespace

    std::string format_number(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[32];
        for (int prec = 6; prec <= 17; ++prec)
        {
            std::snprintf(buf, sizeof buf, "%.*g", prec, v);
            if (std::strtod(buf, nullptr) == v)
                break;
        }
        return buf;
    }

    void write_csv(std::ostream &os, const Table &t)
    {
        for (const auto &[k, v] : t.meta)
            os << "# " << k << ": " << v << '\n';
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            os << (i ? "," : "") << t.columns[i];
        os << '\n';
        for (const auto &row : t.rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << cell_text(row[i]);
            os << '\n';
        }
    }

    void write_json(std::ostream &os, const Table &t)
    {
        nlohmann::json j;
        j["metadata"] = nlohmann::json::object();
        for (const auto &[k, v] : t.meta)
            j["metadata"][k] = v;
        j["columns"] = t.columns;
        j["rows"] = nlohmann::json::array();
        for (const auto &row : t.rows)
        {
            nlohmann::json r = nlohmann::json::array();
            for (const auto &c : row)
                r.push_back(cell_json(c));
            j["rows"].push_back(std::move(r));
        }
        os << j.dump(2) << '\n';
    }

    std::string resolve_output_path(const std::string &path)
    {
        if (path.empty() || path == "-")
            return {};
        std::filesystem::path p(path);
        if (p.is_relative())
            if (const char *dir = std::getenv("SOSF_OUTPUT_DIR"); dir && *dir)
                p = std::filesystem::path(dir) / p;
        return p.string();
    }

    std::string emit(const Table &t, Format fmt, const std::string &path)
    {
        const std::string target = resolve_output_path(path);
        auto write = [&](std::ostream &os) { fmt == Format::Csv ? write_csv(os, t) : write_json(os, t); };
        if (target.empty())
        {
            write(std::cout);
            return {};
        }
        const std::filesystem::path p(target);
        if (p.has_parent_path())
            std::filesystem::create_directories(p.parent_path());
        std::ofstream f(p);
        if (!f)
            throw std::runtime_error("cannot open output file " + target);
        write(f);
        return target;
    }
} // namespace sosf::cli
