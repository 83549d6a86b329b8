// SPDX-License-Identifier: Apache-2.0
//
// v2v-gbsm: 3D non-stationary wideband MIMO V2V channel simulator
// Copyright (C) 2026 The v2v-gbsm authors
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

#include "v2v/curve.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include "v2v/config_io.hpp"

namespace v2v
{
    void CurveSeries::set_meta(const std::string &key, const std::string &value)
    {
        for (auto &kv : metadata)
            if (kv.first == key)
            {
                kv.second = value;
                return;
            }
        metadata.emplace_back(key, value);
    }

    std::string CurveSeries::meta(const std::string &key) const
    {
        for (const auto &kv : metadata)
            if (kv.first == key)
                return kv.second;
        return "";
    }

    void write_curve_csv(const CurveSeries &s, std::ostream &out)
    {
        const Eigen::Index n = s.x.size();
        if (s.values.size() != n)
            throw std::invalid_argument("curve has " + std::to_string(n) + " x samples but " + std::to_string(s.values.size()) + " values");
        for (const auto &col : s.extra_columns)
            if (col.second.size() != n)
                throw std::invalid_argument("extra column '" + col.first + "' length mismatch");

        out << "# x_name=" << s.x_name << "\n";
        out << "# x_unit=" << s.x_unit << "\n";
        for (const auto &kv : s.metadata)
            out << "# " << kv.first << "=" << kv.second << "\n";

        out << "x";
        if (s.is_complex)
            out << "," << s.value_name << "_re," << s.value_name << "_im," << s.value_name << "_abs";
        else
            out << "," << s.value_name;
        for (const auto &col : s.extra_columns)
            out << "," << col.first;
        out << "\n";

        for (Eigen::Index i = 0; i < n; ++i)
        {
            out << format_double(s.x(i));
            if (s.is_complex)
                out << "," << format_double(s.values(i).real()) << "," << format_double(s.values(i).imag()) << ","
                    << format_double(std::abs(s.values(i)));
            else
                out << "," << format_double(s.values(i).real());
            for (const auto &col : s.extra_columns)
                out << "," << format_double(col.second(i));
            out << "\n";
        }
    }

    void emit_curve(const CurveSeries &s, const std::string &path)
    {
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        write_curve_csv(s, f);
        f.flush();
        if (!f)
            throw std::runtime_error("write failed for '" + path + "'");
    }

    void write_gnuplot_stub(const CurveSeries &s, const std::string &csv_path, const std::string &script_path)
    {
        std::ofstream f(script_path);
        if (!f)
            throw std::runtime_error("cannot open '" + script_path + "' for writing");
        int ycol = s.is_complex ? 4 : 2;
        std::string ylabel = s.is_complex ? "|" + s.value_name + "|" : s.value_name;
        f << "set datafile separator ','\n";
        f << "set datafile commentschars '#'\n";
        f << "set key autotitle columnhead\n";
        f << "set xlabel '" << s.x_name << (s.x_unit.empty() ? "" : " [" + s.x_unit + "]") << "'\n";
        f << "set ylabel '" << ylabel << "'\n";
        f << "set grid\n";
        f << "plot '" << csv_path << "' using 1:" << ycol << " with lines\n";
        f << "pause -1\n";
        if (!f)
            throw std::runtime_error("write failed for '" + script_path + "'");
    }
}
