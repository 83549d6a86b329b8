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

#ifndef V2V_CURVE_HPP
#define V2V_CURVE_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace v2v
{
    // Sampled real or complex function of one variable plus ordered metadata
    struct CurveSeries
    {
        std::string x_name = "x"; // Axis meaning, e.g. "spacing"
        std::string x_unit;       // e.g. "wavelength", "Hz", "rad"
        Eigen::VectorXd x;

        std::string value_name = "value"; // Column stem: rho, psd, pdf, h, power
        bool is_complex = false;
        Eigen::VectorXcd values; // Imaginary part ignored when !is_complex

        std::vector<std::pair<std::string, Eigen::VectorXd>> extra_columns;
        std::vector<std::pair<std::string, std::string>> metadata;

        void set_meta(const std::string &key, const std::string &value);
        std::string meta(const std::string &key) const; // "" when absent
        Eigen::VectorXd real() const { return values.real(); }
        Eigen::VectorXd abs() const { return values.cwiseAbs(); }
    };

    // "# key=value" lines, header row, then rows; 17 significant digits.
    // Complex values become <name>_re,<name>_im,<name>_abs.
    void write_curve_csv(const CurveSeries &series, std::ostream &out);
    void emit_curve(const CurveSeries &series, const std::string &path); // throws std::runtime_error naming the path

    // Writes a gnuplot script that plots the CSV at csv_path
    void write_gnuplot_stub(const CurveSeries &series, const std::string &csv_path, const std::string &script_path);
}

#endif
