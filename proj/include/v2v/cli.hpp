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

#ifndef V2V_CLI_HPP
#define V2V_CLI_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace v2v::cli
{
    // Exit codes: 0 success, 1 validation or usage error, 2 numerical non-convergence
    int run(int argc, const char *const *argv);
    int run(const std::vector<std::string> &args); // args[0] is the program name

    // "start:step:stop" (inclusive), a comma list, or a single number
    Eigen::VectorXd parse_grid(const std::string &spec);

    // Plain number with an optional "deg" suffix
    double parse_angle(const std::string &text);
}

#endif
