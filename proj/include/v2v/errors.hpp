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

#ifndef V2V_ERRORS_HPP
#define V2V_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace v2v
{
    // One or more violated scenario constraints; each entry names the constraint and the offending values
    class ValidationError : public std::invalid_argument
    {
    public:
        explicit ValidationError(std::vector<std::string> issues);
        const std::vector<std::string> &issues() const { return issues_; }

    private:
        std::vector<std::string> issues_;
    };

    // Closed-form approximation broke down (negative radicand) or a geometric query is degenerate
    class NumericalError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Adaptive quadrature gave up before reaching the requested tolerance
    class ConvergenceError : public std::runtime_error
    {
    public:
        ConvergenceError(const std::string &what, double achieved, double requested)
            : std::runtime_error(what), achieved_error(achieved), requested_tolerance(requested) {}
        double achieved_error;
        double requested_tolerance;
    };
}

#endif
