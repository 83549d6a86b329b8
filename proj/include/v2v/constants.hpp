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

#ifndef V2V_CONSTANTS_HPP
#define V2V_CONSTANTS_HPP

#include <numbers>

namespace v2v
{
    inline constexpr double speed_of_light = 3.0e8; // m/s, fixed by the model
    inline constexpr double pi = std::numbers::pi;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;

    // Cylinder scatterer heights are R * tan(beta); beta is clamped to this fraction of pi/2
    inline constexpr double cylinder_elevation_clamp = 0.99;

    // Below this concentration the von Mises-Fisher density uses its k -> 0 limit
    inline constexpr double vmf_small_k = 1e-12;

    inline constexpr const char *tool_version = "1.0.0";
}

#endif
