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

#ifndef V2V_CONFIG_IO_HPP
#define V2V_CONFIG_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "v2v/scenario.hpp"

namespace v2v
{
    // Flat "key = value" config. Keys use dotted sections (vmf.tcyl.k, energy.tap2.sb3, ground.H_t).
    // Angles accept a "deg" suffix, lengths a "lambda" suffix (multiples of c/f_c at parse time).
    // A leading "preset = name" line replaces the base with that preset. Documented in docs/config.md.

    // Apply one setting; throws std::invalid_argument naming the key for unknown keys or malformed values
    void apply_setting(ScenarioConfig &config, const std::string &key, const std::string &value);

    // Parse a whole stream on top of base; line numbers are included in error messages
    ScenarioConfig parse_config(std::istream &in, ScenarioConfig base = {});
    ScenarioConfig load_config_file(const std::string &path, ScenarioConfig base = {});

    // Canonical sorted key/value list with 17 significant digits; parse_config accepts it back
    std::vector<std::pair<std::string, std::string>> canonical_settings(const ScenarioConfig &config);
    std::string canonical_string(const ScenarioConfig &config);

    // FNV-1a 64 over canonical_string
    std::uint64_t scenario_hash(const ScenarioConfig &config);
    std::string scenario_hash_hex(const ScenarioConfig &config);

    // "%.17g"
    std::string format_double(double x);
}

#endif
