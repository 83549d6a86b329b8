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

#ifndef V2V_SCENARIO_HPP
#define V2V_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "v2v/constants.hpp"
#include "v2v/errors.hpp"

namespace v2v
{
    // Joint azimuth/elevation scatterer density on the sphere.
    // With planar = true the elevation is fixed at beta0 and the azimuth follows a circular von Mises law.
    struct VonMisesFisher
    {
        double alpha0 = 0.0; // Mean azimuth in radians
        double beta0 = 0.0;  // Mean elevation in radians
        double k = 0.0;      // Concentration, k >= 0
        bool planar = false; // Collapse elevation onto beta0
    };

    struct Tap1Energy
    {
        double sb11 = 0.0; // MT cylinder single bounce
        double sb12 = 0.0; // MR cylinder single bounce
        double sb13 = 0.0; // First ellipsoid single bounce
        double db = 0.0;   // Cylinder to cylinder double bounce
    };

    struct TaplEnergy
    {
        double sb3 = 0.0; // Ellipsoid l single bounce
        double db1 = 0.0; // MT cylinder -> ellipsoid l
        double db2 = 0.0; // Ellipsoid l -> MR cylinder
    };

    struct GroundConfig
    {
        double H_t = 0.0; // MT antenna height above ground, m
        double H_r = 0.0; // MR antenna height above ground, m
        double eta = 0.0; // Energy share of the ground single bounce, relative to the tap-1 scatter power
    };

    struct ScenarioConfig
    {
        std::string name = "custom";

        double D = 200.0;  // MT-MR cylinder centre distance, m
        double f0 = 100.0; // Half focal distance, m
        std::vector<double> a; // Semi-major axis per tap, m
        std::vector<double> u; // Vertical semi-axis per tap, m (empty: u_l = b_l)

        double R_t = 40.0; // MT cylinder radius, m
        double R_r = 40.0; // MR cylinder radius, m

        double f_c = 5.4e9;      // Carrier, Hz
        double bandwidth = 50e6; // Hz
        double v_R = 25.0;       // Relative MR speed, m/s
        double gamma_R = 0.0;    // Relative moving direction, rad
        double f_max = 433.0;    // Maximum Doppler frequency, Hz (never derived from v_R)

        int M_T = 2;
        int M_R = 2;
        double delta_T = speed_of_light / 5.4e9; // Element spacing at MT, m
        double delta_R = speed_of_light / 5.4e9; // Element spacing at MR, m
        double psi_T = pi / 3.0;
        double theta_T = pi / 3.0;
        double psi_R = pi / 3.0;
        double theta_R = pi / 3.0;

        double ricean_K = 3.942; // LoS-to-scatter power ratio

        Tap1Energy energy_tap1;
        std::vector<TaplEnergy> energy_tapl; // Entry i belongs to tap i + 2

        VonMisesFisher vmf_tcyl{0.0, 0.0, 0.0, false};      // Departure frame, around the MT
        VonMisesFisher vmf_rcyl{pi, 0.0, 0.0, false};       // Arrival frame, around the MR
        std::vector<VonMisesFisher> vmf_ellipsoid;          // Departure frame, one per tap
        VonMisesFisher vmf_ground{0.0, 0.0, 0.0, true};     // Arrival frame ring around the MR

        double alpha_R_los = pi; // LoS arrival azimuth used by the closed forms, rad
        double beta_R_los = 0.0; // LoS arrival elevation, rad

        std::optional<GroundConfig> ground;

        std::vector<double> omega; // Tap weights (empty: all 1)
        int focus_tap = 1;         // Tap a preset is primarily meant for
        bool is_preset = false;    // TDL separability is only a warning for presets
    };

    struct TapGeometry
    {
        int l = 1;
        double a_l = 0.0, b_l = 0.0, u_l = 0.0; // m
        double tau_l = 0.0;                      // s
        double delay_resolution = 0.0;           // 1 / bandwidth, s
    };

    struct ValidationOptions
    {
        bool allow_tdl_violation = false;
    };

    // A scenario that passed every constraint; only validate_scenario can create one
    class ValidatedScenario
    {
    public:
        const ScenarioConfig &config() const { return cfg_; }
        const std::vector<std::string> &warnings() const { return warnings_; }

        int num_taps() const { return static_cast<int>(cfg_.a.size()); }
        double wavelength() const { return speed_of_light / cfg_.f_c; }
        double wavenumber() const { return two_pi * cfg_.f_c / speed_of_light; }
        double a(int l) const { return cfg_.a.at(l - 1); }
        double b(int l) const;
        double u(int l) const;
        double omega(int l) const;

        // Energy and vMF lookups by tap (1-based)
        const VonMisesFisher &vmf_ellipsoid(int l) const { return cfg_.vmf_ellipsoid.at(l - 1); }
        const TaplEnergy &energy_tapl(int l) const { return cfg_.energy_tapl.at(l - 2); }

    private:
        friend ValidatedScenario validate_scenario(const ScenarioConfig &, const ValidationOptions &);
        ValidatedScenario(ScenarioConfig cfg, std::vector<std::string> warnings)
            : cfg_(std::move(cfg)), warnings_(std::move(warnings)) {}

        ScenarioConfig cfg_;
        std::vector<std::string> warnings_;
    };

    // Throws ValidationError listing every violated constraint
    ValidatedScenario validate_scenario(const ScenarioConfig &config, const ValidationOptions &options = {});

    // Tap l (1-based): semi-axes and discrete delay; throws std::out_of_range for an unknown tap
    TapGeometry tap_geometry(const ValidatedScenario &scenario, int l);

    // Built-in presets: tap1-highway, tap1-urban, tap2-highway, tap2-urban; throws std::invalid_argument otherwise
    ScenarioConfig load_preset(const std::string &name);
    const std::vector<std::string> &preset_names();
}

#endif
