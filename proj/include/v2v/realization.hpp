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

#ifndef V2V_REALIZATION_HPP
#define V2V_REALIZATION_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "v2v/curve.hpp"
#include "v2v/rays.hpp"
#include "v2v/scenario.hpp"

namespace v2v
{
    struct PopulationSamples
    {
        Population pop = Population::tcyl;
        int tap = 1;
        std::vector<Angles> angles;    // Population-frame angles
        std::vector<Point3> positions; // scatterer_position at t = 0
        std::vector<double> phases;    // i.i.d. uniform in [0, 2 pi)
        std::size_t size() const { return angles.size(); }
    };

    struct EnsembleCounts
    {
        std::size_t n_tcyl = 100;      // N_{1,1}
        std::size_t n_rcyl = 100;      // N_{1,2}
        std::size_t n_ellipsoid = 100; // N_{l,3}, every tap
        std::size_t n_ground = 100;    // N_g
        static EnsembleCounts uniform(std::size_t n) { return {n, n, n, n}; }
    };

    // Index pairs (first scatterer, second scatterer) forming the double-bounce rays of one class
    using RayPairs = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

    struct ScattererEnsemble
    {
        std::uint64_t seed = 0;
        PopulationSamples tcyl, rcyl;
        std::vector<PopulationSamples> ellipsoid; // Entry l - 1 belongs to tap l
        std::optional<PopulationSamples> ground;
        RayPairs db_tcyl_rcyl;
        std::vector<RayPairs> db_tcyl_ellipsoid; // Per tap
        std::vector<RayPairs> db_ellipsoid_rcyl; // Per tap
    };

    // Deterministic per seed. Each population draws from its own sub-stream, so changing one count leaves the others
    // untouched. Double-bounce rays pair the two populations through random permutations (min(N1, N2) rays), or
    // use every combination with full_product.
    ScattererEnsemble build_ensemble(const ValidatedScenario &s, const EnsembleCounts &counts, std::uint64_t seed,
                                     bool full_product = false);

    struct RealizationOptions
    {
        PathModel model = PathModel::exact;
        bool random_phase = true;          // Per-scatterer uniform phase
        std::optional<double> freeze_time; // Geometry fixed at this time; only the Doppler phase advances
        std::vector<Component> components; // Empty: every component of the tap
    };

    // Sum over all rays of one tap for one geometry snapshot
    class TapEvaluator
    {
    public:
        TapEvaluator(const ValidatedScenario &s, const ScattererEnsemble &ens, int tap, double t_geometry,
                     const RealizationOptions &options);

        // h for element offsets sT, sR (m) with the Doppler phase taken at t_phase
        std::complex<double> operator()(double sT, double sR, double t_phase) const;

        // (delay in s, power) of every ray for the given offsets
        std::vector<std::pair<double, double>> ray_powers(double sT, double sR) const;

    private:
        struct Ray
        {
            int first = -1, second = -1; // Indices into bounces_; -1 marks LoS
            double amplitude = 0.0;
            double phase = 0.0;
        };

        const ValidatedScenario &s_;
        RayContext ctx_;
        std::vector<Bounce> bounces_;
        std::vector<Ray> rays_;
        double k_, two_pi_fmax_;
        double los_doppler_ = 0.0;
        double length(const Ray &r, double sT, double sR) const;
    };

    struct TapCoefficientSeries
    {
        int l = 1;
        int p = 1, q = 1;
        Eigen::VectorXd times;    // s, uniform
        Eigen::VectorXcd samples; // h_{l,pq}(t_i)
        double tau_l = 0.0;       // s
        double ricean_K = 0.0;
        std::vector<std::pair<std::string, double>> energies;

        CurveSeries to_curve() const;
    };

    // Tap 1: LoS, the three single-bounce groups, the cylinder double bounce and, when configured, the ground bounce
    TapCoefficientSeries tap1_coefficient(const ValidatedScenario &s, const ScattererEnsemble &ens, int p, int q,
                                          const Eigen::VectorXd &times, const RealizationOptions &options = {});

    // Tap l >= 2: ellipsoid single bounce and the two cylinder/ellipsoid double bounces
    TapCoefficientSeries tapl_coefficient(const ValidatedScenario &s, const ScattererEnsemble &ens, int l, int p, int q,
                                          const Eigen::VectorXd &times, const RealizationOptions &options = {});

    // Ground single bounce alone; throws std::invalid_argument without a ground configuration
    TapCoefficientSeries ground_coefficient(const ValidatedScenario &s, const ScattererEnsemble &ens, int p, int q,
                                            const Eigen::VectorXd &times, const RealizationOptions &options = {});

    // Uniform grid t0, t0 + dt, ...; dt defaults to 1 / (8 f_max)
    Eigen::VectorXd time_grid(const ValidatedScenario &s, double t0, double duration, std::optional<double> dt = {});

    struct TdlResponse
    {
        Eigen::VectorXd times;
        std::vector<int> taps;
        std::vector<double> delays;    // tau_l, s
        Eigen::MatrixXcd coefficients; // Row per delay, column per time: omega_l h_{l,pq}(t)
    };

    // Taps must share the time grid; zero weights drop the tap; duplicate tap indices throw
    TdlResponse assemble_tdl(const ValidatedScenario &s, const std::vector<TapCoefficientSeries> &taps,
                             const std::vector<double> &weights);

    // Ray power binned by total path delay (centre elements, geometry at time t); bin i is centred at D/c + i res
    CurveSeries power_delay_profile(const ValidatedScenario &s, const ScattererEnsemble &ens, double resolution,
                                    double t = 0.0, const RealizationOptions &options = {});
}

#endif
