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

#ifndef V2V_STATISTICS_HPP
#define V2V_STATISTICS_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "v2v/curve.hpp"
#include "v2v/quadrature.hpp"
#include "v2v/rays.hpp"
#include "v2v/scenario.hpp"

namespace v2v
{
    // Two links A and B given by signed element offsets (m) along the MT and MR array axes, plus a time lag.
    // The correlation is E[h_A*(t) h_B(t + tau)] with the geometry frozen at t.
    struct LagPoint
    {
        double sT_A = 0.0, sR_A = 0.0;
        double sT_B = 0.0, sR_B = 0.0;
        double tau = 0.0; // s
    };

    // Offsets of elements (p, q) and (p2, q2) of the configured arrays
    LagPoint lag_from_elements(const ValidatedScenario &s, int p, int q, int p2, int q2, double tau = 0.0);

    struct CfRequest
    {
        int tap = 1;
        double t = 0.0;       // Evaluation time, s
        double tau = 0.0;     // Time lag, s
        double delta_T = 0.0; // MT offset of link B relative to link A, m
        double delta_R = 0.0; // MR offset of link B relative to link A, m
        Component component = Component::total;
        PathModel model = PathModel::exact;
        QuadratureOptions quad;
    };

    // Component CF scaled by its power share (LoS: Omega/(Omega+1), tap-1 scatter: eta/(Omega+1), tap l: eta)
    std::complex<double> space_cf_component(const ValidatedScenario &s, const CfRequest &req);

    // Weighted sum of the tap's components divided by the sum of weights
    std::complex<double> space_cf_total(const ValidatedScenario &s, const CfRequest &req);

    // Vector form. Components are weighted unless normalized is set; total is always normalized.
    Eigen::ArrayXcd space_cf(const ValidatedScenario &s, int tap, double t, Component component,
                             const std::vector<LagPoint> &lags, PathModel model = PathModel::exact,
                             const QuadratureOptions &quad = {}, bool normalized = false);

    enum class SpacingSide
    {
        T,   // Link B moves along the MT array only
        R,   // Link B moves along the MR array only
        both // Both ends move by the same number of wavelengths
    };

    SpacingSide parse_spacing_side(const std::string &name);

    // CF against spacing in wavelengths; value column is the CF, rho_norm is the component CF before weighting
    CurveSeries space_cf_curve(const ValidatedScenario &s, int tap, double t, double tau, Component component,
                               const Eigen::VectorXd &spacing_wavelengths, SpacingSide side = SpacingSide::T,
                               PathModel model = PathModel::exact, const QuadratureOptions &quad = {});

    // Zero antenna offsets across a lag grid
    CurveSeries temporal_acf(const ValidatedScenario &s, int tap, double t, const Eigen::VectorXd &taus,
                             Component component = Component::total, PathModel model = PathModel::exact,
                             const QuadratureOptions &quad = {});

    // Power-weighted delay characteristic function E[exp(-j 2 pi df (tau_ray - tau_l))] of the link with element
    // offsets (sT, sR). Components are normalized to 1 at df = 0; total combines them with the power shares.
    Eigen::ArrayXcd frequency_cf_values(const ValidatedScenario &s, int tap, double t, Component component,
                                        const Eigen::VectorXd &dfs, PathModel model = PathModel::exact,
                                        const QuadratureOptions &quad = {}, double sT = 0.0, double sR = 0.0);
    CurveSeries frequency_cf(const ValidatedScenario &s, int tap, double t, const Eigen::VectorXd &dfs,
                             Component component = Component::total, PathModel model = PathModel::exact,
                             const QuadratureOptions &quad = {}, int p = 0, int q = 0);

    // ---- Doppler spectra ------------------------------------------------------------------------------

    // chi(omega) = integral over df in [-pi, pi] of rho(df) exp(j omega df)
    CurveSeries characteristic_function(const std::function<std::complex<double>(double)> &rho_df,
                                        const Eigen::VectorXd &omega, double abs_tol = 1e-9);
    // Sampled form: uniform df grid covering [-pi, pi]; throws std::invalid_argument when max|omega| * step >= pi
    CurveSeries characteristic_function(const CurveSeries &rho_df, const Eigen::VectorXd &omega);

    // S(gamma) = integral over t in [-pi, pi] of rho(t) exp(-j 2 pi t gamma)
    CurveSeries doppler_psd_paper(const std::function<std::complex<double>(double)> &rho_t,
                                  const Eigen::VectorXd &gamma, double abs_tol = 1e-9);

    struct PaperPsdOptions
    {
        int n_df = 16;           // Gauss-Legendre nodes over df in [-pi, pi]
        int n_t = 64;            // Gauss-Legendre nodes over t in [-pi, pi] (8-point panels)
        double omega_max = 50.0; // Inverse transform range
        int n_omega = 2001;
    };

    // Characteristic functions of the tap's scatter components, their product transformed back at df = 0, then the
    // time transform above with rho(t) sampled on the t nodes
    CurveSeries doppler_psd_paper(const ValidatedScenario &s, int tap, const Eigen::VectorXd &gamma,
                                  const PaperPsdOptions &options = {}, PathModel model = PathModel::exact,
                                  const QuadratureOptions &quad = {});

    enum class LagWindow
    {
        parzen,
        bartlett
    };

    struct StandardPsdOptions
    {
        double dtau = 0.0;          // Lag step, s (0: 1 / (4 f_max)); must not exceed 1 / (2 f_max)
        double window_length = 0.0; // One-sided lag window, s (0: 100 / f_max)
        LagWindow window = LagWindow::parzen;
    };

    // Windowed Fourier transform of the temporal ACF, scaled to unit area over one period
    CurveSeries doppler_psd_standard(const ValidatedScenario &s, int tap, double t, const Eigen::VectorXd &gamma,
                                     Component component = Component::total, PathModel model = PathModel::exact,
                                     const QuadratureOptions &quad = {}, const StandardPsdOptions &options = {});

    // ---- Monte Carlo --------------------------------------------------------------------------------

    struct McOptions
    {
        std::size_t realizations = 500;
        std::size_t n_scatterers = 10000; // Per population
        std::uint64_t seed = 1;
        int threads = 0;
        PathModel model = PathModel::exact;
        bool random_phase = true;
        bool full_product = false;
        std::vector<Component> components; // Empty: every component of the tap
    };

    struct McResult
    {
        Eigen::ArrayXcd estimate; // mean(h_A* h_B) / sqrt(mean|h_A|^2 mean|h_B|^2)
        Eigen::ArrayXd sigma;     // Delta-method standard error of the complex estimate
        std::size_t realizations = 0;
    };

    // Realization r uses the sub-seed derive_seed(seed, r); the reduction runs in realization order
    McResult monte_carlo_cf(const ValidatedScenario &s, int tap, double t, const std::vector<LagPoint> &lags,
                            const McOptions &options);
}

#endif
