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

#include <cmath>
#include <map>
#include <tuple>

#include "v2v/parallel.hpp"
#include "v2v/realization.hpp"
#include "v2v/rng.hpp"
#include "v2v/statistics.hpp"

namespace v2v
{
    McResult monte_carlo_cf(const ValidatedScenario &s, int tap, double t, const std::vector<LagPoint> &lags,
                            const McOptions &options)
    {
        if (options.realizations < 10)
            throw std::invalid_argument("monte_carlo_cf needs at least 10 realizations (got " + std::to_string(options.realizations) + ")");
        if (options.n_scatterers < 1)
            throw std::invalid_argument("monte_carlo_cf needs at least one scatterer per population");
        if (tap < 1 || tap > s.num_taps())
            throw std::out_of_range("tap index " + std::to_string(tap) + " out of range");

        // Distinct (sT, sR, Doppler time) evaluations shared by all lag points
        using Key = std::tuple<double, double, double>;
        std::map<Key, std::size_t> keys;
        std::vector<Key> key_list;
        std::vector<std::pair<std::size_t, std::size_t>> lag_keys;
        auto key_index = [&](const Key &k)
        {
            auto [it, inserted] = keys.emplace(k, key_list.size());
            if (inserted)
                key_list.push_back(k);
            return it->second;
        };
        for (const auto &L : lags)
            lag_keys.emplace_back(key_index({L.sT_A, L.sR_A, t}), key_index({L.sT_B, L.sR_B, t + L.tau}));

        const std::size_t R = options.realizations, K = key_list.size();
        Eigen::MatrixXcd H(static_cast<Eigen::Index>(R), static_cast<Eigen::Index>(K));
        RealizationOptions ro;
        ro.model = options.model;
        ro.random_phase = options.random_phase;
        ro.freeze_time = t;
        ro.components = options.components;

        parallel_for(R, resolve_threads(options.threads), [&](std::size_t r)
                     {
                         ScattererEnsemble ens = build_ensemble(s, EnsembleCounts::uniform(options.n_scatterers),
                                                                derive_seed(options.seed, r), options.full_product);
                         TapEvaluator eval(s, ens, tap, t, ro);
                         for (std::size_t k = 0; k < K; ++k)
                         {
                             auto [sT, sR, tp] = key_list[k];
                             H(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = eval(sT, sR, tp);
                         } });

        McResult out;
        out.realizations = R;
        out.estimate.resize(static_cast<Eigen::Index>(lags.size()));
        out.sigma.resize(static_cast<Eigen::Index>(lags.size()));
        const double n = static_cast<double>(R);
        for (std::size_t i = 0; i < lags.size(); ++i)
        {
            auto hA = H.col(static_cast<Eigen::Index>(lag_keys[i].first)).array();
            auto hB = H.col(static_cast<Eigen::Index>(lag_keys[i].second)).array();
            Eigen::ArrayXcd z = hA.conjugate() * hB;
            Eigen::ArrayXd a = hA.abs2(), b = hB.abs2();
            std::complex<double> Z = z.sum() / n;
            double A = a.sum() / n, B = b.sum() / n, norm = std::sqrt(A * B);
            std::complex<double> rho = Z / norm;
            // Influence function of rho = Z / sqrt(A B)
            Eigen::ArrayXcd psi = z / norm - 0.5 * rho * (a / A + b / B);
            std::complex<double> mean = psi.sum() / n;
            double var = (psi - mean).abs2().sum() / (n * (n - 1.0));
            out.estimate(static_cast<Eigen::Index>(i)) = rho;
            out.sigma(static_cast<Eigen::Index>(i)) = std::sqrt(var);
        }
        return out;
    }
}
