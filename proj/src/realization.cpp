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

#include "v2v/realization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "v2v/angular.hpp"
#include "v2v/config_io.hpp"
#include "v2v/rng.hpp"

namespace v2v
{
    namespace
    {
        // Sub-stream ids of build_ensemble
        constexpr std::uint64_t stream_tcyl = 1, stream_rcyl = 2, stream_ground = 3, stream_pairs = 4, stream_ellipsoid = 100;

        PopulationSamples draw_population(const ValidatedScenario &s, Population pop, int tap, const VonMisesFisher &dist,
                                          std::size_t n, std::uint64_t seed)
        {
            if (n < 1)
                throw std::invalid_argument("scatterer count for " + population_name(pop) + " must be at least 1");
            Rng rng(seed);
            PopulationSamples out;
            out.pop = pop;
            out.tap = tap;
            out.angles.resize(n);
            out.positions.resize(n);
            out.phases.resize(n);
            for (auto &a : out.angles)
            {
                a = vmf_draw(dist, rng);
                if (pop == Population::ellipsoid)
                    a.beta = std::abs(a.beta);
            }
            for (auto &ph : out.phases)
                ph = two_pi * rng.uniform();
            for (std::size_t i = 0; i < n; ++i)
                out.positions[i] = scatterer_position(pop, tap, out.angles[i].alpha, out.angles[i].beta, s, 0.0);
            return out;
        }

        std::vector<std::uint32_t> shuffled(std::size_t n, Rng &rng)
        {
            std::vector<std::uint32_t> idx(n);
            std::iota(idx.begin(), idx.end(), 0u);
            for (std::size_t i = n; i > 1; --i)
                std::swap(idx[i - 1], idx[rng.below(i)]);
            return idx;
        }

        RayPairs make_pairs(std::size_t n1, std::size_t n2, bool full_product, Rng &rng)
        {
            RayPairs out;
            if (full_product)
            {
                out.reserve(n1 * n2);
                for (std::uint32_t i = 0; i < n1; ++i)
                    for (std::uint32_t j = 0; j < n2; ++j)
                        out.emplace_back(i, j);
                return out;
            }
            auto p1 = shuffled(n1, rng), p2 = shuffled(n2, rng);
            std::size_t n = std::min(n1, n2);
            out.reserve(n);
            for (std::size_t i = 0; i < n; ++i)
                out.emplace_back(p1[i], p2[i]);
            return out;
        }

        std::pair<double, double> element_offsets(const ValidatedScenario &s, int p, int q)
        {
            const auto &c = s.config();
            if (p < 1 || p > c.M_T)
                throw std::out_of_range("MT element " + std::to_string(p) + " out of range [1, " + std::to_string(c.M_T) + "]");
            if (q < 1 || q > c.M_R)
                throw std::out_of_range("MR element " + std::to_string(q) + " out of range [1, " + std::to_string(c.M_R) + "]");
            return {element_offset(c.M_T, p, c.delta_T), element_offset(c.M_R, q, c.delta_R)};
        }

        TapCoefficientSeries make_series(const ValidatedScenario &s, const ScattererEnsemble &ens, int tap, int p, int q,
                                         const Eigen::VectorXd &times, const RealizationOptions &options)
        {
            auto [sT, sR] = element_offsets(s, p, q);
            TapCoefficientSeries out;
            out.l = tap;
            out.p = p;
            out.q = q;
            out.times = times;
            out.samples.resize(times.size());
            out.tau_l = tap_geometry(s, tap).tau_l;
            out.ricean_K = s.config().ricean_K;
            auto comps = options.components.empty() ? tap_components(s, tap) : options.components;
            for (Component c : comps)
                out.energies.emplace_back(component_name(c), component_weight(s, tap, c));

            if (options.freeze_time)
            {
                TapEvaluator eval(s, ens, tap, *options.freeze_time, options);
                for (Eigen::Index i = 0; i < times.size(); ++i)
                    out.samples(i) = eval(sT, sR, times(i));
            }
            else
            {
                for (Eigen::Index i = 0; i < times.size(); ++i)
                    out.samples(i) = TapEvaluator(s, ens, tap, times(i), options)(sT, sR, times(i));
            }
            return out;
        }
    }

    ScattererEnsemble build_ensemble(const ValidatedScenario &s, const EnsembleCounts &counts, std::uint64_t seed, bool full_product)
    {
        const auto &c = s.config();
        ScattererEnsemble e;
        e.seed = seed;
        e.tcyl = draw_population(s, Population::tcyl, 1, c.vmf_tcyl, counts.n_tcyl, derive_seed(seed, stream_tcyl));
        e.rcyl = draw_population(s, Population::rcyl, 1, c.vmf_rcyl, counts.n_rcyl, derive_seed(seed, stream_rcyl));
        for (int l = 1; l <= s.num_taps(); ++l)
            e.ellipsoid.push_back(draw_population(s, Population::ellipsoid, l, s.vmf_ellipsoid(l), counts.n_ellipsoid,
                                                  derive_seed(seed, stream_ellipsoid + static_cast<std::uint64_t>(l))));
        if (c.ground)
            e.ground = draw_population(s, Population::ground, 1, c.vmf_ground, counts.n_ground, derive_seed(seed, stream_ground));

        Rng rng(derive_seed(seed, stream_pairs));
        e.db_tcyl_rcyl = make_pairs(e.tcyl.size(), e.rcyl.size(), full_product, rng);
        for (int l = 1; l <= s.num_taps(); ++l)
        {
            const auto &ell = e.ellipsoid[l - 1];
            e.db_tcyl_ellipsoid.push_back(make_pairs(e.tcyl.size(), ell.size(), full_product, rng));
            e.db_ellipsoid_rcyl.push_back(make_pairs(ell.size(), e.rcyl.size(), full_product, rng));
        }
        return e;
    }

    TapEvaluator::TapEvaluator(const ValidatedScenario &s, const ScattererEnsemble &ens, int tap, double t_geometry,
                               const RealizationOptions &options)
        : s_(s), ctx_(s, t_geometry, options.model), k_(s.wavenumber()), two_pi_fmax_(two_pi * s.config().f_max)
    {
        if (tap < 1 || tap > s.num_taps())
            throw std::out_of_range("tap index " + std::to_string(tap) + " out of range");
        if (static_cast<int>(ens.ellipsoid.size()) != s.num_taps())
            throw std::invalid_argument("ensemble does not match the scenario: " + std::to_string(ens.ellipsoid.size()) +
                                        " ellipsoid populations for " + std::to_string(s.num_taps()) + " taps");
        auto comps = options.components.empty() ? tap_components(s, tap) : options.components;

        auto add_block = [&](const PopulationSamples &ps)
        {
            int base = static_cast<int>(bounces_.size());
            for (const auto &a : ps.angles)
                bounces_.push_back(ctx_.bounce(ps.pop, ps.tap, a.alpha, a.beta));
            return base;
        };
        auto phase = [&](double x)
        { return options.random_phase ? x : 0.0; };
        auto add_single = [&](const PopulationSamples &ps, double w)
        {
            int base = add_block(ps);
            double amp = std::sqrt(w / static_cast<double>(ps.size()));
            for (std::size_t i = 0; i < ps.size(); ++i)
                rays_.push_back({base + static_cast<int>(i), -1, amp, phase(ps.phases[i])});
        };
        auto add_double = [&](const PopulationSamples &p1, const PopulationSamples &p2, const RayPairs &pairs, double w)
        {
            int b1 = add_block(p1), b2 = add_block(p2);
            double amp = std::sqrt(w / static_cast<double>(pairs.size()));
            for (const auto &[i, j] : pairs)
                rays_.push_back({b1 + static_cast<int>(i), b2 + static_cast<int>(j), amp, phase(p1.phases[i] + p2.phases[j])});
        };

        const auto &ell = ens.ellipsoid[tap - 1];
        for (Component c : comps)
        {
            double w = component_weight(s, tap, c);
            switch (c)
            {
            case Component::los:
                rays_.push_back({-1, -1, std::sqrt(w), 0.0});
                los_doppler_ = ctx_.los_doppler();
                break;
            case Component::sb11:
                add_single(ens.tcyl, w);
                break;
            case Component::sb12:
                add_single(ens.rcyl, w);
                break;
            case Component::sb13:
            case Component::sbl3:
                add_single(ell, w);
                break;
            case Component::db:
                add_double(ens.tcyl, ens.rcyl, ens.db_tcyl_rcyl, w);
                break;
            case Component::dbl1:
                add_double(ens.tcyl, ell, ens.db_tcyl_ellipsoid[tap - 1], w);
                break;
            case Component::dbl2:
                add_double(ell, ens.rcyl, ens.db_ellipsoid_rcyl[tap - 1], w);
                break;
            case Component::ground:
                if (!ens.ground)
                    throw std::invalid_argument("ensemble has no ground population");
                add_single(*ens.ground, w);
                break;
            case Component::total:
                throw std::invalid_argument("'total' is not a ray component");
            }
        }
    }

    double TapEvaluator::length(const Ray &r, double sT, double sR) const
    {
        if (r.first < 0)
            return ctx_.los_length(sT, sR);
        const Bounce &b1 = bounces_[r.first];
        if (r.second < 0)
            return ctx_.leg_T(b1, sT) + ctx_.leg_R(b1, sR);
        const Bounce &b2 = bounces_[r.second];
        return ctx_.leg_T(b1, sT) + ctx_.leg_mid(b1, b2) + ctx_.leg_R(b2, sR);
    }

    std::complex<double> TapEvaluator::operator()(double sT, double sR, double t_phase) const
    {
        std::complex<double> h = 0.0;
        for (const Ray &r : rays_)
        {
            double dop = r.first < 0 ? los_doppler_ : bounces_[r.second < 0 ? r.first : r.second].doppler;
            h += std::polar(r.amplitude, -k_ * length(r, sT, sR) + two_pi_fmax_ * t_phase * dop + r.phase);
        }
        return h;
    }

    std::vector<std::pair<double, double>> TapEvaluator::ray_powers(double sT, double sR) const
    {
        std::vector<std::pair<double, double>> out;
        out.reserve(rays_.size());
        for (const Ray &r : rays_)
            out.emplace_back(length(r, sT, sR) / speed_of_light, r.amplitude * r.amplitude);
        return out;
    }

    CurveSeries TapCoefficientSeries::to_curve() const
    {
        CurveSeries c;
        c.x_name = "t";
        c.x_unit = "s";
        c.x = times;
        c.value_name = "h";
        c.is_complex = true;
        c.values = samples;
        c.set_meta("tap", std::to_string(l));
        c.set_meta("p", std::to_string(p));
        c.set_meta("q", std::to_string(q));
        c.set_meta("tau_l", format_double(tau_l));
        c.set_meta("ricean_K", format_double(ricean_K));
        for (const auto &[name, w] : energies)
            c.set_meta("weight_" + name, format_double(w));
        return c;
    }

    TapCoefficientSeries tap1_coefficient(const ValidatedScenario &s, const ScattererEnsemble &ens, int p, int q,
                                          const Eigen::VectorXd &times, const RealizationOptions &options)
    {
        return make_series(s, ens, 1, p, q, times, options);
    }

    TapCoefficientSeries tapl_coefficient(const ValidatedScenario &s, const ScattererEnsemble &ens, int l, int p, int q,
                                          const Eigen::VectorXd &times, const RealizationOptions &options)
    {
        if (l < 2 || l > s.num_taps())
            throw std::out_of_range("tapl_coefficient needs 2 <= l <= " + std::to_string(s.num_taps()) + " (got " + std::to_string(l) + ")");
        return make_series(s, ens, l, p, q, times, options);
    }

    TapCoefficientSeries ground_coefficient(const ValidatedScenario &s, const ScattererEnsemble &ens, int p, int q,
                                            const Eigen::VectorXd &times, const RealizationOptions &options)
    {
        if (!s.config().ground)
            throw std::invalid_argument("ground_coefficient needs a ground configuration (ground.H_t, ground.H_r, ground.eta)");
        RealizationOptions o = options;
        o.components = {Component::ground};
        return make_series(s, ens, 1, p, q, times, o);
    }

    Eigen::VectorXd time_grid(const ValidatedScenario &s, double t0, double duration, std::optional<double> dt)
    {
        double step = dt ? *dt : (s.config().f_max > 0.0 ? 1.0 / (8.0 * s.config().f_max) : 0.0);
        if (!(step > 0.0))
            throw std::invalid_argument("time step must be positive (set dt or a positive f_max)");
        if (!(duration >= 0.0))
            throw std::invalid_argument("duration must be non-negative");
        Eigen::Index n = static_cast<Eigen::Index>(std::floor(duration / step + 1e-9)) + 1;
        Eigen::VectorXd t(n);
        for (Eigen::Index i = 0; i < n; ++i)
            t(i) = t0 + static_cast<double>(i) * step;
        return t;
    }

    TdlResponse assemble_tdl(const ValidatedScenario &s, const std::vector<TapCoefficientSeries> &taps,
                             const std::vector<double> &weights)
    {
        if (taps.size() != weights.size())
            throw std::invalid_argument("assemble_tdl: one weight per tap is required");
        std::set<int> seen;
        for (const auto &t : taps)
            if (!seen.insert(t.l).second)
                throw std::invalid_argument("assemble_tdl: duplicate tap index " + std::to_string(t.l));
        TdlResponse out;
        if (taps.empty())
            return out;
        out.times = taps.front().times;
        std::vector<Eigen::VectorXcd> rows;
        for (std::size_t i = 0; i < taps.size(); ++i)
        {
            const auto &t = taps[i];
            if (t.times.size() != out.times.size() || t.times != out.times)
                throw std::invalid_argument("assemble_tdl: taps must share the time grid");
            if (weights[i] == 0.0)
                continue;
            out.taps.push_back(t.l);
            out.delays.push_back(tap_geometry(s, t.l).tau_l);
            rows.push_back(weights[i] * t.samples);
        }
        out.coefficients.resize(static_cast<Eigen::Index>(rows.size()), out.times.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            out.coefficients.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
        return out;
    }

    CurveSeries power_delay_profile(const ValidatedScenario &s, const ScattererEnsemble &ens, double resolution,
                                    double t, const RealizationOptions &options)
    {
        if (!(resolution > 0.0))
            throw std::invalid_argument("PDP resolution must be positive");
        const double tau0 = s.config().D / speed_of_light;
        std::vector<double> bins;
        double tau_min = INFINITY, tau_max = -INFINITY;
        RealizationOptions o = options;
        o.components.clear();
        for (int l = 1; l <= s.num_taps(); ++l)
        {
            double w = s.omega(l);
            if (w == 0.0)
                continue;
            TapEvaluator eval(s, ens, l, t, o);
            for (const auto &[tau, power] : eval.ray_powers(0.0, 0.0))
            {
                long idx = std::lround((tau - tau0) / resolution);
                if (idx < 0)
                    idx = 0;
                if (static_cast<std::size_t>(idx) >= bins.size())
                    bins.resize(idx + 1, 0.0);
                bins[idx] += w * w * power;
                tau_min = std::min(tau_min, tau);
                tau_max = std::max(tau_max, tau);
            }
        }
        CurveSeries out;
        out.x_name = "delay";
        out.x_unit = "s";
        out.value_name = "power";
        out.x.resize(static_cast<Eigen::Index>(bins.size()));
        out.values.resize(static_cast<Eigen::Index>(bins.size()));
        for (std::size_t i = 0; i < bins.size(); ++i)
        {
            out.x(i) = tau0 + static_cast<double>(i) * resolution;
            out.values(i) = bins[i];
        }
        out.set_meta("t", format_double(t));
        out.set_meta("resolution", format_double(resolution));
        out.set_meta("tau_min", format_double(tau_min));
        out.set_meta("tau_max", format_double(tau_max));
        out.set_meta("seed", std::to_string(ens.seed));
        out.set_meta("path_model", path_model_name(options.model));
        return out;
    }
}
