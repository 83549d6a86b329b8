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

#include "v2v/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>

#include "v2v/angular.hpp"
#include "v2v/config_io.hpp"
#include "v2v/errors.hpp"
#include "v2v/realization.hpp"
#include "v2v/scenario.hpp"
#include "v2v/statistics.hpp"

namespace v2v::cli
{
    namespace
    {
        struct Common
        {
            std::string preset, config;
            std::vector<std::string> sets;
            std::string out, manifest;
            std::uint64_t seed = 1;
            int threads = 0;
            std::string path_model = "exact";
            bool as_printed = false;
            bool allow_tdl = false;
            bool gnuplot = false;
            double tol = 1e-5;
            double tensor_tol = 1e-3;
            std::string gamma_r;
        };

        void add_common(CLI::App *app, Common &c)
        {
            app->add_option("--preset", c.preset, "Built-in scenario: tap1-highway, tap1-urban, tap2-highway, tap2-urban");
            app->add_option("--config", c.config, "Scenario config file (key = value)");
            app->add_option("--set", c.sets, "Override one config key, e.g. --set R_t=30 (repeatable)");
            app->add_option("--out", c.out, "Output CSV path (stdout when omitted)");
            app->add_option("--manifest", c.manifest, "Run manifest JSON path (default <out>.manifest.json)");
            app->add_option("--seed", c.seed, "Random seed");
            app->add_option("--threads", c.threads, "Worker threads (default V2V_GBSM_THREADS or all cores)");
            app->add_option("--path-model", c.path_model, "exact | closed-form | as-printed");
            app->add_flag("--as-printed", c.as_printed, "Closed forms with the printed ellipsoid leading term");
            app->add_flag("--allow-tdl-violation", c.allow_tdl, "Downgrade the TDL separability constraint to a warning");
            app->add_flag("--gnuplot-stub", c.gnuplot, "Also write <out>.gp");
            app->add_option("--tol", c.tol, "Absolute quadrature tolerance");
            app->add_option("--tensor-tol", c.tensor_tol, "Level-to-level change accepted by the double-bounce frequency CF rule");
            app->add_option("--gamma-r", c.gamma_r, "Override gamma_R (rad, or with a deg suffix)");
        }

        ScenarioConfig resolve_config(const Common &c)
        {
            if (c.preset.empty() && c.config.empty())
                throw std::invalid_argument("no scenario given: use --preset NAME or --config FILE");
            ScenarioConfig cfg = c.preset.empty() ? ScenarioConfig{} : load_preset(c.preset);
            if (!c.config.empty())
                cfg = load_config_file(c.config, cfg);
            for (const auto &kv : c.sets)
            {
                auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("--set expects key=value (got '" + kv + "')");
                auto trim = [](std::string x)
                {
                    auto b = x.find_first_not_of(" \t"), e = x.find_last_not_of(" \t");
                    return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
                };
                apply_setting(cfg, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
            }
            if (!c.gamma_r.empty())
                cfg.gamma_R = parse_angle(c.gamma_r);
            return cfg;
        }

        PathModel model_of(const Common &c)
        {
            return c.as_printed ? PathModel::closed_form_as_printed : parse_path_model(c.path_model);
        }

        QuadratureOptions quad_of(const Common &c)
        {
            QuadratureOptions q;
            if (!(c.tol > 0.0))
                throw std::invalid_argument("--tol must be positive");
            q.abs_tol = c.tol;
            if (!(c.tensor_tol > 0.0))
                throw std::invalid_argument("--tensor-tol must be positive");
            q.tensor_abs_tol = c.tensor_tol;
            return q;
        }

        class Run
        {
        public:
            Run(std::string command, const Common &c)
                : command_(std::move(command)), c_(c), start_(std::chrono::steady_clock::now()),
                  cfg_(resolve_config(c))
            {
                ValidationOptions vo;
                vo.allow_tdl_violation = c.allow_tdl;
                scenario_.emplace(validate_scenario(cfg_, vo));
                for (const auto &w : scenario_->warnings())
                    std::cerr << "warning: " << w << "\n";
            }

            const ValidatedScenario &scenario() const { return *scenario_; }

            void emit(CurveSeries curve, const std::string &method)
            {
                if (curve.meta("method").empty())
                    curve.set_meta("method", method);
                curve.set_meta("scenario_hash", scenario_hash_hex(cfg_));
                curve.set_meta("seed", std::to_string(c_.seed));
                curve.set_meta("command", command_);
                curve.set_meta("tool_version", tool_version);
                if (c_.out.empty())
                {
                    write_curve_csv(curve, std::cout);
                    return;
                }
                emit_curve(curve, c_.out);
                outputs_.push_back(c_.out);
                if (c_.gnuplot)
                {
                    write_gnuplot_stub(curve, c_.out, c_.out + ".gp");
                    outputs_.push_back(c_.out + ".gp");
                }
            }

            void finish()
            {
                std::string path = !c_.manifest.empty() ? c_.manifest : (c_.out.empty() ? "" : c_.out + ".manifest.json");
                if (path.empty())
                    return;
                nlohmann::ordered_json m;
                m["command"] = command_;
                nlohmann::ordered_json cfg;
                for (const auto &[k, v] : canonical_settings(cfg_))
                    cfg[k] = v;
                m["config"] = cfg;
                m["seed"] = c_.seed;
                m["tool_version"] = tool_version;
                m["scenario_hash"] = scenario_hash_hex(cfg_);
                m["outputs"] = outputs_;
                m["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
                std::ofstream f(path);
                if (!f)
                    throw std::runtime_error("cannot open '" + path + "' for writing");
                f << m.dump(2) << "\n";
            }

        private:
            std::string command_;
            const Common &c_;
            std::chrono::steady_clock::time_point start_;
            ScenarioConfig cfg_;
            std::optional<ValidatedScenario> scenario_;
            std::vector<std::string> outputs_;
        };

        int tap_or_focus(int tap, const ValidatedScenario &s)
        {
            int l = tap > 0 ? tap : s.config().focus_tap;
            if (l < 1 || l > s.num_taps())
                throw std::invalid_argument("--tap " + std::to_string(l) + " out of range [1, " + std::to_string(s.num_taps()) + "]");
            return l;
        }
    }

    double parse_angle(const std::string &text)
    {
        std::string t = text;
        double scale = 1.0;
        if (t.size() > 3 && t.compare(t.size() - 3, 3, "deg") == 0)
        {
            t = t.substr(0, t.size() - 3);
            scale = pi / 180.0;
        }
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(t, &used);
        }
        catch (const std::exception &)
        {
            used = 0;
        }
        if (used == 0 || used != t.size())
            throw std::invalid_argument("malformed angle '" + text + "'");
        return v * scale;
    }

    Eigen::VectorXd parse_grid(const std::string &text)
    {
        auto num = [&](const std::string &x)
        {
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(x, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || used != x.size())
                throw std::invalid_argument("malformed grid '" + text + "' (expected start:step:stop, a comma list or a number)");
            return v;
        };
        std::vector<double> values;
        if (text.find(':') != std::string::npos)
        {
            auto p1 = text.find(':'), p2 = text.find(':', p1 + 1);
            if (p2 == std::string::npos)
                throw std::invalid_argument("malformed grid '" + text + "' (expected start:step:stop)");
            double a = num(text.substr(0, p1)), h = num(text.substr(p1 + 1, p2 - p1 - 1)), b = num(text.substr(p2 + 1));
            if (!(h > 0.0) || !(b >= a))
                throw std::invalid_argument("grid '" + text + "' needs step > 0 and stop >= start");
            long n = static_cast<long>(std::floor((b - a) / h + 1e-9)) + 1;
            for (long i = 0; i < n; ++i)
                values.push_back(a + static_cast<double>(i) * h);
        }
        else
        {
            std::size_t start = 0;
            while (start <= text.size())
            {
                auto comma = text.find(',', start);
                values.push_back(num(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
                if (comma == std::string::npos)
                    break;
                start = comma + 1;
            }
        }
        return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    }

    int run(int argc, const char *const *argv)
    {
        CLI::App app{"3D non-stationary wideband MIMO V2V channel simulator", "v2vsim"};
        app.set_version_flag("--version", tool_version);
        app.require_subcommand(1);

        // validate
        Common c_validate;
        auto *validate = app.add_subcommand("validate", "Check a scenario and print its derived tap geometry");
        add_common(validate, c_validate);

        // presets
        std::string show;
        auto *presets = app.add_subcommand("presets", "List the built-in scenarios");
        presets->add_option("--show", show, "Print the resolved config of one preset");

        // aoa-pdf
        Common c_aoa;
        int aoa_tap = 0, aoa_points = 360;
        std::string beamwidth;
        auto *aoa = app.add_subcommand("aoa-pdf", "Marginal arrival-azimuth PDF of an ellipsoid population");
        add_common(aoa, c_aoa);
        aoa->add_option("--tap", aoa_tap, "Tap index (default: the preset's tap)");
        aoa->add_option("--beamwidth", beamwidth, "MT beam half-width (rad, or with a deg suffix)");
        aoa->add_option("--points", aoa_points, "Azimuth samples on [-pi, pi)");

        // realize
        Common c_real;
        int real_tap = 0, real_p = 1, real_q = 1;
        std::size_t real_n = 100;
        double real_duration = 0.1, real_t0 = 0.0, real_dt = 0.0;
        std::optional<double> real_freeze;
        bool no_random_phase = false, full_product = false, tdl = false;
        std::vector<std::string> real_components;
        auto *realize = app.add_subcommand("realize", "Sum-of-sinusoids tap coefficients h_l,pq(t)");
        add_common(realize, c_real);
        realize->add_option("--tap", real_tap, "Tap index (default: the preset's tap)");
        realize->add_option("--p", real_p, "MT element (1-based)");
        realize->add_option("--q", real_q, "MR element (1-based)");
        realize->add_option("--n", real_n, "Scatterers per population");
        realize->add_option("--duration", real_duration, "Time span, s");
        realize->add_option("--t0", real_t0, "First time sample, s");
        realize->add_option("--dt", real_dt, "Time step, s (default 1/(8 f_max))");
        realize->add_option("--freeze", real_freeze, "Freeze the geometry at this time, s");
        realize->add_option("--component", real_components, "Restrict to components (repeatable)");
        realize->add_flag("--no-random-phase", no_random_phase, "Drop the per-scatterer random phase");
        realize->add_flag("--full-product", full_product, "Use every double-bounce scatterer pair");
        realize->add_flag("--tdl", tdl, "Write every tap (weighted by omega_l) as extra columns");

        // pdp
        Common c_pdp;
        std::size_t pdp_n = 1000;
        double pdp_resolution = 2e-9, pdp_t = 0.0;
        auto *pdp = app.add_subcommand("pdp", "Power-delay profile binned by geometric path delay");
        add_common(pdp, c_pdp);
        pdp->add_option("--n", pdp_n, "Scatterers per population");
        pdp->add_option("--resolution", pdp_resolution, "Delay bin width, s");
        pdp->add_option("--t", pdp_t, "Time instant, s");

        // space-cf
        Common c_space;
        int space_tap = 0;
        double space_t = 0.0, space_tau = 0.0;
        std::string space_spacing = "0:0.1:3", space_component = "total", space_side = "T";
        auto *space = app.add_subcommand("space-cf", "Time-variant space CF against antenna spacing");
        add_common(space, c_space);
        space->add_option("--tap", space_tap, "Tap index (default: the preset's tap)");
        space->add_option("--t", space_t, "Time instant, s");
        space->add_option("--tau", space_tau, "Time lag, s");
        space->add_option("--spacing", space_spacing, "Spacing grid in wavelengths (start:step:stop)");
        space->add_option("--component", space_component, "LoS, SB_1,1, SB_1,2, SB_1,3, DB, SB_l,3, DB_l,1, DB_l,2, ground, total");
        space->add_option("--spacing-side", space_side, "Which array end moves: T, R or both");

        // freq-cf
        Common c_freq;
        int freq_tap = 0, freq_p = 0, freq_q = 0;
        double freq_t = 0.0;
        std::string freq_df = "0:0.1e6:5e6", freq_component = "total";
        auto *freq = app.add_subcommand("freq-cf", "Time-variant frequency CF against frequency lag");
        add_common(freq, c_freq);
        freq->add_option("--tap", freq_tap, "Tap index (default: the preset's tap)");
        freq->add_option("--t", freq_t, "Time instant, s");
        freq->add_option("--df", freq_df, "Frequency-lag grid in Hz (start:step:stop)");
        freq->add_option("--component", freq_component, "Component or total");
        freq->add_option("--p", freq_p, "MT element (default: array centre)");
        freq->add_option("--q", freq_q, "MR element (default: array centre)");

        // doppler
        Common c_dop;
        int dop_tap = 0;
        double dop_t = 0.0, dop_dtau = 0.0, dop_window_length = 0.0;
        std::string dop_method = "standard", dop_gamma, dop_component = "total", dop_window = "parzen";
        PaperPsdOptions paper_opts;
        auto *dop = app.add_subcommand("doppler", "Doppler power spectral density");
        add_common(dop, c_dop);
        dop->add_option("--method", dop_method, "standard | paper");
        dop->add_option("--tap", dop_tap, "Tap index (default: the preset's tap)");
        dop->add_option("--t", dop_t, "Time instant, s");
        dop->add_option("--gamma", dop_gamma, "Doppler grid in Hz (default -1.2 f_max : 0.01 f_max : 1.2 f_max)");
        dop->add_option("--component", dop_component, "Component or total (standard method)");
        dop->add_option("--window", dop_window, "Lag window: parzen | bartlett");
        dop->add_option("--dtau", dop_dtau, "Lag step, s");
        dop->add_option("--window-length", dop_window_length, "One-sided lag window, s");
        dop->add_option("--n-df", paper_opts.n_df, "Paper method: frequency-lag nodes");
        dop->add_option("--n-t", paper_opts.n_t, "Paper method: time nodes");
        dop->add_option("--omega-max", paper_opts.omega_max, "Paper method: inverse transform range");
        dop->add_option("--n-omega", paper_opts.n_omega, "Paper method: inverse transform nodes");

        // mc-verify
        Common c_mc;
        int mc_tap = 0;
        double mc_t = 0.0, mc_tau = 0.0;
        std::size_t mc_realizations = 500, mc_n = 10000;
        std::string mc_spacing = "0:1:2", mc_component = "total", mc_side = "T";
        auto *mc = app.add_subcommand("mc-verify", "Monte Carlo space CF against the quadrature value");
        add_common(mc, c_mc);
        mc->add_option("--tap", mc_tap, "Tap index (default: the preset's tap)");
        mc->add_option("--t", mc_t, "Time instant, s");
        mc->add_option("--tau", mc_tau, "Time lag, s");
        mc->add_option("--spacing", mc_spacing, "Spacing grid in wavelengths");
        mc->add_option("--spacing-side", mc_side, "Which array end moves: T, R or both");
        mc->add_option("--realizations", mc_realizations, "Independent ensembles");
        mc->add_option("--n", mc_n, "Scatterers per population");
        mc->add_option("--component", mc_component, "Component or total");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            return app.exit(e) == 0 ? 0 : 1;
        }

        try
        {
            if (*presets)
            {
                if (!show.empty())
                    std::cout << canonical_string(load_preset(show));
                else
                    for (const auto &n : preset_names())
                        std::cout << n << "\n";
                return 0;
            }
            if (*validate)
            {
                Run r("validate", c_validate);
                const auto &s = r.scenario();
                std::cout << "valid: " << s.config().name << " (scenario_hash " << scenario_hash_hex(s.config()) << ")\n";
                for (int l = 1; l <= s.num_taps(); ++l)
                {
                    auto g = tap_geometry(s, l);
                    char buf[200];
                    std::snprintf(buf, sizeof(buf), "tap %d: a=%.6g m b=%.6g m u=%.6g m tau=%.6g ns\n", l, g.a_l, g.b_l, g.u_l, g.tau_l * 1e9);
                    std::cout << buf;
                }
                r.finish();
                return 0;
            }
            if (*aoa)
            {
                Run r("aoa-pdf", c_aoa);
                std::optional<double> bw;
                if (!beamwidth.empty())
                    bw = parse_angle(beamwidth);
                r.emit(marginal_aoa_pdf(r.scenario(), tap_or_focus(aoa_tap, r.scenario()), bw, aoa_points), "quadrature");
                r.finish();
                return 0;
            }
            if (*realize)
            {
                Run r("realize", c_real);
                const auto &s = r.scenario();
                RealizationOptions ro;
                ro.model = model_of(c_real);
                ro.random_phase = !no_random_phase;
                ro.freeze_time = real_freeze;
                for (const auto &name : real_components)
                    ro.components.push_back(parse_component(name));
                auto ens = build_ensemble(s, EnsembleCounts::uniform(real_n), c_real.seed, full_product);
                auto times = time_grid(s, real_t0, real_duration, real_dt > 0.0 ? std::optional<double>(real_dt) : std::nullopt);
                auto series_of = [&](int l)
                { return l == 1 ? tap1_coefficient(s, ens, real_p, real_q, times, ro) : tapl_coefficient(s, ens, l, real_p, real_q, times, ro); };
                if (!tdl)
                {
                    CurveSeries curve = series_of(tap_or_focus(real_tap, s)).to_curve();
                    curve.set_meta("path_model", path_model_name(ro.model));
                    r.emit(curve, "realization");
                }
                else
                {
                    if (!ro.components.empty())
                        throw std::invalid_argument("--tdl cannot be combined with --component");
                    std::vector<TapCoefficientSeries> taps;
                    std::vector<double> weights;
                    for (int l = 1; l <= s.num_taps(); ++l)
                    {
                        taps.push_back(series_of(l));
                        weights.push_back(s.omega(l));
                    }
                    TdlResponse resp = assemble_tdl(s, taps, weights);
                    CurveSeries curve;
                    curve.x_name = "t";
                    curve.x_unit = "s";
                    curve.x = resp.times;
                    curve.value_name = "h_sum";
                    curve.is_complex = true;
                    curve.values = resp.coefficients.colwise().sum().transpose();
                    for (std::size_t i = 0; i < resp.taps.size(); ++i)
                    {
                        std::string stem = "tap" + std::to_string(resp.taps[i]);
                        Eigen::VectorXcd row = resp.coefficients.row(static_cast<Eigen::Index>(i)).transpose();
                        curve.extra_columns.emplace_back(stem + "_re", row.real());
                        curve.extra_columns.emplace_back(stem + "_im", row.imag());
                        curve.set_meta(stem + "_delay", format_double(resp.delays[i]));
                    }
                    curve.set_meta("p", std::to_string(real_p));
                    curve.set_meta("q", std::to_string(real_q));
                    curve.set_meta("path_model", path_model_name(ro.model));
                    r.emit(curve, "realization");
                }
                r.finish();
                return 0;
            }
            if (*pdp)
            {
                Run r("pdp", c_pdp);
                RealizationOptions ro;
                ro.model = model_of(c_pdp);
                auto ens = build_ensemble(r.scenario(), EnsembleCounts::uniform(pdp_n), c_pdp.seed);
                r.emit(power_delay_profile(r.scenario(), ens, pdp_resolution, pdp_t, ro), "realization");
                r.finish();
                return 0;
            }
            if (*space)
            {
                Run r("space-cf", c_space);
                const auto &s = r.scenario();
                r.emit(space_cf_curve(s, tap_or_focus(space_tap, s), space_t, space_tau, parse_component(space_component),
                                      parse_grid(space_spacing), parse_spacing_side(space_side), model_of(c_space), quad_of(c_space)),
                       "quadrature");
                r.finish();
                return 0;
            }
            if (*freq)
            {
                Run r("freq-cf", c_freq);
                const auto &s = r.scenario();
                r.emit(frequency_cf(s, tap_or_focus(freq_tap, s), freq_t, parse_grid(freq_df), parse_component(freq_component),
                                    model_of(c_freq), quad_of(c_freq), freq_p, freq_q),
                       "quadrature");
                r.finish();
                return 0;
            }
            if (*dop)
            {
                Run r("doppler", c_dop);
                const auto &s = r.scenario();
                const double fm = s.config().f_max;
                Eigen::VectorXd gamma = dop_gamma.empty() ? Eigen::VectorXd::LinSpaced(241, -1.2 * fm, 1.2 * fm) : parse_grid(dop_gamma);
                int tap = tap_or_focus(dop_tap, s);
                if (dop_method == "standard")
                {
                    StandardPsdOptions so;
                    so.dtau = dop_dtau;
                    so.window_length = dop_window_length;
                    if (dop_window == "parzen")
                        so.window = LagWindow::parzen;
                    else if (dop_window == "bartlett")
                        so.window = LagWindow::bartlett;
                    else
                        throw std::invalid_argument("unknown window '" + dop_window + "' (expected parzen or bartlett)");
                    r.emit(doppler_psd_standard(s, tap, dop_t, gamma, parse_component(dop_component), model_of(c_dop), quad_of(c_dop), so), "standard");
                }
                else if (dop_method == "paper")
                    r.emit(doppler_psd_paper(s, tap, gamma, paper_opts, model_of(c_dop), quad_of(c_dop)), "paper");
                else
                    throw std::invalid_argument("unknown --method '" + dop_method + "' (expected standard or paper)");
                r.finish();
                return 0;
            }
            if (*mc)
            {
                Run r("mc-verify", c_mc);
                const auto &s = r.scenario();
                int tap = tap_or_focus(mc_tap, s);
                Component comp = parse_component(mc_component);
                SpacingSide side = parse_spacing_side(mc_side);
                Eigen::VectorXd spacing = parse_grid(mc_spacing);
                std::vector<LagPoint> lags;
                for (Eigen::Index i = 0; i < spacing.size(); ++i)
                {
                    double d = spacing(i) * s.wavelength();
                    lags.push_back({0.0, 0.0, side != SpacingSide::R ? d : 0.0, side != SpacingSide::T ? d : 0.0, mc_tau});
                }
                McOptions mo;
                mo.realizations = mc_realizations;
                mo.n_scatterers = mc_n;
                mo.seed = c_mc.seed;
                mo.threads = c_mc.threads;
                mo.model = model_of(c_mc);
                if (comp != Component::total)
                    mo.components = {comp};
                McResult res = monte_carlo_cf(s, tap, mc_t, lags, mo);
                Eigen::ArrayXcd analytic = space_cf(s, tap, mc_t, comp, lags, mo.model, quad_of(c_mc), true);

                CurveSeries curve;
                curve.x_name = "spacing";
                curve.x_unit = "wavelength";
                curve.x = spacing;
                curve.value_name = "rho_mc";
                curve.is_complex = true;
                curve.values = res.estimate.matrix();
                Eigen::VectorXd inside(spacing.size());
                // Zero-variance lags (the same value in every realization) are compared at round-off
                for (Eigen::Index i = 0; i < spacing.size(); ++i)
                    inside(i) = std::abs(res.estimate(i) - analytic(i)) <= 3.0 * res.sigma(i) + 1e-12 ? 1.0 : 0.0;
                curve.extra_columns.emplace_back("sigma", res.sigma.matrix());
                curve.extra_columns.emplace_back("rho_quad_re", analytic.real().matrix());
                curve.extra_columns.emplace_back("rho_quad_im", analytic.imag().matrix());
                curve.extra_columns.emplace_back("rho_quad_abs", analytic.abs().matrix());
                curve.extra_columns.emplace_back("within_3sigma", inside);
                curve.set_meta("method", "monte-carlo");
                curve.set_meta("component", component_name(comp));
                curve.set_meta("tap", std::to_string(tap));
                curve.set_meta("t", format_double(mc_t));
                curve.set_meta("tau", format_double(mc_tau));
                curve.set_meta("realizations", std::to_string(mc_realizations));
                curve.set_meta("n_scatterers", std::to_string(mc_n));
                curve.set_meta("path_model", path_model_name(mo.model));
                r.emit(curve, "monte-carlo");
                r.finish();
                return 0;
            }
        }
        catch (const ValidationError &e)
        {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        catch (const ConvergenceError &e)
        {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        catch (const NumericalError &e)
        {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        catch (const std::exception &e)
        {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        return 1;
    }

    int run(const std::vector<std::string> &args)
    {
        std::vector<const char *> argv;
        for (const auto &a : args)
            argv.push_back(a.c_str());
        return run(static_cast<int>(argv.size()), argv.data());
    }
}
