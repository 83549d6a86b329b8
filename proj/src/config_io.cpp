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

#include "v2v/config_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace v2v
{
    std::string format_double(double x)
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        return buf;
    }

    namespace
    {
        std::string trim(const std::string &s)
        {
            size_t b = s.find_first_not_of(" \t\r\n");
            if (b == std::string::npos)
                return "";
            size_t e = s.find_last_not_of(" \t\r\n");
            return s.substr(b, e - b + 1);
        }

        std::vector<std::string> split(const std::string &s, char sep)
        {
            std::vector<std::string> out;
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, sep))
                out.push_back(trim(item));
            return out;
        }

        [[noreturn]] void bad_value(const std::string &key, const std::string &value, const std::string &why)
        {
            throw std::invalid_argument("config key '" + key + "': cannot use value '" + value + "' (" + why + ")");
        }

        // Number with an optional unit suffix: "60 deg", "1.5lambda"
        double parse_number(const std::string &key, const std::string &raw, const ScenarioConfig &cfg)
        {
            std::string v = trim(raw);
            double scale = 1.0;
            auto strip_suffix = [&](const std::string &suffix, double factor)
            {
                if (v.size() > suffix.size() && v.compare(v.size() - suffix.size(), suffix.size(), suffix) == 0)
                {
                    v = trim(v.substr(0, v.size() - suffix.size()));
                    scale = factor;
                    return true;
                }
                return false;
            };
            if (!strip_suffix("deg", pi / 180.0))
                strip_suffix("lambda", speed_of_light / cfg.f_c);

            if (v == "pi")
                return pi * scale;
            size_t pos = 0;
            double x;
            try
            {
                // "pi/3" and "2*pi/3" are accepted for angles
                size_t p = v.find("pi");
                if (p != std::string::npos)
                {
                    double num = 1.0, den = 1.0;
                    std::string head = trim(v.substr(0, p)), tail = trim(v.substr(p + 2));
                    if (!head.empty())
                    {
                        if (head.back() != '*')
                            bad_value(key, raw, "expected <num>*pi/<den>");
                        num = std::stod(head.substr(0, head.size() - 1));
                    }
                    if (!tail.empty())
                    {
                        if (tail.front() != '/')
                            bad_value(key, raw, "expected <num>*pi/<den>");
                        den = std::stod(tail.substr(1));
                    }
                    return num * pi / den * scale;
                }
                x = std::stod(v, &pos);
            }
            catch (const std::invalid_argument &)
            {
                bad_value(key, raw, "not a number");
            }
            catch (const std::out_of_range &)
            {
                bad_value(key, raw, "out of range");
            }
            if (pos != v.size())
                bad_value(key, raw, "trailing characters; supported unit suffixes are 'deg' and 'lambda'");
            return x * scale;
        }

        std::vector<double> parse_list(const std::string &key, const std::string &value, const ScenarioConfig &cfg)
        {
            std::vector<double> out;
            if (trim(value).empty())
                return out;
            for (const auto &item : split(value, ','))
                out.push_back(parse_number(key, item, cfg));
            return out;
        }

        int parse_int(const std::string &key, const std::string &value)
        {
            size_t pos = 0;
            int x = 0;
            try
            {
                x = std::stoi(trim(value), &pos);
            }
            catch (const std::exception &)
            {
                bad_value(key, value, "not an integer");
            }
            if (pos != trim(value).size())
                bad_value(key, value, "not an integer");
            return x;
        }

        bool parse_bool(const std::string &key, const std::string &value)
        {
            std::string v = trim(value);
            if (v == "true" || v == "1" || v == "yes")
                return true;
            if (v == "false" || v == "0" || v == "no")
                return false;
            bad_value(key, value, "expected true/false");
        }

        int parse_index(const std::string &key, const std::string &s, int min_value)
        {
            int idx = 0;
            try
            {
                size_t pos = 0;
                idx = std::stoi(s, &pos);
                if (pos != s.size())
                    throw std::invalid_argument(s);
            }
            catch (const std::exception &)
            {
                throw std::invalid_argument("unknown config key '" + key + "'");
            }
            if (idx < min_value)
                throw std::invalid_argument("config key '" + key + "': index must be >= " + std::to_string(min_value));
            return idx;
        }

        void resize_per_tap(ScenarioConfig &c)
        {
            size_t L = c.a.size();
            VonMisesFisher fill_vmf = c.vmf_ellipsoid.empty() ? VonMisesFisher{pi / 2.0, 0.0, 0.0, false} : c.vmf_ellipsoid.back();
            c.vmf_ellipsoid.resize(L, fill_vmf);
            c.energy_tapl.resize(L > 0 ? L - 1 : 0);
        }

        void apply_vmf(VonMisesFisher &v, const std::string &key, const std::string &field, const std::string &value, const ScenarioConfig &c)
        {
            if (field == "alpha0")
                v.alpha0 = parse_number(key, value, c);
            else if (field == "beta0")
                v.beta0 = parse_number(key, value, c);
            else if (field == "k")
                v.k = parse_number(key, value, c);
            else if (field == "planar")
                v.planar = parse_bool(key, value);
            else
                throw std::invalid_argument("unknown config key '" + key + "'");
        }

        std::string join(const std::vector<double> &v)
        {
            std::string s;
            for (size_t i = 0; i < v.size(); ++i)
                s += (i ? "," : "") + format_double(v[i]);
            return s;
        }
    }

    void apply_setting(ScenarioConfig &c, const std::string &key_in, const std::string &value)
    {
        const std::string key = trim(key_in);
        auto num = [&]
        { return parse_number(key, value, c); };

        static const std::map<std::string, double ScenarioConfig::*> scalars = {
            {"R_t", &ScenarioConfig::R_t}, {"R_r", &ScenarioConfig::R_r}, {"f_c", &ScenarioConfig::f_c},
            {"bandwidth", &ScenarioConfig::bandwidth}, {"v_R", &ScenarioConfig::v_R}, {"gamma_R", &ScenarioConfig::gamma_R},
            {"f_max", &ScenarioConfig::f_max}, {"delta_T", &ScenarioConfig::delta_T}, {"delta_R", &ScenarioConfig::delta_R},
            {"psi_T", &ScenarioConfig::psi_T}, {"theta_T", &ScenarioConfig::theta_T}, {"psi_R", &ScenarioConfig::psi_R},
            {"theta_R", &ScenarioConfig::theta_R}, {"ricean_K", &ScenarioConfig::ricean_K},
            {"los.alpha_R", &ScenarioConfig::alpha_R_los}, {"los.beta_R", &ScenarioConfig::beta_R_los}};

        if (auto it = scalars.find(key); it != scalars.end())
        {
            c.*(it->second) = num();
            return;
        }
        if (key == "name")
        {
            c.name = trim(value);
            return;
        }
        if (key == "preset")
        {
            c = load_preset(trim(value));
            return;
        }
        if (key == "is_preset")
        {
            c.is_preset = parse_bool(key, value);
            return;
        }
        if (key == "D")
        {
            c.D = num();
            c.f0 = c.D / 2.0;
            return;
        }
        if (key == "f0")
        {
            c.f0 = num();
            c.D = 2.0 * c.f0;
            return;
        }
        if (key == "a")
        {
            c.a = parse_list(key, value, c);
            resize_per_tap(c);
            return;
        }
        if (key == "u")
        {
            c.u = parse_list(key, value, c);
            return;
        }
        if (key == "omega")
        {
            c.omega = parse_list(key, value, c);
            return;
        }
        if (key == "M_T" || key == "M_R")
        {
            (key == "M_T" ? c.M_T : c.M_R) = parse_int(key, value);
            return;
        }
        if (key == "focus_tap")
        {
            c.focus_tap = parse_int(key, value);
            return;
        }

        auto parts = split(key, '.');
        if (parts.size() == 3 && parts[0] == "energy" && parts[1] == "tap1")
        {
            auto &e = c.energy_tap1;
            const std::string &f = parts[2];
            if (f == "sb11")
                e.sb11 = num();
            else if (f == "sb12")
                e.sb12 = num();
            else if (f == "sb13")
                e.sb13 = num();
            else if (f == "db")
                e.db = num();
            else
                throw std::invalid_argument("unknown config key '" + key + "'");
            return;
        }
        if (parts.size() == 3 && parts[0] == "energy" && parts[1].rfind("tap", 0) == 0)
        {
            int l = parse_index(key, parts[1].substr(3), 2);
            if (static_cast<size_t>(l - 1) > c.energy_tapl.size())
                c.energy_tapl.resize(l - 1);
            auto &e = c.energy_tapl[l - 2];
            const std::string &f = parts[2];
            if (f == "sb3")
                e.sb3 = num();
            else if (f == "db1")
                e.db1 = num();
            else if (f == "db2")
                e.db2 = num();
            else
                throw std::invalid_argument("unknown config key '" + key + "'");
            return;
        }
        if (parts.size() == 3 && parts[0] == "vmf")
        {
            if (parts[1] == "tcyl")
                return apply_vmf(c.vmf_tcyl, key, parts[2], value, c);
            if (parts[1] == "rcyl")
                return apply_vmf(c.vmf_rcyl, key, parts[2], value, c);
            if (parts[1] == "ground")
                return apply_vmf(c.vmf_ground, key, parts[2], value, c);
        }
        if (parts.size() == 4 && parts[0] == "vmf" && parts[1] == "ellipsoid")
        {
            int l = parse_index(key, parts[2], 1);
            if (static_cast<size_t>(l) > c.vmf_ellipsoid.size())
                c.vmf_ellipsoid.resize(l, VonMisesFisher{pi / 2.0, 0.0, 0.0, false});
            return apply_vmf(c.vmf_ellipsoid[l - 1], key, parts[3], value, c);
        }
        if (parts.size() == 2 && parts[0] == "ground")
        {
            if (parts[1] == "enabled")
            {
                if (parse_bool(key, value))
                {
                    if (!c.ground)
                        c.ground = GroundConfig{};
                }
                else
                    c.ground.reset();
                return;
            }
            GroundConfig g = c.ground.value_or(GroundConfig{});
            if (parts[1] == "H_t")
                g.H_t = num();
            else if (parts[1] == "H_r")
                g.H_r = num();
            else if (parts[1] == "eta")
                g.eta = num();
            else
                throw std::invalid_argument("unknown config key '" + key + "'");
            c.ground = g;
            return;
        }
        throw std::invalid_argument("unknown config key '" + key + "'");
    }

    ScenarioConfig parse_config(std::istream &in, ScenarioConfig base)
    {
        std::string line;
        int lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            size_t hash = line.find('#');
            if (hash != std::string::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;
            size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected 'key = value', got '" + line + "'");
            try
            {
                apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
            }
            catch (const std::invalid_argument &e)
            {
                throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
            }
        }
        return base;
    }

    ScenarioConfig load_config_file(const std::string &path, ScenarioConfig base)
    {
        std::ifstream f(path);
        if (!f)
            throw std::invalid_argument("cannot read config file '" + path + "'");
        return parse_config(f, std::move(base));
    }

    std::vector<std::pair<std::string, std::string>> canonical_settings(const ScenarioConfig &c)
    {
        std::map<std::string, std::string> m;
        auto put = [&](const std::string &k, double v)
        { m[k] = format_double(v); };
        m["name"] = c.name;
        m["is_preset"] = c.is_preset ? "true" : "false";
        put("D", c.D);
        put("f0", c.f0);
        m["a"] = join(c.a);
        m["u"] = join(c.u);
        m["omega"] = join(c.omega);
        put("R_t", c.R_t);
        put("R_r", c.R_r);
        put("f_c", c.f_c);
        put("bandwidth", c.bandwidth);
        put("v_R", c.v_R);
        put("gamma_R", c.gamma_R);
        put("f_max", c.f_max);
        m["M_T"] = std::to_string(c.M_T);
        m["M_R"] = std::to_string(c.M_R);
        m["focus_tap"] = std::to_string(c.focus_tap);
        put("delta_T", c.delta_T);
        put("delta_R", c.delta_R);
        put("psi_T", c.psi_T);
        put("theta_T", c.theta_T);
        put("psi_R", c.psi_R);
        put("theta_R", c.theta_R);
        put("ricean_K", c.ricean_K);
        put("energy.tap1.sb11", c.energy_tap1.sb11);
        put("energy.tap1.sb12", c.energy_tap1.sb12);
        put("energy.tap1.sb13", c.energy_tap1.sb13);
        put("energy.tap1.db", c.energy_tap1.db);
        for (size_t i = 0; i < c.energy_tapl.size(); ++i)
        {
            std::string p = "energy.tap" + std::to_string(i + 2) + ".";
            put(p + "sb3", c.energy_tapl[i].sb3);
            put(p + "db1", c.energy_tapl[i].db1);
            put(p + "db2", c.energy_tapl[i].db2);
        }
        auto put_vmf = [&](const std::string &p, const VonMisesFisher &v)
        {
            put(p + ".alpha0", v.alpha0);
            put(p + ".beta0", v.beta0);
            put(p + ".k", v.k);
            m[p + ".planar"] = v.planar ? "true" : "false";
        };
        put_vmf("vmf.tcyl", c.vmf_tcyl);
        put_vmf("vmf.rcyl", c.vmf_rcyl);
        put_vmf("vmf.ground", c.vmf_ground);
        for (size_t i = 0; i < c.vmf_ellipsoid.size(); ++i)
            put_vmf("vmf.ellipsoid." + std::to_string(i + 1), c.vmf_ellipsoid[i]);
        put("los.alpha_R", c.alpha_R_los);
        put("los.beta_R", c.beta_R_los);
        m["ground.enabled"] = c.ground ? "true" : "false";
        if (c.ground)
        {
            put("ground.H_t", c.ground->H_t);
            put("ground.H_r", c.ground->H_r);
            put("ground.eta", c.ground->eta);
        }
        return {m.begin(), m.end()};
    }

    std::string canonical_string(const ScenarioConfig &c)
    {
        // "a" must precede the per-tap keys and f_c the lambda-suffixed ones when parsed back;
        // numbers are written in SI without suffixes, so only "a" ordering matters
        auto kv = canonical_settings(c);
        std::stable_partition(kv.begin(), kv.end(), [](const auto &p)
                              { return p.first == "a"; });
        std::string s;
        for (const auto &[k, v] : kv)
            s += k + " = " + v + "\n";
        return s;
    }

    std::uint64_t scenario_hash(const ScenarioConfig &c)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char ch : canonical_string(c))
        {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    std::string scenario_hash_hex(const ScenarioConfig &c)
    {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(scenario_hash(c)));
        return buf;
    }
}
