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

#include "v2v/rays.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

namespace v2v
{
    PathModel parse_path_model(const std::string &name)
    {
        if (name == "exact")
            return PathModel::exact;
        if (name == "closed-form" || name == "closed_form")
            return PathModel::closed_form;
        if (name == "as-printed" || name == "closed-form-as-printed")
            return PathModel::closed_form_as_printed;
        throw std::invalid_argument("unknown path model '" + name + "' (expected exact, closed-form or as-printed)");
    }

    std::string path_model_name(PathModel model)
    {
        switch (model)
        {
        case PathModel::exact:
            return "exact";
        case PathModel::closed_form:
            return "closed-form";
        case PathModel::closed_form_as_printed:
            return "as-printed";
        }
        return "?";
    }

    Component parse_component(const std::string &name)
    {
        std::string u;
        for (char ch : name)
            if (!std::isspace(static_cast<unsigned char>(ch)))
                u += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        if (u == "LOS")
            return Component::los;
        if (u == "SB_1,1" || u == "SB11")
            return Component::sb11;
        if (u == "SB_1,2" || u == "SB12")
            return Component::sb12;
        if (u == "SB_1,3" || u == "SB13")
            return Component::sb13;
        if (u == "DB" || u == "DB_1")
            return Component::db;
        if (u == "GROUND" || u == "SB_G")
            return Component::ground;
        if (u == "TOTAL")
            return Component::total;
        std::smatch m;
        static const std::regex tapl(R"(^(SB|DB)_(L|[2-9]|[1-9][0-9]+),([123])$)");
        if (std::regex_match(u, m, tapl))
        {
            if (m[1] == "SB" && m[3] == "3")
                return Component::sbl3;
            if (m[1] == "DB" && m[3] == "1")
                return Component::dbl1;
            if (m[1] == "DB" && m[3] == "2")
                return Component::dbl2;
        }
        throw std::invalid_argument("unknown component '" + name + "' (expected LoS, SB_1,1, SB_1,2, SB_1,3, DB, SB_l,3, DB_l,1, DB_l,2, ground or total)");
    }

    std::string component_name(Component c)
    {
        switch (c)
        {
        case Component::los:
            return "LoS";
        case Component::sb11:
            return "SB_1,1";
        case Component::sb12:
            return "SB_1,2";
        case Component::sb13:
            return "SB_1,3";
        case Component::db:
            return "DB";
        case Component::sbl3:
            return "SB_l,3";
        case Component::dbl1:
            return "DB_l,1";
        case Component::dbl2:
            return "DB_l,2";
        case Component::ground:
            return "ground";
        case Component::total:
            return "total";
        }
        return "?";
    }

    std::vector<Component> tap_components(const ValidatedScenario &s, int tap)
    {
        if (tap < 1 || tap > s.num_taps())
            throw std::out_of_range("tap index " + std::to_string(tap) + " out of range");
        if (tap == 1)
        {
            std::vector<Component> out = {Component::los, Component::sb11, Component::sb12, Component::sb13, Component::db};
            if (s.config().ground)
                out.push_back(Component::ground);
            return out;
        }
        return {Component::sbl3, Component::dbl1, Component::dbl2};
    }

    double component_weight(const ValidatedScenario &s, int tap, Component c)
    {
        const auto comps = tap_components(s, tap);
        if (std::find(comps.begin(), comps.end(), c) == comps.end())
            throw std::invalid_argument("component " + component_name(c) + " does not exist on tap " + std::to_string(tap));
        const auto &cfg = s.config();
        const double scatter = 1.0 / (cfg.ricean_K + 1.0);
        switch (c)
        {
        case Component::los:
            return cfg.ricean_K * scatter;
        case Component::sb11:
            return cfg.energy_tap1.sb11 * scatter;
        case Component::sb12:
            return cfg.energy_tap1.sb12 * scatter;
        case Component::sb13:
            return cfg.energy_tap1.sb13 * scatter;
        case Component::db:
            return cfg.energy_tap1.db * scatter;
        case Component::ground:
            return cfg.ground->eta * scatter;
        case Component::sbl3:
            return s.energy_tapl(tap).sb3;
        case Component::dbl1:
            return s.energy_tapl(tap).db1;
        case Component::dbl2:
            return s.energy_tapl(tap).db2;
        case Component::total:
            break;
        }
        throw std::invalid_argument("component_weight: total has no single weight");
    }

    RayClass component_ray_class(Component c)
    {
        switch (c)
        {
        case Component::los:
            return RayClass::los;
        case Component::sb11:
            return RayClass::sb_tcyl;
        case Component::sb12:
            return RayClass::sb_rcyl;
        case Component::sb13:
        case Component::sbl3:
            return RayClass::sb_ellipsoid;
        case Component::db:
            return RayClass::db_tcyl_rcyl;
        case Component::dbl1:
            return RayClass::db_tcyl_ellipsoid;
        case Component::dbl2:
            return RayClass::db_ellipsoid_rcyl;
        case Component::ground:
            return RayClass::sb_ground;
        case Component::total:
            break;
        }
        throw std::invalid_argument("component_ray_class: total is not a ray class");
    }

    RayContext::RayContext(const ValidatedScenario &s, double t, PathModel model)
        : s_(s), t_(t), model_(model)
    {
        const auto &c = s.config();
        axis_T_ = array_axis(c.psi_T, c.theta_T);
        axis_R_ = array_axis(c.psi_R, c.theta_R);
        mr_centre_ = mr_centre(s, t);
        if (c.ground)
        {
            H_t_ = c.ground->H_t;
            H_r_ = c.ground->H_r;
        }
    }

    Bounce RayContext::bounce(Population pop, int tap, double alpha, double beta) const
    {
        const auto &c = s_.config();
        Bounce b;
        b.pop = pop;
        b.tap = pop == Population::ellipsoid ? tap : 1;
        b.alpha = alpha;
        b.beta = beta;
        b.pos = scatterer_position(pop, b.tap, alpha, beta, s_, t_);
        const bool closed = model_ != PathModel::exact;
        switch (pop)
        {
        case Population::rcyl:
            b.doppler = std::cos(alpha - c.gamma_R) * std::cos(beta);
            b.alpha_R0 = alpha;
            break;
        case Population::ground:
        {
            Angles ar = direction_angles(mr_centre_ + Point3(0.0, 0.0, H_r_), b.pos);
            b.doppler = std::cos(ar.alpha - c.gamma_R) * std::cos(ar.beta);
            b.alpha_R0 = ar.alpha;
            break;
        }
        case Population::tcyl:
        case Population::ellipsoid:
        {
            Angles ar = direction_angles(mr_centre_, b.pos);
            b.doppler = std::cos(ar.alpha - c.gamma_R) * std::cos(ar.beta);
            if (closed)
                b.alpha_R0 = arrival_angles(b.pos, s_, 0.0).alpha;
            if (pop == Population::ellipsoid)
                b.pnl3_centre = closed ? closed_form_pnl3(s_, b.tap, 0.0, alpha, beta, model_ == PathModel::closed_form_as_printed)
                                       : b.pos.norm();
            break;
        }
        }
        return b;
    }

    double RayContext::leg_T(const Bounce &b, double sT) const
    {
        if (model_ == PathModel::exact || b.pop == Population::ground)
            return (sT * axis_T_ + Point3(0.0, 0.0, b.pop == Population::ground ? H_t_ : 0.0) - b.pos).norm();
        switch (b.pop)
        {
        case Population::tcyl:
            return closed_form_pn11(s_, sT, b.alpha, b.beta);
        case Population::rcyl:
            return closed_form_pn12(s_, sT, b.alpha, t_);
        case Population::ellipsoid:
            return closed_form_pnl3(s_, b.tap, sT, b.alpha, b.beta, model_ == PathModel::closed_form_as_printed);
        case Population::ground:
            break;
        }
        return 0.0;
    }

    double RayContext::leg_R(const Bounce &b, double sR) const
    {
        if (model_ == PathModel::exact || b.pop == Population::ground)
            return (b.pos - (mr_centre_ + sR * axis_R_ + Point3(0.0, 0.0, b.pop == Population::ground ? H_r_ : 0.0))).norm();
        switch (b.pop)
        {
        case Population::tcyl:
            return closed_form_qn11(s_, sR, b.alpha, b.alpha_R0, t_);
        case Population::rcyl:
            return closed_form_qn12(s_, sR, b.alpha, b.beta);
        case Population::ellipsoid:
            return closed_form_qnl3(s_, b.pnl3_centre, b.alpha, std::abs(b.beta), b.alpha_R0, t_);
        case Population::ground:
            break;
        }
        return 0.0;
    }

    double RayContext::leg_mid(const Bounce &first, const Bounce &second) const
    {
        if (model_ != PathModel::exact && first.pop == Population::tcyl && second.pop == Population::rcyl)
            return closed_form_n11n12(s_, t_);
        return (first.pos - second.pos).norm();
    }

    double RayContext::los_length(double sT, double sR) const
    {
        if (model_ != PathModel::exact)
            return closed_form_los(s_, sT, t_);
        return (sT * axis_T_ - (mr_centre_ + sR * axis_R_)).norm();
    }

    double RayContext::los_doppler() const
    {
        const auto &c = s_.config();
        if (model_ != PathModel::exact)
            return std::cos(c.alpha_R_los - c.gamma_R) * std::cos(c.beta_R_los);
        Angles ar = direction_angles(mr_centre_, Point3::Zero());
        return std::cos(ar.alpha - c.gamma_R) * std::cos(ar.beta);
    }
}
