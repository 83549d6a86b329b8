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

#include "v2v/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <vector>

#include "v2v/constants.hpp"
#include "v2v/errors.hpp"

namespace v2v
{
    namespace
    {
        // Kronrod 15-point abscissae (non-negative half) and weights, with the embedded Gauss 7-point weights
        constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                   0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                   0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                   0.207784955007898467600689403773245, 0.0};
        constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                   0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                   0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                   0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
        constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                  0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

        struct Panel
        {
            double a, b;
            Eigen::ArrayXcd value;
            double error;
        };

        struct WorseFirst
        {
            bool operator()(const Panel &x, const Panel &y) const { return x.error < y.error; }
        };

        Panel gk15(const VectorIntegrand &f, double a, double b)
        {
            const double c = 0.5 * (a + b), h = 0.5 * (b - a);
            Eigen::ArrayXcd fc = f(c);
            Eigen::ArrayXcd kron = wgk[7] * fc;
            Eigen::ArrayXcd gauss = wg[3] * fc;
            for (int i = 0; i < 7; ++i)
            {
                Eigen::ArrayXcd pair = f(c - h * xgk[i]) + f(c + h * xgk[i]);
                kron += wgk[i] * pair;
                if (i % 2 == 1)
                    gauss += wg[i / 2] * pair;
            }
            Panel p{a, b, h * kron, 0.0};
            p.error = (h * (kron - gauss)).abs().maxCoeff();
            return p;
        }

        [[noreturn]] void give_up(const char *where, double achieved, double requested)
        {
            char buf[200];
            std::snprintf(buf, sizeof(buf), "%s did not converge: achieved error %.3g, requested %.3g", where, achieved, requested);
            throw ConvergenceError(buf, achieved, requested);
        }
    }

    void gauss_legendre(int n, Eigen::VectorXd &nodes, Eigen::VectorXd &weights)
    {
        if (n < 1)
            throw std::invalid_argument("gauss_legendre needs n >= 1");
        nodes.resize(n);
        weights.resize(n);
        for (int i = 0; i < (n + 1) / 2; ++i)
        {
            double x = std::cos(pi * (i + 0.75) / (n + 0.5)), dp = 0.0;
            for (int it = 0; it < 100; ++it)
            {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k)
                {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                    break;
            }
            nodes(i) = -x;
            nodes(n - 1 - i) = x;
            weights(i) = weights(n - 1 - i) = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    Eigen::ArrayXcd integrate_adaptive(const VectorIntegrand &f, double a, double b, double abs_tol,
                                       int max_intervals, double *achieved)
    {
        std::priority_queue<Panel, std::vector<Panel>, WorseFirst> queue;
        Panel first = gk15(f, a, b);
        double total_error = first.error;
        queue.push(std::move(first));
        const double min_width = 1e-13 * std::max(1.0, std::abs(b - a));

        std::vector<Panel> done;
        while (total_error > abs_tol)
        {
            if (static_cast<int>(queue.size() + done.size()) >= max_intervals || queue.empty())
                give_up("adaptive Gauss-Kronrod quadrature", total_error, abs_tol);
            Panel worst = queue.top();
            queue.pop();
            if (worst.b - worst.a < min_width)
            {
                // Cannot refine further; accept the panel as is
                total_error -= worst.error;
                worst.error = 0.0;
                done.push_back(std::move(worst));
                continue;
            }
            double mid = 0.5 * (worst.a + worst.b);
            Panel left = gk15(f, worst.a, mid), right = gk15(f, mid, worst.b);
            total_error += left.error + right.error - worst.error;
            queue.push(std::move(left));
            queue.push(std::move(right));
        }

        while (!queue.empty())
        {
            done.push_back(queue.top());
            queue.pop();
        }
        std::sort(done.begin(), done.end(), [](const Panel &x, const Panel &y)
                  { return x.a < y.a; });
        Eigen::ArrayXcd sum = Eigen::ArrayXcd::Zero(done.front().value.size());
        double err = 0.0;
        for (const auto &p : done)
        {
            sum += p.value;
            err += p.error;
        }
        if (achieved)
            *achieved = err;
        return sum;
    }

    double integrate_adaptive(const std::function<double(double)> &f, double a, double b, double abs_tol,
                              int max_intervals, double *achieved)
    {
        VectorIntegrand g = [&](double x)
        {
            Eigen::ArrayXcd v(1);
            v(0) = f(x);
            return v;
        };
        return integrate_adaptive(g, a, b, abs_tol, max_intervals, achieved)(0).real();
    }

    Eigen::ArrayXcd periodic_trapezoid(const VectorIntegrand &f, double abs_tol, int min_nodes, int max_nodes)
    {
        int n = std::max(2, min_nodes);
        Eigen::ArrayXcd sum = f(-pi);
        for (int i = 1; i < n; ++i)
            sum += f(-pi + two_pi * i / n);
        Eigen::ArrayXcd value = sum * (two_pi / n);

        while (true)
        {
            if (2 * n > max_nodes)
                give_up("periodic trapezoid rule", 0.0, abs_tol);
            Eigen::ArrayXcd extra = f(-pi + pi / n);
            for (int i = 1; i < n; ++i)
                extra += f(-pi + pi * (2 * i + 1) / n);
            sum += extra;
            n *= 2;
            Eigen::ArrayXcd next = sum * (two_pi / n);
            double change = (next - value).abs().maxCoeff();
            value = std::move(next);
            if (change <= abs_tol)
                return value;
        }
    }

    Eigen::ArrayXcd sphere_integral(const SphereIntegrand &f, const QuadratureOptions &options)
    {
        const double inner_tol = 0.02 * options.abs_tol / pi;
        VectorIntegrand outer = [&](double beta)
        {
            VectorIntegrand inner = [&](double alpha)
            { return f(alpha, beta); };
            return periodic_trapezoid(inner, inner_tol, options.min_alpha_nodes, options.max_alpha_nodes);
        };
        double e1 = 0.0, e2 = 0.0;
        Eigen::ArrayXcd lower = integrate_adaptive(outer, -pi / 2.0, 0.0, 0.5 * options.abs_tol, options.max_intervals, &e1);
        Eigen::ArrayXcd upper = integrate_adaptive(outer, 0.0, pi / 2.0, 0.5 * options.abs_tol, options.max_intervals, &e2);
        return lower + upper;
    }
}
