// SPDX-License-Identifier: Apache-2.0
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

#include "hetcov/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace hetcov {

namespace {

struct Panel
{
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

// One K21/G10 pair from Boost's node tables. The error is |K21 - G10| on the
// panel itself; Boost's own non-adaptive error output is not scaled by the
// half-width in every release, so the pair is evaluated here.
Panel evaluate_panel(const Integrand& f, double a, double b)
{
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
    static const auto& kx = kronrod::abscissa();
    static const auto& kw = kronrod::weights();
    static const auto& gw = boost::math::quadrature::gauss<double, 10>::weights();

    const double mean = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mean);
    double k = kw[0] * f0;
    double g = 0.0;
    for (std::size_t i = 1; i < kx.size(); ++i) {
        const double dx = half * kx[i];
        const double pair = f(mean - dx) + f(mean + dx);
        k += kw[i] * pair;
        // Gauss nodes are the odd-indexed Kronrod nodes.
        if (i % 2 == 1)
            g += gw[i / 2] * pair;
    }
    const double value = half * k;
    double error = std::abs(half * (k - g));
    if (!std::isfinite(value))
        error = std::numeric_limits<double>::infinity();
    return {a, b, value, error};
}

} // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                           const QuadratureOptions& options)
{
    if (!(a <= b))
        throw std::invalid_argument("integrate: require a <= b");
    if (a == b)
        return {};

    std::vector<double> edges{a};
    for (double p : breakpoints)
        if (p > a && p < b)
            edges.push_back(p);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Panel> panels;
    double total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = evaluate_panel(f, edges[i], edges[i + 1]);
        total += p.value;
        error += p.error;
        panels.push(p);
    }

    QuadratureResult result;
    const auto target = [&] { return std::max(options.abs_tol, options.rel_tol * std::abs(total)); };
    while (error > target()) {
        if (result.subdivisions >= options.max_subdivisions) {
            result.converged = false;
            break;
        }
        Panel worst = panels.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Panel cannot be split further in double precision.
            result.converged = false;
            break;
        }
        panels.pop();
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++result.subdivisions;

        // Re-sum periodically so cancellation in the running totals cannot
        // drift the estimate.
        if (result.subdivisions % 64 == 0) {
            auto copy = panels;
            total = 0.0;
            error = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                error += copy.top().error;
                copy.pop();
            }
        }
    }

    // Final exact re-sum.
    total = 0.0;
    error = 0.0;
    while (!panels.empty()) {
        total += panels.top().value;
        error += panels.top().error;
        panels.pop();
    }
    result.value = total;
    result.abs_error = error;
    if (result.converged)
        result.converged = error <= std::max(options.abs_tol, options.rel_tol * std::abs(total));
    return result;
}

QuadratureResult integrate(const Integrand& f, double a, double b, double tol)
{
    QuadratureOptions options;
    options.abs_tol = tol;
    return integrate(f, a, b, {}, options);
}

double integrate_or_throw(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                          const QuadratureOptions& options, const char* what)
{
    const QuadratureResult r = integrate(f, a, b, breakpoints, options);
    if (!r.converged)
        throw QuadratureError(std::string(what) + ": quadrature did not converge (error estimate " +
                                  std::to_string(r.abs_error) + ")",
                              r);
    return r.value;
}

double tail_cutoff(const TailSpec& spec, double eps)
{
    if (spec.support_end && eps <= 0.0)
        return *spec.support_end;
    if (spec.tail(0.0) <= eps)
        return 0.0;

    double lo = 0.0;
    double hi = spec.scale > 0.0 ? spec.scale : 1.0;
    while (spec.tail(hi) > eps) {
        lo = hi;
        if (spec.support_end && hi >= *spec.support_end)
            return *spec.support_end;
        hi *= 2.0;
        if (!std::isfinite(hi))
            throw std::runtime_error("tail_cutoff: tail does not decay below eps");
    }
    if (spec.support_end)
        hi = std::min(hi, *spec.support_end);
    // tail(lo) > eps >= tail(hi)
    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (spec.tail(mid) > eps)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

double gaussian_tail_cutoff(double sigma, double eps)
{
    if (eps >= 1.0)
        return 0.0;
    return sigma * std::sqrt(2.0 * std::log(1.0 / eps));
}

} // namespace hetcov
