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

#include "hetcov/association.hpp"

#include "hetcov/pathloss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hetcov {

double exclusion_ratio(const NetworkScenario& scenario, std::size_t k, std::size_t j)
{
    return scenario.power_watts(k) * scenario.bias(k) / (scenario.power_watts(j) * scenario.bias(j));
}

namespace {

// sum_k Lambda_k([0, C_k l)) over the PPP tiers, C_k relative to serving tier j.
double competing_intensity(const NetworkScenario& scenario, std::size_t j, double l)
{
    double total = 0.0;
    for (std::size_t k = 1; k <= scenario.num_tiers(); ++k)
        total += intensity(scenario.tier(k), exclusion_ratio(scenario, k, j) * l);
    return total;
}

// Path-loss values (in the serving tier's scale) where the competing
// intensity or the center CCDF has a kink.
std::vector<double> serving_kinks(const NetworkScenario& scenario, std::size_t j)
{
    std::vector<double> out;
    for (std::size_t k = 1; k <= scenario.num_tiers(); ++k) {
        const double c = exclusion_ratio(scenario, k, j);
        for (double v : intensity_breakpoints(scenario.tier(k)))
            out.push_back(v / c);
    }
    if (j != 0 && scenario.tier0 && std::holds_alternative<Matern>(scenario.cluster)) {
        const auto& t0 = *scenario.tier0;
        const double c0 = exclusion_ratio(scenario, 0, j);
        const double r = std::get<Matern>(scenario.cluster).radius;
        for (LinkState m : link_states)
            if (t0.state_prob(m) > 0.0)
                out.push_back(t0.kappa(m) * std::pow(r, t0.alpha(m)) / c0);
    }
    return out;
}

void require_tier(const NetworkScenario& scenario, std::size_t j)
{
    if (j > scenario.num_tiers())
        throw std::out_of_range("tier index out of range");
}

void accumulate(QuadratureResult& total, const QuadratureResult& part)
{
    total.value += part.value;
    total.abs_error += part.abs_error;
    total.subdivisions += part.subdivisions;
    total.converged = total.converged && part.converged;
}

} // namespace

double serving_density(const NetworkScenario& scenario, std::size_t j, LinkState s, double l)
{
    require_tier(scenario, j);
    if (!(l > 0.0) || (j == 0 && !scenario.tier0))
        return 0.0;
    if (j == 0) {
        const auto& t0 = *scenario.tier0;
        const double p = t0.state_prob(s);
        if (p <= 0.0)
            return 0.0;
        const double f = pdf_L0_state(t0, scenario.cluster, s, l);
        if (f <= 0.0)
            return 0.0;
        return p * f * std::exp(-competing_intensity(scenario, 0, l));
    }
    const double density = intensity_density(scenario.tier(j), s, l);
    if (density <= 0.0)
        return 0.0;
    double center = 1.0;
    if (scenario.tier0)
        center = ccdf_L0(*scenario.tier0, scenario.cluster, exclusion_ratio(scenario, 0, j) * l);
    return center * density * std::exp(-competing_intensity(scenario, j, l));
}

QuadratureResult integrate_serving(const NetworkScenario& scenario, std::size_t j, LinkState s,
                                   const std::function<double(double)>& g, const QuadratureOptions& options)
{
    require_tier(scenario, j);
    QuadratureResult total;
    if (j == 0 && !scenario.tier0)
        return total;
    const std::vector<double> kinks = serving_kinks(scenario, j);

    if (j == 0) {
        const auto& t0 = *scenario.tier0;
        const double p = t0.state_prob(s);
        if (p <= 0.0)
            return total;
        double y_max = 0.0;
        if (const auto* t = std::get_if<Thomas>(&scenario.cluster))
            y_max = gaussian_tail_cutoff(t->sigma, gaussian_tail_eps);
        else
            y_max = std::get<Matern>(scenario.cluster).radius;

        std::vector<double> breaks;
        for (double v : kinks)
            breaks.push_back(center_distance(t0, s, v));
        const auto integrand = [&](double y) {
            const double l = center_path_loss(t0, y, s);
            const double w = p * offset_pdf(scenario.cluster, y);
            if (w <= 0.0)
                return 0.0;
            return w * std::exp(-competing_intensity(scenario, 0, l)) * g(l);
        };
        return integrate(integrand, 0.0, y_max, breaks, options);
    }

    const TierParams& tier = scenario.tier(j);
    const BallSpec& b = tier.balls;
    const double c0 = scenario.tier0 ? exclusion_ratio(scenario, 0, j) : 0.0;
    for (std::size_t d = 0; d < b.size(); ++d) {
        const double p = b.state_prob(d, s);
        if (p <= 0.0)
            continue;
        const double alpha = b.alpha(d, s);
        const double kappa = b.kappa(d, s);
        const double r_in = b.inner_radius(d);
        const double r_out = b.outer_radius(d);

        std::vector<double> breaks;
        for (double v : kinks)
            breaks.push_back(std::pow(v / kappa, 1.0 / alpha));

        const auto integrand = [&](double r) {
            const double l = kappa * std::pow(r, alpha);
            double w = 2.0 * pi * tier.density * p * r;
            if (scenario.tier0)
                w *= ccdf_L0(*scenario.tier0, scenario.cluster, c0 * l);
            if (w <= 0.0)
                return 0.0;
            return w * std::exp(-competing_intensity(scenario, j, l)) * g(l);
        };
        accumulate(total, integrate(integrand, r_in, r_out, breaks, options));
    }
    return total;
}

double assoc_prob(const NetworkScenario& scenario, std::size_t j, LinkState s, double tol)
{
    QuadratureOptions options;
    options.rel_tol = tol;
    options.abs_tol = tol * 1e-3;
    const QuadratureResult r = integrate_serving(scenario, j, s, [](double) { return 1.0; }, options);
    if (!r.converged)
        throw QuadratureError("association probability for tier " + std::to_string(j) + " " + to_string(s) +
                                  " did not converge (error estimate " + std::to_string(r.abs_error) + ")",
                              r);
    return r.value;
}

AssociationTable::AssociationTable(std::size_t num_tiers, bool has_center)
    : num_tiers_(num_tiers), has_center_(has_center), entries_((num_tiers + 1) * 2)
{
}

AssociationEntry& AssociationTable::entry(std::size_t j, LinkState s)
{
    return entries_.at(j * 2 + (s == LinkState::los ? 0 : 1));
}

const AssociationEntry& AssociationTable::entry(std::size_t j, LinkState s) const
{
    return entries_.at(j * 2 + (s == LinkState::los ? 0 : 1));
}

double AssociationTable::marginal(std::size_t j) const
{
    return entry(j, LinkState::los).value + entry(j, LinkState::nlos).value;
}

double AssociationTable::total() const
{
    double sum = 0.0;
    for (const auto& e : entries_)
        sum += e.value;
    return sum;
}

bool AssociationTable::converged() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.converged; });
}

AssociationTable assoc_table(const NetworkScenario& scenario, double tol)
{
    AssociationTable table(scenario.num_tiers(), scenario.tier0.has_value());
    if (!scenario.tier0) {
        double all_outage = 0.0;
        for (const auto& t : scenario.tiers)
            all_outage += total_intensity(t);
        table.set_expected_total(1.0 - std::exp(-all_outage));
    }

    QuadratureOptions options;
    options.rel_tol = tol;
    options.abs_tol = tol * 1e-3;
    for (std::size_t j = scenario.tier0 ? 0 : 1; j <= scenario.num_tiers(); ++j) {
        for (LinkState s : link_states) {
            const QuadratureResult r = integrate_serving(scenario, j, s, [](double) { return 1.0; }, options);
            table.entry(j, s) = {r.value, r.abs_error, r.converged};
        }
    }
    return table;
}

} // namespace hetcov
