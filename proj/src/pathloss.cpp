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

#include "hetcov/pathloss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hetcov {

std::optional<std::size_t> ball_index(const BallSpec& balls, double r)
{
    for (std::size_t d = 0; d < balls.size(); ++d)
        if (r < balls.outer_radius(d))
            return d;
    return std::nullopt;
}

PathLoss link_path_loss(const BallSpec& balls, double r, LinkState s)
{
    const auto d = ball_index(balls, r);
    if (!d)
        return PathLoss::outage();
    return PathLoss::finite(balls.kappa(*d, s) * std::pow(r, balls.alpha(*d, s)));
}

double center_path_loss(const Tier0Params& tier0, double y, LinkState s)
{
    return tier0.kappa(s) * std::pow(y, tier0.alpha(s));
}

namespace {

// Squared distance at which a ball-d link in state s has path loss x.
double squared_radius(const BallSpec& b, std::size_t d, LinkState s, double x)
{
    if (std::isinf(x))
        return std::numeric_limits<double>::infinity();
    return std::pow(x / b.kappa(d, s), 2.0 / b.alpha(d, s));
}

double ball_state_intensity(const TierParams& tier, std::size_t d, LinkState s, double x)
{
    const BallSpec& b = tier.balls;
    const double p = b.state_prob(d, s);
    if (p <= 0.0 || x <= 0.0)
        return 0.0;
    const double inner2 = b.inner_radius(d) * b.inner_radius(d);
    const double outer2 = b.outer_radius(d) * b.outer_radius(d);
    const double r2 = std::clamp(squared_radius(b, d, s, x), inner2, outer2);
    return pi * tier.density * p * (r2 - inner2);
}

} // namespace

double intensity_state(const TierParams& tier, LinkState s, double x)
{
    double total = 0.0;
    for (std::size_t d = 0; d < tier.balls.size(); ++d)
        total += ball_state_intensity(tier, d, s, x);
    return total;
}

double intensity(const TierParams& tier, double x)
{
    double total = 0.0;
    for (std::size_t d = 0; d < tier.balls.size(); ++d)
        for (LinkState s : link_states)
            total += ball_state_intensity(tier, d, s, x);
    return total;
}

double intensity_density(const TierParams& tier, LinkState s, double x)
{
    if (!(x > 0.0) || std::isinf(x))
        return 0.0;
    const BallSpec& b = tier.balls;
    double total = 0.0;
    for (std::size_t d = 0; d < b.size(); ++d) {
        const double p = b.state_prob(d, s);
        if (p <= 0.0)
            continue;
        const double alpha = b.alpha(d, s);
        const double kappa = b.kappa(d, s);
        const double lo = kappa * std::pow(b.inner_radius(d), alpha);
        const double hi = kappa * std::pow(b.outer_radius(d), alpha);
        if (x >= lo && x < hi)
            total += 2.0 * pi * tier.density * p * std::pow(x, 2.0 / alpha - 1.0) /
                     (alpha * std::pow(kappa, 2.0 / alpha));
    }
    return total;
}

double total_intensity(const TierParams& tier)
{
    const double r = tier.balls.outage_radius();
    return pi * tier.density * r * r;
}

double ccdf_tier(const TierParams& tier, double x)
{
    return std::exp(-intensity(tier, x));
}

double ccdf_tier_state(const TierParams& tier, LinkState s, double x)
{
    return std::exp(-intensity_state(tier, s, x));
}

double pdf_tier_state(const TierParams& tier, LinkState s, double x)
{
    return intensity_density(tier, s, x) * std::exp(-intensity_state(tier, s, x));
}

SupportBounds support_bounds(const TierParams& tier, LinkState s)
{
    SupportBounds out;
    const BallSpec& b = tier.balls;
    for (std::size_t d = 0; d < b.size(); ++d)
        if (b.state_prob(d, s) > 0.0)
            out.hi = std::max(out.hi, b.kappa(d, s) * std::pow(b.outer_radius(d), b.alpha(d, s)));
    return out;
}

std::vector<double> intensity_breakpoints(const TierParams& tier, LinkState s)
{
    std::vector<double> out;
    const BallSpec& b = tier.balls;
    for (std::size_t d = 0; d < b.size(); ++d) {
        if (b.state_prob(d, s) <= 0.0)
            continue;
        out.push_back(b.kappa(d, s) * std::pow(b.inner_radius(d), b.alpha(d, s)));
        out.push_back(b.kappa(d, s) * std::pow(b.outer_radius(d), b.alpha(d, s)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> intensity_breakpoints(const TierParams& tier)
{
    std::vector<double> out = intensity_breakpoints(tier, LinkState::los);
    const std::vector<double> n = intensity_breakpoints(tier, LinkState::nlos);
    out.insert(out.end(), n.begin(), n.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double offset_ccdf(const ClusterModel& cluster, double y)
{
    if (y <= 0.0)
        return 1.0;
    if (const auto* t = std::get_if<Thomas>(&cluster))
        return std::exp(-y * y / (2.0 * t->sigma * t->sigma));
    const double r = std::get<Matern>(cluster).radius;
    return y >= r ? 0.0 : 1.0 - (y * y) / (r * r);
}

double offset_pdf(const ClusterModel& cluster, double y)
{
    if (y < 0.0)
        return 0.0;
    if (const auto* t = std::get_if<Thomas>(&cluster)) {
        const double s2 = t->sigma * t->sigma;
        return y / s2 * std::exp(-y * y / (2.0 * s2));
    }
    const double r = std::get<Matern>(cluster).radius;
    return y > r ? 0.0 : 2.0 * y / (r * r);
}

double center_distance(const Tier0Params& tier0, LinkState s, double x)
{
    if (std::isinf(x))
        return x;
    return std::pow(x / tier0.kappa(s), 1.0 / tier0.alpha(s));
}

double ccdf_L0_state(const Tier0Params& tier0, const ClusterModel& cluster, LinkState s, double x)
{
    if (x <= 0.0)
        return 1.0;
    const double alpha = tier0.alpha(s);
    const double u = std::pow(x / tier0.kappa(s), 2.0 / alpha); // squared distance
    if (const auto* t = std::get_if<Thomas>(&cluster))
        return std::exp(-u / (2.0 * t->sigma * t->sigma));
    const double r = std::get<Matern>(cluster).radius;
    return std::clamp(1.0 - u / (r * r), 0.0, 1.0);
}

double pdf_L0_state(const Tier0Params& tier0, const ClusterModel& cluster, LinkState s, double x)
{
    if (!(x > 0.0) || std::isinf(x))
        return 0.0;
    const double alpha = tier0.alpha(s);
    const double kappa = tier0.kappa(s);
    const double shape = std::pow(x, 2.0 / alpha - 1.0) / (alpha * std::pow(kappa, 2.0 / alpha));
    if (const auto* t = std::get_if<Thomas>(&cluster)) {
        const double s2 = t->sigma * t->sigma;
        return shape / s2 * std::exp(-std::pow(x / kappa, 2.0 / alpha) / (2.0 * s2));
    }
    const double r = std::get<Matern>(cluster).radius;
    if (x > kappa * std::pow(r, alpha))
        return 0.0;
    return 2.0 * shape / (r * r);
}

double ccdf_L0(const Tier0Params& tier0, const ClusterModel& cluster, double x)
{
    double total = 0.0;
    for (LinkState s : link_states)
        if (tier0.state_prob(s) > 0.0)
            total += tier0.state_prob(s) * ccdf_L0_state(tier0, cluster, s, x);
    return total;
}

double pdf_L0(const Tier0Params& tier0, const ClusterModel& cluster, double x)
{
    double total = 0.0;
    for (LinkState s : link_states)
        if (tier0.state_prob(s) > 0.0)
            total += tier0.state_prob(s) * pdf_L0_state(tier0, cluster, s, x);
    return total;
}

} // namespace hetcov
