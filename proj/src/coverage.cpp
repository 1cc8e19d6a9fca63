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

#include "hetcov/coverage.hpp"

#include "hetcov/association.hpp"
#include "hetcov/parallel.hpp"
#include "hetcov/pathloss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hetcov {

CoverageContext make_context(const NetworkScenario& scenario, std::size_t j, LinkState s, double l,
                             double threshold_linear)
{
    CoverageContext ctx;
    ctx.tier = j;
    ctx.state = s;
    ctx.path_loss = l;
    ctx.threshold = threshold_linear;
    ctx.mu = threshold_linear * l / (scenario.power_watts(j) * serving_gain(scenario.antenna));
    return ctx;
}

namespace {

QuadratureOptions inner_options(const CoverageOptions& options)
{
    QuadratureOptions q;
    q.abs_tol = options.inner_tol;
    q.rel_tol = 0.0;
    return q;
}

// E_G[1 - 1/(1 + mu P G / t)] = sum_G P_G * mu P G / (t + mu P G).
struct InterferenceKernel
{
    std::array<GainLevel, 3> gains;
    double mu_power = 0.0; // mu * P_k

    double operator()(double t) const
    {
        double sum = 0.0;
        for (const auto& g : gains) {
            const double a = mu_power * g.gain;
            sum += g.probability * a / (t + a);
        }
        return sum;
    }
};

} // namespace

double laplace_tier_interference(const NetworkScenario& scenario, const CoverageContext& ctx, std::size_t k,
                                 const CoverageOptions& options)
{
    if (k == 0 || k > scenario.num_tiers())
        throw std::out_of_range("laplace_tier_interference: interfering tier must be a PPP tier");
    if (ctx.mu <= 0.0)
        return 1.0;

    const TierParams& tier = scenario.tier(k);
    const BallSpec& b = tier.balls;
    const double lower = exclusion_ratio(scenario, k, ctx.tier) * ctx.path_loss;
    const InterferenceKernel kernel{gain_distribution(scenario.antenna), ctx.mu * tier.power_watts()};
    const QuadratureOptions q = inner_options(options);

    // Integrate the Lambda_{k,n} measure in the distance domain, ball by ball:
    // Lambda_{k,n}(dt) = 2 pi lambda p r dr with t = kappa r^alpha.
    double exponent = 0.0;
    for (LinkState n : link_states) {
        for (std::size_t d = 0; d < b.size(); ++d) {
            const double p = b.state_prob(d, n);
            if (p <= 0.0)
                continue;
            const double alpha = b.alpha(d, n);
            const double kappa = b.kappa(d, n);
            const double r_lo = std::max(b.inner_radius(d), std::pow(lower / kappa, 1.0 / alpha));
            const double r_hi = b.outer_radius(d);
            if (!(r_lo < r_hi))
                continue;
            const auto integrand = [&](double r) {
                return 2.0 * pi * tier.density * p * r * kernel(kappa * std::pow(r, alpha));
            };
            exponent += integrate_or_throw(integrand, r_lo, r_hi, {}, q, "tier interference transform");
        }
    }
    return std::exp(-exponent);
}

namespace {

struct CenterTransform
{
    double normalized = 1.0;
    double unnormalized = 1.0;
};

// Shared by both forms: the tail masses P_m P(L_{0,m} >= C0 l) and the
// conditional expected interference kernel J_m for each center state m.
CenterTransform center_transform(const NetworkScenario& scenario, const CoverageContext& ctx,
                                 const CoverageOptions& options)
{
    const Tier0Params& t0 = *scenario.tier0;
    const double lower = exclusion_ratio(scenario, 0, ctx.tier) * ctx.path_loss;
    const InterferenceKernel kernel{gain_distribution(scenario.antenna), ctx.mu * t0.power_watts()};
    const QuadratureOptions q = inner_options(options);

    std::array<double, 2> log_mass{-std::numeric_limits<double>::infinity(),
                                   -std::numeric_limits<double>::infinity()};
    std::array<double, 2> interference{0.0, 0.0};

    for (std::size_t i = 0; i < 2; ++i) {
        const LinkState m = link_states[i];
        const double p = t0.state_prob(m);
        if (p <= 0.0)
            continue;
        const double y_lo = center_distance(t0, m, lower);
        const auto path_loss = [&](double y) { return center_path_loss(t0, y, m); };

        if (const auto* th = std::get_if<Thomas>(&scenario.cluster)) {
            const double s2 = th->sigma * th->sigma;
            log_mass[i] = std::log(p) - y_lo * y_lo / (2.0 * s2);
            if (ctx.mu <= 0.0)
                continue;
            // Rayleigh law conditioned on y >= y_lo.
            const double y_hi = std::sqrt(y_lo * y_lo + 2.0 * s2 * std::log(1.0 / gaussian_tail_eps));
            const auto integrand = [&](double y) {
                return y / s2 * std::exp(-(y * y - y_lo * y_lo) / (2.0 * s2)) * kernel(path_loss(y));
            };
            interference[i] = integrate_or_throw(integrand, y_lo, y_hi, {}, q, "center interference transform");
        } else {
            const double r = std::get<Matern>(scenario.cluster).radius;
            if (y_lo >= r)
                continue;
            log_mass[i] = std::log(p) + std::log1p(-(y_lo * y_lo) / (r * r));
            if (ctx.mu <= 0.0)
                continue;
            const double denom = r * r - y_lo * y_lo;
            const auto integrand = [&](double y) { return 2.0 * y / denom * kernel(path_loss(y)); };
            interference[i] = integrate_or_throw(integrand, y_lo, r, {}, q, "center interference transform");
        }
    }

    const double top = std::max(log_mass[0], log_mass[1]);
    CenterTransform out;
    if (std::isinf(top))
        return out; // the center cannot be an interferer
    double weight_sum = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        if (std::isinf(log_mass[i]))
            continue;
        const double w = std::exp(log_mass[i] - top);
        weight_sum += w;
        acc += w * (1.0 - interference[i]);
    }
    out.normalized = acc / weight_sum;
    out.unnormalized = out.normalized * weight_sum * std::exp(top);
    return out;
}

} // namespace

double laplace_center_interference(const NetworkScenario& scenario, const CoverageContext& ctx,
                                   const CoverageOptions& options)
{
    if (!scenario.tier0 || ctx.tier == 0)
        return 1.0;
    const CenterTransform t = center_transform(scenario, ctx, options);
    return options.normalize_center ? t.normalized : t.unnormalized;
}

double conditional_snr_coverage(const NetworkScenario& scenario, const CoverageContext& ctx)
{
    return std::exp(-ctx.mu * scenario.noise_watts(ctx.tier));
}

double conditional_coverage(const NetworkScenario& scenario, const CoverageContext& ctx,
                            const CoverageOptions& options)
{
    double p = conditional_snr_coverage(scenario, ctx);
    if (p <= 0.0)
        return 0.0;
    if (ctx.tier != 0)
        p *= laplace_center_interference(scenario, ctx, options);
    for (std::size_t k = 1; k <= scenario.num_tiers(); ++k)
        p *= laplace_tier_interference(scenario, ctx, k, options);
    return p;
}

QuadratureResult tier_coverage_contribution(const NetworkScenario& scenario, std::size_t j, LinkState s,
                                            double threshold_linear, const CoverageOptions& options, bool snr_only)
{
    QuadratureOptions q;
    q.abs_tol = options.tol;
    const auto g = [&](double l) {
        const CoverageContext ctx = make_context(scenario, j, s, l, threshold_linear);
        return snr_only ? conditional_snr_coverage(scenario, ctx) : conditional_coverage(scenario, ctx, options);
    };
    return integrate_serving(scenario, j, s, g, q);
}

std::vector<double> CoverageCurve::sinr() const
{
    std::vector<double> out;
    for (const auto& p : points)
        out.push_back(p.sinr);
    return out;
}

std::vector<double> CoverageCurve::snr() const
{
    std::vector<double> out;
    for (const auto& p : points)
        out.push_back(p.snr);
    return out;
}

bool CoverageCurve::all_failed() const
{
    return !points.empty() && std::all_of(points.begin(), points.end(), [](const auto& p) { return !p.converged; });
}

CoverageCurve total_coverage(const NetworkScenario& scenario, std::span<const double> thresholds_db,
                             const CoverageOptions& options)
{
    CoverageCurve curve;
    curve.num_tiers = scenario.num_tiers();
    curve.has_center = scenario.tier0.has_value();
    curve.points.resize(thresholds_db.size());

    const std::size_t first = scenario.tier0 ? 0 : 1;
    const std::size_t slots = (scenario.num_tiers() + 1) * 2;

    parallel_for(thresholds_db.size(), options.threads, [&](std::size_t i) {
        CoveragePoint& pt = curve.points[i];
        pt.threshold_db = thresholds_db[i];
        pt.contributions.assign(slots, 0.0);
        pt.snr_contributions.assign(slots, 0.0);
        const double t = db_to_linear(thresholds_db[i]);
        try {
            for (std::size_t j = first; j <= scenario.num_tiers(); ++j) {
                for (LinkState s : link_states) {
                    const std::size_t slot = CoverageCurve::slot(j, s);
                    const QuadratureResult sinr = tier_coverage_contribution(scenario, j, s, t, options, false);
                    const QuadratureResult snr = tier_coverage_contribution(scenario, j, s, t, options, true);
                    pt.contributions[slot] = sinr.value;
                    pt.snr_contributions[slot] = snr.value;
                    pt.abs_error += sinr.abs_error;
                    if (!sinr.converged || !snr.converged) {
                        pt.converged = false;
                        pt.error = "outer integral for tier " + std::to_string(j) + " " + to_string(s) +
                                   " did not converge";
                    }
                }
            }
        } catch (const QuadratureError& e) {
            pt.converged = false;
            pt.error = e.what();
        }
        for (std::size_t k = 0; k < slots; ++k) {
            pt.sinr += pt.contributions[k];
            pt.snr += pt.snr_contributions[k];
        }
    });
    return curve;
}

} // namespace hetcov
