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

#include "hetcov/montecarlo.hpp"

#include "hetcov/association.hpp"
#include "hetcov/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace hetcov {

namespace {

constexpr std::uint32_t center_stream = 0;
constexpr std::uint32_t annulus_stream_base = 1000;
constexpr std::uint32_t tier_laplace_stream = 2000;
constexpr std::uint32_t center_laplace_stream = 2001;

double uniform01(Rng& rng)
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double exp1(Rng& rng)
{
    return std::exponential_distribution<double>(1.0)(rng);
}

LinkState sample_state(double los_prob, Rng& rng)
{
    return uniform01(rng) < los_prob ? LinkState::los : LinkState::nlos;
}

std::size_t slot(std::size_t j, LinkState s)
{
    return j * 2 + (s == LinkState::los ? 0 : 1);
}

struct Welford
{
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x)
    {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    EstimateWithCI result() const
    {
        EstimateWithCI e;
        e.estimate = mean;
        e.trials = n;
        e.std_error = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
        return e;
    }
};

} // namespace

Rng make_stream(std::uint64_t seed, std::uint64_t trial, std::uint32_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32), stream};
    return Rng(seq);
}

double Point2::norm() const
{
    return std::hypot(x, y);
}

std::vector<Point2> sample_ppp_annulus(double density, double inner, double outer, Rng& rng)
{
    std::vector<Point2> out;
    const double mean = density * pi * (outer * outer - inner * inner);
    if (!(mean > 0.0))
        return out;
    const long count = std::poisson_distribution<long>(mean)(rng);
    out.reserve(static_cast<std::size_t>(count));
    const double inner2 = inner * inner;
    const double span2 = outer * outer - inner2;
    for (long i = 0; i < count; ++i) {
        const double r = std::sqrt(inner2 + span2 * uniform01(rng));
        const double phi = 2.0 * pi * uniform01(rng);
        out.push_back({r * std::cos(phi), r * std::sin(phi)});
    }
    return out;
}

std::vector<Point2> sample_ppp(double density, double radius, Rng& rng)
{
    return sample_ppp_annulus(density, 0.0, radius, rng);
}

double sample_offset(const ClusterModel& cluster, Rng& rng)
{
    if (const auto* t = std::get_if<Thomas>(&cluster)) {
        // Norm of a 2-D isotropic Gaussian offset.
        std::normal_distribution<double> gauss(0.0, t->sigma);
        const double dx = gauss(rng);
        const double dy = gauss(rng);
        return std::hypot(dx, dy);
    }
    const double r = std::get<Matern>(cluster).radius;
    return r * std::sqrt(uniform01(rng));
}

double sample_gain(const std::array<GainLevel, 3>& gains, Rng& rng)
{
    const double u = uniform01(rng);
    double acc = 0.0;
    for (const auto& g : gains) {
        acc += g.probability;
        if (u < acc)
            return g.gain;
    }
    return gains.back().gain;
}

Realization sample_realization(const NetworkScenario& scenario, std::uint64_t seed, std::uint64_t trial,
                               const SimulationOptions& options)
{
    Realization out;
    const auto gains = gain_distribution(scenario.antenna);

    if (scenario.tier0) {
        const Tier0Params& t0 = *scenario.tier0;
        Rng rng = make_stream(seed, trial, center_stream);
        SimLink link;
        link.tier = 0;
        link.distance = sample_offset(scenario.cluster, rng);
        link.state = sample_state(t0.los_prob, rng);
        link.path_loss = PathLoss::finite(center_path_loss(t0, link.distance, link.state));
        link.gain = sample_gain(gains, rng);
        link.fading = exp1(rng);
        out.center_offset = link.distance;
        out.links.push_back(link);
    }

    for (std::size_t k = 1; k <= scenario.num_tiers(); ++k) {
        const TierParams& tier = scenario.tier(k);
        const double outage_radius = tier.balls.outage_radius();

        Rng rng = make_stream(seed, trial, static_cast<std::uint32_t>(k));
        for (const Point2& p : sample_ppp(tier.density, outage_radius, rng)) {
            SimLink link;
            link.tier = k;
            link.distance = p.norm();
            const auto d = ball_index(tier.balls, link.distance);
            link.state = sample_state(d ? tier.balls.los_prob[*d] : 0.0, rng);
            link.path_loss = link_path_loss(tier.balls, link.distance, link.state);
            link.gain = sample_gain(gains, rng);
            link.fading = exp1(rng);
            out.links.push_back(link);
        }

        if (options.window_scale > 1.0) {
            Rng outer = make_stream(seed, trial, annulus_stream_base + static_cast<std::uint32_t>(k));
            for (const Point2& p :
                 sample_ppp_annulus(tier.density, outage_radius, options.window_scale * outage_radius, outer)) {
                SimLink link;
                link.tier = k;
                link.distance = p.norm();
                link.path_loss = PathLoss::outage();
                out.links.push_back(link);
            }
        }
    }
    return out;
}

TrialOutcome evaluate_realization(const NetworkScenario& scenario, const Realization& realization,
                                  std::span<const double> thresholds_linear)
{
    TrialOutcome out;
    out.sinr_covered.assign(thresholds_linear.size(), false);
    out.snr_covered.assign(thresholds_linear.size(), false);

    const SimLink* best = nullptr;
    double best_power = 0.0;
    for (const SimLink& link : realization.links) {
        if (link.path_loss.is_outage())
            continue;
        const double biased = scenario.power_watts(link.tier) * scenario.bias(link.tier) * link.path_loss.inverse();
        if (best == nullptr || biased > best_power) {
            best = &link;
            best_power = biased;
        }
    }
    if (best == nullptr)
        return out;

    out.served = true;
    out.tier = best->tier;
    out.state = best->state;
    out.serving_path_loss = best->path_loss.value();

    const double signal =
        scenario.power_watts(best->tier) * serving_gain(scenario.antenna) * best->fading * best->path_loss.inverse();
    double interference = 0.0;
    for (const SimLink& link : realization.links) {
        if (&link == best || link.path_loss.is_outage())
            continue;
        interference += scenario.power_watts(link.tier) * link.gain * link.fading * link.path_loss.inverse();
    }
    const double noise = scenario.noise_watts(best->tier);
    out.sinr = signal / (noise + interference);
    out.snr = signal / noise;
    for (std::size_t i = 0; i < thresholds_linear.size(); ++i) {
        out.sinr_covered[i] = out.sinr > thresholds_linear[i];
        out.snr_covered[i] = out.snr > thresholds_linear[i];
    }
    return out;
}

TrialOutcome run_trial(const NetworkScenario& scenario, std::span<const double> thresholds_linear,
                       std::uint64_t seed, std::uint64_t trial, const SimulationOptions& options)
{
    return evaluate_realization(scenario, sample_realization(scenario, seed, trial, options), thresholds_linear);
}

EstimateWithCI bernoulli_estimate(std::size_t successes, std::size_t trials)
{
    EstimateWithCI e;
    e.trials = trials;
    if (trials == 0)
        return e;
    const double n = static_cast<double>(trials);
    e.estimate = static_cast<double>(successes) / n;
    e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) / n);
    return e;
}

EstimateWithCI SimulationResult::association(std::size_t j, LinkState s) const
{
    return bernoulli_estimate(association_counts.at(slot(j, s)), trials);
}

EstimateWithCI SimulationResult::association(std::size_t j) const
{
    return bernoulli_estimate(association_counts.at(slot(j, LinkState::los)) +
                                  association_counts.at(slot(j, LinkState::nlos)),
                              trials);
}

EstimateWithCI SimulationResult::coverage(std::size_t i) const
{
    return bernoulli_estimate(sinr_successes.at(i), trials);
}

EstimateWithCI SimulationResult::snr_coverage(std::size_t i) const
{
    return bernoulli_estimate(snr_successes.at(i), trials);
}

namespace {

std::vector<double> to_linear(std::span<const double> thresholds_db)
{
    std::vector<double> out;
    out.reserve(thresholds_db.size());
    for (double t : thresholds_db)
        out.push_back(db_to_linear(t));
    return out;
}

} // namespace

SimulationResult estimate(const NetworkScenario& scenario, std::span<const double> thresholds_db, std::size_t n,
                          std::uint64_t seed, const SimulationOptions& options)
{
    if (n == 0)
        throw std::invalid_argument("estimate: at least one trial is required");
    const std::vector<double> thresholds = to_linear(thresholds_db);
    const std::size_t slots = (scenario.num_tiers() + 1) * 2;
    const std::size_t workers = std::min(resolve_threads(options.threads), n);

    std::vector<SimulationResult> partial(workers);
    for (auto& p : partial) {
        p.association_counts.assign(slots, 0);
        p.sinr_successes.assign(thresholds.size(), 0);
        p.snr_successes.assign(thresholds.size(), 0);
    }

    parallel_for(workers, workers, [&](std::size_t w) {
        SimulationResult& acc = partial[w];
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        for (std::size_t trial = begin; trial < end; ++trial) {
            const TrialOutcome o = run_trial(scenario, thresholds, seed, trial, options);
            if (!o.served) {
                ++acc.unserved;
                continue;
            }
            ++acc.association_counts[slot(o.tier, o.state)];
            for (std::size_t i = 0; i < thresholds.size(); ++i) {
                acc.sinr_successes[i] += o.sinr_covered[i] ? 1 : 0;
                acc.snr_successes[i] += o.snr_covered[i] ? 1 : 0;
            }
        }
    });

    SimulationResult result;
    result.trials = n;
    result.num_tiers = scenario.num_tiers();
    result.thresholds_db.assign(thresholds_db.begin(), thresholds_db.end());
    result.association_counts.assign(slots, 0);
    result.sinr_successes.assign(thresholds.size(), 0);
    result.snr_successes.assign(thresholds.size(), 0);
    for (const auto& p : partial) {
        result.unserved += p.unserved;
        for (std::size_t i = 0; i < slots; ++i)
            result.association_counts[i] += p.association_counts[i];
        for (std::size_t i = 0; i < thresholds.size(); ++i) {
            result.sinr_successes[i] += p.sinr_successes[i];
            result.snr_successes[i] += p.snr_successes[i];
        }
    }
    return result;
}

std::vector<TrialOutcome> simulate_trials(const NetworkScenario& scenario, std::span<const double> thresholds_db,
                                          std::size_t n, std::uint64_t seed, const SimulationOptions& options)
{
    const std::vector<double> thresholds = to_linear(thresholds_db);
    std::vector<TrialOutcome> out(n);
    parallel_for(n, options.threads,
                 [&](std::size_t trial) { out[trial] = run_trial(scenario, thresholds, seed, trial, options); });
    return out;
}

EstimateWithCI simulate_tier_laplace(const NetworkScenario& scenario, const CoverageContext& ctx, std::size_t k,
                                     std::size_t n, std::uint64_t seed)
{
    const TierParams& tier = scenario.tier(k);
    const double lower = exclusion_ratio(scenario, k, ctx.tier) * ctx.path_loss;
    const auto gains = gain_distribution(scenario.antenna);
    const double power = tier.power_watts();

    Welford acc;
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng = make_stream(seed, i, tier_laplace_stream);
        double interference = 0.0;
        for (const Point2& p : sample_ppp(tier.density, tier.balls.outage_radius(), rng)) {
            const double r = p.norm();
            const auto d = ball_index(tier.balls, r);
            const LinkState s = sample_state(d ? tier.balls.los_prob[*d] : 0.0, rng);
            const PathLoss loss = link_path_loss(tier.balls, r, s);
            const double g = sample_gain(gains, rng);
            const double h = exp1(rng);
            if (loss.is_outage() || loss.value() <= lower)
                continue;
            interference += power * g * h * loss.inverse();
        }
        acc.add(std::exp(-ctx.mu * interference));
    }
    return acc.result();
}

EstimateWithCI simulate_center_laplace(const NetworkScenario& scenario, const CoverageContext& ctx, std::size_t n,
                                       std::uint64_t seed)
{
    if (!scenario.tier0)
        throw std::invalid_argument("simulate_center_laplace: scenario has no cluster center");
    const Tier0Params& t0 = *scenario.tier0;
    const double lower = exclusion_ratio(scenario, 0, ctx.tier) * ctx.path_loss;
    const auto gains = gain_distribution(scenario.antenna);
    const double power = t0.power_watts();

    Welford acc;
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng = make_stream(seed, i, center_laplace_stream);
        double loss = 0.0;
        for (std::size_t attempt = 0;; ++attempt) {
            if (attempt > 10'000'000)
                throw std::runtime_error("simulate_center_laplace: conditioning event too rare");
            const double y = sample_offset(scenario.cluster, rng);
            const LinkState s = sample_state(t0.los_prob, rng);
            loss = center_path_loss(t0, y, s);
            if (loss >= lower)
                break;
        }
        const double g = sample_gain(gains, rng);
        const double h = exp1(rng);
        acc.add(std::exp(-ctx.mu * power * g * h / loss));
    }
    return acc.result();
}

} // namespace hetcov
