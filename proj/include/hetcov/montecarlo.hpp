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

#ifndef HETCOV_MONTECARLO_HPP
#define HETCOV_MONTECARLO_HPP

#include "hetcov/coverage.hpp"
#include "hetcov/model.hpp"
#include "hetcov/pathloss.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace hetcov {

using Rng = std::mt19937_64;

/// Independent generator for (seed, trial, stream). Every trial owns its
/// streams, so results do not depend on how trials are split across threads.
Rng make_stream(std::uint64_t seed, std::uint64_t trial, std::uint32_t stream);

struct Point2
{
    double x = 0.0;
    double y = 0.0;

    double norm() const;
};

/// Homogeneous PPP of the given density in the disc of the given radius
/// centered at the origin.
std::vector<Point2> sample_ppp(double density, double radius, Rng& rng);

/// PPP restricted to the annulus [inner, outer).
std::vector<Point2> sample_ppp_annulus(double density, double inner, double outer, Rng& rng);

/// Distance from the typical UE to its cluster center.
double sample_offset(const ClusterModel& cluster, Rng& rng);

/// Interferer gain drawn from the sectored-antenna distribution.
double sample_gain(const std::array<GainLevel, 3>& gains, Rng& rng);

struct SimLink
{
    std::size_t tier = 0;
    double distance = 0.0;
    LinkState state = LinkState::los;
    PathLoss path_loss = PathLoss::outage();
    double gain = 1.0;   // interferer gain (ignored when serving)
    double fading = 1.0; // Rayleigh power gain, Exp(1)
};

/// One network snapshot seen from the typical UE at the origin.
struct Realization
{
    std::vector<SimLink> links; // the cluster center first when present
    double center_offset = 0.0;
};

struct SimulationOptions
{
    /// Tier-k BSs are drawn in a disc of radius window_scale * R_kD; those
    /// beyond R_kD are instantiated but in outage.
    double window_scale = 1.0;
    std::size_t threads = 0;
};

Realization sample_realization(const NetworkScenario& scenario, std::uint64_t seed, std::uint64_t trial,
                               const SimulationOptions& options = {});

struct TrialOutcome
{
    bool served = false;
    std::size_t tier = 0;
    LinkState state = LinkState::los;
    double serving_path_loss = 0.0;
    double sinr = 0.0; // linear
    double snr = 0.0;
    std::vector<bool> sinr_covered; // per threshold
    std::vector<bool> snr_covered;
};

/// Association by maximum P_k B_k / L over every non-outage link (ties to the
/// lowest tier, then the earliest link), then SINR with fresh fading on all
/// links, serving gain M*M and random gains on interferers.
TrialOutcome evaluate_realization(const NetworkScenario& scenario, const Realization& realization,
                                  std::span<const double> thresholds_linear);

TrialOutcome run_trial(const NetworkScenario& scenario, std::span<const double> thresholds_linear,
                       std::uint64_t seed, std::uint64_t trial, const SimulationOptions& options = {});

struct EstimateWithCI
{
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
};

EstimateWithCI bernoulli_estimate(std::size_t successes, std::size_t trials);

struct SimulationResult
{
    std::size_t trials = 0;
    std::size_t num_tiers = 0;
    std::size_t unserved = 0;
    std::vector<std::size_t> association_counts; // slot j * 2 + (s == NLOS)
    std::vector<double> thresholds_db;
    std::vector<std::size_t> sinr_successes;
    std::vector<std::size_t> snr_successes;

    EstimateWithCI association(std::size_t j, LinkState s) const;
    EstimateWithCI association(std::size_t j) const;
    EstimateWithCI coverage(std::size_t i) const;
    EstimateWithCI snr_coverage(std::size_t i) const;
};

/// n independent trials; deterministic in (scenario, thresholds, n, seed)
/// regardless of the thread count.
SimulationResult estimate(const NetworkScenario& scenario, std::span<const double> thresholds_db, std::size_t n,
                          std::uint64_t seed, const SimulationOptions& options = {});

/// All trial outcomes, in trial order.
std::vector<TrialOutcome> simulate_trials(const NetworkScenario& scenario, std::span<const double> thresholds_db,
                                          std::size_t n, std::uint64_t seed, const SimulationOptions& options = {});

/// Sample mean and standard error of exp(-mu I) where I is the tier-k
/// interference given service by ctx (tier-k points beyond the exclusion
/// limit, random gains, Rayleigh fading).
EstimateWithCI simulate_tier_laplace(const NetworkScenario& scenario, const CoverageContext& ctx, std::size_t k,
                                     std::size_t n, std::uint64_t seed);

/// Same for the cluster-center interferer, conditioned by rejection on its
/// path loss exceeding the exclusion limit.
EstimateWithCI simulate_center_laplace(const NetworkScenario& scenario, const CoverageContext& ctx, std::size_t n,
                                       std::uint64_t seed);

} // namespace hetcov

#endif
