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

#ifndef HETCOV_MODEL_HPP
#define HETCOV_MODEL_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hetcov {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double speed_of_light = 299792458.0;

enum class LinkState { los, nlos };

inline constexpr std::array<LinkState, 2> link_states{LinkState::los, LinkState::nlos};

const char* to_string(LinkState s);

// Unit conversions. Powers enter the library in dBW, noise in dBm; everything
// downstream works in linear watts.
double db_to_linear(double db);
double linear_to_db(double linear);
double dbw_to_watts(double dbw);
double dbm_to_watts(double dbm);

/// Free-space loss at 1 m, (4 pi f / c)^2, linear.
double free_space_intercept(double carrier_hz);

/// D-ball blockage geometry of one PPP tier. Ball d covers distances
/// [radii[d-1], radii[d]) with radii[-1] = 0; links at or beyond radii.back()
/// are in outage.
struct BallSpec
{
    std::vector<double> radii;
    std::vector<double> los_prob;
    std::vector<double> alpha_los;
    std::vector<double> alpha_nlos;
    std::vector<double> kappa_los;
    std::vector<double> kappa_nlos;

    std::size_t size() const { return radii.size(); }
    double inner_radius(std::size_t d) const { return d == 0 ? 0.0 : radii[d - 1]; }
    double outer_radius(std::size_t d) const { return radii[d]; }
    double outage_radius() const { return radii.empty() ? 0.0 : radii.back(); }
    double alpha(std::size_t d, LinkState s) const { return s == LinkState::los ? alpha_los[d] : alpha_nlos[d]; }
    double kappa(std::size_t d, LinkState s) const { return s == LinkState::los ? kappa_los[d] : kappa_nlos[d]; }
    double state_prob(std::size_t d, LinkState s) const { return s == LinkState::los ? los_prob[d] : 1.0 - los_prob[d]; }
};

struct TierParams
{
    double power_dbw = 0.0;
    double bias = 1.0;
    double density = 0.0; // BS per m^2
    BallSpec balls;

    double power_watts() const { return dbw_to_watts(power_dbw); }
};

struct Thomas
{
    double sigma = 0.0;
};

struct Matern
{
    double radius = 0.0;
};

/// Offset law of the typical UE around its cluster center.
using ClusterModel = std::variant<Thomas, Matern>;

double cluster_scale(const ClusterModel& cluster);
ClusterModel with_scale(const ClusterModel& cluster, double scale);
const char* cluster_name(const ClusterModel& cluster);

/// The cluster-center link: single ball, never in outage.
struct Tier0Params
{
    double power_dbw = 0.0;
    double bias = 1.0;
    double los_prob = 1.0;
    double alpha_los = 2.0;
    double alpha_nlos = 4.0;
    double kappa_los = 1.0;
    double kappa_nlos = 1.0;

    double power_watts() const { return dbw_to_watts(power_dbw); }
    double alpha(LinkState s) const { return s == LinkState::los ? alpha_los : alpha_nlos; }
    double kappa(LinkState s) const { return s == LinkState::los ? kappa_los : kappa_nlos; }
    double state_prob(LinkState s) const { return s == LinkState::los ? los_prob : 1.0 - los_prob; }
};

/// Sectored (flat-top) antenna: main lobe gain inside the beamwidth, side lobe
/// gain elsewhere.
struct AntennaPattern
{
    double main_gain_db = 10.0;
    double side_gain_db = -10.0;
    double beamwidth_rad = pi / 6.0;
};

struct NetworkScenario
{
    std::optional<Tier0Params> tier0; // absent: UEs form a PPP, no cluster center
    std::vector<TierParams> tiers;    // tiers 1..K, stored at index 0..K-1
    ClusterModel cluster = Thomas{10.0};
    AntennaPattern antenna;
    // Noise per serving tier 0..K in dBm. A single entry applies to every tier.
    std::vector<double> noise_dbm{-74.0};

    std::size_t num_tiers() const { return tiers.size(); }
    const TierParams& tier(std::size_t k) const { return tiers.at(k - 1); }
    double power_watts(std::size_t k) const;
    double bias(std::size_t k) const;
    double noise_watts(std::size_t k) const;
};

struct Violation
{
    std::string path;
    std::string message;
};

/// Every invariant violation in the scenario, each tagged with the path of
/// the offending field (e.g. "tiers[1].balls.radii"). Never throws.
std::vector<Violation> validate(const NetworkScenario& scenario);

struct GainLevel
{
    double gain = 0.0; // linear
    double probability = 0.0;
};

/// Effective interferer gain for uniformly random beam orientation at both
/// ends: {MM, Mm, mm} with probabilities p^2, 2p(1-p), (1-p)^2, p = theta/2pi.
std::array<GainLevel, 3> gain_distribution(const AntennaPattern& antenna);

/// Serving-link gain under perfect alignment, M*M linear.
double serving_gain(const AntennaPattern& antenna);

/// The two-tier reference network: 3/3/23 dBW, unit biases, D = 2 balls,
/// exponents 2/4, M = 10 dB, m = -10 dB, theta = pi/6, noise -74 dBm, and
/// path-loss intercepts (4 pi f/c)^2 at 28 GHz.
NetworkScenario reference_scenario(const ClusterModel& cluster);

} // namespace hetcov

#endif
