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

#ifndef HETCOV_PATHLOSS_HPP
#define HETCOV_PATHLOSS_HPP

#include "hetcov/model.hpp"

#include <optional>
#include <vector>

namespace hetcov {

/// Linear path loss (>= 0, larger is weaker) or outage. Outage is never
/// encoded as a large finite number.
class PathLoss
{
public:
    static PathLoss outage() { return PathLoss(); }
    static PathLoss finite(double value) { return PathLoss(value); }

    bool is_outage() const { return !value_.has_value(); }
    double value() const { return value_.value(); }
    /// Received-power factor 1/L; zero in outage.
    double inverse() const { return value_ ? 1.0 / *value_ : 0.0; }

private:
    PathLoss() = default;
    explicit PathLoss(double v) : value_(v) {}
    std::optional<double> value_;
};

/// Index of the ball containing distance r ([R_{d-1}, R_d) convention), or
/// nullopt when r is at or beyond the outage radius.
std::optional<std::size_t> ball_index(const BallSpec& balls, double r);

/// Path loss of a tier link at distance r in state s.
PathLoss link_path_loss(const BallSpec& balls, double r, LinkState s);

/// Path loss of the cluster-center link at distance y in state s.
double center_path_loss(const Tier0Params& tier0, double y, LinkState s);

// --- PPP tiers -----------------------------------------------------------
//
// The tier-j path losses form an inhomogeneous PPP on [0, inf) whose mean
// measure is the pushforward of lambda_j * area under the ball model. x may be
// +infinity.

/// Lambda_j([0, x)).
double intensity(const TierParams& tier, double x);

/// Lambda_{j,s}([0, x)).
double intensity_state(const TierParams& tier, LinkState s, double x);

/// d/dx Lambda_{j,s}([0, x)); zero outside support_bounds(tier, s).
double intensity_density(const TierParams& tier, LinkState s, double x);

/// Total mass pi * lambda_j * R_{jD}^2.
double total_intensity(const TierParams& tier);

double ccdf_tier(const TierParams& tier, double x);
double ccdf_tier_state(const TierParams& tier, LinkState s, double x);
double pdf_tier_state(const TierParams& tier, LinkState s, double x);

struct SupportBounds
{
    double lo = 0.0;
    double hi = 0.0;
};

/// [0, hi] where hi is the largest kappa_d^s R_d^alpha over balls in which
/// state s has positive probability (hi = 0 when s never occurs).
SupportBounds support_bounds(const TierParams& tier, LinkState s);

/// Path-loss values at which Lambda_{j,s}' jumps (ball edges), both states.
std::vector<double> intensity_breakpoints(const TierParams& tier);
std::vector<double> intensity_breakpoints(const TierParams& tier, LinkState s);

// --- Cluster center (tier 0) ------------------------------------------------

/// Radial offset law of the typical UE from its cluster center.
double offset_ccdf(const ClusterModel& cluster, double y);
double offset_pdf(const ClusterModel& cluster, double y);

double ccdf_L0_state(const Tier0Params& tier0, const ClusterModel& cluster, LinkState s, double x);
double pdf_L0_state(const Tier0Params& tier0, const ClusterModel& cluster, LinkState s, double x);

/// Mixture over link states weighted by the LOS probability.
double ccdf_L0(const Tier0Params& tier0, const ClusterModel& cluster, double x);
double pdf_L0(const Tier0Params& tier0, const ClusterModel& cluster, double x);

/// Distance at which the center link in state s reaches path loss x.
double center_distance(const Tier0Params& tier0, LinkState s, double x);

} // namespace hetcov

#endif
