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

#ifndef HETCOV_ASSOCIATION_HPP
#define HETCOV_ASSOCIATION_HPP

#include "hetcov/model.hpp"
#include "hetcov/quadrature.hpp"

#include <functional>
#include <vector>

namespace hetcov {

/// Tail mass dropped when truncating the Gaussian cluster offset.
inline constexpr double gaussian_tail_eps = 1e-10;

/// Ratio P_k B_k / (P_j B_j) mapping a tier-j serving path loss to the
/// tier-k exclusion limit.
double exclusion_ratio(const NetworkScenario& scenario, std::size_t k, std::size_t j);

/// Joint density of {serving tier j, serving state s, serving path loss l}
/// under max biased average received power association. Zero outside the
/// serving support, and for j = 0 when there is no cluster center.
double serving_density(const NetworkScenario& scenario, std::size_t j, LinkState s, double l);

/// Integral of g(l) * serving_density(j, s, l) dl over the serving support.
///
/// The integration runs in the distance domain (l = kappa r^alpha inside each
/// ball, or over the cluster offset for j = 0) where the integrand is smooth;
/// ball edges of every tier, mapped through the exclusion ratios, are passed
/// as breakpoints. The Gaussian offset is truncated where its tail mass drops
/// below gaussian_tail_eps.
QuadratureResult integrate_serving(const NetworkScenario& scenario, std::size_t j, LinkState s,
                                   const std::function<double(double)>& g, const QuadratureOptions& options);

/// Association probability A_{j,s}. Throws QuadratureError when the
/// integral does not reach the relative tolerance.
double assoc_prob(const NetworkScenario& scenario, std::size_t j, LinkState s, double tol = 1e-9);

struct AssociationEntry
{
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = true;
};

class AssociationTable
{
public:
    AssociationTable(std::size_t num_tiers, bool has_center);

    std::size_t num_tiers() const { return num_tiers_; }
    bool has_center() const { return has_center_; }

    AssociationEntry& entry(std::size_t j, LinkState s);
    const AssociationEntry& entry(std::size_t j, LinkState s) const;
    double operator()(std::size_t j, LinkState s) const { return entry(j, s).value; }

    /// A_j = A_{j,LOS} + A_{j,NLOS}.
    double marginal(std::size_t j) const;
    double total() const;
    /// Probability that some BS serves the UE: 1 with a cluster center,
    /// otherwise 1 - P(every tier in outage).
    double expected_total() const { return expected_total_; }
    void set_expected_total(double v) { expected_total_ = v; }
    double normalization_defect() const { return total() - expected_total_; }
    bool converged() const;

private:
    std::size_t num_tiers_;
    bool has_center_;
    double expected_total_ = 1.0;
    std::vector<AssociationEntry> entries_;
};

/// Every A_{j,s}. Entries whose quadrature fails are kept with
/// converged = false rather than aborting the table.
AssociationTable assoc_table(const NetworkScenario& scenario, double tol = 1e-9);

} // namespace hetcov

#endif
