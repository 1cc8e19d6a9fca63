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

#ifndef HETCOV_COVERAGE_HPP
#define HETCOV_COVERAGE_HPP

#include "hetcov/model.hpp"
#include "hetcov/quadrature.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hetcov {

/// A serving link and the Laplace argument mu = T l / (P_j G0) it induces.
struct CoverageContext
{
    std::size_t tier = 0;
    LinkState state = LinkState::los;
    double path_loss = 0.0;
    double threshold = 0.0; // linear
    double mu = 0.0;
};

CoverageContext make_context(const NetworkScenario& scenario, std::size_t j, LinkState s, double l,
                             double threshold_linear);

struct CoverageOptions
{
    /// Absolute tolerance of the deconditioning integral over the serving
    /// path loss. Inner Laplace integrals use inner_tol.
    double tol = 1e-8;
    double inner_tol = 1e-11;
    /// Divide the center-interference transform by P(L0 >= C0 l) so it is the
    /// transform of the conditional law. false gives the unnormalized form.
    bool normalize_center = true;
    /// 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 0;
};

/// Laplace transform at ctx.mu of the interference from PPP tier k given
/// service by ctx: interferers are the tier-k points with path loss beyond
/// (P_k B_k / P_j B_j) l, thinned by the three interferer gain levels.
double laplace_tier_interference(const NetworkScenario& scenario, const CoverageContext& ctx, std::size_t k,
                                 const CoverageOptions& options = {});

/// Laplace transform at ctx.mu of the cluster-center interference for a
/// serving tier j >= 1. The center path loss is conditioned on exceeding
/// (P_0 B_0 / P_j B_j) l. Returns 1 when the center cannot interfere.
double laplace_center_interference(const NetworkScenario& scenario, const CoverageContext& ctx,
                                   const CoverageOptions& options = {});

/// P(SINR > T | serving tier j, state s, path loss l).
double conditional_coverage(const NetworkScenario& scenario, const CoverageContext& ctx,
                            const CoverageOptions& options = {});

/// P(SNR > T | serving link) = exp(-mu sigma_j^2).
double conditional_snr_coverage(const NetworkScenario& scenario, const CoverageContext& ctx);

/// A_{j,s} * P_{C_{j,s}}(T): conditional coverage averaged over the serving
/// density. Inner failures raise QuadratureError; outer non-convergence is
/// reported through the result.
QuadratureResult tier_coverage_contribution(const NetworkScenario& scenario, std::size_t j, LinkState s,
                                            double threshold_linear, const CoverageOptions& options = {},
                                            bool snr_only = false);

struct CoveragePoint
{
    double threshold_db = 0.0;
    double sinr = 0.0;
    double snr = 0.0;
    /// Indexed by j * 2 + (s == NLOS). Tier-0 slots stay 0 without a center.
    std::vector<double> contributions;
    std::vector<double> snr_contributions;
    double abs_error = 0.0;
    bool converged = true;
    std::string error;
};

struct CoverageCurve
{
    std::size_t num_tiers = 0;
    bool has_center = false;
    std::vector<CoveragePoint> points;

    static std::size_t slot(std::size_t j, LinkState s) { return j * 2 + (s == LinkState::los ? 0 : 1); }
    std::vector<double> sinr() const;
    std::vector<double> snr() const;
    bool all_failed() const;
};

/// Total SINR and SNR coverage on a threshold grid (dB). Per-point failures
/// are recorded in the point, never dropped.
CoverageCurve total_coverage(const NetworkScenario& scenario, std::span<const double> thresholds_db,
                             const CoverageOptions& options = {});

} // namespace hetcov

#endif
