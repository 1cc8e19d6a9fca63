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

#ifndef HETCOV_TESTS_SUPPORT_HPP
#define HETCOV_TESTS_SUPPORT_HPP

#include "hetcov/model.hpp"

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

namespace testing {

inline std::filesystem::path scenario_dir()
{
    return HETCOV_SCENARIO_DIR;
}

inline void set_kappa(hetcov::NetworkScenario& scn, double kappa)
{
    for (auto& t : scn.tiers) {
        for (double& k : t.balls.kappa_los)
            k = kappa;
        for (double& k : t.balls.kappa_nlos)
            k = kappa;
    }
    if (scn.tier0) {
        scn.tier0->kappa_los = kappa;
        scn.tier0->kappa_nlos = kappa;
    }
}

inline hetcov::NetworkScenario table2_unit_kappa(const hetcov::ClusterModel& cluster = hetcov::Thomas{10.0})
{
    auto scn = hetcov::reference_scenario(cluster);
    set_kappa(scn, 1.0);
    return scn;
}

/// Expected number of BSs with path loss below x (state-filtered when
/// state >= 0), by uniform sampling of the outage disc. Each sample carries
/// the LOS probability of its ball as a weight, so only the geometry is random.
inline double area_oracle(const hetcov::TierParams& tier, double x, int state, std::size_t n, std::uint64_t seed)
{
    const auto& b = tier.balls;
    const double big_r = b.radii.back();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-big_r, big_r);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double px = u(rng), py = u(rng);
        const double r = std::sqrt(px * px + py * py);
        if (r >= big_r)
            continue;
        std::size_t d = 0;
        while (r >= b.radii[d])
            ++d;
        const double p = b.los_prob[d];
        if (state != 1 && b.kappa_los[d] * std::pow(r, b.alpha_los[d]) < x)
            acc += p;
        if (state != 0 && b.kappa_nlos[d] * std::pow(r, b.alpha_nlos[d]) < x)
            acc += 1.0 - p;
    }
    const double square = 4.0 * big_r * big_r;
    return tier.density * square * acc / static_cast<double>(n);
}

} // namespace testing

#endif
