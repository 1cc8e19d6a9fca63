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

#include "hetcov/model.hpp"

#include <cmath>
#include <string>

namespace hetcov {

const char* to_string(LinkState s)
{
    return s == LinkState::los ? "LOS" : "NLOS";
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear)
{
    return 10.0 * std::log10(linear);
}

double dbw_to_watts(double dbw)
{
    return db_to_linear(dbw);
}

double dbm_to_watts(double dbm)
{
    return db_to_linear(dbm - 30.0);
}

double free_space_intercept(double carrier_hz)
{
    const double a = 4.0 * pi * carrier_hz / speed_of_light;
    return a * a;
}

double cluster_scale(const ClusterModel& cluster)
{
    if (const auto* t = std::get_if<Thomas>(&cluster))
        return t->sigma;
    return std::get<Matern>(cluster).radius;
}

ClusterModel with_scale(const ClusterModel& cluster, double scale)
{
    if (std::holds_alternative<Thomas>(cluster))
        return Thomas{scale};
    return Matern{scale};
}

const char* cluster_name(const ClusterModel& cluster)
{
    return std::holds_alternative<Thomas>(cluster) ? "thomas" : "matern";
}

double NetworkScenario::power_watts(std::size_t k) const
{
    return k == 0 ? tier0.value().power_watts() : tier(k).power_watts();
}

double NetworkScenario::bias(std::size_t k) const
{
    return k == 0 ? tier0.value().bias : tier(k).bias;
}

double NetworkScenario::noise_watts(std::size_t k) const
{
    if (noise_dbm.size() == 1)
        return dbm_to_watts(noise_dbm.front());
    return dbm_to_watts(noise_dbm.at(k));
}

namespace {

bool positive(double v)
{
    return std::isfinite(v) && v > 0.0;
}

bool probability(double v)
{
    return std::isfinite(v) && v >= 0.0 && v <= 1.0;
}

class Checker
{
public:
    explicit Checker(std::vector<Violation>& out) : out_(out) {}

    void require(bool ok, const std::string& path, const std::string& message)
    {
        if (!ok)
            out_.push_back({path, message});
    }

private:
    std::vector<Violation>& out_;
};

void check_list(Checker& c, const std::string& path, const std::vector<double>& v, std::size_t d,
                bool (*pred)(double), const char* what)
{
    c.require(v.size() == d, path, "expected " + std::to_string(d) + " entries, got " + std::to_string(v.size()));
    bool ok = true;
    for (double x : v)
        ok = ok && pred(x);
    c.require(ok, path, what);
}

void check_balls(Checker& c, const std::string& path, const BallSpec& b)
{
    const std::size_t d = b.radii.size();
    c.require(d >= 1, path + ".radii", "at least one ball is required");
    bool positive_radii = true;
    bool increasing = true;
    for (std::size_t i = 0; i < d; ++i) {
        positive_radii = positive_radii && positive(b.radii[i]);
        if (i > 0)
            increasing = increasing && b.radii[i] > b.radii[i - 1];
    }
    c.require(positive_radii, path + ".radii", "radii must be positive and finite");
    c.require(increasing, path + ".radii", "radii must be strictly increasing");
    check_list(c, path + ".los_prob", b.los_prob, d, probability, "LOS probabilities must lie in [0, 1]");
    check_list(c, path + ".alpha_los", b.alpha_los, d, positive, "path-loss exponents must be positive");
    check_list(c, path + ".alpha_nlos", b.alpha_nlos, d, positive, "path-loss exponents must be positive");
    check_list(c, path + ".kappa_los", b.kappa_los, d, positive, "path-loss intercepts must be positive");
    check_list(c, path + ".kappa_nlos", b.kappa_nlos, d, positive, "path-loss intercepts must be positive");
}

} // namespace

std::vector<Violation> validate(const NetworkScenario& scenario)
{
    std::vector<Violation> out;
    Checker c(out);

    c.require(!scenario.tiers.empty(), "tiers", "at least one PPP tier is required");
    for (std::size_t k = 0; k < scenario.tiers.size(); ++k) {
        const auto& t = scenario.tiers[k];
        const std::string p = "tiers[" + std::to_string(k + 1) + "]";
        c.require(std::isfinite(t.power_dbw), p + ".power_dbw", "power must be finite");
        c.require(positive(t.bias), p + ".bias", "bias must be positive");
        c.require(positive(t.density), p + ".density", "density must be positive");
        check_balls(c, p + ".balls", t.balls);
    }

    if (scenario.tier0) {
        const auto& t0 = *scenario.tier0;
        c.require(std::isfinite(t0.power_dbw), "tier0.power_dbw", "power must be finite");
        c.require(positive(t0.bias), "tier0.bias", "bias must be positive");
        c.require(probability(t0.los_prob), "tier0.los_prob", "LOS probability must lie in [0, 1]");
        c.require(positive(t0.alpha_los), "tier0.alpha_los", "path-loss exponent must be positive");
        c.require(positive(t0.alpha_nlos), "tier0.alpha_nlos", "path-loss exponent must be positive");
        c.require(positive(t0.kappa_los), "tier0.kappa_los", "path-loss intercept must be positive");
        c.require(positive(t0.kappa_nlos), "tier0.kappa_nlos", "path-loss intercept must be positive");
    }

    c.require(positive(cluster_scale(scenario.cluster)), "cluster.scale", "cluster scale must be positive");

    const auto& a = scenario.antenna;
    c.require(std::isfinite(a.main_gain_db), "antenna.main_gain_db", "main lobe gain must be finite");
    c.require(std::isfinite(a.side_gain_db), "antenna.side_gain_db", "side lobe gain must be finite");
    c.require(!(a.main_gain_db < a.side_gain_db), "antenna.main_gain_db", "main lobe gain must not be below side lobe gain");
    c.require(std::isfinite(a.beamwidth_rad) && a.beamwidth_rad > 0.0 && a.beamwidth_rad < 2.0 * pi,
              "antenna.beamwidth_rad", "beamwidth must lie in (0, 2 pi)");

    const std::size_t expected_noise = scenario.tiers.size() + 1;
    c.require(scenario.noise_dbm.size() == 1 || scenario.noise_dbm.size() == expected_noise, "noise_dbm",
              "give one shared noise level or one per tier 0.." + std::to_string(scenario.tiers.size()));
    bool finite_noise = true;
    for (double n : scenario.noise_dbm)
        finite_noise = finite_noise && std::isfinite(n);
    c.require(finite_noise, "noise_dbm", "noise levels must be finite");

    return out;
}

std::array<GainLevel, 3> gain_distribution(const AntennaPattern& antenna)
{
    const double big = db_to_linear(antenna.main_gain_db);
    const double small = db_to_linear(antenna.side_gain_db);
    const double p = antenna.beamwidth_rad / (2.0 * pi);
    const double q = (2.0 * pi - antenna.beamwidth_rad) / (2.0 * pi);
    return {{
        {big * big, p * p},
        {big * small, 2.0 * p * q},
        {small * small, q * q},
    }};
}

double serving_gain(const AntennaPattern& antenna)
{
    const double big = db_to_linear(antenna.main_gain_db);
    return big * big;
}

NetworkScenario reference_scenario(const ClusterModel& cluster)
{
    const double kappa = free_space_intercept(28e9);

    NetworkScenario s;
    s.cluster = cluster;

    TierParams pico;
    pico.power_dbw = 3.0;
    pico.bias = 1.0;
    pico.density = 1e-4;
    pico.balls = BallSpec{{40.0, 60.0}, {1.0, 0.0}, {2.0, 2.0}, {4.0, 4.0}, {kappa, kappa}, {kappa, kappa}};

    TierParams micro;
    micro.power_dbw = 23.0;
    micro.bias = 1.0;
    micro.density = 1e-5;
    micro.balls = BallSpec{{50.0, 200.0}, {0.8, 0.2}, {2.0, 2.0}, {4.0, 4.0}, {kappa, kappa}, {kappa, kappa}};

    s.tiers = {pico, micro};

    Tier0Params center;
    center.power_dbw = pico.power_dbw;
    center.bias = pico.bias;
    center.los_prob = 1.0;
    center.alpha_los = 2.0;
    center.alpha_nlos = 4.0;
    center.kappa_los = kappa;
    center.kappa_nlos = kappa;
    s.tier0 = center;

    s.antenna = AntennaPattern{10.0, -10.0, pi / 6.0};
    s.noise_dbm = {-74.0};
    return s;
}

} // namespace hetcov
