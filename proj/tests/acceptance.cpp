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

// Acceptance checks 1-9. Prints one line per criterion:
//   criterion N: PASS|FAIL  <summary>
// Arguments select criteria (default: all). Exit status is 0 iff every
// selected criterion passes.

#include "hetcov/association.hpp"
#include "hetcov/cli.hpp"
#include "hetcov/coverage.hpp"
#include "hetcov/montecarlo.hpp"
#include "hetcov/pathloss.hpp"

#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace hetcov;

namespace {

constexpr std::uint64_t seed = 20240917;
constexpr std::size_t trials = 100000;

struct Verdict
{
    bool pass = true;
    std::ostringstream detail;
    std::string summary;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << "    failed: " << what << "\n";
        }
    }
};

template <class... Args>
std::string fmt(const char* f, Args... args)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

ClusterModel cluster(bool thomas, double scale)
{
    return thomas ? ClusterModel{Thomas{scale}} : ClusterModel{Matern{scale}};
}

std::vector<double> grid(double a, double b, double step)
{
    std::vector<double> out;
    for (double v = a; v <= b + 1e-9; v += step)
        out.push_back(v);
    return out;
}

// 1. Analytic coverage against Monte Carlo.
void criterion1(Verdict& v)
{
    const std::vector<double> th{-10, -5, 0, 5, 10};
    double worst = 0.0;
    for (bool thomas : {true, false})
        for (double scale : {5.0, 20.0}) {
            const NetworkScenario s = reference_scenario(cluster(thomas, scale));
            const CoverageCurve c = total_coverage(s, th);
            const SimulationResult mc = estimate(s, th, trials, seed);
            for (std::size_t i = 0; i < th.size(); ++i) {
                const EstimateWithCI e = mc.coverage(i);
                const double diff = std::abs(c.points[i].sinr - e.estimate);
                const double limit = std::max(0.015, 3.0 * e.std_error);
                worst = std::max(worst, diff / limit);
                v.detail << fmt("    %s %4.0f  T=%5.1f dB  analytic %.5f  mc %.5f  se %.5f\n", cluster_name(s.cluster),
                                scale, th[i], c.points[i].sinr, e.estimate, e.std_error);
                v.require(c.points[i].converged && diff <= limit,
                          std::string(cluster_name(s.cluster)) + fmt(" scale %g T %g dB", scale, th[i]));
            }
        }
    v.summary = fmt("20 points, worst |diff|/limit = %.3f (n=1e5)", worst);
}

// 2. Association normalization and agreement with Monte Carlo.
void criterion2(Verdict& v)
{
    const std::vector<double> none{};
    double worst_defect = 0.0, worst_z = 0.0;
    for (bool thomas : {true, false})
        for (double scale : {5.0, 20.0}) {
            const NetworkScenario s = reference_scenario(cluster(thomas, scale));
            const AssociationTable t = assoc_table(s);
            worst_defect = std::max(worst_defect, std::abs(t.total() - 1.0));
            v.require(std::abs(t.total() - 1.0) <= 1e-4, fmt("normalization scale %g", scale));
            const SimulationResult mc = estimate(s, none, trials, seed + 1);
            for (std::size_t j = 0; j <= s.num_tiers(); ++j)
                for (LinkState st : link_states) {
                    const double a = t(j, st);
                    const double f = mc.association(j, st).estimate;
                    const double se = std::sqrt(a * (1.0 - a) / trials);
                    const double diff = std::abs(a - f);
                    if (se > 0.0)
                        worst_z = std::max(worst_z, diff / se);
                    v.detail << fmt("    %s %4.0f  A%zu_%s  analytic %.5f  mc %.5f  se %.5f\n", cluster_name(s.cluster),
                                    scale, j, to_string(st), a, f, se);
                    v.require(diff <= 3.0 * se, fmt("A%zu_%s scale %g", j, to_string(st), scale));
                }
        }
    // without a center the table sums to the probability of being served
    NetworkScenario ppp = reference_scenario(Thomas{10.0});
    ppp.tier0.reset();
    const AssociationTable tp = assoc_table(ppp);
    v.require(std::abs(tp.normalization_defect()) <= 1e-4, "PPP baseline normalization");
    v.summary = fmt("max |sum-1| = %.2e, max |diff|/se = %.2f", worst_defect, worst_z);
}

// 3. A1/A2 crossover for Thomas clusters.
void criterion3(Verdict& v)
{
    std::vector<double> crossings;
    double prev_sigma = 1.0;
    double prev = 0.0;
    for (double sigma : grid(1.0, 40.0, 0.25)) {
        const AssociationTable t = assoc_table(reference_scenario(Thomas{sigma}));
        const double d = t.marginal(1) - t.marginal(2);
        if (sigma > 1.0 && (d > 0.0) != (prev > 0.0))
            crossings.push_back(prev_sigma + (sigma - prev_sigma) * prev / (prev - d));
        prev = d;
        prev_sigma = sigma;
    }
    v.require(crossings.size() == 1, fmt("exactly one crossing (found %zu)", crossings.size()));
    if (!crossings.empty()) {
        v.require(crossings.front() >= 28.0 && crossings.front() <= 40.0, "crossing inside [28, 40]");
        v.summary = fmt("%zu crossing(s), first at sigma = %.2f", crossings.size(), crossings.front());
    } else {
        v.summary = "no crossing";
    }
}

// 4. Monotonicity suite.
void criterion4(Verdict& v)
{
    constexpr double slack = 1e-6;
    std::size_t violations = 0, checks = 0;
    const auto check = [&](bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++violations;
            v.require(false, what);
        }
    };

    const std::vector<double> th = grid(-15.0, 15.0, 1.0);
    for (bool thomas : {true, false})
        for (double scale : {5.0, 20.0, 40.0}) {
            const CoverageCurve c = total_coverage(reference_scenario(cluster(thomas, scale)), th);
            for (std::size_t i = 1; i < th.size(); ++i)
                check(c.points[i].sinr <= c.points[i - 1].sinr + slack, fmt("P_C vs T at scale %g, T %g", scale, th[i]));
        }

    const std::vector<double> t2{0.0, 5.0};
    const std::vector<double> scales = grid(1.0, 40.0, 1.0);
    for (bool thomas : {true, false}) {
        std::vector<double> prev{2.0, 2.0};
        double prev_a0 = 2.0;
        for (double scale : scales) {
            const NetworkScenario s = reference_scenario(cluster(thomas, scale));
            const CoverageCurve c = total_coverage(s, t2);
            for (std::size_t i = 0; i < t2.size(); ++i) {
                check(c.points[i].sinr <= prev[i] + slack, fmt("P_C vs scale at %g (T %g)", scale, t2[i]));
                prev[i] = c.points[i].sinr;
            }
            const double a0 = assoc_table(s).marginal(0);
            check(a0 <= prev_a0 + slack, fmt("A0 vs scale at %g", scale));
            prev_a0 = a0;
        }
    }
    v.summary = fmt("%zu checks, %zu violations", checks, violations);
}

// 5. Interference significance.
void criterion5(Verdict& v)
{
    const std::vector<double> th{0.0};
    std::ostringstream sum;
    for (bool thomas : {true, false}) {
        double gaps[2] = {0, 0};
        double mc_gap[2] = {0, 0}, mc_se[2] = {0, 0};
        int i = 0;
        for (double scale : {5.0, 20.0}) {
            const NetworkScenario s = reference_scenario(cluster(thomas, scale));
            const CoveragePoint p = total_coverage(s, th).points[0];
            gaps[i] = p.snr - p.sinr;
            // per-trial paired difference SNR-covered minus SINR-covered is a Bernoulli
            const SimulationResult mc = estimate(s, th, trials, seed + 5);
            const double d = double(mc.snr_successes[0] - mc.sinr_successes[0]) / trials;
            mc_gap[i] = d;
            mc_se[i] = std::sqrt(d * (1 - d) / trials);
            v.detail << "    " << (thomas ? "thomas" : "matern")
                     << fmt(" scale %2.0f  SINR %.5f  SNR %.5f  gap %.5f", scale, p.sinr, p.snr, gaps[i])
                     << fmt("  mc gap %.5f (se %.5f)\n", mc_gap[i], mc_se[i]);
            ++i;
        }
        const std::string name = thomas ? "thomas" : "matern";
        v.require(gaps[0] >= 0.01, name + fmt(" gap at scale 5 is %.5f < 0.01", gaps[0]));
        const double se_diff = std::hypot(mc_se[0], mc_se[1]);
        v.require(gaps[0] >= gaps[1], name + fmt(" analytic gap(5) %.5f < gap(20) %.5f", gaps[0], gaps[1]));
        v.require(mc_gap[0] - mc_gap[1] >= -3.0 * se_diff,
                  name + fmt(" mc gap(5) - gap(20) = %.5f below -3 se (%.5f)", mc_gap[0] - mc_gap[1], -3.0 * se_diff));
        sum << name << fmt(" gap(5)=%.4f gap(20)=%.4f; ", gaps[0], gaps[1]);
    }
    v.summary = sum.str() + "required gap(5) >= 0.01 and gap(5) >= gap(20)";
}

// 6. Clustered UEs beat PPP UEs.
void criterion6(Verdict& v)
{
    const std::vector<double> th = grid(-10.0, 20.0, 1.0);
    double smallest = 1.0;
    for (bool thomas : {true, false})
        for (double scale : {5.0, 20.0, 40.0}) {
            const NetworkScenario pcp = reference_scenario(cluster(thomas, scale));
            NetworkScenario ppp = pcp;
            ppp.tier0.reset();
            const CoverageCurve a = total_coverage(pcp, th), b = total_coverage(ppp, th);
            for (std::size_t i = 0; i < th.size(); ++i) {
                smallest = std::min(smallest, a.points[i].sinr - b.points[i].sinr);
                v.require(a.points[i].sinr > b.points[i].sinr, fmt("scale %g T %g", scale, th[i]));
            }
        }
    v.summary = fmt("smallest margin PCP - PPP = %.4f over 186 points", smallest);
}

// 7. Antenna sensitivity, analytic and simulated.
void criterion7(Verdict& v)
{
    const std::vector<double> th = grid(-10.0, 20.0, 1.0);
    const std::vector<double> mc_th = grid(-10.0, 20.0, 5.0);
    double worst_analytic = 1.0, worst_z = 1e9;
    for (bool thomas : {true, false}) {
        const NetworkScenario base = reference_scenario(cluster(thomas, 10.0));
        NetworkScenario m20 = base, wide = base;
        m20.antenna.main_gain_db = 20.0;
        wide.antenna.beamwidth_rad = pi / 3.0;
        const CoverageCurve c10 = total_coverage(base, th), c20 = total_coverage(m20, th), cw = total_coverage(wide, th);
        for (std::size_t i = 0; i < th.size(); ++i) {
            worst_analytic = std::min({worst_analytic, c20.points[i].sinr - c10.points[i].sinr,
                                       c10.points[i].sinr - cw.points[i].sinr});
            v.require(c20.points[i].sinr >= c10.points[i].sinr, fmt("analytic M=20 >= M=10 at T %g", th[i]));
            v.require(c10.points[i].sinr >= cw.points[i].sinr, fmt("analytic pi/6 >= pi/3 at T %g", th[i]));
        }
        if (!thomas)
            continue;
        const SimulationResult r10 = estimate(base, mc_th, trials, seed + 7);
        const SimulationResult r20 = estimate(m20, mc_th, trials, seed + 8);
        const SimulationResult rw = estimate(wide, mc_th, trials, seed + 9);
        for (std::size_t i = 0; i < mc_th.size(); ++i) {
            const auto a = r10.coverage(i), b = r20.coverage(i), w = rw.coverage(i);
            const double se1 = std::hypot(a.std_error, b.std_error), se2 = std::hypot(a.std_error, w.std_error);
            if (se1 > 0)
                worst_z = std::min(worst_z, (b.estimate - a.estimate) / se1);
            if (se2 > 0)
                worst_z = std::min(worst_z, (a.estimate - w.estimate) / se2);
            v.require(b.estimate - a.estimate >= -3.0 * se1, fmt("mc M=20 >= M=10 at T %g", mc_th[i]));
            v.require(a.estimate - w.estimate >= -3.0 * se2, fmt("mc pi/6 >= pi/3 at T %g", mc_th[i]));
            v.detail << fmt("    T %5.1f  mc M10 %.5f  M20 %.5f  pi/3 %.5f\n", mc_th[i], a.estimate, b.estimate, w.estimate);
        }
    }
    v.summary = fmt("smallest analytic margin %.2e, smallest mc margin %.2f se", worst_analytic, worst_z);
}

// 8. Oracle identities.
void criterion8(Verdict& v)
{
    const NetworkScenario s = reference_scenario(Thomas{10.0});

    // Lambda vs 2-D area Monte Carlo
    Rng rng = make_stream(seed, 0, 8);
    std::uniform_real_distribution<double> u(0.3, 1.0);
    double worst_lambda = 0.0;
    for (int probe = 0; probe < 20; ++probe) {
        const std::size_t k = 1 + probe % 2;
        const TierParams& t = s.tier(k);
        const double rho = u(rng) * t.balls.outage_radius();
        const double alpha = probe % 4 < 2 ? 2.0 : 4.0;
        const double x = t.balls.kappa_los[0] * std::pow(rho, alpha);
        const double oracle = testing::area_oracle(t, x, -1, 10'000'000, seed + probe);
        const double rel = std::abs(intensity(t, x) - oracle) / oracle;
        worst_lambda = std::max(worst_lambda, rel);
        v.require(rel <= 0.005, fmt("Lambda probe tier %zu x %.4g", k, x));
    }

    // pdf = -dCCDF/dx
    double worst_pdf = 0.0;
    const auto pdf_check = [&](double pdf, double fd, const std::string& what) {
        if (pdf == 0.0) {
            v.require(std::abs(fd) < 1e-300 || std::abs(fd) < 1e-12, what + " (zero pdf)");
            return;
        }
        const double rel = std::abs(pdf - fd) / std::abs(pdf);
        worst_pdf = std::max(worst_pdf, rel);
        v.require(rel <= 1e-6, what);
    };
    for (std::size_t k = 1; k <= 2; ++k)
        for (LinkState st : link_states) {
            const TierParams& t = s.tier(k);
            const double hi = support_bounds(t, st).hi;
            const auto kinks = intensity_breakpoints(t, st);
            for (int i = 1; i < 50; ++i) {
                const double x = hi * i / 50.0;
                const double h = x * 1e-5;
                if (std::any_of(kinks.begin(), kinks.end(), [&](double b) { return std::abs(b - x) < 4 * h; }))
                    continue;
                const double fd = (ccdf_tier_state(t, st, x - h) - ccdf_tier_state(t, st, x + h)) / (2 * h);
                pdf_check(pdf_tier_state(t, st, x), fd, fmt("tier %zu pdf at %.4g", k, x));
            }
        }
    for (bool thomas : {true, false}) {
        const ClusterModel c = cluster(thomas, 20.0);
        Tier0Params t0 = *s.tier0;
        t0.los_prob = 0.6;
        for (LinkState st : link_states)
            for (int i = 1; i < 40; ++i) {
                const double y = (thomas ? 80.0 : 20.0) * i / 40.0;
                const double x = center_path_loss(t0, y, st);
                const double h = x * 1e-5;
                const double fd = (ccdf_L0_state(t0, c, st, x - h) - ccdf_L0_state(t0, c, st, x + h)) / (2 * h);
                pdf_check(pdf_L0_state(t0, c, st, x), fd, fmt("center pdf at y %.3g", y));
            }
    }

    // transforms at mu = 0
    double worst_laplace = 0.0;
    for (bool thomas : {true, false}) {
        const NetworkScenario sc = reference_scenario(cluster(thomas, 15.0));
        for (std::size_t j = 0; j <= 2; ++j)
            for (LinkState st : link_states)
                for (double l : {1e6, 1e8, 1e10, 1e13}) {
                    const CoverageContext ctx = make_context(sc, j, st, l, 0.0);
                    for (std::size_t k = 1; k <= 2; ++k)
                        worst_laplace = std::max(worst_laplace, std::abs(laplace_tier_interference(sc, ctx, k) - 1.0));
                    worst_laplace = std::max(worst_laplace, std::abs(laplace_center_interference(sc, ctx) - 1.0));
                }
    }
    v.require(worst_laplace <= 1e-10, "Laplace transforms at mu = 0");

    // nearest-distance KS
    const double lambda = 1e-4, window = 600.0;
    std::vector<double> nearest;
    for (std::uint64_t i = 0; nearest.size() < 10000; ++i) {
        Rng r = make_stream(seed, i, 9);
        const auto pts = sample_ppp(lambda, window, r);
        if (pts.empty())
            continue;
        double best = window;
        for (const auto& p : pts)
            best = std::min(best, p.norm());
        nearest.push_back(best);
    }
    std::sort(nearest.begin(), nearest.end());
    const double p_any = 1.0 - std::exp(-lambda * pi * window * window);
    double d = 0.0;
    const double n = double(nearest.size());
    for (std::size_t i = 0; i < nearest.size(); ++i) {
        const double cdf = (1.0 - std::exp(-lambda * pi * nearest[i] * nearest[i])) / p_any;
        d = std::max({d, std::abs(cdf - i / n), std::abs(cdf - (i + 1) / n)});
    }
    const double critical = 1.628 / std::sqrt(n);
    v.require(d <= critical, "KS nearest distance");

    v.summary = fmt("Lambda max rel %.2e; pdf max rel %.2e; |L(0)-1| max %.1e; KS D=%.4f", worst_lambda, worst_pdf,
                    worst_laplace, d) +
                fmt(" (crit %.4f)", critical);
}

// 9. Determinism of the simulate command.
void criterion9(Verdict& v)
{
    const std::string file = (testing::scenario_dir() / "table2.scenario").string();
    const auto sim = [&](const char* threads) {
        std::ostringstream out, err;
        const int code = run_cli({"hetcov", "simulate", "--scenario", file, "--thresholds", "-10,-5,0,5,10", "--trials",
                                  "100000", "--seed", "7", "--snr", "--threads", threads},
                                 out, err);
        if (code != 0)
            v.require(false, "simulate exit code " + std::to_string(code) + ": " + err.str());
        return out.str();
    };
    const std::string a = sim("1"), b = sim("1"), c = sim("8");
    v.require(!a.empty(), "non-empty output");
    v.require(a == b, "byte-identical across runs");
    v.require(a == c, "byte-identical across 1 vs 8 threads");
    char hash[40];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(a)));
    v.summary = fmt("3 runs of n=1e5, %zu bytes, fnv1a64 ", a.size()) + hash;
}

} // namespace

int main(int argc, char** argv)
{
    const std::map<int, std::pair<const char*, std::function<void(Verdict&)>>> criteria{
        {1, {"analytic coverage vs Monte Carlo", criterion1}},
        {2, {"association normalization and MC agreement", criterion2}},
        {3, {"A1/A2 crossover", criterion3}},
        {4, {"monotonicity suite", criterion4}},
        {5, {"interference significance", criterion5}},
        {6, {"PCP beats PPP baseline", criterion6}},
        {7, {"antenna sensitivity", criterion7}},
        {8, {"oracle identities", criterion8}},
        {9, {"determinism", criterion9}},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.push_back(std::atoi(argv[i]));
    if (selected.empty())
        for (const auto& [n, _] : criteria)
            selected.push_back(n);

    bool all = true;
    for (int n : selected) {
        const auto it = criteria.find(n);
        if (it == criteria.end()) {
            std::cout << "criterion " << n << ": FAIL  unknown criterion\n";
            all = false;
            continue;
        }
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            it->second.second(v);
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "criterion " << n << ": " << (v.pass ? "PASS" : "FAIL") << "  " << it->second.first << " | "
                  << v.summary << fmt("  [%.1fs]", secs) << "\n"
                  << v.detail.str() << std::flush;
        all = all && v.pass;
    }
    return all ? 0 : 1;
}
