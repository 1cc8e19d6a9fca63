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

#include "hetcov/cli.hpp"

#include "hetcov/association.hpp"
#include "hetcov/montecarlo.hpp"
#include "hetcov/scenario_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace hetcov {

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field))
{
}

std::string SweepSpec::name() const
{
    switch (parameter) {
    case SweepParameter::cluster: return "cluster";
    case SweepParameter::threshold: return "T_dB";
    case SweepParameter::main_gain: return "main_gain_db";
    case SweepParameter::beamwidth: return "beamwidth_rad";
    case SweepParameter::bias: return "bias" + std::to_string(bias_tier);
    }
    return "value";
}

namespace {

double to_number(std::string_view text, const std::string& field)
{
    const auto first = text.find_first_not_of(" \t");
    const auto last = text.find_last_not_of(" \t");
    if (first == std::string_view::npos)
        throw ConfigError(field, "empty value");
    text = text.substr(first, last - first + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
        throw ConfigError(field, "not a finite number: '" + std::string(text) + "'");
    return v;
}

} // namespace

std::vector<double> parse_grid(std::string_view text)
{
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        std::vector<double> parts;
        std::size_t start = 0;
        while (true) {
            const auto colon = text.find(':', start);
            parts.push_back(to_number(text.substr(start, colon - start), "grid"));
            if (colon == std::string_view::npos)
                break;
            start = colon + 1;
        }
        if (parts.size() != 3)
            throw ConfigError("grid", "expected start:stop:step");
        const double a = parts[0], b = parts[1], step = parts[2];
        if (!(step > 0.0) || b < a)
            throw ConfigError("grid", "need step > 0 and stop >= start");
        const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9));
        if (n > 1000000)
            throw ConfigError("grid", "too many grid points");
        for (std::size_t i = 0; i <= n; ++i)
            out.push_back(a + static_cast<double>(i) * step);
    } else {
        std::size_t start = 0;
        while (true) {
            const auto comma = text.find(',', start);
            out.push_back(to_number(text.substr(start, comma - start), "grid"));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
    }
    return out;
}

SweepSpec parse_sweep(std::string_view text)
{
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError("sweep", "expected name=grid");
    const std::string name(text.substr(0, eq));
    SweepSpec spec;
    if (name == "cluster" || name == "sigma" || name == "radius")
        spec.parameter = SweepParameter::cluster;
    else if (name == "threshold")
        spec.parameter = SweepParameter::threshold;
    else if (name == "main_gain")
        spec.parameter = SweepParameter::main_gain;
    else if (name == "beamwidth")
        spec.parameter = SweepParameter::beamwidth;
    else if (name.rfind("bias.", 0) == 0) {
        spec.parameter = SweepParameter::bias;
        const double j = to_number(std::string_view(name).substr(5), "sweep.bias");
        if (j < 0.0 || j != std::floor(j))
            throw ConfigError("sweep.bias", "tier index must be a non-negative integer");
        spec.bias_tier = static_cast<std::size_t>(j);
    } else
        throw ConfigError("sweep", "unknown parameter '" + name + "'");
    try {
        spec.values = parse_grid(text.substr(eq + 1));
    } catch (const ConfigError& e) {
        throw ConfigError("sweep." + name, e.what());
    }
    if (spec.values.empty())
        throw ConfigError("sweep." + name, "empty grid");
    return spec;
}

NetworkScenario apply_sweep(const NetworkScenario& scenario, const SweepSpec& sweep, double value)
{
    NetworkScenario out = scenario;
    switch (sweep.parameter) {
    case SweepParameter::cluster:
        if (!(value > 0.0))
            throw ConfigError("sweep.cluster", "cluster scale must be positive");
        out.cluster = with_scale(out.cluster, value);
        break;
    case SweepParameter::threshold: break;
    case SweepParameter::main_gain: out.antenna.main_gain_db = value; break;
    case SweepParameter::beamwidth: out.antenna.beamwidth_rad = value; break;
    case SweepParameter::bias:
        if (sweep.bias_tier == 0) {
            if (!out.tier0)
                throw ConfigError("sweep.bias.0", "scenario has no cluster center");
            out.tier0->bias = value;
        } else {
            if (sweep.bias_tier > out.num_tiers())
                throw ConfigError("sweep.bias." + std::to_string(sweep.bias_tier), "no such tier");
            out.tiers[sweep.bias_tier - 1].bias = value;
        }
        break;
    }
    return out;
}

std::uint64_t fnv1a(std::string_view bytes)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_svg_plot(const std::string& path, const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<double>& x, const std::vector<double>& y)
{
    constexpr double width = 640, height = 420, left = 70, right = 20, top = 40, bottom = 55;
    const auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
    const auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
    double x0 = x.empty() ? 0.0 : *xmin_it, x1 = x.empty() ? 1.0 : *xmax_it;
    double y0 = y.empty() ? 0.0 : *ymin_it, y1 = y.empty() ? 1.0 : *ymax_it;
    if (x1 <= x0)
        x1 = x0 + 1.0;
    if (y1 - y0 < 1e-9) {
        y0 -= 0.5e-3;
        y1 += 0.5e-3;
    }
    const auto px = [&](double v) { return left + (v - x0) / (x1 - x0) * (width - left - right); };
    const auto py = [&](double v) { return height - bottom - (v - y0) / (y1 - y0) * (height - top - bottom); };

    std::ofstream svg(path);
    if (!svg)
        throw ConfigError("plot", "cannot write '" + path + "'");
    char buf[128];
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right << "\" height=\""
        << height - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4.0;
        const double yv = y0 + (y1 - y0) * i / 4.0;
        std::snprintf(buf, sizeof buf, "%.4g", xv);
        svg << "<text x=\"" << px(xv) << "\" y=\"" << height - bottom + 18 << "\" text-anchor=\"middle\">" << buf
            << "</text>\n";
        std::snprintf(buf, sizeof buf, "%.4g", yv);
        svg << "<text x=\"" << left - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << buf
            << "</text>\n";
    }
    svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">" << x_label
        << "</text>\n";
    svg << "<text x=\"16\" y=\"" << height / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << height / 2 << ")\">" << y_label << "</text>\n";
    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x[i]), py(y[i]));
        svg << buf;
    }
    svg << "\"/>\n</svg>\n";
}

namespace {

struct Options
{
    std::string scenario;
    std::string sweep;
    std::string thresholds;
    std::size_t trials = 100000;
    std::uint64_t seed = 1;
    bool snr = false;
    bool ppp_baseline = false;
    std::optional<double> tol;
    std::string out;
    std::size_t threads = 0;
    std::string plot;
    bool unnormalized_center = false;
    double corrupt_kappa = 1.0;
};

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void scale_kappa(NetworkScenario& scn, double factor)
{
    for (auto& t : scn.tiers) {
        for (double& k : t.balls.kappa_los)
            k *= factor;
        for (double& k : t.balls.kappa_nlos)
            k *= factor;
    }
    if (scn.tier0) {
        scn.tier0->kappa_los *= factor;
        scn.tier0->kappa_nlos *= factor;
    }
}

void require_valid(const NetworkScenario& scn)
{
    const auto violations = validate(scn);
    if (!violations.empty())
        throw ConfigError(violations.front().path, violations.front().message);
}

NetworkScenario load_base(const Options& o)
{
    if (o.scenario.empty())
        throw ConfigError("scenario", "--scenario is required");
    NetworkScenario scn;
    try {
        scn = load_scenario(o.scenario);
    } catch (const ScenarioFileError& e) {
        throw ConfigError("scenario", e.what());
    } catch (const ScenarioError& e) {
        throw ConfigError(e.field(), e.what());
    }
    if (o.ppp_baseline)
        scn.tier0.reset();
    require_valid(scn);
    return scn;
}

std::optional<SweepSpec> load_sweep(const Options& o)
{
    if (o.sweep.empty())
        return std::nullopt;
    return parse_sweep(o.sweep);
}

std::vector<double> load_thresholds(const Options& o, const std::optional<SweepSpec>& sweep, const char* fallback)
{
    if (sweep && sweep->parameter == SweepParameter::threshold) {
        if (!o.thresholds.empty())
            throw ConfigError("thresholds", "give --thresholds or --sweep threshold=..., not both");
        return sweep->values;
    }
    try {
        return parse_grid(o.thresholds.empty() ? fallback : o.thresholds);
    } catch (const ConfigError& e) {
        throw ConfigError("thresholds", e.what());
    }
}

// Sweep values other than threshold; a single NaN stands for "no sweep".
std::vector<double> outer_values(const std::optional<SweepSpec>& sweep)
{
    if (sweep && sweep->parameter != SweepParameter::threshold)
        return sweep->values;
    return {std::numeric_limits<double>::quiet_NaN()};
}

bool has_outer(const std::optional<SweepSpec>& sweep)
{
    return sweep && sweep->parameter != SweepParameter::threshold;
}

NetworkScenario at(const NetworkScenario& base, const std::optional<SweepSpec>& sweep, double value)
{
    if (!has_outer(sweep))
        return base;
    NetworkScenario scn = apply_sweep(base, *sweep, value);
    require_valid(scn);
    return scn;
}

void header(std::ostream& os, const char* command, const NetworkScenario& base, const Options& o, bool seeded)
{
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(format_scenario(base))));
    os << "# hetcov " << version << "\n";
    os << "# command: " << command << "\n";
    os << "# scenario_hash: fnv1a64:" << hash << "\n";
    os << "# cluster: " << cluster_name(base.cluster) << "\n";
    os << "# tier0: " << (base.tier0 ? "present" : "absent") << "\n";
    if (!o.sweep.empty())
        os << "# sweep: " << o.sweep << "\n";
    if (seeded) {
        os << "# seed: " << o.seed << "\n";
        os << "# trials: " << o.trials << "\n";
    }
    if (o.unnormalized_center)
        os << "# center_transform: unnormalized\n";
    if (o.corrupt_kappa != 1.0)
        os << "# corrupt_kappa: " << fmt(o.corrupt_kappa) << "\n";
}

class Output
{
public:
    explicit Output(const Options& o, std::ostream& fallback) : fallback_(fallback)
    {
        if (!o.out.empty() && o.out != "-") {
            file_.open(o.out, std::ios::binary);
            if (!file_)
                throw ConfigError("out", "cannot write '" + o.out + "'");
            use_file_ = true;
        }
    }

    std::ostream& stream() { return use_file_ ? static_cast<std::ostream&>(file_) : fallback_; }

private:
    std::ostream& fallback_;
    std::ofstream file_;
    bool use_file_ = false;
};

std::string plot_path(const Options& o, const std::string& stem)
{
    std::filesystem::create_directories(o.plot);
    return (std::filesystem::path(o.plot) / (stem + ".svg")).string();
}

std::string slug(double v)
{
    std::string s = fmt(v);
    for (char& c : s)
        if (c == '-')
            c = 'm';
        else if (c == '.')
            c = 'p';
    return s;
}

int cmd_association(const Options& o, std::ostream& stdout_stream, std::ostream& err)
{
    const NetworkScenario base = load_base(o);
    const auto sweep = load_sweep(o);
    if (sweep && sweep->parameter == SweepParameter::threshold)
        throw ConfigError("sweep", "association does not depend on the threshold");
    const double tol = o.tol.value_or(1e-9);

    std::ostringstream csv;
    header(csv, "association", base, o, false);
    const std::size_t first = base.tier0 ? 0 : 1;
    if (has_outer(sweep))
        csv << sweep->name() << ",";
    for (std::size_t j = first; j <= base.num_tiers(); ++j)
        csv << "A" << j << ",";
    for (std::size_t j = first; j <= base.num_tiers(); ++j)
        csv << "A" << j << "_los,A" << j << "_nlos,";
    csv << "total,defect,status\n";

    std::vector<double> xs;
    std::vector<std::vector<double>> marginals(base.num_tiers() + 1);
    std::size_t failures = 0;
    const auto values = outer_values(sweep);
    for (double v : values) {
        const NetworkScenario scn = at(base, sweep, v);
        const AssociationTable table = assoc_table(scn, tol);
        if (has_outer(sweep))
            csv << fmt(v) << ",";
        for (std::size_t j = first; j <= scn.num_tiers(); ++j) {
            csv << fmt(table.marginal(j)) << ",";
            marginals[j].push_back(table.marginal(j));
        }
        for (std::size_t j = first; j <= scn.num_tiers(); ++j)
            csv << fmt(table(j, LinkState::los)) << "," << fmt(table(j, LinkState::nlos)) << ",";
        csv << fmt(table.total()) << "," << fmt(table.normalization_defect()) << ",";
        if (table.converged()) {
            csv << "ok\n";
        } else {
            csv << "quadrature did not converge\n";
            ++failures;
        }
        xs.push_back(v);
    }

    Output out(o, stdout_stream);
    out.stream() << csv.str();

    if (!o.plot.empty() && has_outer(sweep))
        for (std::size_t j = first; j <= base.num_tiers(); ++j)
            write_svg_plot(plot_path(o, "association_A" + std::to_string(j)), "Association probability, tier " + std::to_string(j),
                           sweep->name(), "A" + std::to_string(j), xs, marginals[j]);

    if (failures == values.size()) {
        err << "error: association quadrature failed for every row\n";
        return exit_code::quadrature;
    }
    return exit_code::ok;
}

CoverageOptions coverage_options(const Options& o)
{
    CoverageOptions c;
    if (o.tol)
        c.tol = *o.tol;
    c.normalize_center = !o.unnormalized_center;
    c.threads = o.threads;
    return c;
}

int cmd_coverage(const Options& o, std::ostream& stdout_stream, std::ostream& err)
{
    const NetworkScenario base = load_base(o);
    const auto sweep = load_sweep(o);
    const std::vector<double> thresholds = load_thresholds(o, sweep, "-10:20:1");
    const CoverageOptions copts = coverage_options(o);

    std::ostringstream csv;
    header(csv, "coverage", base, o, false);
    const std::size_t first = base.tier0 ? 0 : 1;
    if (has_outer(sweep))
        csv << sweep->name() << ",";
    csv << "T_dB,P_C,";
    for (std::size_t j = first; j <= base.num_tiers(); ++j)
        csv << "P_C" << j << "_los,P_C" << j << "_nlos,";
    if (o.snr)
        csv << "P_C_snr,";
    csv << "status\n";

    std::size_t points = 0, failures = 0;
    for (double v : outer_values(sweep)) {
        const NetworkScenario scn = at(base, sweep, v);
        const CoverageCurve curve = total_coverage(scn, thresholds, copts);
        for (const CoveragePoint& p : curve.points) {
            if (has_outer(sweep))
                csv << fmt(v) << ",";
            csv << fmt(p.threshold_db) << "," << fmt(p.sinr) << ",";
            for (std::size_t j = first; j <= scn.num_tiers(); ++j)
                csv << fmt(p.contributions[CoverageCurve::slot(j, LinkState::los)]) << ","
                    << fmt(p.contributions[CoverageCurve::slot(j, LinkState::nlos)]) << ",";
            if (o.snr)
                csv << fmt(p.snr) << ",";
            std::string status = p.converged ? "ok" : p.error;
            std::replace(status.begin(), status.end(), ',', ';');
            csv << status << "\n";
            ++points;
            failures += p.converged ? 0 : 1;
        }
        if (!o.plot.empty()) {
            const std::string suffix = has_outer(sweep) ? "_" + sweep->name() + "_" + slug(v) : "";
            write_svg_plot(plot_path(o, "coverage_sinr" + suffix), "SINR coverage", "T (dB)", "P_C", thresholds,
                           curve.sinr());
            if (o.snr)
                write_svg_plot(plot_path(o, "coverage_snr" + suffix), "SNR coverage", "T (dB)", "P_C", thresholds,
                               curve.snr());
        }
    }

    Output out(o, stdout_stream);
    out.stream() << csv.str();
    if (points > 0 && failures == points) {
        err << "error: coverage quadrature failed at every point\n";
        return exit_code::quadrature;
    }
    return exit_code::ok;
}

int cmd_simulate(const Options& o, std::ostream& stdout_stream, std::ostream&)
{
    const NetworkScenario base = load_base(o);
    const auto sweep = load_sweep(o);
    const std::vector<double> thresholds = load_thresholds(o, sweep, "-10,-5,0,5,10");
    if (o.trials == 0)
        throw ConfigError("trials", "need at least one trial");
    SimulationOptions sopts;
    sopts.threads = o.threads;

    std::ostringstream csv;
    header(csv, "simulate", base, o, true);
    if (has_outer(sweep))
        csv << sweep->name() << ",";
    csv << "T_dB,P_C,se,n";
    if (o.snr)
        csv << ",P_C_snr,se_snr";
    csv << "\n";

    for (double v : outer_values(sweep)) {
        const NetworkScenario scn = at(base, sweep, v);
        const SimulationResult r = estimate(scn, thresholds, o.trials, o.seed, sopts);
        std::vector<double> ys;
        for (std::size_t i = 0; i < thresholds.size(); ++i) {
            const EstimateWithCI c = r.coverage(i);
            ys.push_back(c.estimate);
            if (has_outer(sweep))
                csv << fmt(v) << ",";
            csv << fmt(thresholds[i]) << "," << fmt(c.estimate) << "," << fmt(c.std_error) << "," << c.trials;
            if (o.snr) {
                const EstimateWithCI s = r.snr_coverage(i);
                csv << "," << fmt(s.estimate) << "," << fmt(s.std_error);
            }
            csv << "\n";
        }
        if (!o.plot.empty()) {
            const std::string suffix = has_outer(sweep) ? "_" + sweep->name() + "_" + slug(v) : "";
            write_svg_plot(plot_path(o, "simulated_sinr" + suffix), "Simulated SINR coverage", "T (dB)", "P_C",
                           thresholds, ys);
        }
    }

    Output out(o, stdout_stream);
    out.stream() << csv.str();
    return exit_code::ok;
}

struct Comparison
{
    std::string what;
    double analytic = 0.0;
    double simulated = 0.0;
    double se = 0.0;
    double limit = 0.0;

    double diff() const { return std::abs(analytic - simulated); }
    bool pass() const { return diff() <= limit; }
    double severity() const { return limit > 0.0 ? diff() / limit : std::numeric_limits<double>::infinity(); }
};

int cmd_validate(const Options& o, std::ostream& stdout_stream, std::ostream& err)
{
    const NetworkScenario base = load_base(o);
    if (!o.sweep.empty())
        throw ConfigError("sweep", "validate runs a single scenario");
    const std::vector<double> thresholds = load_thresholds(o, std::nullopt, "-10,-5,0,5,10");
    const double tolerance = o.tol.value_or(0.015);
    if (o.trials == 0)
        throw ConfigError("trials", "need at least one trial");

    NetworkScenario analytic_scn = base;
    if (o.corrupt_kappa != 1.0)
        scale_kappa(analytic_scn, o.corrupt_kappa);
    CoverageOptions copts = coverage_options(o);
    copts.tol = 1e-8;

    const AssociationTable table = assoc_table(analytic_scn);
    const CoverageCurve curve = total_coverage(analytic_scn, thresholds, copts);
    SimulationOptions sopts;
    sopts.threads = o.threads;
    const SimulationResult mc = estimate(base, thresholds, o.trials, o.seed, sopts);

    std::vector<Comparison> rows;
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!curve.points[i].converged) {
            err << "error: coverage quadrature failed at T=" << fmt(thresholds[i]) << " dB: " << curve.points[i].error
                << "\n";
            return exit_code::quadrature;
        }
        const EstimateWithCI e = mc.coverage(i);
        rows.push_back({"coverage T=" + fmt(thresholds[i]) + " dB", curve.points[i].sinr, e.estimate, e.std_error,
                        std::max(tolerance, 3.0 * e.std_error)});
    }
    if (!table.converged()) {
        err << "error: association quadrature did not converge\n";
        return exit_code::quadrature;
    }
    const double n = static_cast<double>(o.trials);
    for (std::size_t j = base.tier0 ? 0 : 1; j <= base.num_tiers(); ++j) {
        for (LinkState s : link_states) {
            const double a = table(j, s);
            // Binomial SE under the analytic value, so empty cells still get a band.
            const double se = std::sqrt(std::max(a * (1.0 - a), 0.0) / n);
            rows.push_back({"association A" + std::to_string(j) + "_" + to_string(s), a,
                            mc.association(j, s).estimate, se, std::max(3.0 * se, 1.0 / n)});
        }
    }

    std::ostringstream csv;
    header(csv, "validate", base, o, true);
    csv << "# tolerance: " << fmt(tolerance) << "\n";
    csv << "check,analytic,simulated,se,abs_diff,limit,result\n";
    for (const Comparison& c : rows)
        csv << c.what << "," << fmt(c.analytic) << "," << fmt(c.simulated) << "," << fmt(c.se) << ","
            << fmt(c.diff()) << "," << fmt(c.limit) << "," << (c.pass() ? "pass" : "FAIL") << "\n";

    Output out(o, stdout_stream);
    out.stream() << csv.str();

    const auto worst = std::max_element(rows.begin(), rows.end(),
                                        [](const Comparison& a, const Comparison& b) { return a.severity() < b.severity(); });
    if (worst != rows.end() && !worst->pass()) {
        err << "validation failed; worst offender: " << worst->what << " (analytic " << fmt(worst->analytic)
            << ", simulated " << fmt(worst->simulated) << ", |diff| " << fmt(worst->diff()) << " > limit "
            << fmt(worst->limit) << ")\n";
        return exit_code::validation;
    }
    err << "validation passed: " << rows.size() << " comparisons\n";
    return exit_code::ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Coverage and association analysis for clustered mmWave heterogeneous networks", "hetcov"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version);

    Options o;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--scenario", o.scenario, "Scenario file")->required();
        sub->add_flag("--ppp-baseline", o.ppp_baseline, "Drop the cluster center (PPP-distributed UEs)");
        sub->add_option("--out", o.out, "Output CSV path (stdout by default)");
        sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    };
    const auto add_sweep = [&](CLI::App* sub) {
        sub->add_option("--sweep", o.sweep,
                        "Swept parameter and grid: cluster=1:40:1, threshold=..., main_gain=..., beamwidth=..., "
                        "bias.J=...");
        sub->add_option("--plot", o.plot, "Directory for one SVG per curve");
    };
    const auto add_thresholds = [&](CLI::App* sub) {
        sub->add_option("--thresholds", o.thresholds, "SINR thresholds in dB, start:stop:step or a,b,c");
    };
    const auto add_mc = [&](CLI::App* sub) {
        sub->add_option("--trials", o.trials, "Monte Carlo trials");
        sub->add_option("--seed", o.seed, "Random seed");
    };
    const auto add_debug = [&](CLI::App* sub) {
        sub->add_flag("--unnormalized-center", o.unnormalized_center,
                      "Use the literal center-interference transform without the tail-mass normalization");
    };

    CLI::App* assoc = app.add_subcommand("association", "Association probabilities");
    add_common(assoc);
    add_sweep(assoc);
    assoc->add_option("--tol", o.tol, "Relative quadrature tolerance");

    CLI::App* cov = app.add_subcommand("coverage", "Analytical SINR coverage");
    add_common(cov);
    add_sweep(cov);
    add_thresholds(cov);
    add_debug(cov);
    cov->add_flag("--snr", o.snr, "Also emit the SNR-only curve");
    cov->add_option("--tol", o.tol, "Absolute tolerance of the outer integral");

    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo SINR coverage");
    add_common(sim);
    add_sweep(sim);
    add_thresholds(sim);
    add_mc(sim);
    sim->add_flag("--snr", o.snr, "Also emit the SNR-only estimate");

    CLI::App* val = app.add_subcommand("validate", "Compare analytical and Monte Carlo results");
    add_common(val);
    add_thresholds(val);
    add_mc(val);
    add_debug(val);
    val->add_option("--tol", o.tol, "Absolute agreement tolerance for coverage (default 0.015)");
    val->add_option("--corrupt-kappa", o.corrupt_kappa,
                    "Debug: scale every intercept by this factor in the analytical pipeline only");

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::CallForVersion&) {
        out << version << "\n";
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    }

    try {
        if (assoc->parsed())
            return cmd_association(o, out, err);
        if (cov->parsed())
            return cmd_coverage(o, out, err);
        if (sim->parsed())
            return cmd_simulate(o, out, err);
        return cmd_validate(o, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_code::config;
    } catch (const QuadratureError& e) {
        err << "quadrature error: " << e.what() << "\n";
        return exit_code::quadrature;
    }
}

} // namespace hetcov
