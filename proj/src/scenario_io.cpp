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

#include "hetcov/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace hetcov {

ScenarioError::ScenarioError(std::string field, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (field.empty() ? message : field + ": " + message)),
      field_(std::move(field)), line_(line)
{
}

namespace {

struct Entry
{
    std::string value;
    int line = 0;
    bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

double parse_number(std::string_view text, const std::string& field, int line)
{
    text = trim(text);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty())
        throw ScenarioError(field, line, "not a number: '" + std::string(text) + "'");
    return value;
}

std::vector<double> parse_list(std::string_view text, const std::string& field, int line)
{
    std::vector<double> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_number(text.substr(0, comma), field, line));
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

class Document
{
public:
    explicit Document(std::string_view text)
    {
        std::string current;
        int line_no = 0;
        std::istringstream in{std::string(text)};
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string_view line = raw;
            const auto comment = line.find_first_of("#;");
            if (comment != std::string_view::npos)
                line = line.substr(0, comment);
            line = trim(line);
            if (line.empty())
                continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ScenarioError("", line_no, "unterminated section header");
                current = lower(trim(line.substr(1, line.size() - 2)));
                if (current.empty())
                    throw ScenarioError("", line_no, "empty section name");
                if (!sections_.emplace(current, Section{}).second)
                    throw ScenarioError(current, line_no, "duplicate section");
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ScenarioError(current, line_no, "expected key = value");
            if (current.empty())
                throw ScenarioError("", line_no, "key outside of any section");
            const std::string key = lower(trim(line.substr(0, eq)));
            const std::string_view value = trim(line.substr(eq + 1));
            if (key.empty())
                throw ScenarioError(current, line_no, "empty key");
            if (!sections_[current].emplace(key, Entry{std::string(value), line_no}).second)
                throw ScenarioError(current + "." + key, line_no, "duplicate key");
        }
    }

    bool has_section(const std::string& name) const { return sections_.count(name) > 0; }

    Section* section(const std::string& name)
    {
        auto it = sections_.find(name);
        return it == sections_.end() ? nullptr : &it->second;
    }

    std::vector<std::string> section_names() const
    {
        std::vector<std::string> out;
        for (const auto& [name, _] : sections_)
            out.push_back(name);
        return out;
    }

    /// Any key nobody consumed is a typo or an unsupported field.
    void reject_unused() const
    {
        for (const auto& [name, section] : sections_)
            for (const auto& [key, entry] : section)
                if (!entry.used)
                    throw ScenarioError(name + "." + key, entry.line, "unknown key");
    }

private:
    std::map<std::string, Section> sections_;
};

class SectionReader
{
public:
    SectionReader(Section& section, std::string name) : section_(section), name_(std::move(name)) {}

    std::optional<double> number(const std::string& key)
    {
        Entry* e = find(key);
        if (!e)
            return std::nullopt;
        return parse_number(e->value, path(key), e->line);
    }

    double required_number(const std::string& key)
    {
        auto v = number(key);
        if (!v)
            throw ScenarioError(path(key), 0, "missing required key");
        return *v;
    }

    std::optional<std::vector<double>> list(const std::string& key)
    {
        Entry* e = find(key);
        if (!e)
            return std::nullopt;
        return parse_list(e->value, path(key), e->line);
    }

    std::vector<double> required_list(const std::string& key)
    {
        auto v = list(key);
        if (!v)
            throw ScenarioError(path(key), 0, "missing required key");
        return *v;
    }

    std::optional<std::string> text(const std::string& key)
    {
        Entry* e = find(key);
        if (!e)
            return std::nullopt;
        return lower(e->value);
    }

    int line(const std::string& key) const
    {
        auto it = section_.find(key);
        return it == section_.end() ? 0 : it->second.line;
    }

    std::string path(const std::string& key) const { return name_ + "." + key; }

private:
    Entry* find(const std::string& key)
    {
        auto it = section_.find(key);
        if (it == section_.end())
            return nullptr;
        it->second.used = true;
        return &it->second;
    }

    Section& section_;
    std::string name_;
};

// Broadcast a single exponent/intercept to every ball.
std::vector<double> per_ball(std::optional<std::vector<double>> v, std::size_t balls, double fallback)
{
    if (!v)
        return std::vector<double>(balls, fallback);
    if (v->size() == 1 && balls > 1)
        return std::vector<double>(balls, v->front());
    return *v;
}

std::string format_list(const std::vector<double>& v)
{
    std::ostringstream out;
    out.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i)
        out << (i ? ", " : "") << v[i];
    return out.str();
}

std::string format_number(double v)
{
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

} // namespace

NetworkScenario parse_scenario(std::string_view text)
{
    Document doc(text);
    NetworkScenario scenario;

    double carrier_ghz = 28.0;
    if (Section* s = doc.section("scenario")) {
        SectionReader r(*s, "scenario");
        if (auto v = r.number("carrier_ghz"))
            carrier_ghz = *v;
        if (auto v = r.list("noise_dbm"))
            scenario.noise_dbm = *v;
    }
    if (!(carrier_ghz > 0.0))
        throw ScenarioError("scenario.carrier_ghz", 0, "carrier frequency must be positive");
    const double default_kappa = free_space_intercept(carrier_ghz * 1e9);

    {
        Section* s = doc.section("cluster");
        if (!s)
            throw ScenarioError("cluster", 0, "missing [cluster] section");
        SectionReader r(*s, "cluster");
        const auto type = r.text("type");
        if (!type)
            throw ScenarioError("cluster.type", 0, "missing required key");
        std::optional<double> scale = r.number("scale");
        const std::optional<double> sigma = r.number("sigma");
        const std::optional<double> radius = r.number("radius");
        if (*type == "thomas") {
            if (radius)
                throw ScenarioError("cluster.radius", r.line("radius"), "radius applies to matern clusters");
            scale = scale ? scale : sigma;
            if (!scale)
                throw ScenarioError("cluster.scale", 0, "missing required key");
            scenario.cluster = Thomas{*scale};
        } else if (*type == "matern") {
            if (sigma)
                throw ScenarioError("cluster.sigma", r.line("sigma"), "sigma applies to thomas clusters");
            scale = scale ? scale : radius;
            if (!scale)
                throw ScenarioError("cluster.scale", 0, "missing required key");
            scenario.cluster = Matern{*scale};
        } else {
            throw ScenarioError("cluster.type", r.line("type"), "expected 'thomas' or 'matern'");
        }
    }

    if (Section* s = doc.section("antenna")) {
        SectionReader r(*s, "antenna");
        if (auto v = r.number("main_gain_db"))
            scenario.antenna.main_gain_db = *v;
        if (auto v = r.number("side_gain_db"))
            scenario.antenna.side_gain_db = *v;
        const auto rad = r.number("beamwidth_rad");
        const auto deg = r.number("beamwidth_deg");
        if (rad && deg)
            throw ScenarioError("antenna.beamwidth_deg", r.line("beamwidth_deg"),
                                "give beamwidth_rad or beamwidth_deg, not both");
        if (rad)
            scenario.antenna.beamwidth_rad = *rad;
        if (deg)
            scenario.antenna.beamwidth_rad = *deg * pi / 180.0;
    }

    for (std::size_t k = 1;; ++k) {
        const std::string name = "tier" + std::to_string(k);
        Section* s = doc.section(name);
        if (!s)
            break;
        SectionReader r(*s, name);
        TierParams t;
        t.power_dbw = r.required_number("power_dbw");
        t.bias = r.number("bias").value_or(1.0);
        t.density = r.required_number("density");
        t.balls.radii = r.required_list("radii");
        const std::size_t d = t.balls.radii.size();
        t.balls.los_prob = r.required_list("los_prob");
        t.balls.alpha_los = per_ball(r.list("alpha_los"), d, 2.0);
        t.balls.alpha_nlos = per_ball(r.list("alpha_nlos"), d, 4.0);
        t.balls.kappa_los = per_ball(r.list("kappa_los"), d, default_kappa);
        t.balls.kappa_nlos = per_ball(r.list("kappa_nlos"), d, default_kappa);
        scenario.tiers.push_back(std::move(t));
    }
    if (scenario.tiers.empty())
        throw ScenarioError("tier1", 0, "at least one [tierK] section is required");

    for (const std::string& name : doc.section_names()) {
        if (name.rfind("tier", 0) == 0 && name != "tier0") {
            const std::string digits = name.substr(4);
            const bool numeric = !digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit);
            if (!numeric || std::stoul(digits) > scenario.tiers.size())
                throw ScenarioError(name, 0, "tier sections must be numbered consecutively from tier1");
        } else if (name != "tier0" && name != "scenario" && name != "cluster" && name != "antenna") {
            throw ScenarioError(name, 0, "unknown section");
        }
    }

    if (Section* s = doc.section("tier0")) {
        SectionReader r(*s, "tier0");
        Tier0Params t0;
        const TierParams& first = scenario.tiers.front();
        t0.power_dbw = r.number("power_dbw").value_or(first.power_dbw);
        t0.bias = r.number("bias").value_or(first.bias);
        t0.los_prob = r.required_number("los_prob");
        t0.alpha_los = r.number("alpha_los").value_or(2.0);
        t0.alpha_nlos = r.number("alpha_nlos").value_or(4.0);
        t0.kappa_los = r.number("kappa_los").value_or(default_kappa);
        t0.kappa_nlos = r.number("kappa_nlos").value_or(default_kappa);
        scenario.tier0 = t0;
    }

    doc.reject_unused();
    return scenario;
}

NetworkScenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ScenarioFileError("cannot open scenario file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string format_scenario(const NetworkScenario& scenario)
{
    std::ostringstream out;
    out << "[scenario]\n";
    out << "noise_dbm = " << format_list(scenario.noise_dbm) << "\n\n";

    out << "[cluster]\n";
    out << "type = " << cluster_name(scenario.cluster) << "\n";
    out << "scale = " << format_number(cluster_scale(scenario.cluster)) << "\n\n";

    out << "[antenna]\n";
    out << "main_gain_db = " << format_number(scenario.antenna.main_gain_db) << "\n";
    out << "side_gain_db = " << format_number(scenario.antenna.side_gain_db) << "\n";
    out << "beamwidth_rad = " << format_number(scenario.antenna.beamwidth_rad) << "\n";

    if (scenario.tier0) {
        const Tier0Params& t0 = *scenario.tier0;
        out << "\n[tier0]\n";
        out << "power_dbw = " << format_number(t0.power_dbw) << "\n";
        out << "bias = " << format_number(t0.bias) << "\n";
        out << "los_prob = " << format_number(t0.los_prob) << "\n";
        out << "alpha_los = " << format_number(t0.alpha_los) << "\n";
        out << "alpha_nlos = " << format_number(t0.alpha_nlos) << "\n";
        out << "kappa_los = " << format_number(t0.kappa_los) << "\n";
        out << "kappa_nlos = " << format_number(t0.kappa_nlos) << "\n";
    }

    for (std::size_t k = 1; k <= scenario.num_tiers(); ++k) {
        const TierParams& t = scenario.tier(k);
        out << "\n[tier" << k << "]\n";
        out << "power_dbw = " << format_number(t.power_dbw) << "\n";
        out << "bias = " << format_number(t.bias) << "\n";
        out << "density = " << format_number(t.density) << "\n";
        out << "radii = " << format_list(t.balls.radii) << "\n";
        out << "los_prob = " << format_list(t.balls.los_prob) << "\n";
        out << "alpha_los = " << format_list(t.balls.alpha_los) << "\n";
        out << "alpha_nlos = " << format_list(t.balls.alpha_nlos) << "\n";
        out << "kappa_los = " << format_list(t.balls.kappa_los) << "\n";
        out << "kappa_nlos = " << format_list(t.balls.kappa_nlos) << "\n";
    }
    return out.str();
}

} // namespace hetcov
