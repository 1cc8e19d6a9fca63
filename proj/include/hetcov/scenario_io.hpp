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

#ifndef HETCOV_SCENARIO_IO_HPP
#define HETCOV_SCENARIO_IO_HPP

#include "hetcov/model.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hetcov {

/// Malformed scenario text. field() is the schema path ("tier2.radii"),
/// line() the 1-based source line or 0 when the problem is not tied to one.
class ScenarioError : public std::runtime_error
{
public:
    ScenarioError(std::string field, int line, const std::string& message);

    const std::string& field() const { return field_; }
    int line() const { return line_; }

private:
    std::string field_;
    int line_;
};

/// The scenario file could not be read.
class ScenarioFileError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Parses the sectioned key = value scenario format:
///
///   [scenario]  carrier_ghz (default 28), noise_dbm (one value or K+1)
///   [cluster]   type = thomas|matern, scale (alias sigma / radius)
///   [antenna]   main_gain_db, side_gain_db, beamwidth_rad | beamwidth_deg
///   [tier0]     optional cluster center: power_dbw, bias (both default to
///               tier1's), los_prob, alpha_los, alpha_nlos, kappa_los,
///               kappa_nlos
///   [tierK]     K = 1, 2, ...: power_dbw, bias, density, radii, los_prob,
///               alpha_los, alpha_nlos, kappa_los, kappa_nlos
///
/// Lists are comma separated; a single exponent or intercept is broadcast to
/// every ball. Omitted intercepts default to (4 pi f_c / c)^2. '#' and ';'
/// start comments. Structural problems throw ScenarioError; range checks are
/// left to validate().
NetworkScenario parse_scenario(std::string_view text);

NetworkScenario load_scenario(const std::filesystem::path& path);

/// Text that parse_scenario() maps back to an identical scenario.
std::string format_scenario(const NetworkScenario& scenario);

} // namespace hetcov

#endif
