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

#ifndef HETCOV_CLI_HPP
#define HETCOV_CLI_HPP

#include "hetcov/coverage.hpp"
#include "hetcov/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hetcov {

inline constexpr const char* version = "0.1.0";

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int config = 2;
inline constexpr int quadrature = 3;
inline constexpr int validation = 4;
} // namespace exit_code

/// Bad command-line or scenario input; carries the offending field path.
class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string field, const std::string& message);

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

enum class SweepParameter { cluster, threshold, main_gain, beamwidth, bias };

struct SweepSpec
{
    SweepParameter parameter = SweepParameter::cluster;
    std::size_t bias_tier = 0; // only for SweepParameter::bias
    std::vector<double> values;

    /// Column name used in CSV output ("cluster", "bias1", ...).
    std::string name() const;
};

/// "a:b:step" (inclusive, tolerant to rounding) or "v1,v2,...".
std::vector<double> parse_grid(std::string_view text);

/// "cluster=1:40:1", "threshold=-10:20:1", "main_gain=10,20",
/// "beamwidth=0.5236,1.0472", "bias.2=1:10:1".
SweepSpec parse_sweep(std::string_view text);

/// Copy of the scenario with one swept parameter set. Throws ConfigError if
/// the value does not fit the scenario (e.g. bias of a missing tier).
NetworkScenario apply_sweep(const NetworkScenario& scenario, const SweepSpec& sweep, double value);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// Writes a static SVG line plot of one curve.
void write_svg_plot(const std::string& path, const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<double>& x, const std::vector<double>& y);

/// Full command-line entry point; argv[0] is the program name. Output files
/// go where --out says (stdout when absent), diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hetcov

#endif
