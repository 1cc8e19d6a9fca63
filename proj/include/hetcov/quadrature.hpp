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

#ifndef HETCOV_QUADRATURE_HPP
#define HETCOV_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace hetcov {

struct QuadratureResult
{
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t subdivisions = 0;
    bool converged = true;
};

struct QuadratureOptions
{
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    std::size_t max_subdivisions = 4000;
};

/// Thrown by callers that require convergence; carries the best estimate.
class QuadratureError : public std::runtime_error
{
public:
    QuadratureError(const std::string& what, QuadratureResult result)
        : std::runtime_error(what), result_(result) {}

    const QuadratureResult& result() const { return result_; }

private:
    QuadratureResult result_;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (21-point) integration of f over [a, b].
/// The interval is first split at every breakpoint inside (a, b); after that
/// the panel with the largest error estimate is bisected until the summed
/// estimate is within max(abs_tol, rel_tol*|value|) or the subdivision budget
/// runs out (converged = false, best estimate returned).
QuadratureResult integrate(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                           const QuadratureOptions& options = {});

QuadratureResult integrate(const Integrand& f, double a, double b, double tol);

/// Like integrate(), but throws QuadratureError when not converged.
double integrate_or_throw(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                          const QuadratureOptions& options, const char* what);

/// A monotone non-increasing tail-mass function with a characteristic scale
/// (used to bracket the search) and, for bounded laws, the end of support.
struct TailSpec
{
    std::function<double(double)> tail;
    double scale = 1.0;
    std::optional<double> support_end;
};

/// Smallest upper limit x (to ~1e-12 relative) with tail(x) <= eps. Bounded
/// laws return at most the support end, where the tail mass is exactly zero.
double tail_cutoff(const TailSpec& spec, double eps);

/// Closed form for the Rayleigh tail exp(-y^2 / (2 sigma^2)).
double gaussian_tail_cutoff(double sigma, double eps);

} // namespace hetcov

#endif
