// Copyright 2026 The jmprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JMPROB_ESTIMATE_HPP_
#define JMPROB_ESTIMATE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jmprob/sampling.hpp"

namespace jmprob {

enum class EstimateMethod { kMonteCarlo, kQuadrature, kClosedForm };

const char *method_name(EstimateMethod m);

/// A computed quantity with its uncertainty. `std_error` is the binomial (or
/// sample) standard error for Monte Carlo and 0 otherwise; `count` is the
/// number of samples or integrand evaluations.
struct EstimateResult {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t count = 0;
    std::optional<std::uint64_t> seed;
    EstimateMethod method = EstimateMethod::kClosedForm;
};

struct McOptions {
    std::uint64_t seed = 0;
    /// 0 = hardware concurrency. Results never depend on this.
    unsigned threads = 1;
};

// --- closed forms ----------------------------------------------------------

/// Lebesgue volume of V = {(x0, x) in R^4 : |x0| + |x| <= 1}, i.e. 2 pi / 3.
double vol_V();
/// vol(V)^2, the volume of all pairs.
double vol_pairs();
/// (4 pi / 3)^2 (1 - |a0|)^3 (1 - |b0|)^3.
double vol_section(double a0, double b0);

/// vol(V) by 1D quadrature of (4 pi / 3)(1 - |x0|)^3.
EstimateResult vol_V_quadrature(double tol = 1e-13);

/// Unbiased volume ratio in Lebesgue measure:
///   full  = N_3^2 * (1/3)(1/3)          = (4 pi)^2 / 9
///   njm   = N_3^2 * int a^2 b^2 p_3 ds  = (4 pi)^2 / 15
struct VolumeChain {
    double full = 0.0;
    double njm = 0.0;
    double ratio = 0.0;
    std::uint64_t evaluations = 0;
};
VolumeChain unbiased_volume_chain_closed_form();
VolumeChain unbiased_volume_chain_quadrature(double tol = 1e-14);

// --- deterministic quadrature ----------------------------------------------

/// Incompatibility probability of two unbiased POVMs under the radial 3r^2
/// measure: nested integral of (9/2) a^2 b^2 over a in (0,1),
/// b in (sqrt(1-a^2), 1), |s| < sqrt(a^2+b^2-1)/(ab). Throws
/// Error(kConvergence) if `tol` cannot be met.
EstimateResult prob_unbiased_quadrature(double tol = 1e-10);

/// Full-domain expectations of f and g under the unbiased measure.
EstimateResult expectation_f(double tol = 1e-12);
EstimateResult expectation_g(double tol = 1e-10);
/// Integral of f * p restricted to the incompatible region. Diagnostic only.
EstimateResult expectation_f_restricted(double tol = 1e-10);

/// Lower end of the a-range in the (lambda, 0) section at given (b, s); the
/// radicand is clamped at zero when within -1e-12.
double lambda_section_a_lower(double lambda, double b, double s);
/// Half-width of the s-range in the (lambda, 0) section at given b.
double lambda_section_s_max(double lambda, double b);

/// Incompatibility probability for biases (lambda, 0):
///   (9/2)(1-|lambda|)^-3 * int a^2 b^2 over the section region.
EstimateResult prob_lambda_section(double lambda, double tol = 1e-9);

// --- Monte Carlo -----------------------------------------------------------

/// Fraction of yu-incompatible pairs among n draws from `spec`. Sample i uses
/// stream (seed, stream_id) from counter i * pair_counter_budget; the result is
/// a function of (seed, n, spec) only.
EstimateResult prob_mc(const MeasureSpec &spec, std::uint64_t n, const McOptions &opt,
                       std::uint64_t stream_id = 0);

/// prob_mc(general) * vol_pairs().
EstimateResult vol_njm_mc(std::uint64_t n, const McOptions &opt);

/// Sample means of f and g under the unbiased measure.
struct ExpectationPair {
    EstimateResult f;
    EstimateResult g;
};
ExpectationPair expectation_mc(std::uint64_t n, const McOptions &opt);

struct ProbabilityGrid {
    std::vector<double> a0_nodes;
    std::vector<double> b0_nodes;
    /// Row-major: values[i * b0_nodes.size() + j] is cell (a0_nodes[i], b0_nodes[j]).
    std::vector<EstimateResult> values;

    const EstimateResult &at(std::size_t i, std::size_t j) const {
        return values[i * b0_nodes.size() + j];
    }
};

/// Evenly spaced nodes from -1 to 1 inclusive.
std::vector<double> grid_nodes(int resolution);

/// Section-measure estimates on a resolution x resolution grid over
/// [-1, 1]^2. Cell (i, j) draws from stream id 1 + i * resolution + j.
ProbabilityGrid prob_grid(int resolution, std::uint64_t n_per_cell, const McOptions &opt);

/// Like prob_grid on explicit node lists.
ProbabilityGrid prob_grid(const std::vector<double> &a0_nodes, const std::vector<double> &b0_nodes,
                          std::uint64_t n_per_cell, const McOptions &opt);

}  // namespace jmprob

#endif  // JMPROB_ESTIMATE_HPP_
