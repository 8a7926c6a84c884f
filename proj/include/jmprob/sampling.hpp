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

#ifndef JMPROB_SAMPLING_HPP_
#define JMPROB_SAMPLING_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jmprob/rng.hpp"
#include "jmprob/types.hpp"

namespace jmprob {

/// Distribution of a random pair of binary qubit POVMs.
///  - kUnbiased: biases 0, vectors uniform (Lebesgue) in the unit ball.
///  - kGeneral: each (bias, vec) uniform (Lebesgue) on |bias| + |vec| <= 1.
///  - kSection: biases fixed, vectors uniform in balls of radius 1 - |bias|.
struct MeasureSpec {
    enum class Kind { kUnbiased, kGeneral, kSection };

    Kind kind = Kind::kUnbiased;
    double section_bias_a = 0.0;
    double section_bias_b = 0.0;

    static MeasureSpec unbiased() {
        return {};
    }
    static MeasureSpec general() {
        return {Kind::kGeneral, 0.0, 0.0};
    }
    static MeasureSpec section(double a0, double b0) {
        return {Kind::kSection, a0, b0};
    }

    /// Throws Error(kValidity) for section biases outside [-1, 1].
    void check() const;
};

const char *measure_kind_name(MeasureSpec::Kind kind);
/// Accepts "unbiased", "general", "section"; throws Error(kParse) otherwise.
MeasureSpec::Kind parse_measure_kind(const std::string &name);

/// Counters consumed by sample_pair per call, by measure kind. Fixed so that
/// sample i of an experiment always starts at counter i * budget.
std::uint64_t pair_counter_budget(MeasureSpec::Kind kind);
/// Counters consumed by sample_unit_sphere(rng, m).
std::uint64_t sphere_counter_budget(int m);

/// Uniform point on S^{m-1}: m Box-Muller normals, normalised. Consumes
/// 2 * ceil(m / 2) counters.
std::vector<double> sample_unit_sphere(RngStream &rng, int m);
Vec3 sample_unit_sphere3(RngStream &rng);

/// Radius with density 3 r^2 / cap^3 on [0, cap]: r = cap * U^(1/3).
double sample_sharpness(RngStream &rng, double cap);

/// |x0| with density 4 (1 - t)^3 on [0, 1] by inverse CDF, sign from the top
/// bit of the same draw. One counter.
double sample_general_bias(RngStream &rng);

std::pair<BlochPovm, BlochPovm> sample_pair(RngStream &rng, const MeasureSpec &spec);

/// Surface measure of S^{m-1}: 2 pi^{m/2} / Gamma(m/2).
double norm_constant(int m);

/// Density of <u, v> for independent uniform unit vectors in R^m:
///   C_m (1 - s^2)^{(m-3)/2},  C_m = Gamma(m/2) / (sqrt(pi) Gamma((m-1)/2)).
/// m = 2 at |s| = 1 returns +infinity.
double density_inner_product(double s, int m);

/// CDF of density_inner_product. Closed form for m = 2 (arcsine law) and
/// m = 3; adaptive quadrature otherwise.
double cdf_inner_product(double s, int m);

}  // namespace jmprob

#endif  // JMPROB_SAMPLING_HPP_
