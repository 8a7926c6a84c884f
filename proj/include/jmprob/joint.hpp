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

#ifndef JMPROB_JOINT_HPP_
#define JMPROB_JOINT_HPP_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "jmprob/types.hpp"

namespace jmprob {

/// Hermitian tensor whose marginals are p^(l) * I for fixed probability
/// vectors p^(l). Plays the role of the subtracted noise term in the
/// joint-measurement construction.
class NoiseTensor {
   public:
    /// Throws Error(kPrecondition) if the marginals of `tensor` are not
    /// p^(l) * I within kTolSum.
    NoiseTensor(PovmTensor tensor, std::span<const ProbabilityVector> p_vectors);

    const PovmTensor &tensor() const {
        return tensor_;
    }

   private:
    PovmTensor tensor_;
};

/// Qubit noise block X = 1/2 [ (1 - x0) I - x . sigma ].
struct QubitNoiseParam {
    double x0 = 0.0;
    Vec3 x{0.0, 0.0, 0.0};
};

/// Slack (right side minus left side) of the four positivity conditions
/// M_11, M_12, M_21, M_22 >= 0 for the qubit joint measurement.
struct ConstraintSlack {
    std::array<double, 4> slack{};

    double min() const;
    bool feasible() const {
        return min() >= 0.0;
    }
};

/// Canonical product noise T = (prod_l p^(l)_{i_l}) I_d.
NoiseTensor build_T_product(std::span<const ProbabilityVector> p_vectors, std::size_t dim);

/// Qubit noise tensor in block form
///   T = [[X, p I - X], [q I - X, X + (1 - q - p) I]].
NoiseTensor build_T_qubit(double p, double q, const QubitNoiseParam &noise);

/// Joint tensor with the prescribed marginals:
///   M = (prod_l p^(l)_{i_l}) sum_l A^(l)_{i_l} / p^(l)_{i_l} - (n - 1) T.
/// Hermitian and complete by construction; positivity is NOT checked.
PovmTensor build_M_thm1(std::span<const PovmTensor> marginals,
                        std::span<const ProbabilityVector> p_vectors, const NoiseTensor &t);

/// The POVM  G = (prod_l p^(l)_{i_l}) / n * sum_l A^(l)_{i_l} / p^(l)_{i_l},
/// whose marginals are A^(l)/n + (1 - 1/n) p^(l) I.
PovmTensor build_G(std::span<const PovmTensor> marginals,
                   std::span<const ProbabilityVector> p_vectors);

/// Sum over every index except `axis`; returns a rank-1 tensor.
PovmTensor marginal(const PovmTensor &t, std::size_t axis);

ConstraintSlack qubit_constraints(const BlochPovm &a, const BlochPovm &b, double p, double q,
                                  const QubitNoiseParam &noise);

struct JointWitness {
    QubitNoiseParam noise;
    PovmTensor joint;
};

/// Closed-form joint measurement for two unbiased qubit POVMs: noise x = 0,
/// y0 = 2 x0 at the midpoint of [|a + b|, 2 - |a - b|]. Empty when that
/// interval is empty. Throws Error(kPrecondition) on biased input.
std::optional<JointWitness> construct_unbiased_witness(const BlochPovm &a, const BlochPovm &b);

/// Joint measurement from a qubit noise parameter with weights (p, 1-p),
/// (q, 1-q).
PovmTensor build_M_qubit(const BlochPovm &a, const BlochPovm &b, double p, double q,
                         const QubitNoiseParam &noise);

struct OracleOptions {
    int resolution = 32;
    double margin = 0.0;
    unsigned threads = 1;
};

/// Grid scan of (x0, x) over [-1, 1]^4, `resolution` nodes per axis, x0
/// outermost and x_3 fastest. Returns the first node (lowest multi-index)
/// with min slack >= margin. A hit is a genuine witness; a miss proves
/// nothing. Result is independent of the thread count.
std::optional<QubitNoiseParam> feasibility_oracle(const BlochPovm &a, const BlochPovm &b, double p,
                                                  double q, const OracleOptions &options = {});

}  // namespace jmprob

#endif  // JMPROB_JOINT_HPP_
