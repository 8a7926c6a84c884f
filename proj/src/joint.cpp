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

#include "jmprob/joint.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "jmprob/criterion.hpp"
#include "jmprob/parallel.hpp"

namespace jmprob {

namespace {

void check_noise_marginals(const PovmTensor &t, std::span<const ProbabilityVector> p_vectors) {
    if (t.rank() != p_vectors.size()) {
        throw Error(ErrorKind::kPrecondition, "noise tensor rank does not match probability vectors");
    }
    for (std::size_t l = 0; l < t.rank(); ++l) {
        if (t.shape()[l] != p_vectors[l].size()) {
            throw Error(ErrorKind::kPrecondition,
                        "noise tensor axis " + std::to_string(l) + " has the wrong length");
        }
        PovmTensor m = marginal(t, l);
        for (std::size_t i = 0; i < m.size(); ++i) {
            double defect = m[i].max_abs_diff(HermitianOp::identity(t.dim(), p_vectors[l][i]));
            if (defect > kTolSum) {
                throw Error(ErrorKind::kPrecondition,
                            "noise tensor marginal " + std::to_string(l) + " is not p * I");
            }
        }
    }
}

void check_marginal_inputs(std::span<const PovmTensor> marginals,
                           std::span<const ProbabilityVector> p_vectors) {
    if (marginals.empty()) {
        throw Error(ErrorKind::kShape, "need at least one POVM");
    }
    if (marginals.size() != p_vectors.size()) {
        throw Error(ErrorKind::kShape, "one probability vector per POVM is required");
    }
    const std::size_t d = marginals.front().dim();
    for (std::size_t l = 0; l < marginals.size(); ++l) {
        if (marginals[l].rank() != 1) {
            throw Error(ErrorKind::kShape, "marginal POVMs must be single-index tensors");
        }
        if (marginals[l].dim() != d) {
            throw Error(ErrorKind::kShape, "marginal POVMs must share one dimension");
        }
        if (marginals[l].size() != p_vectors[l].size()) {
            throw Error(ErrorKind::kShape, "probability vector length differs from outcome count");
        }
    }
}

// (prod_l p_l) / p_m for every tensor slot, written as the product over l != m
// so no division is needed.
PovmTensor weighted_marginal_sum(std::span<const PovmTensor> marginals,
                                 std::span<const ProbabilityVector> p_vectors) {
    std::vector<std::size_t> shape;
    for (const auto &m : marginals) {
        shape.push_back(m.size());
    }
    const std::size_t d = marginals.front().dim();
    PovmTensor out = PovmTensor::zeros(shape, d);
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        auto idx = out.multi_index(flat);
        HermitianOp acc = HermitianOp::zero(d);
        for (std::size_t l = 0; l < marginals.size(); ++l) {
            double w = 1.0;
            for (std::size_t k = 0; k < marginals.size(); ++k) {
                if (k != l) {
                    w *= p_vectors[k][idx[k]];
                }
            }
            acc += w * marginals[l][idx[l]];
        }
        out[flat] = std::move(acc);
    }
    return out;
}

// Constant parts of the four qubit positivity conditions. Condition k reads
// |x + dir_k| <= base_k + sign_k * x0 with the signs (+, -, -, +).
struct QubitSystem {
    std::array<Vec3, 4> dir;
    std::array<double, 4> base;

    QubitSystem(const BlochPovm &a, const BlochPovm &b, double p, double q) {
        const double a0 = a.bias;
        const double b0 = b.bias;
        dir[0] = -1.0 * (q * a.vec + p * b.vec);
        base[0] = (q + p - 1.0) - (q * a0 + p * b0);
        dir[1] = (1.0 - q) * a.vec - p * b.vec;
        base[1] = (2.0 - q - p) - ((1.0 - q) * a0 - p * b0);
        dir[2] = (1.0 - p) * b.vec - q * a.vec;
        base[2] = (2.0 - q - p) - (-q * a0 + (1.0 - p) * b0);
        dir[3] = (1.0 - q) * a.vec + (1.0 - p) * b.vec;
        base[3] = (q + p - 1.0) + ((1.0 - q) * a0 + (1.0 - p) * b0);
    }

    static constexpr std::array<double, 4> kSign{1.0, -1.0, -1.0, 1.0};

    double rhs(int k, double x0) const {
        return base[k] + kSign[k] * x0;
    }
    double slack(int k, double x0, const Vec3 &x) const {
        return rhs(k, x0) - norm(x + dir[k]);
    }
};

}  // namespace

double ConstraintSlack::min() const {
    return *std::min_element(slack.begin(), slack.end());
}

NoiseTensor::NoiseTensor(PovmTensor tensor, std::span<const ProbabilityVector> p_vectors)
    : tensor_(std::move(tensor)) {
    check_noise_marginals(tensor_, p_vectors);
}

NoiseTensor build_T_product(std::span<const ProbabilityVector> p_vectors, std::size_t dim) {
    if (p_vectors.empty()) {
        throw Error(ErrorKind::kShape, "need at least one probability vector");
    }
    if (dim == 0) {
        throw Error(ErrorKind::kShape, "dimension must be positive");
    }
    std::vector<std::size_t> shape;
    for (const auto &p : p_vectors) {
        shape.push_back(p.size());
    }
    PovmTensor t = PovmTensor::zeros(shape, dim);
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        auto idx = t.multi_index(flat);
        double w = 1.0;
        for (std::size_t l = 0; l < idx.size(); ++l) {
            w *= p_vectors[l][idx[l]];
        }
        t[flat] = HermitianOp::identity(dim, w);
    }
    return NoiseTensor(std::move(t), p_vectors);
}

NoiseTensor build_T_qubit(double p, double q, const QubitNoiseParam &noise) {
    const std::array<ProbabilityVector, 2> pv{ProbabilityVector({p, 1.0 - p}),
                                              ProbabilityVector({q, 1.0 - q})};
    const HermitianOp x = HermitianOp::from_pauli(
        {0.5 * (1.0 - noise.x0), -0.5 * noise.x[0], -0.5 * noise.x[1], -0.5 * noise.x[2]});
    std::vector<HermitianOp> blocks{
        x,
        HermitianOp::identity(2, p) - x,
        HermitianOp::identity(2, q) - x,
        x + HermitianOp::identity(2, 1.0 - q - p),
    };
    return NoiseTensor(PovmTensor({2, 2}, std::move(blocks)), pv);
}

PovmTensor marginal(const PovmTensor &t, std::size_t axis) {
    if (axis >= t.rank()) {
        throw Error(ErrorKind::kShape, "marginal axis " + std::to_string(axis) +
                                           " out of range for rank " + std::to_string(t.rank()));
    }
    std::vector<HermitianOp> out(t.shape()[axis], HermitianOp::zero(t.dim()));
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        out[t.multi_index(flat)[axis]] += t[flat];
    }
    return PovmTensor({t.shape()[axis]}, std::move(out));
}

PovmTensor build_M_thm1(std::span<const PovmTensor> marginals,
                        std::span<const ProbabilityVector> p_vectors, const NoiseTensor &t) {
    check_marginal_inputs(marginals, p_vectors);
    check_noise_marginals(t.tensor(), p_vectors);
    if (t.tensor().dim() != marginals.front().dim()) {
        throw Error(ErrorKind::kPrecondition, "noise tensor dimension differs from the POVMs");
    }
    PovmTensor m = weighted_marginal_sum(marginals, p_vectors);
    const double n_minus_1 = static_cast<double>(marginals.size() - 1);
    for (std::size_t flat = 0; flat < m.size(); ++flat) {
        m[flat] -= n_minus_1 * t.tensor()[flat];
    }
    return m;
}

PovmTensor build_G(std::span<const PovmTensor> marginals,
                   std::span<const ProbabilityVector> p_vectors) {
    check_marginal_inputs(marginals, p_vectors);
    PovmTensor g = weighted_marginal_sum(marginals, p_vectors);
    const double inv_n = 1.0 / static_cast<double>(marginals.size());
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        g[flat] *= inv_n;
    }
    return g;
}

ConstraintSlack qubit_constraints(const BlochPovm &a, const BlochPovm &b, double p, double q,
                                  const QubitNoiseParam &noise) {
    const QubitSystem sys(a, b, p, q);
    ConstraintSlack out;
    for (int k = 0; k < 4; ++k) {
        out.slack[k] = sys.slack(k, noise.x0, noise.x);
    }
    return out;
}

PovmTensor build_M_qubit(const BlochPovm &a, const BlochPovm &b, double p, double q,
                         const QubitNoiseParam &noise) {
    const std::array<PovmTensor, 2> povms{povm_from_bloch(a), povm_from_bloch(b)};
    const std::array<ProbabilityVector, 2> pv{ProbabilityVector({p, 1.0 - p}),
                                              ProbabilityVector({q, 1.0 - q})};
    return build_M_thm1(povms, pv, build_T_qubit(p, q, noise));
}

std::optional<JointWitness> construct_unbiased_witness(const BlochPovm &a, const BlochPovm &b) {
    a.check_valid();
    b.check_valid();
    if (a.bias != 0.0 || b.bias != 0.0) {
        throw Error(ErrorKind::kPrecondition, "closed-form witness needs unbiased measurements");
    }
    if (busch_g(a.vec, b.vec) > 2.0) {
        return std::nullopt;
    }
    const double u = norm(a.vec + b.vec);
    const double v = norm(a.vec - b.vec);
    QubitNoiseParam noise;
    noise.x0 = 0.25 * (u + 2.0 - v);
    return JointWitness{noise, build_M_qubit(a, b, 0.5, 0.5, noise)};
}

std::optional<QubitNoiseParam> feasibility_oracle(const BlochPovm &a, const BlochPovm &b, double p,
                                                  double q, const OracleOptions &options) {
    if (options.resolution < 8) {
        throw Error(ErrorKind::kPrecondition, "oracle resolution must be at least 8");
    }
    const int n = options.resolution;
    const double margin = options.margin;
    const QubitSystem sys(a, b, p, q);
    std::vector<double> nodes(n);
    for (int k = 0; k < n; ++k) {
        nodes[k] = -1.0 + 2.0 * k / (n - 1);
    }

    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> first_hit(n, kNone);
    std::atomic<std::size_t> best_slice{kNone};

    parallel_for(static_cast<std::size_t>(n), options.threads, [&](std::size_t slice) {
        if (slice > best_slice.load(std::memory_order_relaxed)) {
            return;
        }
        const double x0 = nodes[slice];
        for (int k = 0; k < 4; ++k) {
            if (sys.rhs(k, x0) < margin) {
                return;
            }
        }
        std::size_t local = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                for (int l = 0; l < n; ++l, ++local) {
                    const Vec3 x{nodes[i], nodes[j], nodes[l]};
                    bool ok = true;
                    for (int k = 0; k < 4 && ok; ++k) {
                        ok = sys.slack(k, x0, x) >= margin;
                    }
                    if (ok) {
                        first_hit[slice] = local;
                        std::size_t cur = best_slice.load();
                        while (slice < cur && !best_slice.compare_exchange_weak(cur, slice)) {
                        }
                        return;
                    }
                }
            }
        }
    });

    for (int s = 0; s < n; ++s) {
        if (first_hit[s] == kNone) {
            continue;
        }
        const std::size_t local = first_hit[s];
        const std::size_t nn = static_cast<std::size_t>(n);
        QubitNoiseParam out;
        out.x0 = nodes[s];
        out.x = {nodes[local / (nn * nn)], nodes[(local / nn) % nn], nodes[local % nn]};
        return out;
    }
    return std::nullopt;
}

}  // namespace jmprob
