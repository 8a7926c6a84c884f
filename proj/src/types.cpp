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

#include "jmprob/types.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace jmprob {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::kValidity:
            return "validity";
        case ErrorKind::kShape:
            return "shape";
        case ErrorKind::kCompleteness:
            return "completeness";
        case ErrorKind::kDomain:
            return "domain";
        case ErrorKind::kPrecondition:
            return "precondition";
        case ErrorKind::kConvergence:
            return "convergence";
        case ErrorKind::kParse:
            return "parse";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string &what)
    : std::runtime_error(std::string(error_kind_name(kind)) + " error: " + what), kind_(kind) {
}

double norm(const Vec3 &a) {
    return std::hypot(a[0], a[1], a[2]);
}

bool BlochPovm::is_valid(double tol) const {
    if (!std::isfinite(bias) || !std::isfinite(vec[0]) || !std::isfinite(vec[1]) ||
        !std::isfinite(vec[2])) {
        return false;
    }
    if (std::abs(bias) > 1.0 + tol) {
        return false;
    }
    return sharpness() <= 1.0 - std::abs(bias) + tol;
}

void BlochPovm::check_valid() const {
    if (!is_valid()) {
        throw Error(ErrorKind::kValidity, "Bloch POVM requires |bias| + |vec| <= 1 (bias=" +
                                              std::to_string(bias) +
                                              ", |vec|=" + std::to_string(sharpness()) + ")");
    }
}

// ---------------------------------------------------------------------------
// HermitianOp

HermitianOp::HermitianOp(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw Error(ErrorKind::kShape, "Hermitian operator must be a non-empty square matrix");
    }
    double defect = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (!(defect <= kTolHerm)) {
        throw Error(ErrorKind::kValidity,
                    "matrix is not Hermitian (defect " + std::to_string(defect) + ")");
    }
}

HermitianOp HermitianOp::zero(std::size_t dim) {
    return HermitianOp(Matrix::Zero(dim, dim), Unchecked{});
}

HermitianOp HermitianOp::identity(std::size_t dim, double scale) {
    Matrix m = Matrix::Identity(dim, dim);
    m *= scale;
    return HermitianOp(std::move(m), Unchecked{});
}

HermitianOp HermitianOp::from_pauli(const std::array<double, 4> &c) {
    using C = std::complex<double>;
    Matrix m(2, 2);
    m(0, 0) = C(c[0] + c[3], 0.0);
    m(1, 1) = C(c[0] - c[3], 0.0);
    m(0, 1) = C(c[1], -c[2]);
    m(1, 0) = C(c[1], c[2]);
    return HermitianOp(std::move(m), Unchecked{});
}

std::array<double, 4> HermitianOp::pauli_coeffs() const {
    if (dim() != 2) {
        throw Error(ErrorKind::kShape, "Pauli coefficients need a 2x2 operator");
    }
    const auto &m = entries_;
    return {0.5 * (m(0, 0).real() + m(1, 1).real()), 0.5 * (m(0, 1).real() + m(1, 0).real()),
            0.5 * (m(1, 0).imag() - m(0, 1).imag()), 0.5 * (m(0, 0).real() - m(1, 1).real())};
}

std::vector<double> HermitianOp::eigenvalues() const {
    const std::size_t d = dim();
    if (d == 1) {
        return {entries_(0, 0).real()};
    }
    if (d == 2) {
        // 1/2 (tr -+ sqrt(tr^2 - 4 det)), written in Pauli form for stability.
        auto c = pauli_coeffs();
        double r = std::hypot(c[1], c[2], c[3]);
        return {c[0] - r, c[0] + r};
    }
    // Real symmetric embedding [[Re, -Im], [Im, Re]] has every eigenvalue twice.
    Eigen::MatrixXd emb(2 * d, 2 * d);
    emb.topLeftCorner(d, d) = entries_.real();
    emb.bottomRightCorner(d, d) = entries_.real();
    emb.topRightCorner(d, d) = -entries_.imag();
    emb.bottomLeftCorner(d, d) = entries_.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(emb, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    std::vector<double> out(d);
    for (std::size_t i = 0; i < d; ++i) {
        out[i] = 0.5 * (ev(2 * i) + ev(2 * i + 1));
    }
    return out;
}

double HermitianOp::min_eigenvalue() const {
    auto ev = eigenvalues();
    return *std::min_element(ev.begin(), ev.end());
}

double HermitianOp::trace() const {
    return entries_.trace().real();
}

double HermitianOp::max_abs_diff(const HermitianOp &other) const {
    if (dim() != other.dim()) {
        throw Error(ErrorKind::kShape, "dimension mismatch");
    }
    return (entries_ - other.entries_).cwiseAbs().maxCoeff();
}

HermitianOp &HermitianOp::operator+=(const HermitianOp &o) {
    if (dim() != o.dim()) {
        throw Error(ErrorKind::kShape, "dimension mismatch");
    }
    entries_ += o.entries_;
    return *this;
}

HermitianOp &HermitianOp::operator-=(const HermitianOp &o) {
    if (dim() != o.dim()) {
        throw Error(ErrorKind::kShape, "dimension mismatch");
    }
    entries_ -= o.entries_;
    return *this;
}

HermitianOp &HermitianOp::operator*=(double s) {
    entries_ *= s;
    return *this;
}

// ---------------------------------------------------------------------------
// PovmTensor

PovmTensor::PovmTensor(std::vector<std::size_t> shape, std::vector<HermitianOp> elements)
    : shape_(std::move(shape)), elements_(std::move(elements)) {
    if (shape_.empty()) {
        throw Error(ErrorKind::kShape, "tensor needs at least one index");
    }
    std::size_t count = 1;
    for (std::size_t k : shape_) {
        if (k == 0) {
            throw Error(ErrorKind::kShape, "outcome counts must be positive");
        }
        count *= k;
    }
    if (count != elements_.size()) {
        throw Error(ErrorKind::kShape, "shape implies " + std::to_string(count) +
                                           " elements, got " + std::to_string(elements_.size()));
    }
    dim_ = elements_.front().dim();
    for (const auto &e : elements_) {
        if (e.dim() != dim_ || dim_ == 0) {
            throw Error(ErrorKind::kShape, "all tensor elements must share one dimension");
        }
    }
}

PovmTensor PovmTensor::zeros(std::vector<std::size_t> shape, std::size_t dim) {
    std::size_t count = std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                                        std::multiplies<>());
    return PovmTensor(std::move(shape), std::vector<HermitianOp>(count, HermitianOp::zero(dim)));
}

std::size_t PovmTensor::flat_index(std::span<const std::size_t> multi) const {
    if (multi.size() != shape_.size()) {
        throw Error(ErrorKind::kShape, "multi-index rank mismatch");
    }
    std::size_t flat = 0;
    for (std::size_t l = 0; l < shape_.size(); ++l) {
        if (multi[l] >= shape_[l]) {
            throw Error(ErrorKind::kShape, "multi-index out of range");
        }
        flat = flat * shape_[l] + multi[l];
    }
    return flat;
}

std::vector<std::size_t> PovmTensor::multi_index(std::size_t flat) const {
    std::vector<std::size_t> multi(shape_.size());
    for (std::size_t l = shape_.size(); l-- > 0;) {
        multi[l] = flat % shape_[l];
        flat /= shape_[l];
    }
    return multi;
}

HermitianOp PovmTensor::sum() const {
    HermitianOp total = HermitianOp::zero(dim_);
    for (const auto &e : elements_) {
        total += e;
    }
    return total;
}

// ---------------------------------------------------------------------------
// ProbabilityVector

ProbabilityVector::ProbabilityVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw Error(ErrorKind::kShape, "probability vector must be non-empty");
    }
    double total = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0)) {
            throw Error(ErrorKind::kValidity, "probability weights must be strictly positive");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > kTolSum) {
        throw Error(ErrorKind::kValidity, "probability weights must sum to 1");
    }
}

ProbabilityVector ProbabilityVector::uniform(std::size_t k) {
    return ProbabilityVector(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

// ---------------------------------------------------------------------------

HermitianOp effect_from_bloch(const BlochPovm &p, int outcome) {
    p.check_valid();
    if (outcome != 1 && outcome != 2) {
        throw Error(ErrorKind::kShape, "binary POVM outcome must be 1 or 2");
    }
    const double sign = outcome == 1 ? -1.0 : 1.0;
    return HermitianOp::from_pauli({0.5 * (1.0 + sign * p.bias), 0.5 * sign * p.vec[0],
                                    0.5 * sign * p.vec[1], 0.5 * sign * p.vec[2]});
}

PovmTensor povm_from_bloch(const BlochPovm &p) {
    return PovmTensor({2}, {effect_from_bloch(p, 1), effect_from_bloch(p, 2)});
}

BlochPovm bloch_from_effects(const HermitianOp &a1, const HermitianOp &a2) {
    if (a1.dim() != 2 || a2.dim() != 2) {
        throw Error(ErrorKind::kShape, "binary qubit effects must be 2x2");
    }
    if ((a1 + a2).max_abs_diff(HermitianOp::identity(2)) > kTolSum) {
        throw Error(ErrorKind::kCompleteness, "effects do not sum to the identity");
    }
    // A2 = 1/2[(1 + bias) I + vec.sigma]; average against A1 to use both inputs.
    auto c1 = a1.pauli_coeffs();
    auto c2 = a2.pauli_coeffs();
    BlochPovm out;
    out.bias = c2[0] - c1[0];
    out.vec = {c2[1] - c1[1], c2[2] - c1[2], c2[3] - c1[3]};
    return out;
}

ValidationReport validate_povm(const PovmTensor &t, double tol) {
    ValidationReport report;
    if (t.size() == 0) {
        throw Error(ErrorKind::kShape, "empty tensor");
    }
    double min_ev = std::numeric_limits<double>::infinity();
    for (const auto &e : t.elements()) {
        min_ev = std::min(min_ev, e.min_eigenvalue());
    }
    report.min_eigenvalue = min_ev;
    report.completeness_defect = t.sum().max_abs_diff(HermitianOp::identity(t.dim()));
    report.ok = min_ev >= -tol && report.completeness_defect <= tol;
    return report;
}

}  // namespace jmprob
