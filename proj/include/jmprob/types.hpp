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

#ifndef JMPROB_TYPES_HPP_
#define JMPROB_TYPES_HPP_

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace jmprob {

/// Tolerances shared by every validity check in the library.
inline constexpr double kTolValid = 1e-10;
inline constexpr double kTolHerm = 1e-10;
inline constexpr double kTolSum = 1e-10;
inline constexpr double kTolPsd = 1e-9;

enum class ErrorKind {
    kValidity,
    kShape,
    kCompleteness,
    kDomain,
    kPrecondition,
    kConvergence,
    kParse,
};

const char *error_kind_name(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers which
/// contract was broken.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &what);
    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3 &a, const Vec3 &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
double norm(const Vec3 &a);
inline Vec3 operator+(const Vec3 &a, const Vec3 &b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3 &a, const Vec3 &b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double s, const Vec3 &a) {
    return {s * a[0], s * a[1], s * a[2]};
}

/// Binary qubit POVM in Bloch form:
///   A_i = 1/2 [ (1 + (-1)^i bias) I + (-1)^i vec . sigma ],  i = 1, 2.
/// Valid when |bias| <= 1 and |vec| <= 1 - |bias|.
struct BlochPovm {
    double bias = 0.0;
    Vec3 vec{0.0, 0.0, 0.0};

    double sharpness() const {
        return norm(vec);
    }
    double biasedness() const {
        return bias < 0 ? -bias : bias;
    }
    bool is_valid(double tol = kTolValid) const;
    /// Throws Error(kValidity) unless is_valid().
    void check_valid() const;

    bool operator==(const BlochPovm &) const = default;
};

/// d x d complex Hermitian matrix.
class HermitianOp {
   public:
    using Matrix = Eigen::MatrixXcd;

    HermitianOp() = default;
    /// Checks hermiticity to kTolHerm; throws Error(kValidity) otherwise.
    explicit HermitianOp(Matrix entries);

    static HermitianOp zero(std::size_t dim);
    static HermitianOp identity(std::size_t dim, double scale = 1.0);
    /// c0 I + c1 X + c2 Y + c3 Z.
    static HermitianOp from_pauli(const std::array<double, 4> &coeffs);

    std::size_t dim() const {
        return static_cast<std::size_t>(entries_.rows());
    }
    const Matrix &entries() const {
        return entries_;
    }
    /// Inverse of from_pauli; dim must be 2.
    std::array<double, 4> pauli_coeffs() const;

    double min_eigenvalue() const;
    std::vector<double> eigenvalues() const;
    double trace() const;
    /// max |entry| of (this - other).
    double max_abs_diff(const HermitianOp &other) const;

    HermitianOp &operator+=(const HermitianOp &o);
    HermitianOp &operator-=(const HermitianOp &o);
    HermitianOp &operator*=(double s);
    friend HermitianOp operator+(HermitianOp a, const HermitianOp &b) {
        return a += b;
    }
    friend HermitianOp operator-(HermitianOp a, const HermitianOp &b) {
        return a -= b;
    }
    friend HermitianOp operator*(double s, HermitianOp a) {
        return a *= s;
    }

   private:
    struct Unchecked {};
    HermitianOp(Matrix entries, Unchecked) : entries_(std::move(entries)) {
    }
    Matrix entries_;
};

/// n-index array of Hermitian operators with outcome shape (k_1, ..., k_n).
/// Elements are stored row-major over the multi-index (last index fastest).
class PovmTensor {
   public:
    PovmTensor() = default;
    /// Throws Error(kShape) on size/dimension mismatch.
    PovmTensor(std::vector<std::size_t> shape, std::vector<HermitianOp> elements);

    /// All-zero tensor of the given shape.
    static PovmTensor zeros(std::vector<std::size_t> shape, std::size_t dim);

    const std::vector<std::size_t> &shape() const {
        return shape_;
    }
    std::size_t rank() const {
        return shape_.size();
    }
    std::size_t dim() const {
        return dim_;
    }
    std::size_t size() const {
        return elements_.size();
    }
    const std::vector<HermitianOp> &elements() const {
        return elements_;
    }

    std::size_t flat_index(std::span<const std::size_t> multi) const;
    std::vector<std::size_t> multi_index(std::size_t flat) const;

    const HermitianOp &operator[](std::size_t flat) const {
        return elements_[flat];
    }
    HermitianOp &operator[](std::size_t flat) {
        return elements_[flat];
    }
    const HermitianOp &at(std::span<const std::size_t> multi) const {
        return elements_[flat_index(multi)];
    }

    HermitianOp sum() const;

   private:
    std::vector<std::size_t> shape_;
    std::vector<HermitianOp> elements_;
    std::size_t dim_ = 0;
};

/// Strictly positive weights summing to one.
class ProbabilityVector {
   public:
    /// Throws Error(kValidity) if a weight is <= 0 or the sum is off by more
    /// than kTolSum.
    explicit ProbabilityVector(std::vector<double> weights);
    static ProbabilityVector uniform(std::size_t k);

    std::size_t size() const {
        return weights_.size();
    }
    double operator[](std::size_t i) const {
        return weights_[i];
    }
    const std::vector<double> &weights() const {
        return weights_;
    }

   private:
    std::vector<double> weights_;
};

struct ValidationReport {
    bool ok = false;
    double min_eigenvalue = 0.0;
    /// max-entry norm of (sum of elements - identity).
    double completeness_defect = 0.0;
};

/// Effect A_outcome (outcome in {1, 2}) of a binary qubit POVM.
HermitianOp effect_from_bloch(const BlochPovm &p, int outcome);

/// Both effects as a rank-1 tensor of shape (2).
PovmTensor povm_from_bloch(const BlochPovm &p);

BlochPovm bloch_from_effects(const HermitianOp &a1, const HermitianOp &a2);

ValidationReport validate_povm(const PovmTensor &t, double tol = kTolPsd);

}  // namespace jmprob

#endif  // JMPROB_TYPES_HPP_
