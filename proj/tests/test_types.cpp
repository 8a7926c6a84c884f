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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "jmprob/types.hpp"
#include "test_support.hpp"

namespace jmprob {
namespace {

// Independent 2x2 eigenvalue oracle: solve the characteristic polynomial of
// [[p, z], [conj z, r]] directly.
std::array<double, 2> eig2(const HermitianOp &h) {
    const auto &m = h.entries();
    const double p = m(0, 0).real();
    const double r = m(1, 1).real();
    const double off = std::norm(m(0, 1));
    const double mean = 0.5 * (p + r);
    const double rad = std::sqrt(0.25 * (p - r) * (p - r) + off);
    return {mean - rad, mean + rad};
}

TEST(EffectFromBloch, SharpZProjector) {
    const HermitianOp e = effect_from_bloch({0.0, {0, 0, 1}}, 2);
    EXPECT_NEAR(std::abs(e.entries()(0, 0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(e.entries()(1, 1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(e.entries()(0, 1)), 0.0, 1e-15);
}

TEST(EffectFromBloch, FullyBiasedTrivial) {
    const BlochPovm p{1.0, {0, 0, 0}};
    EXPECT_LT(effect_from_bloch(p, 1).max_abs_diff(HermitianOp::zero(2)), 1e-15);
    EXPECT_LT(effect_from_bloch(p, 2).max_abs_diff(HermitianOp::identity(2)), 1e-15);
}

TEST(EffectFromBloch, EigenvaluesMatchOracle) {
    const HermitianOp e = effect_from_bloch({0.2, {0.3, 0, 0.4}}, 2);
    const auto ev = e.eigenvalues();
    ASSERT_EQ(ev.size(), 2u);
    EXPECT_NEAR(std::min(ev[0], ev[1]), 0.35, 1e-14);
    EXPECT_NEAR(std::max(ev[0], ev[1]), 0.85, 1e-14);
    const auto oracle = eig2(e);
    EXPECT_NEAR(oracle[0], 0.35, 1e-14);
    EXPECT_NEAR(oracle[1], 0.85, 1e-14);
}

TEST(EffectFromBloch, InvalidThrows) {
    try {
        effect_from_bloch({0.5, {0.6, 0, 0}}, 1);
        FAIL() << "expected a validity error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kValidity);
    }
}

TEST(BlochFromEffects, RoundTrips) {
    for (const BlochPovm p : {BlochPovm{0.0, {0, 0, 1}}, BlochPovm{0.2, {0.3, 0, 0.4}}}) {
        const BlochPovm q = bloch_from_effects(effect_from_bloch(p, 1), effect_from_bloch(p, 2));
        EXPECT_NEAR(q.bias, p.bias, 1e-12);
        for (int k = 0; k < 3; ++k) {
            EXPECT_NEAR(q.vec[k], p.vec[k], 1e-12);
        }
    }
}

TEST(BlochFromEffects, HalfIdentities) {
    const HermitianOp h = HermitianOp::identity(2, 0.5);
    const BlochPovm q = bloch_from_effects(h, h);
    EXPECT_EQ(q.bias, 0.0);
    EXPECT_EQ(q.vec, (Vec3{0, 0, 0}));
}

TEST(BlochFromEffects, Errors) {
    const HermitianOp h = HermitianOp::identity(2, 0.5);
    try {
        bloch_from_effects(h, HermitianOp::identity(2, 0.6));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kCompleteness);
    }
    try {
        bloch_from_effects(HermitianOp::identity(3, 0.5), HermitianOp::identity(3, 0.5));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kShape);
    }
}

TEST(ValidatePovm, HalfIdentities) {
    const HermitianOp h = HermitianOp::identity(2, 0.5);
    const ValidationReport r = validate_povm(PovmTensor({2}, {h, h}), 1e-9);
    EXPECT_TRUE(r.ok);
    EXPECT_NEAR(r.min_eigenvalue, 0.5, 1e-15);
    EXPECT_EQ(r.completeness_defect, 0.0);
}

TEST(ValidatePovm, OverlongVectorFails) {
    const BlochPovm p{0.0, {1.2, 0, 0}};
    const PovmTensor t({2}, {HermitianOp::from_pauli({0.5, 0.6, 0, 0}),
                             HermitianOp::from_pauli({0.5, -0.6, 0, 0})});
    const ValidationReport r = validate_povm(t, 1e-9);
    EXPECT_FALSE(r.ok);
    EXPECT_NEAR(r.min_eigenvalue, -0.1, 1e-14);
    EXPECT_FALSE(p.is_valid());
}

TEST(ValidatePovm, MismatchedDimsIsShapeError) {
    try {
        PovmTensor({2}, {HermitianOp::identity(2), HermitianOp::identity(3)});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kShape);
    }
}

TEST(HermitianOp, RejectsNonHermitian) {
    HermitianOp::Matrix m = HermitianOp::Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    try {
        HermitianOp h(m);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kValidity);
    }
}

TEST(HermitianOp, PauliRoundTripIsExact) {
    const std::array<double, 4> c{0.125, -0.375, 0.25, 0.5};
    EXPECT_EQ(HermitianOp::from_pauli(c).pauli_coeffs(), c);
}

TEST(HermitianOp, LargeDimEigenvaluesMatchEigen) {
    testing::Gen gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = static_cast<std::size_t>(gen.integer(3, 5));
        const PovmTensor t = gen.povm(2, d);
        Eigen::SelfAdjointEigenSolver<HermitianOp::Matrix> es(t[0].entries());
        EXPECT_NEAR(t[0].min_eigenvalue(), es.eigenvalues().minCoeff(), 1e-12);
    }
}

TEST(ProbabilityVector, Invariants) {
    EXPECT_NO_THROW(ProbabilityVector({0.25, 0.75}));
    EXPECT_THROW(ProbabilityVector({0.0, 1.0}), Error);
    EXPECT_THROW(ProbabilityVector({0.3, 0.3}), Error);
    const auto u = ProbabilityVector::uniform(4);
    EXPECT_EQ(u[3], 0.25);
}

TEST(PovmTensor, RowMajorLayout) {
    const PovmTensor t = PovmTensor::zeros({2, 3, 2}, 2);
    const std::array<std::size_t, 3> idx{1, 2, 0};
    EXPECT_EQ(t.flat_index(idx), 1u * 6 + 2u * 2 + 0u);
    EXPECT_EQ(t.multi_index(10), (std::vector<std::size_t>{1, 2, 0}));
}

TEST(EffectProperties, RandomValidInputs) {
    testing::Gen gen(2024);
    for (int trial = 0; trial < 100000; ++trial) {
        const BlochPovm p = gen.general();
        const HermitianOp e1 = effect_from_bloch(p, 1);
        const HermitianOp e2 = effect_from_bloch(p, 2);
        for (const auto &e : {e1, e2}) {
            const auto ev = eig2(e);
            ASSERT_GE(ev[0], -1e-15);
            ASSERT_LE(ev[1], 1.0 + 1e-15);
        }
        ASSERT_LE((e1 + e2).max_abs_diff(HermitianOp::identity(2)), 1e-15);
        const BlochPovm q = bloch_from_effects(e1, e2);
        ASSERT_NEAR(q.bias, p.bias, 1e-12);
        for (int k = 0; k < 3; ++k) {
            ASSERT_NEAR(q.vec[k], p.vec[k], 1e-12);
        }
    }
}

}  // namespace
}  // namespace jmprob
