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

#include <cmath>
#include <numbers>

#include "jmprob/criterion.hpp"
#include "test_support.hpp"

namespace jmprob {
namespace {

TEST(HFunc, Examples) {
    EXPECT_EQ(h_func(0.0, 0.0), 1.0);
    EXPECT_EQ(h_func(0.0, 1.0), 0.0);
    // 0.5 * (sqrt(2.25 - 0.09) + sqrt(0.25 - 0.09)) = 0.5 * (1.469693846 + 0.4)
    EXPECT_NEAR(h_func(0.5, 0.3), 0.5 * (std::sqrt(2.16) + 0.4), 1e-15);
    EXPECT_NEAR(h_func(0.5, 0.3), 0.934846923, 1e-9);
}

TEST(HFunc, SquaredFormAgrees) {
    testing::Gen gen(3);
    for (int i = 0; i < 10000; ++i) {
        const double x0 = gen.uniform(-1, 1);
        const double x = gen.uniform(0, 1 - std::abs(x0));
        const double h = h_func(x0, x);
        ASSERT_NEAR(h_squared(x0, x), h * h, 1e-14);
        ASSERT_GT(h, 0.0 - 1e-15);
        ASSERT_LE(h, 1.0 + 1e-15);
    }
}

TEST(HFunc, DomainErrors) {
    EXPECT_NO_THROW(h_func(0.0, 1.0 + 1e-12));
    try {
        h_func(0.5, 0.6);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kDomain);
    }
}

TEST(YuCompatible, SelfIsCompatible) {
    testing::Gen gen(5);
    for (int i = 0; i < 10000; ++i) {
        const BlochPovm a = gen.general();
        const CompatVerdict v = yu_compatible(a, a);
        ASSERT_TRUE(v.compatible) << v.margin;
    }
    EXPECT_TRUE(yu_compatible(BlochPovm{0, {1, 0, 0}}, BlochPovm{0, {1, 0, 0}}).compatible);
}

TEST(YuCompatible, OrthogonalSharpIncompatible) {
    const BlochPovm a{0, {1, 0, 0}}, b{0, {0, 1, 0}};
    const CompatVerdict v = yu_compatible(a, b);
    EXPECT_FALSE(v.compatible);
    EXPECT_NEAR(busch_g(a.vec, b.vec), 2 * std::numbers::sqrt2, 1e-15);
}

TEST(YuCompatible, HalfBiasesAlwaysCompatible) {
    testing::Gen gen(6);
    for (int i = 0; i < 20000; ++i) {
        const double a0 = gen.uniform() < 0.5 ? 0.5 : -0.5;
        const double b0 = gen.uniform() < 0.5 ? 0.5 : -0.5;
        const BlochPovm a{a0, gen.ball(0.5)}, b{b0, gen.ball(0.5)};
        ASSERT_TRUE(yu_compatible(a, b).compatible);
    }
}

TEST(YuCompatible, PointEightOrthogonal) {
    const BlochPovm a{0, {0.8, 0, 0}}, b{0, {0, 0.8, 0}};
    EXPECT_FALSE(yu_compatible(a, b).compatible);
    EXPECT_NEAR(busch_g(a.vec, b.vec), 1.6 * std::numbers::sqrt2, 1e-15);
}

TEST(YuCompatible, MarginIsRhsMinusLhs) {
    const CompatVerdict v = yu_compatible(BlochPovm{0.1, {0.3, 0.2, 0}}, BlochPovm{-0.2, {0, 0.5, 0.1}});
    EXPECT_EQ(v.margin, v.rhs - v.lhs);
    EXPECT_EQ(v.compatible, v.margin >= 0.0);
}

// Direct evaluation of the criterion with h from its square-root form.
CompatVerdict yu_oracle(const BlochPovm &a, const BlochPovm &b) {
    auto h = [](double x0, double x) {
        return 0.5 * (std::sqrt((1 + x0) * (1 + x0) - x * x) +
                      std::sqrt((1 - x0) * (1 - x0) - x * x));
    };
    const double ha = h(a.bias, norm(a.vec)), hb = h(b.bias, norm(b.vec));
    const double ra = a.bias == 0 ? 0.0 : a.bias * a.bias / (ha * ha);
    const double rb = b.bias == 0 ? 0.0 : b.bias * b.bias / (hb * hb);
    const double lhs = (1 - ha * ha - hb * hb) * (1 - ra - rb);
    const double c = dot(a.vec, b.vec) - a.bias * b.bias;
    return {c * c >= lhs, lhs, c * c, c * c - lhs};
}

TEST(YuCompatible, MatchesDirectOracle) {
    testing::Gen gen(7);
    int checked = 0;
    for (int i = 0; i < 100000; ++i) {
        const BlochPovm a = gen.general(), b = gen.general();
        const CompatVerdict v = yu_compatible(a, b);
        const CompatVerdict o = yu_oracle(a, b);
        ASSERT_NEAR(v.lhs, o.lhs, 1e-12);
        ASSERT_NEAR(v.rhs, o.rhs, 1e-12);
        if (std::abs(o.margin) > 1e-10) {
            ASSERT_EQ(v.compatible, o.compatible);
            ++checked;
        }
    }
    EXPECT_GT(checked, 99000);
}

TEST(YuCompatible, TrivialMeasurementsAlwaysCompatible) {
    testing::Gen gen(13);
    for (int i = 0; i < 20000; ++i) {
        const double t0 = gen.integer(0, 4) == 0 ? (gen.uniform() < 0.5 ? 1.0 : -1.0)
                                                  : gen.uniform(-1, 1);
        const BlochPovm trivial{t0, {0, 0, 0}};
        const BlochPovm other = gen.general();
        const CompatVerdict v = yu_compatible(trivial, other);
        ASSERT_TRUE(v.compatible);
        ASSERT_TRUE(yu_compatible(other, trivial).compatible);
        ASSERT_NEAR(v.margin, yu_oracle(trivial, other).margin, 1e-12);
    }
}

TEST(YuCompatible, InvalidInputThrows) {
    EXPECT_THROW(yu_compatible(BlochPovm{0.5, {0.7, 0, 0}}, BlochPovm{}), Error);
}

TEST(UnbiasedF, Examples) {
    EXPECT_EQ(unbiased_f({1, 0, 0}, {0, 1, 0}), 2.0);
    EXPECT_NEAR(unbiased_f({0.9, 0, 0}, {0, 0.9, 0}), 1.62, 1e-15);
    testing::Gen gen(8);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 a = gen.ball();
        const double r2 = dot(a, a);
        ASSERT_NEAR(unbiased_f(a, a), 2 * r2 - r2 * r2, 1e-15);
        ASSERT_LE(unbiased_f(a, a), 1.0);
    }
}

TEST(BuschG, Examples) {
    EXPECT_EQ(busch_g({1, 0, 0}, {1, 0, 0}), 2.0);
    EXPECT_TRUE(yu_compatible(BlochPovm{0, {1, 0, 0}}, BlochPovm{0, {1, 0, 0}}).compatible);
    EXPECT_NEAR(busch_g({0.6, 0, 0}, {0, 0.6, 0}), 1.2 * std::numbers::sqrt2, 1e-15);
    EXPECT_TRUE(yu_compatible(BlochPovm{0, {0.6, 0, 0}}, BlochPovm{0, {0, 0.6, 0}}).compatible);
}

TEST(RegionMembership, Examples) {
    EXPECT_TRUE(region_membership(1, 1, 0));
    for (double s : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
        EXPECT_FALSE(region_membership(0.5, 0.5, s));
    }
    EXPECT_TRUE(region_membership(0.9, 0.9, 0.5));
    EXPECT_FALSE(region_membership(0.0, 1.0, 0.0));
    EXPECT_FALSE(region_membership(1.0, 0.0, 0.0));
}

TEST(UnbiasedProperties, EquivalencesOnRandomPairs) {
    testing::Gen gen(9);
    for (int i = 0; i < 100000; ++i) {
        const Vec3 a = gen.ball(), b = gen.ball();
        const double f = unbiased_f(a, b);
        const double g = busch_g(a, b);
        if (std::abs(f - 1) < 1e-12) {
            continue;
        }
        const bool incompatible = f > 1;
        ASSERT_EQ(g > 2, incompatible) << f << " " << g;
        ASSERT_EQ(yu_compatible(BlochPovm{0, a}, BlochPovm{0, b}).compatible, !incompatible);
        const double na = norm(a), nb = norm(b);
        ASSERT_EQ(region_membership(na, nb, dot(a, b) / (na * nb)), incompatible);
    }
}

TEST(UnbiasedProperties, ScaleMonotonicity) {
    testing::Gen gen(10);
    int compatible_pairs = 0;
    for (int i = 0; i < 5000; ++i) {
        const Vec3 a = gen.ball(), b = gen.ball();
        if (busch_g(a, b) > 2) {
            continue;
        }
        ++compatible_pairs;
        for (int k = 0; k <= 20; ++k) {
            const double t = k / 20.0;
            ASSERT_LE(busch_g(t * a, t * b), 2.0 + 1e-15);
            ASSERT_TRUE(yu_compatible(BlochPovm{0, t * a}, BlochPovm{0, t * b}).compatible);
        }
    }
    EXPECT_GT(compatible_pairs, 1000);
}

TEST(YuCompatible, SymmetryAndRotationInvariance) {
    testing::Gen gen(12);
    for (int i = 0; i < 20000; ++i) {
        const BlochPovm a = gen.general(), b = gen.general();
        const CompatVerdict ab = yu_compatible(a, b);
        const CompatVerdict ba = yu_compatible(b, a);
        ASSERT_EQ(ab.compatible, ba.compatible);
        ASSERT_NEAR(ab.margin, ba.margin, 1e-14);
        const auto r = gen.rotation();
        const CompatVerdict rot =
            yu_compatible(BlochPovm{a.bias, testing::rotate(r, a.vec)},
                          BlochPovm{b.bias, testing::rotate(r, b.vec)});
        ASSERT_NEAR(rot.margin, ab.margin, 1e-12);
        if (std::abs(ab.margin) > 1e-10) {
            ASSERT_EQ(rot.compatible, ab.compatible);
        }
    }
}

}  // namespace
}  // namespace jmprob
