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
#include <numbers>
#include <vector>

#include "jmprob/criterion.hpp"
#include "jmprob/parallel.hpp"
#include "jmprob/quadrature.hpp"
#include "jmprob/rng.hpp"
#include "jmprob/sampling.hpp"

namespace jmprob {
namespace {

TEST(Philox, KnownAnswers) {
    using W = std::array<std::uint32_t, 4>;
    EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}),
              (W{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                         {0xffffffff, 0xffffffff}),
              (W{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(RngStream, CounterAddressing) {
    RngStream a(42, 3);
    const std::uint64_t first = a.next_bits();
    a.next_bits();
    const std::uint64_t third = a.next_bits();
    const RngStream b(42, 3);
    EXPECT_EQ(b.bits_at(0), first);
    EXPECT_EQ(b.bits_at(2), third);
    EXPECT_NE(RngStream(42, 4).bits_at(0), first);
    EXPECT_NE(RngStream(43, 3).bits_at(0), first);
    RngStream c(42, 3);
    c.seek(2);
    EXPECT_EQ(c.next_bits(), third);
    EXPECT_EQ(c.counter(), 3u);
}

TEST(RngStream, UniformRanges) {
    RngStream r(1, 0);
    double sum = 0;
    for (int i = 0; i < 100000; ++i) {
        const double u = r.next_uniform();
        const double v = r.next_uniform_pos();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        ASSERT_GT(v, 0.0);
        ASSERT_LE(v, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / 100000, 0.5, 5 * std::sqrt(1.0 / 12 / 100000));
}

TEST(SampleUnitSphere, NormAndBudget) {
    for (int m : {2, 3, 4, 5, 6}) {
        RngStream r(5, 0);
        const auto v = sample_unit_sphere(r, m);
        ASSERT_EQ(v.size(), static_cast<std::size_t>(m));
        double s = 0;
        for (double x : v) {
            s += x * x;
        }
        EXPECT_NEAR(std::sqrt(s), 1.0, 1e-12);
        EXPECT_EQ(r.counter(), sphere_counter_budget(m));
    }
    RngStream r(5, 0);
    EXPECT_THROW(sample_unit_sphere(r, 1), Error);
}

TEST(SampleUnitSphere, Moments) {
    const int n = 1000000;
    RngStream r(77, 0);
    double mean[3] = {0, 0, 0};
    double z2 = 0;
    for (int i = 0; i < n; ++i) {
        const Vec3 v = sample_unit_sphere3(r);
        ASSERT_NEAR(norm(v), 1.0, 1e-12);
        for (int k = 0; k < 3; ++k) {
            mean[k] += v[k];
        }
        z2 += v[2] * v[2];
    }
    const double sigma = 1.0 / std::sqrt(3.0 * n);
    for (double m : mean) {
        EXPECT_NEAR(m / n, 0.0, 5 * sigma);
    }
    // Var(u_z^2) = 1/5 - 1/9.
    EXPECT_NEAR(z2 / n, 1.0 / 3, 5 * std::sqrt((0.2 - 1.0 / 9) / n));
}

TEST(SampleSharpness, MedianAndMoment) {
    const int n = 200000;
    RngStream r(3, 0);
    std::vector<double> xs(n);
    double r2 = 0;
    for (auto &x : xs) {
        x = sample_sharpness(r, 1.0);
        r2 += x * x;
    }
    std::nth_element(xs.begin(), xs.begin() + n / 2, xs.end());
    EXPECT_NEAR(xs[n / 2], std::pow(0.5, 1.0 / 3), 0.005);
    // E[r^4] = 3/7, so Var(r^2) = 3/7 - 9/25.
    EXPECT_NEAR(r2 / n, 0.6, 5 * std::sqrt((3.0 / 7 - 0.36) / n));
}

TEST(SampleSharpness, CapAndErrors) {
    RngStream r(4, 0);
    for (int i = 0; i < 10000; ++i) {
        const double x = sample_sharpness(r, 0.5);
        ASSERT_GE(x, 0.0);
        ASSERT_LE(x, 0.5);
    }
    EXPECT_THROW(sample_sharpness(r, 0.0), Error);
    EXPECT_THROW(sample_sharpness(r, 1.5), Error);
}

TEST(SamplePair, UnbiasedRadialMoments) {
    const int n = 500000;
    RngStream r(8, 0);
    double a2 = 0, a3 = 0;
    for (int i = 0; i < n; ++i) {
        const auto [a, b] = sample_pair(r, MeasureSpec::unbiased());
        ASSERT_EQ(a.bias, 0.0);
        ASSERT_EQ(b.bias, 0.0);
        const double x = a.sharpness();
        a2 += x * x;
        a3 += x * x * x;
    }
    EXPECT_NEAR(a2 / n, 0.6, 5 * std::sqrt((3.0 / 7 - 0.36) / n));
    // E[r^6] = 1/3, so Var(r^3) = 1/3 - 1/4.
    EXPECT_NEAR(a3 / n, 0.5, 5 * std::sqrt((1.0 / 3 - 0.25) / n));
}

TEST(SamplePair, GeneralBiasMean) {
    const int n = 500000;
    RngStream r(9, 0);
    double m = 0, m2 = 0, signed_sum = 0;
    for (int i = 0; i < n; ++i) {
        const auto [a, b] = sample_pair(r, MeasureSpec::general());
        ASSERT_TRUE(a.is_valid());
        ASSERT_TRUE(b.is_valid());
        m += std::abs(a.bias);
        m2 += a.bias * a.bias;
        signed_sum += a.bias;
    }
    // Density 4 (1 - t)^3: E[t] = 1/5, E[t^2] = 1/15.
    const double var = 1.0 / 15 - 1.0 / 25;
    EXPECT_NEAR(m / n, 0.2, 5 * std::sqrt(var / n));
    EXPECT_NEAR(signed_sum / n, 0.0, 5 * std::sqrt(1.0 / 15 / n));
    EXPECT_NEAR(m2 / n, 1.0 / 15, 0.001);
}

TEST(SamplePair, SectionRadiusCap) {
    RngStream r(10, 0);
    for (int i = 0; i < 20000; ++i) {
        const auto [a, b] = sample_pair(r, MeasureSpec::section(0.9, 0.9));
        ASSERT_EQ(a.bias, 0.9);
        ASSERT_LE(a.sharpness(), 0.1 + 1e-15);
        ASSERT_LE(b.sharpness(), 0.1 + 1e-15);
    }
}

TEST(SamplePair, SectionZeroEqualsUnbiasedBitwise) {
    RngStream r1(11, 5), r2(11, 5);
    for (int i = 0; i < 10000; ++i) {
        const auto p1 = sample_pair(r1, MeasureSpec::unbiased());
        const auto p2 = sample_pair(r2, MeasureSpec::section(0.0, 0.0));
        ASSERT_EQ(p1.first, p2.first);
        ASSERT_EQ(p1.second, p2.second);
    }
}

TEST(SamplePair, FixedCounterBudget) {
    for (auto spec : {MeasureSpec::unbiased(), MeasureSpec::general(),
                      MeasureSpec::section(0.3, -0.2)}) {
        RngStream r(12, 0);
        for (int i = 0; i < 100; ++i) {
            sample_pair(r, spec);
            ASSERT_LE(r.counter(), (i + 1) * pair_counter_budget(spec.kind));
            r.seek((i + 1) * pair_counter_budget(spec.kind));
        }
    }
}

TEST(SamplePair, InvalidSpec) {
    RngStream r(1, 0);
    EXPECT_THROW(sample_pair(r, MeasureSpec::section(1.5, 0)), Error);
    EXPECT_THROW(parse_measure_kind("uniform"), Error);
    EXPECT_EQ(parse_measure_kind("general"), MeasureSpec::Kind::kGeneral);
}

TEST(Density, Examples) {
    for (double s : {-1.0, -0.4, 0.0, 0.9, 1.0}) {
        EXPECT_EQ(density_inner_product(s, 3), 0.5);
    }
    EXPECT_NEAR(density_inner_product(0.0, 4), 2.0 / std::numbers::pi, 1e-15);
    EXPECT_TRUE(std::isinf(density_inner_product(1.0, 2)));
    EXPECT_NEAR(density_inner_product(0.0, 2), 1.0 / std::numbers::pi, 1e-15);
}

TEST(Density, NormalisedByQuadrature) {
    for (int m : {3, 4, 5, 6, 9}) {
        const auto r = integrate([m](double s) { return density_inner_product(s, m); }, -1.0,
                                 1.0, {1e-12, 0.0, 2'000'000});
        EXPECT_NEAR(r.value, 1.0, 1e-10) << m;
    }
}

TEST(Density, CdfMatchesQuadrature) {
    for (int m : {2, 3, 4, 6}) {
        EXPECT_NEAR(cdf_inner_product(-1.0, m), 0.0, 1e-12);
        EXPECT_NEAR(cdf_inner_product(0.0, m), 0.5, 1e-10);
        EXPECT_NEAR(cdf_inner_product(1.0, m), 1.0, 1e-10);
    }
    EXPECT_NEAR(cdf_inner_product(0.5, 2), 1.0 - std::acos(0.5) / std::numbers::pi, 1e-14);
    // m = 4: F(s) = 1/2 + (s sqrt(1 - s^2) + asin s) / pi.
    for (double s : {-0.7, 0.2, 0.6}) {
        EXPECT_NEAR(cdf_inner_product(s, 4),
                    0.5 + (s * std::sqrt(1 - s * s) + std::asin(s)) / std::numbers::pi, 1e-9);
    }
}

TEST(NormConstant, Examples) {
    EXPECT_NEAR(norm_constant(3), 4 * std::numbers::pi, 1e-12);
    EXPECT_NEAR(norm_constant(2), 2 * std::numbers::pi, 1e-12);
    EXPECT_NEAR(norm_constant(4), 2 * std::numbers::pi * std::numbers::pi, 1e-12);
    EXPECT_NEAR(norm_constant(1), 2.0, 1e-14);
}

TEST(Quadrature, PolynomialAndSqrtEdge) {
    const auto r = integrate([](double x) { return x * x * x; }, 0.0, 2.0);
    EXPECT_NEAR(r.value, 4.0, 1e-13);
    const auto s = integrate([](double x) { return std::sqrt(1 - x * x); }, -1.0, 1.0,
                             {1e-12, 0.0, 2'000'000});
    EXPECT_NEAR(s.value, std::numbers::pi / 2, 1e-11);
    const auto rev = integrate_fn([](double x) { return x; }, 1.0, 0.0);
    EXPECT_NEAR(rev.value, -0.5, 1e-15);
}

TEST(Quadrature, BudgetExhaustionThrows) {
    try {
        integrate([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)); }, 0.0, 1.0,
                  {1e-15, 0.0, 3000});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kConvergence);
    }
}

TEST(ParallelFor, CoversAllAndRethrows) {
    std::vector<int> hit(1000, 0);
    parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
    EXPECT_EQ(std::count(hit.begin(), hit.end(), 1), 1000);
    EXPECT_THROW(parallel_for(10, 3,
                              [](std::size_t i) {
                                  if (i == 7) {
                                      throw Error(ErrorKind::kDomain, "boom");
                                  }
                              }),
                 Error);
    EXPECT_GE(resolve_threads(0), 1u);
}

}  // namespace
}  // namespace jmprob
