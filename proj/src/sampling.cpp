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

#include "jmprob/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "jmprob/quadrature.hpp"

namespace jmprob {

namespace {

constexpr std::uint64_t kSphere3Budget = 4;

// Two standard normals from two counters (Box-Muller).
std::pair<double, double> normal_pair(RngStream &rng) {
    const double u1 = rng.next_uniform_pos();
    const double u2 = rng.next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

// cap = 0 (fully biased section) still consumes its counter.
double radius_draw(RngStream &rng, double cap) {
    return cap * std::cbrt(rng.next_uniform());
}

BlochPovm sample_in_ball(RngStream &rng, double bias) {
    BlochPovm out;
    out.bias = bias;
    const double r = radius_draw(rng, 1.0 - std::abs(bias));
    const Vec3 u = sample_unit_sphere3(rng);
    out.vec = r * u;
    return out;
}

}  // namespace

void MeasureSpec::check() const {
    if (kind != Kind::kSection) {
        return;
    }
    if (!(std::abs(section_bias_a) <= 1.0) || !(std::abs(section_bias_b) <= 1.0)) {
        throw Error(ErrorKind::kValidity, "section biases must lie in [-1, 1]");
    }
}

const char *measure_kind_name(MeasureSpec::Kind kind) {
    switch (kind) {
        case MeasureSpec::Kind::kUnbiased:
            return "unbiased";
        case MeasureSpec::Kind::kGeneral:
            return "general";
        case MeasureSpec::Kind::kSection:
            return "section";
    }
    return "unknown";
}

MeasureSpec::Kind parse_measure_kind(const std::string &name) {
    if (name == "unbiased") {
        return MeasureSpec::Kind::kUnbiased;
    }
    if (name == "general") {
        return MeasureSpec::Kind::kGeneral;
    }
    if (name == "section") {
        return MeasureSpec::Kind::kSection;
    }
    throw Error(ErrorKind::kParse, "unknown measure '" + name + "'");
}

std::uint64_t sphere_counter_budget(int m) {
    return 2 * static_cast<std::uint64_t>((m + 1) / 2);
}

std::uint64_t pair_counter_budget(MeasureSpec::Kind kind) {
    // Per POVM: [bias] + radius + direction.
    const std::uint64_t per = 1 + kSphere3Budget;
    return kind == MeasureSpec::Kind::kGeneral ? 2 * (per + 1) : 2 * per;
}

std::vector<double> sample_unit_sphere(RngStream &rng, int m) {
    if (m < 2) {
        throw Error(ErrorKind::kDomain, "sphere dimension must be at least 2");
    }
    std::vector<double> v(static_cast<std::size_t>(m));
    for (int i = 0; i < m; i += 2) {
        auto [z0, z1] = normal_pair(rng);
        v[i] = z0;
        if (i + 1 < m) {
            v[i + 1] = z1;
        }
    }
    double n2 = 0.0;
    for (double x : v) {
        n2 += x * x;
    }
    if (!(n2 > 0.0)) {
        // Only reachable if every radius draw hit u1 = 1 exactly.
        std::fill(v.begin(), v.end(), 0.0);
        v[0] = 1.0;
        return v;
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (double &x : v) {
        x *= inv;
    }
    return v;
}

Vec3 sample_unit_sphere3(RngStream &rng) {
    auto [z0, z1] = normal_pair(rng);
    auto [z2, unused] = normal_pair(rng);
    (void)unused;
    const double n = std::hypot(z0, z1, z2);
    if (!(n > 0.0)) {
        return {1.0, 0.0, 0.0};
    }
    return {z0 / n, z1 / n, z2 / n};
}

double sample_sharpness(RngStream &rng, double cap) {
    if (!(cap > 0.0) || cap > 1.0) {
        throw Error(ErrorKind::kDomain, "sharpness cap must lie in (0, 1]");
    }
    return radius_draw(rng, cap);
}

double sample_general_bias(RngStream &rng) {
    const std::uint64_t bits = rng.next_bits();
    const double u = static_cast<double>(bits & ((std::uint64_t{1} << 53) - 1)) * 0x1.0p-53;
    const double t = 1.0 - std::sqrt(std::sqrt(1.0 - u));
    return (bits >> 63) ? -t : t;
}

std::pair<BlochPovm, BlochPovm> sample_pair(RngStream &rng, const MeasureSpec &spec) {
    spec.check();
    switch (spec.kind) {
        case MeasureSpec::Kind::kGeneral: {
            const double a0 = sample_general_bias(rng);
            BlochPovm a = sample_in_ball(rng, a0);
            const double b0 = sample_general_bias(rng);
            BlochPovm b = sample_in_ball(rng, b0);
            return {a, b};
        }
        case MeasureSpec::Kind::kUnbiased:
        case MeasureSpec::Kind::kSection: {
            const bool section = spec.kind == MeasureSpec::Kind::kSection;
            BlochPovm a = sample_in_ball(rng, section ? spec.section_bias_a : 0.0);
            BlochPovm b = sample_in_ball(rng, section ? spec.section_bias_b : 0.0);
            return {a, b};
        }
    }
    throw Error(ErrorKind::kValidity, "unknown measure kind");
}

double norm_constant(int m) {
    if (m < 1) {
        throw Error(ErrorKind::kDomain, "sphere dimension must be positive");
    }
    const double half = 0.5 * m;
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

namespace {

double density_constant(int m) {
    return std::exp(std::lgamma(0.5 * m) - std::lgamma(0.5 * (m - 1))) /
           std::sqrt(std::numbers::pi);
}

}  // namespace

double density_inner_product(double s, int m) {
    if (m < 2) {
        throw Error(ErrorKind::kDomain, "sphere dimension must be at least 2");
    }
    if (!(std::abs(s) <= 1.0)) {
        throw Error(ErrorKind::kDomain, "inner product must lie in [-1, 1]");
    }
    if (m == 3) {
        return 0.5;
    }
    const double base = 1.0 - s * s;
    if (m == 2 && base == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return density_constant(m) * std::pow(base, 0.5 * (m - 3));
}

double cdf_inner_product(double s, int m) {
    if (m < 2) {
        throw Error(ErrorKind::kDomain, "sphere dimension must be at least 2");
    }
    if (s <= -1.0) {
        return 0.0;
    }
    if (s >= 1.0) {
        return 1.0;
    }
    if (m == 2) {
        return 0.5 + std::asin(s) / std::numbers::pi;
    }
    if (m == 3) {
        return 0.5 * (s + 1.0);
    }
    // Integrate from the nearer endpoint; the density is symmetric.
    const double t = std::abs(s);
    auto pdf = [m](double x) { return density_inner_product(x, m); };
    const double tail = integrate(pdf, t, 1.0, {1e-13, 0.0, 200'000}).value;
    return s < 0.0 ? tail : 1.0 - tail;
}

}  // namespace jmprob
