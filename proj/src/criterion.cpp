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

#include "jmprob/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jmprob {

namespace {

double checked_radicand(double value) {
    if (value >= 0.0) {
        return value;
    }
    if (value >= -kTolValid) {
        return 0.0;
    }
    throw Error(ErrorKind::kDomain, "h(x0, x) radicand is negative (" + std::to_string(value) + ")");
}

void check_h_args(double bias, double sharp) {
    if (!(sharp >= -kTolValid) || !(std::abs(bias) + sharp <= 1.0 + kTolValid)) {
        throw Error(ErrorKind::kDomain, "h(x0, x) needs x >= 0 and |x0| + x <= 1");
    }
}

// a0^2 / h^2 with the 0/0 case (a0 = 0, sharp unbiased) defined as 0.
double bias_ratio(double bias, double h2) {
    if (bias == 0.0) {
        return 0.0;
    }
    if (!(h2 > 0.0)) {
        throw Error(ErrorKind::kDomain, "h vanishes for a biased measurement");
    }
    return bias * bias / h2;
}

}  // namespace

double h_func(double bias, double sharp) {
    check_h_args(bias, sharp);
    const double s2 = sharp * sharp;
    const double plus = checked_radicand((1.0 + bias) * (1.0 + bias) - s2);
    const double minus = checked_radicand((1.0 - bias) * (1.0 - bias) - s2);
    return 0.5 * (std::sqrt(plus) + std::sqrt(minus));
}

double h_squared(double bias, double sharp) {
    check_h_args(bias, sharp);
    const double s2 = sharp * sharp;
    const double plus = checked_radicand((1.0 + bias) * (1.0 + bias) - s2);
    const double minus = checked_radicand((1.0 - bias) * (1.0 - bias) - s2);
    // (sqrt(P) + sqrt(Q))^2 / 4 with P + Q = 2 (1 + x0^2 - x^2).
    return 0.5 * (1.0 + bias * bias - s2) + 0.5 * std::sqrt(plus * minus);
}

CompatVerdict yu_compatible(double a0, double a, double b0, double b, double inner) {
    const double ha2 = h_squared(a0, a);
    const double hb2 = h_squared(b0, b);
    CompatVerdict v;
    v.lhs = (1.0 - ha2 - hb2) * (1.0 - bias_ratio(a0, ha2) - bias_ratio(b0, hb2));
    const double c = inner - a0 * b0;
    v.rhs = c * c;
    if (a == 0.0 || b == 0.0) {
        // A trivial measurement: the criterion factors exactly as
        // (1 - y0^2)(hx^2 - x0^2) with y the trivial one, which is >= 0 but
        // sits at 0 for |y0| = 1 where the expanded product rounds either way.
        v.margin = a == 0.0 ? (1.0 - a0 * a0) * std::max(0.0, hb2 - b0 * b0)
                            : (1.0 - b0 * b0) * std::max(0.0, ha2 - a0 * a0);
        v.lhs = v.rhs - v.margin;
    } else {
        v.margin = v.rhs - v.lhs;
    }
    v.compatible = v.margin >= 0.0;
    return v;
}

CompatVerdict yu_compatible(const BlochPovm &a, const BlochPovm &b) {
    a.check_valid();
    b.check_valid();
    // Clamp to the validity ball so h stays in its domain under rounding.
    const double sa = std::min(a.sharpness(), 1.0 - std::abs(a.bias));
    const double sb = std::min(b.sharpness(), 1.0 - std::abs(b.bias));
    return yu_compatible(a.bias, sa, b.bias, sb, dot(a.vec, b.vec));
}

double unbiased_f(const Vec3 &a, const Vec3 &b) {
    const double ab = dot(a, b);
    return dot(a, a) + dot(b, b) - ab * ab;
}

double busch_g(const Vec3 &a, const Vec3 &b) {
    return norm(a + b) + norm(a - b);
}

bool region_membership(double a, double b, double s) {
    if (a <= 0.0 || b <= 0.0) {
        return false;
    }
    // s^2 < a^-2 + b^-2 - (ab)^-2, multiplied through by (ab)^2 > 0.
    const double ab = a * b;
    return ab * ab * s * s < a * a + b * b - 1.0;
}

}  // namespace jmprob
