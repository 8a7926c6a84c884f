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

#ifndef JMPROB_CRITERION_HPP_
#define JMPROB_CRITERION_HPP_

#include "jmprob/types.hpp"

namespace jmprob {

/// Outcome of the closed-form compatibility test for two binary qubit POVMs.
/// `margin = rhs - lhs`; the pair is compatible iff margin >= 0.
struct CompatVerdict {
    bool compatible = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
};

/// h(x0, x) = 1/2 [ sqrt((1 + x0)^2 - x^2) + sqrt((1 - x0)^2 - x^2) ].
/// Radicands within [-kTolValid, 0] are clamped to zero; anything below throws
/// Error(kDomain).
double h_func(double bias, double sharp);

/// h(x0, x)^2 evaluated without the square-root round trip, so that
/// h(0, x)^2 == 1 - x^2 up to one rounding.
double h_squared(double bias, double sharp);

/// General qubit criterion:
///   (1 - hA^2 - hB^2)(1 - a0^2/hA^2 - b0^2/hB^2) <= (<a,b> - a0 b0)^2.
CompatVerdict yu_compatible(const BlochPovm &a, const BlochPovm &b);

/// Same test from the five scalars the criterion depends on. `inner` is
/// <a, b>, not the cosine. When a or b is zero the margin is evaluated in the
/// factored form (1 - y0^2)(hx^2 - x0^2), and lhs is reported as rhs - margin.
CompatVerdict yu_compatible(double a0, double a, double b0, double b, double inner);

/// f(a, b) = |a|^2 + |b|^2 - <a,b>^2; an unbiased pair is incompatible iff f > 1.
double unbiased_f(const Vec3 &a, const Vec3 &b);

/// g(a, b) = |a + b| + |a - b|; an unbiased pair is incompatible iff g > 2.
double busch_g(const Vec3 &a, const Vec3 &b);

/// True iff (a, b, s) = (|a|, |b|, cosine) lies in the incompatible region
///   s^2 < a^-2 + b^-2 - (ab)^-2.
bool region_membership(double a, double b, double s);

}  // namespace jmprob

#endif  // JMPROB_CRITERION_HPP_
