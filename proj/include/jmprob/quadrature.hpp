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

#ifndef JMPROB_QUADRATURE_HPP_
#define JMPROB_QUADRATURE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "jmprob/types.hpp"

namespace jmprob {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    std::size_t max_evaluations = 2'000'000;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes (1, 3, 5) and the centre.
inline constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel &o) const {
        return error < o.error;
    }
};

template <class F>
Panel gauss_kronrod15(F &f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double pair = f(centre - dx) + f(centre + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) {
            gauss += kGaussWeights[j / 2] * pair;
        }
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a, b].
/// Bisects the panel with the largest |K15 - G7| until the summed estimate is
/// below max(abs_tol, rel_tol * |value|). Throws Error(kConvergence) when the
/// evaluation budget runs out first.
template <class F>
QuadResult integrate(F &&f, double a, double b, const QuadOptions &opt = {}) {
    QuadResult out;
    if (a == b) {
        return out;
    }
    if (b < a) {
        QuadResult r = integrate(f, b, a, opt);
        r.value = -r.value;
        return r;
    }
    std::vector<detail::Panel> heap{detail::gauss_kronrod15(f, a, b)};
    out.evaluations = 15;
    double settled_value = 0.0;
    double settled_error = 0.0;
    double value = heap.front().value;
    double error = heap.front().error;
    auto resum = [&] {
        value = settled_value;
        error = settled_error;
        for (const auto &p : heap) {
            value += p.value;
            error += p.error;
        }
    };
    for (;;) {
        const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
        if (error <= target || heap.empty()) {
            // Incremental sums drift; confirm against a fresh total.
            resum();
            if (error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value)) || heap.empty()) {
                break;
            }
        }
        if (out.evaluations + 30 > opt.max_evaluations) {
            throw Error(ErrorKind::kConvergence,
                        "quadrature budget exhausted (error estimate " + std::to_string(error) +
                            ", target " + std::to_string(target) + ")");
        }
        std::pop_heap(heap.begin(), heap.end());
        const detail::Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Panel at floating-point resolution; keep its estimate as is.
            settled_value += worst.value;
            settled_error += worst.error;
            continue;
        }
        const detail::Panel left = detail::gauss_kronrod15(f, worst.a, mid);
        const detail::Panel right = detail::gauss_kronrod15(f, mid, worst.b);
        out.evaluations += 30;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
    }
    out.value = value;
    out.error = error;
    return out;
}

/// Type-erased entry point for callers outside hot loops.
QuadResult integrate_fn(const std::function<double(double)> &f, double a, double b,
                        const QuadOptions &opt = {});

}  // namespace jmprob

#endif  // JMPROB_QUADRATURE_HPP_
