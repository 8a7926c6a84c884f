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

#include "jmprob/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jmprob/criterion.hpp"
#include "jmprob/parallel.hpp"
#include "jmprob/quadrature.hpp"

namespace jmprob {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kBlock = std::uint64_t{1} << 15;
// Expectation sampling gets its own stream so it never overlaps prob_mc.
constexpr std::uint64_t kExpectationStream = 0x4578'7065'6374ULL;

std::uint64_t block_count(std::uint64_t n) {
    return (n + kBlock - 1) / kBlock;
}

// Splits an overall tolerance across three nesting levels.
struct NestedTol {
    QuadOptions outer, middle, inner;
    explicit NestedTol(double tol) {
        outer = {0.5 * tol, 0.0, 4'000'000};
        middle = {0.25 * tol, 0.0, 400'000};
        inner = {0.125 * tol, 0.0, 100'000};
    }
};

EstimateResult quadrature_result(double value, std::uint64_t evaluations) {
    EstimateResult r;
    r.value = value;
    r.count = evaluations;
    r.method = EstimateMethod::kQuadrature;
    return r;
}

double clamp_radicand(double x) {
    return x < 0.0 && x >= -1e-12 ? 0.0 : x;
}

// Nested integral of w(a, b, s) over the unbiased incompatible region.
template <class W>
QuadResult integrate_unbiased_region(W weight, double tol) {
    const NestedTol t(tol);
    std::uint64_t evals = 0;
    auto over_a = [&](double a) {
        auto over_b = [&](double b) {
            const double s_max = std::sqrt(std::max(0.0, a * a + b * b - 1.0)) / (a * b);
            auto over_s = [&](double s) {
                ++evals;
                return weight(a, b, s);
            };
            return integrate(over_s, -s_max, s_max, t.inner).value;
        };
        return integrate(over_b, std::sqrt(1.0 - a * a), 1.0, t.middle).value;
    };
    QuadResult r = integrate(over_a, 0.0, 1.0, t.outer);
    r.evaluations = evals;
    return r;
}

}  // namespace

const char *method_name(EstimateMethod m) {
    switch (m) {
        case EstimateMethod::kMonteCarlo:
            return "mc";
        case EstimateMethod::kQuadrature:
            return "quadrature";
        case EstimateMethod::kClosedForm:
            return "closed_form";
    }
    return "unknown";
}

double vol_V() {
    return 2.0 * kPi / 3.0;
}

double vol_pairs() {
    return vol_V() * vol_V();
}

double vol_section(double a0, double b0) {
    if (!(std::abs(a0) <= 1.0) || !(std::abs(b0) <= 1.0)) {
        throw Error(ErrorKind::kDomain, "section biases must lie in [-1, 1]");
    }
    const double ball = 4.0 * kPi / 3.0;
    const double ra = 1.0 - std::abs(a0);
    const double rb = 1.0 - std::abs(b0);
    return ball * ball * ra * ra * ra * rb * rb * rb;
}

EstimateResult vol_V_quadrature(double tol) {
    auto slice = [](double x0) {
        const double r = 1.0 - std::abs(x0);
        return 4.0 * kPi / 3.0 * r * r * r;
    };
    // Split at the kink x0 = 0.
    QuadResult left = integrate(slice, -1.0, 0.0, {0.5 * tol});
    QuadResult right = integrate(slice, 0.0, 1.0, {0.5 * tol});
    return quadrature_result(left.value + right.value, left.evaluations + right.evaluations);
}

VolumeChain unbiased_volume_chain_closed_form() {
    // int_0^1 a^2 da = 1/3;  int_0^1 a^2 (a^2 / 3) da = 1/15.
    const double n3 = 4.0 * kPi;
    VolumeChain c;
    c.full = n3 * n3 * (1.0 / 3.0) * (1.0 / 3.0);
    c.njm = n3 * n3 / 15.0;
    c.ratio = 9.0 / 15.0;
    return c;
}

VolumeChain unbiased_volume_chain_quadrature(double tol) {
    const double n3 = norm_constant(3);
    VolumeChain c;
    auto square = [](double a) { return a * a; };
    QuadResult radial = integrate(square, 0.0, 1.0, {tol});
    // int over the sphere pair of p_3(s) ds over [-1, 1] is 1.
    QuadResult s_full = integrate([](double s) { return density_inner_product(s, 3); }, -1.0, 1.0,
                                  {tol});
    c.full = n3 * n3 * radial.value * radial.value * s_full.value;
    QuadResult njm = integrate_unbiased_region(
        [](double a, double b, double s) { return a * a * b * b * density_inner_product(s, 3); },
        tol);
    c.njm = n3 * n3 * njm.value;
    c.ratio = c.njm / c.full;
    c.evaluations = radial.evaluations + s_full.evaluations + njm.evaluations;
    return c;
}

EstimateResult prob_unbiased_quadrature(double tol) {
    if (!(tol > 0.0)) {
        throw Error(ErrorKind::kDomain, "tolerance must be positive");
    }
    QuadResult r =
        integrate_unbiased_region([](double a, double b, double) { return 4.5 * a * a * b * b; }, tol);
    return quadrature_result(r.value, r.evaluations);
}

EstimateResult expectation_f_restricted(double tol) {
    QuadResult r = integrate_unbiased_region(
        [](double a, double b, double s) {
            const double ab = a * b;
            return (a * a + b * b - ab * ab * s * s) * 4.5 * a * a * b * b;
        },
        tol);
    return quadrature_result(r.value, r.evaluations);
}

namespace {

// Full-domain integral of w(a, b, s) (9/2) a^2 b^2, with the b-range split at
// b = a where |a - b| has its kink.
template <class W>
EstimateResult full_domain_expectation(W weight, double tol) {
    const NestedTol t(tol);
    std::uint64_t evals = 0;
    auto over_a = [&](double a) {
        auto over_b = [&](double b) {
            auto over_s = [&](double s) {
                ++evals;
                return weight(a, b, s);
            };
            return 4.5 * a * a * b * b * integrate(over_s, -1.0, 1.0, t.inner).value;
        };
        return integrate(over_b, 0.0, a, t.middle).value + integrate(over_b, a, 1.0, t.middle).value;
    };
    QuadResult r = integrate(over_a, 0.0, 1.0, t.outer);
    return quadrature_result(r.value, evals);
}

}  // namespace

EstimateResult expectation_f(double tol) {
    return full_domain_expectation(
        [](double a, double b, double s) {
            const double ab = a * b;
            return a * a + b * b - ab * ab * s * s;
        },
        tol);
}

EstimateResult expectation_g(double tol) {
    return full_domain_expectation(
        [](double a, double b, double s) {
            const double base = a * a + b * b;
            const double cross = 2.0 * a * b * s;
            return std::sqrt(std::max(0.0, base + cross)) + std::sqrt(std::max(0.0, base - cross));
        },
        tol);
}

double lambda_section_s_max(double lambda, double b) {
    const double l = std::abs(lambda);
    return std::sqrt(std::max(0.0, clamp_radicand((b * b - l) / (b * b * (1.0 - l)))));
}

double lambda_section_a_lower(double lambda, double b, double s) {
    const double l = std::abs(lambda);
    const double b2 = b * b;
    const double b4 = b2 * b2;
    const double s2 = s * s;
    const double l2 = l * l;
    const double num = b2 - b4 - b2 * s2 + b4 * s2 - l2 + b2 * l2 + b2 * s2 * l2 - b4 * s2 * l2;
    const double den = b2 * (1.0 - s2) * (1.0 - b2 * s2);
    const double r = clamp_radicand(num / den);
    return r > 0.0 ? std::sqrt(r) : 0.0;
}

EstimateResult prob_lambda_section(double lambda, double tol) {
    const double l = std::abs(lambda);
    if (!(l < 1.0)) {
        throw Error(ErrorKind::kDomain, "|lambda| must be < 1");
    }
    if (!(tol > 0.0)) {
        throw Error(ErrorKind::kDomain, "tolerance must be positive");
    }
    const double a_max = 1.0 - l;
    const double norm = 4.5 / (a_max * a_max * a_max);
    // Scale the tolerance into the un-normalised integral.
    const NestedTol t(tol / norm);
    std::uint64_t evals = 0;
    auto over_b = [&](double b) {
        const double s_max = lambda_section_s_max(l, b);
        auto over_s = [&](double s) {
            const double a_lo = std::min(lambda_section_a_lower(l, b, s), a_max);
            auto over_a = [&](double a) {
                ++evals;
                return a * a * b * b;
            };
            return integrate(over_a, a_lo, a_max, t.inner).value;
        };
        return integrate(over_s, -s_max, s_max, t.middle).value;
    };
    QuadResult r = integrate(over_b, std::sqrt(l), 1.0, t.outer);
    return quadrature_result(norm * r.value, evals);
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t count_incompatible(const MeasureSpec &spec, std::uint64_t seed,
                                 std::uint64_t stream_id, std::uint64_t begin, std::uint64_t end) {
    const std::uint64_t budget = pair_counter_budget(spec.kind);
    RngStream rng(seed, stream_id, begin * budget);
    std::uint64_t count = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
        auto [a, b] = sample_pair(rng, spec);
        if (!yu_compatible(a, b).compatible) {
            ++count;
        }
    }
    return count;
}

EstimateResult binomial_result(std::uint64_t hits, std::uint64_t n, std::uint64_t seed) {
    EstimateResult r;
    r.value = static_cast<double>(hits) / static_cast<double>(n);
    r.std_error = std::sqrt(r.value * (1.0 - r.value) / static_cast<double>(n));
    r.count = n;
    r.seed = seed;
    r.method = EstimateMethod::kMonteCarlo;
    return r;
}

void check_samples(std::uint64_t n) {
    if (n == 0) {
        throw Error(ErrorKind::kDomain, "sample count must be at least 1");
    }
}

}  // namespace

EstimateResult prob_mc(const MeasureSpec &spec, std::uint64_t n, const McOptions &opt,
                       std::uint64_t stream_id) {
    check_samples(n);
    spec.check();
    const std::uint64_t blocks = block_count(n);
    std::vector<std::uint64_t> hits(blocks, 0);
    parallel_for(blocks, opt.threads, [&](std::size_t k) {
        const std::uint64_t begin = k * kBlock;
        hits[k] = count_incompatible(spec, opt.seed, stream_id, begin, std::min(n, begin + kBlock));
    });
    std::uint64_t total = 0;
    for (std::uint64_t h : hits) {
        total += h;
    }
    return binomial_result(total, n, opt.seed);
}

EstimateResult vol_njm_mc(std::uint64_t n, const McOptions &opt) {
    EstimateResult r = prob_mc(MeasureSpec::general(), n, opt);
    r.value *= vol_pairs();
    r.std_error *= vol_pairs();
    return r;
}

ExpectationPair expectation_mc(std::uint64_t n, const McOptions &opt) {
    check_samples(n);
    const std::uint64_t blocks = block_count(n);
    const std::uint64_t budget = pair_counter_budget(MeasureSpec::Kind::kUnbiased);
    struct Sums {
        double f = 0, f2 = 0, g = 0, g2 = 0;
    };
    std::vector<Sums> sums(blocks);
    parallel_for(blocks, opt.threads, [&](std::size_t k) {
        const std::uint64_t begin = k * kBlock;
        const std::uint64_t end = std::min(n, begin + kBlock);
        RngStream rng(opt.seed, kExpectationStream, begin * budget);
        Sums s;
        for (std::uint64_t i = begin; i < end; ++i) {
            auto [a, b] = sample_pair(rng, MeasureSpec::unbiased());
            const double f = unbiased_f(a.vec, b.vec);
            const double g = busch_g(a.vec, b.vec);
            s.f += f;
            s.f2 += f * f;
            s.g += g;
            s.g2 += g * g;
        }
        sums[k] = s;
    });
    Sums total;
    for (const auto &s : sums) {
        total.f += s.f;
        total.f2 += s.f2;
        total.g += s.g;
        total.g2 += s.g2;
    }
    const double dn = static_cast<double>(n);
    auto make = [&](double sum, double sum2) {
        EstimateResult r;
        r.value = sum / dn;
        const double var = n > 1 ? std::max(0.0, (sum2 - sum * sum / dn) / (dn - 1.0)) : 0.0;
        r.std_error = std::sqrt(var / dn);
        r.count = n;
        r.seed = opt.seed;
        r.method = EstimateMethod::kMonteCarlo;
        return r;
    };
    return {make(total.f, total.f2), make(total.g, total.g2)};
}

std::vector<double> grid_nodes(int resolution) {
    if (resolution < 2) {
        throw Error(ErrorKind::kDomain, "grid resolution must be at least 2");
    }
    std::vector<double> nodes(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i) {
        nodes[i] = -1.0 + 2.0 * i / (resolution - 1);
    }
    // Exact symmetry about 0 so sign-flipped cells share |bias| bit for bit.
    for (int i = 0; i < resolution / 2; ++i) {
        nodes[resolution - 1 - i] = -nodes[i];
    }
    if (resolution % 2 == 1) {
        nodes[resolution / 2] = 0.0;
    }
    return nodes;
}

ProbabilityGrid prob_grid(const std::vector<double> &a0_nodes, const std::vector<double> &b0_nodes,
                          std::uint64_t n_per_cell, const McOptions &opt) {
    check_samples(n_per_cell);
    ProbabilityGrid grid;
    grid.a0_nodes = a0_nodes;
    grid.b0_nodes = b0_nodes;
    const std::size_t nb = b0_nodes.size();
    grid.values.resize(a0_nodes.size() * nb);
    parallel_for(grid.values.size(), opt.threads, [&](std::size_t cell) {
        const MeasureSpec spec = MeasureSpec::section(a0_nodes[cell / nb], b0_nodes[cell % nb]);
        const std::uint64_t hits = count_incompatible(spec, opt.seed, 1 + cell, 0, n_per_cell);
        grid.values[cell] = binomial_result(hits, n_per_cell, opt.seed);
    });
    return grid;
}

ProbabilityGrid prob_grid(int resolution, std::uint64_t n_per_cell, const McOptions &opt) {
    if (resolution < 3) {
        throw Error(ErrorKind::kDomain, "grid resolution must be at least 3");
    }
    const auto nodes = grid_nodes(resolution);
    return prob_grid(nodes, nodes, n_per_cell, opt);
}

}  // namespace jmprob
