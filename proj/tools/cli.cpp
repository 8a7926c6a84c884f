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

#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "jmprob/criterion.hpp"
#include "jmprob/estimate.hpp"
#include "jmprob/joint.hpp"
#include "jmprob/json_io.hpp"
#include "jmprob/sampling.hpp"

namespace jmprob::cli {

namespace {

using nlohmann::json;

struct Config {
    std::vector<std::string> inputs;
    std::optional<std::uint64_t> seed;
    std::uint64_t samples = 1'000'000;
    std::string measure = "unbiased";
    std::string method = "mc";
    std::string quantity = "prob";
    double a0 = 0.0;
    double b0 = 0.0;
    std::optional<double> lambda;
    int resolution = 0;
    unsigned threads = 0;
    double tol = 0.0;
    std::string out_path;
    std::string format;
    int m = 3;
    double s = 0.0;
};

class Output {
   public:
    Output(const Config &cfg, std::ostream &out) : cfg_(cfg), out_(out) {
    }
    void emit(const std::string &text) {
        if (cfg_.out_path.empty()) {
            out_ << text;
        } else {
            write_text_file(cfg_.out_path, text);
        }
    }
    void emit(const json &j) {
        emit(j.dump(2) + "\n");
    }

   private:
    const Config &cfg_;
    std::ostream &out_;
};

std::uint64_t require_seed(const Config &cfg) {
    if (!cfg.seed) {
        throw Error(ErrorKind::kPrecondition, "--seed is required for randomized commands");
    }
    return *cfg.seed;
}

MeasureSpec make_spec(const Config &cfg) {
    switch (parse_measure_kind(cfg.measure)) {
        case MeasureSpec::Kind::kUnbiased:
            return MeasureSpec::unbiased();
        case MeasureSpec::Kind::kGeneral:
            return MeasureSpec::general();
        case MeasureSpec::Kind::kSection:
            break;
    }
    if (cfg.lambda) {
        return MeasureSpec::section(*cfg.lambda, 0.0);
    }
    return MeasureSpec::section(cfg.a0, cfg.b0);
}

std::string text_or_json(const Config &cfg, const json &j, const std::string &text) {
    return cfg.format == "text" ? text : j.dump(2) + "\n";
}

int cmd_check(const Config &cfg, Output &out) {
    const BlochPovm a = bloch_povm_from_json(read_json_file(cfg.inputs.at(0)));
    const BlochPovm b = bloch_povm_from_json(read_json_file(cfg.inputs.at(1)));
    const CompatVerdict v = yu_compatible(a, b);
    std::ostringstream text;
    text << (v.compatible ? "compatible" : "incompatible") << " (lhs " << format_g9(v.lhs)
         << ", rhs " << format_g9(v.rhs) << ", margin " << format_g9(v.margin) << ")\n";
    out.emit(text_or_json(cfg, to_json(v), text.str()));
    return v.compatible ? kExitCompatible : kExitIncompatible;
}

int cmd_witness(const Config &cfg, Output &out, std::ostream &err) {
    const BlochPovm a = bloch_povm_from_json(read_json_file(cfg.inputs.at(0)));
    const BlochPovm b = bloch_povm_from_json(read_json_file(cfg.inputs.at(1)));
    a.check_valid();
    b.check_valid();
    std::optional<PovmTensor> joint;
    if (a.bias == 0.0 && b.bias == 0.0) {
        if (auto w = construct_unbiased_witness(a, b)) {
            joint = std::move(w->joint);
        }
    } else {
        OracleOptions opt;
        opt.resolution = cfg.resolution > 0 ? cfg.resolution : 32;
        opt.threads = cfg.threads;
        if (auto noise = feasibility_oracle(a, b, 0.5, 0.5, opt)) {
            joint = build_M_qubit(a, b, 0.5, 0.5, *noise);
        }
    }
    if (!joint) {
        err << "no joint measurement found";
        if (a.bias != 0.0 || b.bias != 0.0) {
            err << " on the noise grid (verdict margin " << format_g9(yu_compatible(a, b).margin)
                << ")";
        }
        err << "\n";
        return kExitIncompatible;
    }
    out.emit(to_json(*joint));
    return kExitCompatible;
}

int cmd_validate(const Config &cfg, Output &out) {
    const PovmTensor t = povm_tensor_from_json(read_json_file(cfg.inputs.at(0)));
    const ValidationReport r = validate_povm(t, cfg.tol > 0.0 ? cfg.tol : kTolPsd);
    std::ostringstream text;
    text << (r.ok ? "valid" : "invalid") << " (min eigenvalue " << format_g9(r.min_eigenvalue)
         << ", completeness defect " << format_g9(r.completeness_defect) << ")\n";
    out.emit(text_or_json(cfg, to_json(r), text.str()));
    return r.ok ? kExitCompatible : kExitIncompatible;
}

int cmd_sample(const Config &cfg, Output &out) {
    const std::uint64_t seed = require_seed(cfg);
    const MeasureSpec spec = make_spec(cfg);
    RngStream rng(seed, 0);
    if (cfg.format == "json") {
        json rows = json::array();
        for (std::uint64_t i = 0; i < cfg.samples; ++i) {
            auto [a, b] = sample_pair(rng, spec);
            rows.push_back({{"a", to_json(a)}, {"b", to_json(b)}});
        }
        out.emit(rows);
        return kExitCompatible;
    }
    std::ostringstream csv;
    csv << "a0,ax,ay,az,b0,bx,by,bz\n";
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        auto [a, b] = sample_pair(rng, spec);
        csv << format_g9(a.bias);
        for (double x : a.vec) {
            csv << ',' << format_g9(x);
        }
        csv << ',' << format_g9(b.bias);
        for (double x : b.vec) {
            csv << ',' << format_g9(x);
        }
        csv << '\n';
    }
    out.emit(csv.str());
    return kExitCompatible;
}

EstimateResult run_quadrature_estimate(const Config &cfg) {
    const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-9;
    if (cfg.quantity == "ef") {
        return expectation_f(tol);
    }
    if (cfg.quantity == "eg") {
        return expectation_g(tol);
    }
    if (cfg.quantity != "prob") {
        throw Error(ErrorKind::kPrecondition,
                    "quadrature supports --quantity prob, ef or eg");
    }
    const MeasureSpec spec = make_spec(cfg);
    switch (spec.kind) {
        case MeasureSpec::Kind::kUnbiased:
            return prob_unbiased_quadrature(tol);
        case MeasureSpec::Kind::kSection:
            if (spec.section_bias_b != 0.0 && spec.section_bias_a != 0.0) {
                throw Error(ErrorKind::kPrecondition,
                            "quadrature sections need one zero bias (use --lambda)");
            }
            return prob_lambda_section(spec.section_bias_a != 0.0 ? spec.section_bias_a
                                                                  : spec.section_bias_b,
                                       tol);
        case MeasureSpec::Kind::kGeneral:
            break;
    }
    throw Error(ErrorKind::kPrecondition, "the general measure is only available with --method mc");
}

EstimateResult run_mc_estimate(const Config &cfg) {
    McOptions opt{require_seed(cfg), cfg.threads};
    if (cfg.quantity == "ef" || cfg.quantity == "eg") {
        auto pair = expectation_mc(cfg.samples, opt);
        return cfg.quantity == "ef" ? pair.f : pair.g;
    }
    if (cfg.quantity == "volume") {
        if (parse_measure_kind(cfg.measure) != MeasureSpec::Kind::kGeneral) {
            throw Error(ErrorKind::kPrecondition, "--quantity volume needs --measure general");
        }
        return vol_njm_mc(cfg.samples, opt);
    }
    if (cfg.quantity != "prob") {
        throw Error(ErrorKind::kParse, "unknown quantity '" + cfg.quantity + "'");
    }
    return prob_mc(make_spec(cfg), cfg.samples, opt);
}

int cmd_estimate(const Config &cfg, Output &out) {
    EstimateResult r;
    if (cfg.method == "quadrature") {
        r = run_quadrature_estimate(cfg);
    } else if (cfg.method == "mc") {
        r = run_mc_estimate(cfg);
    } else {
        throw Error(ErrorKind::kParse, "unknown method '" + cfg.method + "'");
    }
    std::ostringstream text;
    text << format_g9(r.value) << " +- " << format_g9(r.std_error) << " (" << method_name(r.method)
         << ", n=" << r.count << ")\n";
    out.emit(text_or_json(cfg, to_json(r), text.str()));
    return kExitCompatible;
}

int cmd_grid(const Config &cfg, Output &out) {
    const std::uint64_t seed = require_seed(cfg);
    const int resolution = cfg.resolution > 0 ? cfg.resolution : 81;
    const ProbabilityGrid grid = prob_grid(resolution, cfg.samples, {seed, cfg.threads});
    std::ostringstream csv;
    write_grid_csv(csv, grid);
    out.emit(csv.str());
    return kExitCompatible;
}

int cmd_density(const Config &cfg, Output &out) {
    const double p = density_inner_product(cfg.s, cfg.m);
    const double cdf = cdf_inner_product(cfg.s, cfg.m);
    const double nm = norm_constant(cfg.m);
    json j = {{"m", cfg.m}, {"s", cfg.s}, {"norm_constant", nm}, {"cdf", cdf}};
    // JSON has no infinity; the m = 2 endpoint singularity is reported as null.
    j["density"] = std::isfinite(p) ? json(p) : json(nullptr);
    std::ostringstream text;
    text << "p_" << cfg.m << "(" << format_g9(cfg.s) << ") = " << format_g9(p) << ", CDF "
         << format_g9(cdf) << ", N_" << cfg.m << " = " << format_g9(nm) << "\n";
    out.emit(text_or_json(cfg, j, text.str()));
    return kExitCompatible;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Joint measurability of binary qubit measurements and incompatibility "
                 "probabilities"};
    app.require_subcommand(1);
    Config cfg;

    auto add_threads = [&](CLI::App *sub) {
        sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
    };
    auto add_out = [&](CLI::App *sub) {
        sub->add_option("--out", cfg.out_path, "Write output to this file instead of stdout");
    };
    auto add_format = [&](CLI::App *sub, std::vector<std::string> choices) {
        sub->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember(std::move(choices)));
    };
    auto add_random = [&](CLI::App *sub) {
        sub->add_option("--seed", cfg.seed, "Random seed (required)");
        sub->add_option("--samples", cfg.samples, "Number of samples")
            ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
    };
    auto add_measure = [&](CLI::App *sub) {
        sub->add_option("--measure", cfg.measure, "Random-pair distribution")
            ->check(CLI::IsMember({"unbiased", "general", "section"}));
        sub->add_option("--a0", cfg.a0, "Bias of the first measurement (section)");
        sub->add_option("--b0", cfg.b0, "Bias of the second measurement (section)");
        sub->add_option("--lambda", cfg.lambda, "Shorthand for --a0 LAMBDA --b0 0 (section)");
    };

    auto *check = app.add_subcommand("check", "Decide compatibility of two Bloch POVMs");
    check->add_option("povm_a", cfg.inputs, "Two BlochPovm JSON files")->required()->expected(2);
    add_out(check);
    add_format(check, {"json", "text"});

    auto *witness = app.add_subcommand("witness", "Construct a joint measurement");
    witness->add_option("povm_a", cfg.inputs, "Two BlochPovm JSON files")->required()->expected(2);
    witness->add_option("--resolution", cfg.resolution, "Noise grid nodes per axis (biased input)")
        ->check(CLI::Range(8, 1024));
    add_out(witness);
    add_threads(witness);

    auto *validate = app.add_subcommand("validate", "Check that a tensor JSON file is a POVM");
    validate->add_option("tensor", cfg.inputs, "PovmTensor JSON file")->required()->expected(1);
    validate->add_option("--tol", cfg.tol, "Eigenvalue and completeness tolerance")
        ->check(CLI::PositiveNumber);
    add_out(validate);
    add_format(validate, {"json", "text"});

    auto *sample = app.add_subcommand("sample", "Draw random measurement pairs");
    add_random(sample);
    add_measure(sample);
    add_out(sample);
    add_format(sample, {"csv", "json"});

    auto *estimate = app.add_subcommand("estimate", "Estimate an incompatibility probability");
    add_random(estimate);
    add_measure(estimate);
    estimate->add_option("--method", cfg.method, "mc or quadrature")
        ->check(CLI::IsMember({"mc", "quadrature"}));
    estimate->add_option("--quantity", cfg.quantity, "prob, volume, ef or eg")
        ->check(CLI::IsMember({"prob", "volume", "ef", "eg"}));
    estimate->add_option("--tol", cfg.tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
    add_threads(estimate);
    add_out(estimate);
    add_format(estimate, {"json", "text"});

    auto *grid = app.add_subcommand("grid", "Probability grid over (a0, b0) as CSV");
    add_random(grid);
    grid->add_option("--resolution", cfg.resolution, "Nodes per axis (default 81)")
        ->check(CLI::Range(3, 100000));
    add_threads(grid);
    add_out(grid);

    auto *density = app.add_subcommand("density", "Inner-product density of random unit vectors");
    density->add_option("--m", cfg.m, "Ambient dimension")->check(CLI::Range(2, 100000));
    density->add_option("--s", cfg.s, "Inner product in [-1, 1]")->check(CLI::Range(-1.0, 1.0));
    add_out(density);
    add_format(density, {"json", "text"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitCompatible;
    } catch (const CLI::ParseError &e) {
        err << e.what() << "\n";
        return kExitError;
    }

    Output output(cfg, out);
    try {
        if (*check) {
            return cmd_check(cfg, output);
        }
        if (*witness) {
            if (cfg.out_path.empty()) {
                throw Error(ErrorKind::kPrecondition, "witness needs --out");
            }
            return cmd_witness(cfg, output, err);
        }
        if (*validate) {
            return cmd_validate(cfg, output);
        }
        if (*sample) {
            return cmd_sample(cfg, output);
        }
        if (*estimate) {
            return cmd_estimate(cfg, output);
        }
        if (*grid) {
            return cmd_grid(cfg, output);
        }
        if (*density) {
            return cmd_density(cfg, output);
        }
    } catch (const Error &e) {
        err << e.what() << "\n";
        return kExitError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

}  // namespace jmprob::cli
