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

#include "jmprob/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace jmprob {

using nlohmann::json;

namespace {

double get_double(const json &j, const char *what) {
    if (!j.is_number()) {
        throw Error(ErrorKind::kParse, std::string(what) + " must be a number");
    }
    return j.get<double>();
}

const json &require(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorKind::kParse, std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

}  // namespace

std::string format_g9(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

json to_json(const BlochPovm &p) {
    return {{"bias", p.bias}, {"vec", {p.vec[0], p.vec[1], p.vec[2]}}};
}

BlochPovm bloch_povm_from_json(const json &j) {
    BlochPovm p;
    p.bias = get_double(require(j, "bias"), "bias");
    const json &v = require(j, "vec");
    if (!v.is_array() || v.size() != 3) {
        throw Error(ErrorKind::kParse, "vec must be an array of 3 numbers");
    }
    for (std::size_t i = 0; i < 3; ++i) {
        p.vec[i] = get_double(v[i], "vec entry");
    }
    return p;
}

json to_json(const PovmTensor &t) {
    json elements = json::array();
    const std::size_t d = t.dim();
    for (const auto &e : t.elements()) {
        json entries = json::array();
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                const auto z = e.entries()(r, c);
                entries.push_back({z.real(), z.imag()});
            }
        }
        elements.push_back(std::move(entries));
    }
    return {{"dim", d}, {"shape", t.shape()}, {"elements", std::move(elements)}};
}

PovmTensor povm_tensor_from_json(const json &j) {
    const json &jd = require(j, "dim");
    if (!jd.is_number_integer() || jd.get<long long>() <= 0) {
        throw Error(ErrorKind::kParse, "dim must be a positive integer");
    }
    const std::size_t d = jd.get<std::size_t>();
    const json &js = require(j, "shape");
    if (!js.is_array() || js.empty()) {
        throw Error(ErrorKind::kParse, "shape must be a non-empty array");
    }
    std::vector<std::size_t> shape;
    for (const auto &k : js) {
        if (!k.is_number_integer() || k.get<long long>() <= 0) {
            throw Error(ErrorKind::kParse, "shape entries must be positive integers");
        }
        shape.push_back(k.get<std::size_t>());
    }
    const json &je = require(j, "elements");
    if (!je.is_array()) {
        throw Error(ErrorKind::kParse, "elements must be an array");
    }
    std::vector<HermitianOp> elements;
    for (const auto &e : je) {
        if (!e.is_array() || e.size() != d * d) {
            throw Error(ErrorKind::kParse, "each element needs dim*dim [re, im] entries");
        }
        HermitianOp::Matrix m(d, d);
        for (std::size_t k = 0; k < d * d; ++k) {
            const json &z = e[k];
            if (!z.is_array() || z.size() != 2) {
                throw Error(ErrorKind::kParse, "matrix entries must be [re, im] pairs");
            }
            m(k / d, k % d) = {get_double(z[0], "real part"), get_double(z[1], "imaginary part")};
        }
        elements.emplace_back(std::move(m));
    }
    return PovmTensor(std::move(shape), std::move(elements));
}

json to_json(const CompatVerdict &v) {
    return {{"compatible", v.compatible}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"margin", v.margin}};
}

json to_json(const ValidationReport &r) {
    return {{"ok", r.ok},
            {"min_eigenvalue", r.min_eigenvalue},
            {"completeness_defect", r.completeness_defect}};
}

json to_json(const QubitNoiseParam &n) {
    return {{"x0", n.x0}, {"x", {n.x[0], n.x[1], n.x[2]}}};
}

json to_json(const EstimateResult &r) {
    json j = {{"value", r.value},
              {"stderr", r.std_error},
              {"n", r.count},
              {"seed", nullptr},
              {"method", method_name(r.method)}};
    if (r.seed) {
        j["seed"] = *r.seed;
    }
    return j;
}

void write_grid_csv(std::ostream &os, const ProbabilityGrid &grid) {
    os << "a0,b0,prob,stderr,n\n";
    for (std::size_t i = 0; i < grid.a0_nodes.size(); ++i) {
        for (std::size_t j = 0; j < grid.b0_nodes.size(); ++j) {
            const auto &cell = grid.at(i, j);
            os << format_g9(grid.a0_nodes[i]) << ',' << format_g9(grid.b0_nodes[j]) << ','
               << format_g9(cell.value) << ',' << format_g9(cell.std_error) << ',' << cell.count
               << '\n';
        }
    }
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::kParse, "cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw Error(ErrorKind::kParse, "'" + path + "': " + e.what());
    }
}

void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::kParse, "cannot write '" + path + "'");
    }
    out << content;
    if (!out) {
        throw Error(ErrorKind::kParse, "write to '" + path + "' failed");
    }
}

}  // namespace jmprob
