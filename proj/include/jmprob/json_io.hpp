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

#ifndef JMPROB_JSON_IO_HPP_
#define JMPROB_JSON_IO_HPP_

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "jmprob/criterion.hpp"
#include "jmprob/estimate.hpp"
#include "jmprob/joint.hpp"
#include "jmprob/types.hpp"

namespace jmprob {

// Schemas:
//   BlochPovm        {"bias": x, "vec": [x, y, z]}
//   PovmTensor       {"dim": d, "shape": [k1, ...],
//                     "elements": [ [[re, im], ... d*d row-major], ... ]}
//   EstimateResult   {"value": v, "stderr": e, "n": count, "seed": s|null,
//                     "method": "mc"|"quadrature"|"closed_form"}
// Parse failures throw Error(kParse).

nlohmann::json to_json(const BlochPovm &p);
BlochPovm bloch_povm_from_json(const nlohmann::json &j);

nlohmann::json to_json(const PovmTensor &t);
PovmTensor povm_tensor_from_json(const nlohmann::json &j);

nlohmann::json to_json(const CompatVerdict &v);
nlohmann::json to_json(const ValidationReport &r);
nlohmann::json to_json(const QubitNoiseParam &n);
nlohmann::json to_json(const EstimateResult &r);

/// Header `a0,b0,prob,stderr,n`, one row per cell (a0 outer), 9 significant
/// digits.
void write_grid_csv(std::ostream &os, const ProbabilityGrid &grid);

nlohmann::json read_json_file(const std::string &path);
/// Writes `content` verbatim. Throws Error(kParse) on I/O failure.
void write_text_file(const std::string &path, const std::string &content);

/// printf("%.9g") for one double.
std::string format_g9(double x);

}  // namespace jmprob

#endif  // JMPROB_JSON_IO_HPP_
