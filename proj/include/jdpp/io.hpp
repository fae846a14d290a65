/*
   Copyright 2026 The jdpp Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// JSON forms of the library types.
//
//   space:  {"n": 3, "part": [1, 1, 2], "weights"?: [...], "labels"?: [...]}
//           labels are either all strings (names) or all numbers (coordinates)
//   kernel: {"space": {...}, "re": [[...], ...], "im"?: [[...], ...]}
//           entries are kernel values K(x_i, x_j), row i = first argument
//   G:      {"re": [[...]], "im"?: [[...]], "space"?: {...}}, n2 rows x n1 cols
//   phi:    {"phi": [...]} or a bare array

#include <string>
#include <vector>

#include <json.hpp>

#include "jdpp/dpp.hpp"
#include "jdpp/fredholm.hpp"
#include "jdpp/jop.hpp"
#include "jdpp/kernels.hpp"
#include "jdpp/sampler.hpp"

namespace jdpp::io {

using nlohmann::json;

// Parse errors and schema violations throw jdpp::Error.
json read_json_file(const std::string& path);
json parse_json(const std::string& text);

json to_json(const PartitionedSpace& space);
PartitionedSpace space_from_json(const json& j);

json to_json(const JKernel& k);
JKernel kernel_from_json(const json& j);

// Real when |imag| <= 1e-9 (1 + |real|), else {"re": .., "im": ..}.
json complex_to_json(Complex z);

CMatrix matrix_from_json(const json& re, const json* im);

struct GInput {
  GOperator g;
  std::optional<PartitionedSpace> space;
};
GInput g_from_json(const json& j);

std::vector<double> phi_from_json(const json& j);

json to_json(const Verdict& v);
json to_json(const DetReport& r);
json to_json(const VoidReport& r);
json to_json(const EstimateReport& r);
json to_json(const GofReport& r);
json to_json(const Configuration& gamma);

}  // namespace jdpp::io
