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

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "jdpp/kernels.hpp"

namespace jdpp::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kInvalidKernel = 2;

// Runs one command line (without the program name). Results go to `out`
// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Continuous spec JSON:
//   {"part1": {"a": 0, "b": 1}, "part2"?: {...},
//    "blocks": {"k11": "expr", "k12"?: ..., "k21"?: ..., "k22"?: ...},
//    "quadrature"?: "midpoint" | "gauss", "n": 64}
ContinuousKernelSpec continuous_spec_from_json(const nlohmann::json& j);

}  // namespace jdpp::cli
