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

#include "jdpp/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace jdpp::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    fail(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  return j.get<double>();
}

json real_or_null(double x) {
  // JSON has no NaN or infinity.
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json(ss.str());
  } catch (const Error& e) {
    fail(path + ": " + e.what());
  }
}

json to_json(const PartitionedSpace& space) {
  json j;
  j["n"] = space.size();
  json parts = json::array();
  for (Part p : space.parts()) parts.push_back(static_cast<int>(p));
  j["part"] = std::move(parts);
  if (!space.unit_weights()) {
    j["weights"] = std::vector<double>(space.weights().begin(),
                                       space.weights().end());
  }
  if (!space.names().empty()) {
    j["labels"] = space.names();
  } else if (!space.coordinates().empty()) {
    j["labels"] = space.coordinates();
  }
  return j;
}

PartitionedSpace space_from_json(const json& j) {
  const json& parts_j = field(j, "part");
  if (!parts_j.is_array()) fail("'part' must be an array of 1/2 labels");
  std::vector<Part> parts;
  for (const auto& p : parts_j) {
    if (!p.is_number_integer()) fail("'part' entries must be 1 or 2");
    const int v = p.get<int>();
    if (v != 1 && v != 2) fail("'part' entries must be 1 or 2");
    parts.push_back(v == 1 ? Part::one : Part::two);
  }
  if (j.contains("n")) {
    if (!j["n"].is_number_integer() ||
        j["n"].get<long long>() != static_cast<long long>(parts.size())) {
      fail("'n' does not match the length of 'part'");
    }
  }
  std::vector<double> weights;
  if (j.contains("weights")) {
    if (!j["weights"].is_array()) fail("'weights' must be an array");
    for (const auto& w : j["weights"]) weights.push_back(number(w, "weight"));
    if (weights.size() != parts.size()) fail("'weights' has the wrong length");
  }
  PartitionedSpace space(std::move(parts), std::move(weights));
  if (j.contains("labels")) {
    const json& l = j["labels"];
    if (!l.is_array() || l.size() != space.size()) {
      fail("'labels' must be an array with one entry per point");
    }
    if (space.size() > 0 && l.front().is_string()) {
      space = space.with_names(l.get<std::vector<std::string>>());
    } else {
      std::vector<double> c;
      for (const auto& x : l) c.push_back(number(x, "label"));
      space = space.with_coordinates(std::move(c));
    }
  }
  return space;
}

CMatrix matrix_from_json(const json& re, const json* im) {
  if (!re.is_array()) fail("'re' must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(re.size());
  const auto cols =
      rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(re[0].size());
  CMatrix m = CMatrix::Zero(rows, cols);
  auto fill = [&](const json& src, bool imag) {
    if (!src.is_array() || static_cast<Eigen::Index>(src.size()) != rows) {
      fail("matrix has the wrong number of rows");
    }
    for (Eigen::Index r = 0; r < rows; ++r) {
      const json& row = src[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
        fail("matrix rows have inconsistent lengths");
      }
      for (Eigen::Index c = 0; c < cols; ++c) {
        const double v = number(row[static_cast<std::size_t>(c)], "matrix entry");
        if (imag) {
          m(r, c).imag(v);
        } else {
          m(r, c).real(v);
        }
      }
    }
  };
  fill(re, false);
  if (im != nullptr) fill(*im, true);
  return m;
}

json to_json(const JKernel& k) {
  json j;
  j["space"] = to_json(k.space());
  const CMatrix& e = k.entries();
  json re = json::array(), im = json::array();
  bool has_im = false;
  for (Eigen::Index r = 0; r < e.rows(); ++r) {
    json rr = json::array(), ii = json::array();
    for (Eigen::Index c = 0; c < e.cols(); ++c) {
      rr.push_back(e(r, c).real());
      ii.push_back(e(r, c).imag());
      has_im = has_im || e(r, c).imag() != 0.0;
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  j["re"] = std::move(re);
  if (has_im) j["im"] = std::move(im);
  return j;
}

JKernel kernel_from_json(const json& j) {
  PartitionedSpace space = space_from_json(field(j, "space"));
  const json* im = j.contains("im") ? &j.at("im") : nullptr;
  CMatrix m = matrix_from_json(field(j, "re"), im);
  try {
    return JKernel(std::move(space), std::move(m));
  } catch (const PreconditionError& e) {
    fail(e.what());
  }
}

json complex_to_json(Complex z) {
  if (std::abs(z.imag()) <= 1e-9 * (1.0 + std::abs(z.real()))) {
    return real_or_null(z.real());
  }
  return json{{"re", real_or_null(z.real())}, {"im", real_or_null(z.imag())}};
}

GInput g_from_json(const json& j) {
  GInput in;
  const json* im = j.contains("im") ? &j.at("im") : nullptr;
  in.g.g = matrix_from_json(field(j, "re"), im);
  if (j.contains("space")) in.space = space_from_json(j.at("space"));
  return in;
}

std::vector<double> phi_from_json(const json& j) {
  const json& arr = j.is_object() ? field(j, "phi") : j;
  if (!arr.is_array()) fail("phi must be an array of numbers");
  std::vector<double> phi;
  for (const auto& x : arr) phi.push_back(number(x, "phi entry"));
  return phi;
}

json to_json(const Verdict& v) {
  json j;
  j["valid"] = v.valid;
  j["j_hermitian"] = v.j_hermitian;
  j["j_defect"] = v.j_defect;
  j["margin"] = real_or_null(v.margin);
  j["tolerance"] = v.tolerance;
  j["hat_spectrum"] = v.hat_spectrum;
  j["op_norm"] = v.op_norm_k;
  j["op_norm_even"] = v.op_norm_even;
  j["schur_consistent"] =
      v.schur_consistent ? json(*v.schur_consistent) : json(nullptr);
  return j;
}

json to_json(const DetReport& r) {
  json j;
  j["method"] = std::string(method_name(r.method));
  j["value"] = complex_to_json(r.value);
  if (r.method == DetMethod::series) {
    j["terms_used"] = r.terms_used;
    j["truncation_bound"] = real_or_null(r.truncation_bound);
  }
  return j;
}

json to_json(const VoidReport& r) {
  return json{{"value", r.value},
              {"raw_det", r.raw_det},
              {"window_norm", r.window_norm},
              {"norm_one", r.norm_one}};
}

json to_json(const Configuration& gamma) {
  return json(std::vector<std::size_t>(gamma.begin(), gamma.end()));
}

json to_json(const EstimateReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back(json{{"query", std::vector<std::size_t>(e.query.begin(),
                                                              e.query.end())},
                           {"exact", e.exact},
                           {"empirical", e.empirical},
                           {"stderr", e.stderr_},
                           {"z", real_or_null(e.z)},
                           {"flagged", e.flagged}});
  }
  return json{{"count", r.count}, {"queries", std::move(entries)}};
}

json to_json(const GofReport& r) {
  return json{{"statistic", real_or_null(r.statistic)},
              {"cells", r.cells},
              {"dof", r.dof},
              {"p_value", r.p_value},
              {"count", r.count}};
}

}  // namespace jdpp::io
