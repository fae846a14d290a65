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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "expr.hpp"
#include "jdpp/dpp.hpp"
#include "jdpp/fredholm.hpp"
#include "jdpp/io.hpp"
#include "jdpp/sampler.hpp"

namespace jdpp::cli {

using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  unsigned threads = 1;
  std::string out;
  std::string format;
  bool no_header = false;
};

using Row = std::pair<std::vector<std::size_t>, double>;

std::string csv_number(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

std::string joined(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string csv_value(const json& v) {
  if (v.is_number_float()) return csv_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ' ';
      s += csv_value(v[i]);
    }
    return s;
  }
  if (v.is_null()) return "";
  return v.dump();
}

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item[0] == '-') {
      throw Error("bad index '" + item + "' in '" + text + "'");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

class Context {
 public:
  Context(const Globals& g, std::ostream& out, std::ostream& err, json config)
      : g_(g), err_(err), config_(std::move(config)) {
    if (!g.out.empty()) {
      file_.open(g.out);
      if (!file_) throw Error("cannot write '" + g.out + "'");
      out_ = &file_;
    } else {
      out_ = &out;
    }
  }

  const Globals& globals() const { return g_; }
  std::ostream& err() { return err_; }
  const std::string& format() const { return config_.at("format").get_ref<const std::string&>(); }

  void object(json result) {
    if (format() == "csv") {
      header_comment();
      *out_ << "key,value\n";
      for (auto it = result.begin(); it != result.end(); ++it) {
        *out_ << it.key() << ',' << csv_value(it.value()) << '\n';
      }
      return;
    }
    if (format() == "jsonl") {
      if (!g_.no_header) *out_ << json{{"config", config_}}.dump() << '\n';
      *out_ << result.dump() << '\n';
      return;
    }
    if (!g_.no_header) result["config"] = config_;
    *out_ << result.dump(2) << '\n';
  }

  void table(const PartitionedSpace& space, const std::vector<Row>& rows,
             json summary) {
    if (format() == "jsonl") {
      if (!g_.no_header) {
        *out_ << json{{"config", config_}, {"summary", summary}}.dump() << '\n';
      }
      for (const auto& [gamma, p] : rows) {
        *out_ << json{{"gamma", gamma}, {"p", p}}.dump() << '\n';
      }
      return;
    }
    if (format() == "csv") {
      header_comment();
      *out_ << "gamma,p\n";
      for (const auto& [gamma, p] : rows) {
        *out_ << joined(gamma) << ',' << csv_number(p) << '\n';
      }
      return;
    }
    json masses = json::array();
    for (const auto& [gamma, p] : rows) {
      masses.push_back(json{{"gamma", gamma}, {"p", p}});
    }
    summary["space"] = io::to_json(space);
    summary["masses"] = std::move(masses);
    object(std::move(summary));
  }

  void samples(const SampleBatch& batch) {
    if (format() == "jsonl") {
      if (!g_.no_header) *out_ << json{{"config", config_}}.dump() << '\n';
      for (std::size_t i = 0; i < batch.configurations.size(); ++i) {
        *out_ << json{{"i", i}, {"gamma", io::to_json(batch.configurations[i])}}.dump()
              << '\n';
      }
      return;
    }
    if (format() == "csv") {
      header_comment();
      *out_ << "i,gamma\n";
      for (std::size_t i = 0; i < batch.configurations.size(); ++i) {
        const auto& c = batch.configurations[i];
        *out_ << i << ',' << joined({c.begin(), c.end()}) << '\n';
      }
      return;
    }
    json all = json::array();
    for (const auto& c : batch.configurations) all.push_back(io::to_json(c));
    object(json{{"seed", batch.seed}, {"count", batch.count}, {"samples", all}});
  }

  void estimate(const EstimateReport& r) {
    if (format() != "csv") {
      object(io::to_json(r));
      return;
    }
    header_comment();
    *out_ << "query,exact,empirical,stderr,z,flagged\n";
    for (const auto& e : r.entries) {
      *out_ << joined({e.query.begin(), e.query.end()}) << ','
            << csv_number(e.exact) << ',' << csv_number(e.empirical) << ','
            << csv_number(e.stderr_) << ',' << csv_number(e.z) << ','
            << (e.flagged ? "true" : "false") << '\n';
    }
  }

 private:
  void header_comment() {
    if (!g_.no_header) *out_ << "# config " << config_.dump() << '\n';
  }

  const Globals& g_;
  std::ostream& err_;
  json config_;
  std::ofstream file_;
  std::ostream* out_ = nullptr;
};

std::vector<Row> rows_of(const DistributionTable& t,
                         const std::vector<std::size_t>& relabel) {
  std::vector<Row> rows;
  const auto masses = t.masses();
  for (std::uint64_t s = 0; s < masses.size(); ++s) {
    std::vector<std::size_t> gamma;
    for (std::size_t i = 0; i < t.points(); ++i) {
      if ((s >> i) & 1U) gamma.push_back(relabel.empty() ? i : relabel[i]);
    }
    rows.emplace_back(std::move(gamma), masses[s]);
  }
  return rows;
}

json table_summary(const DistributionTable& t) {
  return json{{"total", t.total()},
              {"clamped", t.clamped()},
              {"most_negative", t.most_negative()}};
}

JKernel load_kernel(const std::string& path) {
  return io::kernel_from_json(io::read_json_file(path));
}

std::vector<double> load_phi(const std::string& path) {
  return io::phi_from_json(io::read_json_file(path));
}

IndexWindow window_or_all(const std::string& text, const PartitionedSpace& s) {
  if (text.empty()) return s.all();
  IndexWindow w(parse_indices(text));
  s.check(w);
  return w;
}

json resolved_config(const CLI::App& sub, const Globals& g,
                     const std::string& format) {
  json args = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    std::string name = opt->get_name(false, false);
    if (name.empty() || name == "--help" || name == "-h") continue;
    name.erase(0, name.find_first_not_of('-'));
    const auto& results = opt->results();
    if (opt->count() == 0) {
      const std::string d = opt->get_default_str();
      args[name] = d.empty() ? json(nullptr) : json(d);
    } else if (opt->get_expected_max() > 1 || results.size() > 1) {
      args[name] = results;
    } else if (opt->get_type_size() == 0) {
      args[name] = true;
    } else {
      args[name] = results.empty() ? json(nullptr) : json(results.front());
    }
  }
  return json{{"command", sub.get_name()},
              {"seed", g.seed},
              {"tol", g.tol ? json(*g.tol) : json(nullptr)},
              {"threads", g.threads},
              {"format", format},
              {"args", std::move(args)}};
}

}  // namespace

ContinuousKernelSpec continuous_spec_from_json(const json& j) {
  auto interval = [](const json& v, const char* what) {
    if (!v.is_object() || !v.contains("a") || !v.contains("b") ||
        !v["a"].is_number() || !v["b"].is_number()) {
      throw Error(std::string(what) + " must be {\"a\": number, \"b\": number}");
    }
    return Interval{v["a"].get<double>(), v["b"].get<double>()};
  };
  if (!j.is_object() || !j.contains("part1")) {
    throw Error("continuous spec needs 'part1'");
  }
  ContinuousKernelSpec spec;
  spec.part1 = interval(j["part1"], "part1");
  if (j.contains("part2") && !j["part2"].is_null()) {
    spec.part2 = interval(j["part2"], "part2");
  }
  if (!j.contains("blocks") || !j["blocks"].is_object()) {
    throw Error("continuous spec needs a 'blocks' object");
  }
  const json& blocks = j["blocks"];
  for (auto it = blocks.begin(); it != blocks.end(); ++it) {
    const std::string& key = it.key();
    if (key != "k11" && key != "k12" && key != "k21" && key != "k22") {
      throw Error("unknown block '" + key + "' (k11, k12, k21, k22)");
    }
    if (!it.value().is_string()) throw Error("block " + key + " must be a string");
    if (!spec.part2 && key != "k11") {
      throw Error("block " + key + " given without part2");
    }
    Expression e = Expression::parse(it.value().get<std::string>());
    BlockFunction f = [e](double x, double y) { return e(x, y); };
    if (key == "k11") spec.k11 = f;
    if (key == "k12") spec.k12 = f;
    if (key == "k21") spec.k21 = f;
    if (key == "k22") spec.k22 = f;
  }
  if (j.contains("quadrature")) {
    const std::string q = j["quadrature"].is_string() ? j["quadrature"].get<std::string>() : "";
    if (q == "midpoint") {
      spec.quadrature = Quadrature::midpoint;
    } else if (q == "gauss" || q == "gauss_legendre") {
      spec.quadrature = Quadrature::gauss_legendre;
    } else {
      throw Error("quadrature must be 'midpoint' or 'gauss'");
    }
  }
  if (j.contains("n")) {
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
      throw Error("'n' must be a positive integer");
    }
    spec.points_per_part = j["n"].get<std::size_t>();
  }
  return spec;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Determinantal point processes with J-Hermitian kernels", "jdpp"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for random generation and sampling")
      ->capture_default_str();
  app.add_option("--tol", g.tol, "Tolerance override (validate, void)");
  app.add_option("--threads", g.threads, "Worker threads; 0 = all cores")
      ->capture_default_str();
  app.add_option("--out", g.out, "Write the result to this file");
  app.add_option("--format", g.format, "json, csv or jsonl")
      ->check(CLI::IsMember({"json", "csv", "jsonl"}));
  app.add_flag("--no-header", g.no_header,
               "Omit the resolved-config header record");

  std::string kernel_path, phi_path, window, method = "direct", spec_path;
  std::string quadrature;
  std::size_t count = 0, cap = kDefaultEnumerationCap, n1 = 0, n2 = 0, points = 0;
  std::optional<std::size_t> rank;
  bool projection = false;
  double norm_cap = 1.0, eps = 1.0;
  std::vector<std::string> queries;

  std::function<int(Context&)> action;
  std::string default_format = "json";

  auto kernel_arg = [&](CLI::App* sub) {
    sub->add_option("kernel", kernel_path, "Kernel JSON file")->required();
  };

  CLI::App* validate = app.add_subcommand("validate", "Check the hat criterion");
  kernel_arg(validate);
  validate->callback([&] {
    action = [&](Context& ctx) {
      const Verdict v = check_validity(load_kernel(kernel_path), g.tol);
      ctx.object(io::to_json(v));
      return v.valid ? kOk : kInvalidKernel;
    };
  });

  auto det_body = [&](Context& ctx, bool require_phi) {
    const JKernel k = load_kernel(kernel_path);
    std::optional<std::vector<double>> phi;
    if (!phi_path.empty()) phi = load_phi(phi_path);
    if (require_phi && !phi) throw Error("bogoliubov needs --phi-file");
    json result;
    if (require_phi) {
      result["value"] = bogoliubov(k, *phi);
      ctx.object(std::move(result));
      return kOk;
    }
    const JKernel a = phi ? multiplier_kernel(k, *phi) : k;
    std::vector<DetMethod> methods;
    if (method == "all") {
      methods = {DetMethod::series, DetMethod::direct, DetMethod::block};
    } else {
      methods = {parse_method(method)};
    }
    json reports = json::array();
    std::vector<Complex> values;
    for (DetMethod m : methods) {
      try {
        DetReport r;
        if (m == DetMethod::series) {
          r = det_series(a);
        } else if (m == DetMethod::direct) {
          r = det_direct(a);
        } else {
          // Det(1 + A) = Det(1 - (-A)).
          r = det_block(JKernel::from_operator(a.space(), -a.matrix()));
        }
        reports.push_back(io::to_json(r));
        values.push_back(r.value);
      } catch (const Error& e) {
        if (methods.size() == 1) throw;
        reports.push_back(json{{"method", std::string(method_name(m))},
                               {"error", e.what()}});
      }
    }
    if (values.empty()) throw Error("no determinant method succeeded");
    result["value"] = io::complex_to_json(values.front());
    result["reports"] = std::move(reports);
    if (values.size() > 1) {
      double diff = 0.0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
          diff = std::max(diff, std::abs(values[i] - values[j]));
        }
      }
      result["max_diff"] = diff;
    }
    if (phi) {
      const MultiplierReport mr = det_multiplier_report(k, *phi);
      result["unsymmetrized"] = io::complex_to_json(mr.unsymmetrized);
    }
    ctx.object(std::move(result));
    return kOk;
  };

  CLI::App* det = app.add_subcommand("det", "Fredholm determinant Det(1 + K)");
  kernel_arg(det);
  det->add_option("--method", method, "series, direct, block or all")
      ->check(CLI::IsMember({"series", "direct", "block", "all"}))
      ->capture_default_str();
  det->add_option("--phi-file", phi_path,
                  "Multiplier phi: evaluates Det(1 + sgn(phi)|phi|^1/2 K |phi|^1/2)");
  det->callback([&] { action = [&](Context& ctx) { return det_body(ctx, false); }; });

  CLI::App* bog = app.add_subcommand("bogoliubov", "E prod (1 + phi(x)) over the process");
  kernel_arg(bog);
  bog->add_option("--phi-file", phi_path, "Multiplier phi")->required();
  bog->callback([&] { action = [&](Context& ctx) { return det_body(ctx, true); }; });

  CLI::App* dist = app.add_subcommand("distribution", "Exact configuration masses");
  kernel_arg(dist);
  dist->add_option("--cap", cap, "Largest ground set to enumerate")->capture_default_str();
  dist->callback([&] {
    default_format = "jsonl";
    action = [&](Context& ctx) {
      const DistributionTable t = exact_distribution(load_kernel(kernel_path), cap);
      ctx.table(t.space(), rows_of(t, {}), table_summary(t));
      return kOk;
    };
  });

  CLI::App* dens = app.add_subcommand("densities", "Local densities on a window via L");
  kernel_arg(dens);
  dens->add_option("--window", window, "Comma-separated point indices (default: all)");
  dens->add_option("--cap", cap, "Largest window to enumerate")->capture_default_str();
  dens->add_option("--eps", eps, "Thin the kernel to eps K first")->capture_default_str();
  dens->callback([&] {
    default_format = "jsonl";
    action = [&](Context& ctx) {
      JKernel k = load_kernel(kernel_path);
      if (eps != 1.0) k = thin(k, eps);
      const IndexWindow w = window_or_all(window, k.space());
      const DistributionTable t = densities_via_l(k, w, cap);
      ctx.table(t.space(), rows_of(t, {w.begin(), w.end()}), table_summary(t));
      return kOk;
    };
  });

  CLI::App* vd = app.add_subcommand("void", "Probability of no points in a window");
  kernel_arg(vd);
  vd->add_option("--window", window, "Comma-separated point indices (default: all)");
  vd->callback([&] {
    action = [&](Context& ctx) {
      const JKernel k = load_kernel(kernel_path);
      const VoidReport r =
          void_probability(k, window_or_all(window, k.space()), g.tol.value_or(1e-9));
      ctx.object(io::to_json(r));
      return kOk;
    };
  });

  CLI::App* smp = app.add_subcommand("sample", "Exact samples via particle-hole duality");
  kernel_arg(smp);
  smp->add_option("-n,--count", count, "Number of samples")->default_val(1);
  smp->callback([&] {
    default_format = "jsonl";
    action = [&](Context& ctx) {
      ctx.samples(sample_j(load_kernel(kernel_path), count, g.seed, {g.threads}));
      return kOk;
    };
  });

  CLI::App* est = app.add_subcommand("estimate", "Monte Carlo correlations vs exact");
  kernel_arg(est);
  est->add_option("-n,--count", count, "Number of samples")->default_val(10000);
  est->add_option("--query", queries, "Comma-separated points; repeatable (default: singletons)");
  est->callback([&] {
    action = [&](Context& ctx) {
      const JKernel k = load_kernel(kernel_path);
      std::vector<CorrelationQuery> qs;
      for (const auto& q : queries) qs.emplace_back(parse_indices(q));
      if (qs.empty()) {
        for (std::size_t i = 0; i < k.size(); ++i) qs.push_back(CorrelationQuery{i});
      }
      const EstimateReport r = estimate(k, qs, count, g.seed, {g.threads});
      ctx.estimate(r);
      return kOk;
    };
  });

  CLI::App* gof = app.add_subcommand("gof", "Chi-square test of the sampler");
  kernel_arg(gof);
  gof->add_option("-n,--count", count, "Number of samples")->default_val(10000);
  gof->callback([&] {
    action = [&](Context& ctx) {
      ctx.object(io::to_json(
          goodness_of_fit(load_kernel(kernel_path), count, g.seed, {g.threads})));
      return kOk;
    };
  });

  CLI::App* disc = app.add_subcommand("discretize", "Nystrom discretization of a continuous spec");
  disc->add_option("spec", spec_path, "Continuous spec JSON file")->required();
  disc->add_option("--n", points, "Points per part (overrides the spec)");
  disc->add_option("--quadrature", quadrature, "midpoint or gauss (overrides the spec)")
      ->check(CLI::IsMember({"midpoint", "gauss"}));
  disc->callback([&] {
    action = [&](Context& ctx) {
      json spec_json = io::read_json_file(spec_path);
      if (points != 0) spec_json["n"] = points;
      if (!quadrature.empty()) spec_json["quadrature"] = quadrature;
      const ContinuousKernelSpec spec = continuous_spec_from_json(spec_json);
      const Discretization d = discretize(spec);
      if (!d.j_hermitian) {
        ctx.err() << "warning: block functions are not J-Hermitian on the grid "
                     "(defect "
                  << d.j_defect << ")\n";
      }
      json result = io::to_json(d.kernel);
      result["discretization"] = json{
          {"quadrature", spec.quadrature == Quadrature::midpoint ? "midpoint" : "gauss"},
          {"points_per_part", spec.points_per_part},
          {"weights", d.weights},
          {"j_defect", d.j_defect},
          {"j_hermitian", d.j_hermitian}};
      ctx.object(std::move(result));
      return kOk;
    };
  });

  CLI::App* fg = app.add_subcommand("from-g", "Graph-projection kernel from an operator G");
  fg->add_option("g", spec_path, "G matrix JSON file")->required();
  fg->callback([&] {
    action = [&](Context& ctx) {
      const io::GInput in = io::g_from_json(io::read_json_file(spec_path));
      const JKernel k = in.space ? from_G(*in.space, in.g) : from_G(in.g);
      ctx.object(io::to_json(k));
      return kOk;
    };
  });

  CLI::App* rnd = app.add_subcommand("random", "Random valid kernel hat(H)");
  rnd->add_option("--n1", n1, "Points in X1")->capture_default_str();
  rnd->add_option("--n2", n2, "Points in X2")->capture_default_str();
  rnd->add_option("--rank", rank, "Number of nonzero eigenvalues of H");
  rnd->add_flag("--projection", projection, "H is a random projection");
  rnd->add_option("--norm-cap", norm_cap, "Spectrum of H in [0, norm-cap]")
      ->capture_default_str();
  rnd->callback([&] {
    action = [&](Context& ctx) {
      RandomSpec spec{rank, projection, norm_cap};
      ctx.object(io::to_json(random_valid(PartitionedSpace::split(n1, n2), spec, g.seed)));
      return kOk;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFailure;
  }

  try {
    if (g.threads == 0) g.threads = std::max(1U, std::thread::hardware_concurrency());
    const CLI::App* sub = app.get_subcommands().front();
    const std::string format = g.format.empty() ? default_format : g.format;
    Context ctx(g, out, err, resolved_config(*sub, g, format));
    return action(ctx);
  } catch (const InvalidKernel& e) {
    err << "invalid kernel: " << e.what() << '\n';
    return kInvalidKernel;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace jdpp::cli
