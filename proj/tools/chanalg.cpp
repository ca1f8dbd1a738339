// Copyright 2026 The chanalg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chanalg/chanalg.hpp"

namespace {

using chanalg::Channel;
using chanalg::io::Json;

enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kUsage = 2,
  kInvalidChannel = 3,
  kUnsupported = 4,
  kNumerical = 5,
};

struct Common {
  chanalg::Tolerance tol;
  std::uint64_t seed = 0x5eedULL;
  std::string output;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--tol-rank", c.tol.rank_rel, "relative singular-value cutoff")->capture_default_str();
  cmd->add_option("--tol-subspace", c.tol.subspace_abs, "subspace comparison threshold")->capture_default_str();
  cmd->add_option("--tol-spectral", c.tol.spectral_cluster, "peripheral eigenvalue threshold")->capture_default_str();
  cmd->add_option("--seed", c.seed, "seed for randomized steps")->capture_default_str();
  cmd->add_option("-o,--output", c.output, "output path (stdout when omitted)");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    chanalg::io::write_file(path, text);
  }
}

Channel load_channel_ref(const Json& ref, const std::filesystem::path& base) {
  if (ref.is_string()) {
    std::filesystem::path p(ref.get<std::string>());
    if (p.is_relative()) p = base / p;
    return chanalg::io::read_channel(p.string());
  }
  return chanalg::io::channel_from_json(ref);
}

int run_analyze(const std::string& input, const Common& c, int powers, bool text, bool full) {
  const auto start = std::chrono::steady_clock::now();
  const Channel ch = chanalg::io::read_channel(input);
  chanalg::AnalysisOptions opts;
  opts.powers = powers;
  opts.seed = c.seed;
  opts.keep_bases = full;
  const auto report = chanalg::analyze(ch, c.tol, opts);
  chanalg::io::Envelope env;
  env.input_digest = chanalg::io::channel_digest(ch);
  env.tol = c.tol;
  env.seed = c.seed;
  env.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(c.output, text ? chanalg::io::report_to_text(report, env)
                      : chanalg::io::dump(chanalg::io::report_to_json(report, env)));
  return kOk;
}

int run_construct(const std::string& family, const Common& c, int dim, int index, int terms) {
  auto need_dim = [&](int lo) {
    if (dim < lo) throw chanalg::InvalidArgument(family + " needs --dim >= " + std::to_string(lo));
  };
  auto report = [&](const Channel& ch) {
    std::cout << ch.label() << " kappa=" << chanalg::multiplicative_index(ch, c.tol) << "\n";
  };
  if (family == "omega-pair") {
    if (c.output.empty()) throw chanalg::InvalidArgument("omega-pair needs -o <stem>");
    const auto [e1, e2] = chanalg::omega_pair();
    chanalg::io::write_channel(c.output + "_e1.json", e1);
    chanalg::io::write_channel(c.output + "_e2.json", e2);
    report(e1);
    report(e2);
    return kOk;
  }
  std::optional<Channel> ch;
  if (family == "etb") {
    need_dim(1);
    if (index < 1 || index > dim) throw chanalg::InvalidArgument("etb needs 1 <= --index <= --dim");
    ch = chanalg::etb_channel(dim, index, std::nullopt, c.tol);
  } else if (family == "schur-cycle") {
    need_dim(3);
    ch = chanalg::schur_cycle_channel(dim);
  } else if (family == "dephasing-shift") {
    need_dim(2);
    ch = chanalg::dephasing_shift_channel(dim);
  } else if (family == "random-mixed-unitary") {
    need_dim(1);
    if (terms < 1) throw chanalg::InvalidArgument("random-mixed-unitary needs --terms >= 1");
    ch = chanalg::random_mixed_unitary(dim, terms, c.seed);
  } else if (family == "m3-example") {
    ch = chanalg::m3_example();
  } else if (family == "identity") {
    need_dim(1);
    ch = chanalg::identity_channel(dim);
  } else {
    throw chanalg::InvalidArgument("unknown family '" + family + "'");
  }
  emit(c.output, chanalg::io::dump(chanalg::io::channel_to_json(*ch)));
  if (!c.output.empty()) report(*ch);
  return kOk;
}

int run_tensor(const std::string& a, const std::string& b, const Common& c) {
  const Channel ab = chanalg::tensor(chanalg::io::read_channel(a), chanalg::io::read_channel(b));
  emit(c.output, chanalg::io::dump(chanalg::io::channel_to_json(ab)));
  return kOk;
}

// {"terms": [{"weight": w, "channel": "path.json" | {channel object}}, ...]}
int run_convex(const std::string& spec_path, const Common& c) {
  const Json spec = chanalg::io::parse_json(chanalg::io::read_file(spec_path), spec_path);
  if (!spec.is_object() || !spec.contains("terms") || !spec["terms"].is_array() || spec["terms"].empty()) {
    throw chanalg::ParseError("convex spec needs a non-empty \"terms\" array");
  }
  const auto base = std::filesystem::path(spec_path).parent_path();
  std::vector<chanalg::WeightedChannel> terms;
  for (const auto& t : spec["terms"]) {
    if (!t.is_object() || !t.contains("weight") || !t["weight"].is_number() || !t.contains("channel")) {
      throw chanalg::ParseError("each convex term needs \"weight\" and \"channel\"");
    }
    terms.push_back({t["weight"].get<double>(), load_channel_ref(t["channel"], base)});
  }
  Channel mix = chanalg::convex_combine(terms);
  if (spec.contains("label") && spec["label"].is_string()) mix = mix.relabeled(spec["label"].get<std::string>());
  emit(c.output, chanalg::io::dump(chanalg::io::channel_to_json(mix)));
  return kOk;
}

int run_verify(const std::string& suite, const Common& c, int seeds, const std::string& dims, int k, bool json) {
  chanalg::verify::SuiteOptions o;
  o.tol = c.tol;
  o.seed = c.seed;
  o.seeds = seeds;
  o.k = k;
  if (!dims.empty()) o.dims = chanalg::verify::parse_dims(dims);
  const auto known = chanalg::verify::suite_names();
  if (std::find(known.begin(), known.end(), suite) == known.end()) {
    throw chanalg::InvalidArgument("unknown suite '" + suite + "'");
  }
  const auto results = chanalg::verify::run_suite(suite, o);
  int failed = 0;
  Json cases = Json::array();
  std::string table;
  for (const auto& r : results) {
    failed += r.pass ? 0 : 1;
    cases.push_back({{"case", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    table += (r.pass ? "PASS " : "FAIL ") + suite + " " + r.name + " " + r.detail + "\n";
  }
  table += suite + ": " + std::to_string(results.size() - static_cast<std::size_t>(failed)) + "/" +
           std::to_string(results.size()) + " passed\n";
  emit(c.output, json ? chanalg::io::dump(Json{{"suite", suite}, {"cases", cases}, {"failed", failed}}) : table);
  return failed == 0 ? kOk : kNumerical;
}

int run_lattice(int dim, const std::string& format, const Common& c) {
  if (format != "dot" && format != "json") throw chanalg::InvalidArgument("--format must be dot or json");
  const auto g = chanalg::build_lattice(dim);
  const std::string body = format == "dot" ? chanalg::io::lattice_to_dot(g) : chanalg::io::dump(chanalg::io::lattice_to_json(g));
  emit(c.output, body);
  (c.output.empty() ? std::cerr : std::cout) << "nodes=" << g.nodes.size() << " edges=" << g.edges.size()
                                             << " longest_chain=" << g.longest_chain().size() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicative domains and indices of unital quantum channels"};
  app.set_version_flag("--version", chanalg::kVersion);
  app.require_subcommand(1);

  Common common;
  std::string input, input_b, family, suite, dims, format = "json";
  int powers = 0, dim = 0, index = 0, terms = 2, seeds = 3, k = 3;
  bool json_out = false, text_out = false, full = false;

  auto* analyze = app.add_subcommand("analyze", "analyze a unital channel");
  add_common(analyze, common);
  analyze->add_option("input", input, "channel JSON file")->required();
  analyze->add_option("--powers", powers, "report M_{E^k} up to this power (at least kappa)");
  auto* jflag = analyze->add_flag("--json", json_out, "JSON report (default)");
  analyze->add_flag("--text", text_out, "plain-text report")->excludes(jflag);
  analyze->add_flag("--full", full, "include orthonormal bases");

  auto* construct = app.add_subcommand("construct", "write a channel from the gallery");
  add_common(construct, common);
  construct->add_option("family", family, "etb | schur-cycle | dephasing-shift | omega-pair | random-mixed-unitary | m3-example | identity")
      ->required();
  construct->add_option("--dim", dim, "matrix size d");
  construct->add_option("--index", index, "multiplicative index r (etb)");
  construct->add_option("--terms", terms, "number of unitaries (random-mixed-unitary)")->capture_default_str();

  auto* tensor = app.add_subcommand("tensor", "tensor product of two channels");
  add_common(tensor, common);
  tensor->add_option("a", input, "first channel")->required();
  tensor->add_option("b", input_b, "second channel")->required();

  auto* convex = app.add_subcommand("convex", "convex combination from a spec file");
  add_common(convex, common);
  convex->add_option("spec", input, "JSON spec {\"terms\":[{\"weight\":w,\"channel\":path|object}]}")->required();

  auto* verify = app.add_subcommand("verify", "run a property suite");
  add_common(verify, common);
  verify->add_option("suite", suite, "md-splitting | kappa-tensor | fix-splitting | convex-formula | adjoint-index | ucc | kappa-bound")
      ->required();
  verify->add_option("--seeds", seeds, "random cases per dimension")->capture_default_str();
  verify->add_option("--dims", dims, "e.g. 2x2,2x3 or 2..6");
  verify->add_option("--k", k, "highest power for convex-formula")->capture_default_str();
  verify->add_flag("--json", json_out, "JSON output");

  auto* lattice = app.add_subcommand("lattice", "subalgebra type lattice of M_d");
  add_common(lattice, common);
  lattice->add_option("--dim", dim, "matrix size d (2..8)")->required();
  lattice->add_option("--format", format, "dot | json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    common.tol.check();
    if (analyze->parsed()) return run_analyze(input, common, powers, text_out, full);
    if (construct->parsed()) return run_construct(family, common, dim, index, terms);
    if (tensor->parsed()) return run_tensor(input, input_b, common);
    if (convex->parsed()) return run_convex(input, common);
    if (verify->parsed()) return run_verify(suite, common, seeds, dims, k, json_out);
    if (lattice->parsed()) return run_lattice(dim, format, common);
  } catch (const chanalg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const chanalg::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const chanalg::InvalidChannel& e) {
    std::cerr << "invalid channel: " << e.what() << "\n";
    return kInvalidChannel;
  } catch (const chanalg::UnsupportedAnalysis& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const chanalg::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnexpected;
  }
  return kUsage;
}
