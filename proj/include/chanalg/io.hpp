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

#pragma once

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "chanalg/algebra.hpp"
#include "chanalg/analysis.hpp"
#include "chanalg/channel.hpp"
#include "chanalg/errors.hpp"
#include "chanalg/mupsa.hpp"
#include "chanalg/numeric.hpp"
#include "json.hpp"

namespace chanalg {

inline constexpr const char* kVersion = "0.1.0";

class ParseError : public Error {
 public:
  using Error::Error;
};

namespace io {

using Json = nlohmann::json;

// Array of rows, each entry [re, im].
inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw ParseError("matrix rows must be non-empty arrays");
  const auto cols = static_cast<Index>(j[0].size());
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) throw ParseError("ragged matrix rows");
    for (Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ParseError("matrix entries must be [re, im] number pairs");
      }
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

inline Json channel_to_json(const Channel& ch) {
  Json kraus = Json::array();
  for (const auto& a : ch.kraus()) kraus.push_back(matrix_to_json(a));
  return Json{{"dim", ch.dim()}, {"label", ch.label()}, {"kraus", std::move(kraus)}};
}

inline Channel channel_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("channel JSON must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw ParseError("channel JSON needs integer \"dim\"");
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty()) {
    throw ParseError("channel JSON needs a non-empty \"kraus\" array");
  }
  const auto d = j["dim"].get<Index>();
  std::vector<Matrix> kraus;
  for (const auto& k : j["kraus"]) {
    Matrix m = matrix_from_json(k);
    if (m.rows() != d || m.cols() != d) throw ParseError("Kraus operator size does not match \"dim\"");
    kraus.push_back(std::move(m));
  }
  std::string label = "channel";
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ParseError("\"label\" must be a string");
    label = j["label"].get<std::string>();
  }
  try {
    return Channel(std::move(kraus), std::move(label));
  } catch (const InvalidChannel& e) {
    throw ParseError(e.what());
  }
}

inline Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
  if (!out) throw InvalidArgument("write failed for " + path);
}

// Canonical text: sorted keys, shortest round-trip doubles, 2-space indent.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Channel read_channel(const std::string& path) {
  return channel_from_json(parse_json(read_file(path), path));
}

inline void write_channel(const std::string& path, const Channel& ch) {
  write_file(path, dump(channel_to_json(ch)));
}

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  std::ostringstream ss;
  for (unsigned int i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return ss.str();
}

// Hash of the canonical serialization, so formatting of the input file does not matter.
inline std::string channel_digest(const Channel& ch) { return sha256_hex(dump(channel_to_json(ch))); }

inline Json subspace_to_json(const OperatorSubspace& s) {
  Json out = Json::array();
  for (Index j = 0; j < s.dim(); ++j) out.push_back(matrix_to_json(s.element(j)));
  return out;
}

inline Json tolerance_to_json(const Tolerance& tol) {
  return Json{{"rank_rel", tol.rank_rel}, {"subspace_abs", tol.subspace_abs}, {"spectral_cluster", tol.spectral_cluster}};
}

struct Envelope {
  std::string input_digest;
  Tolerance tol;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
};

inline Json report_to_json(const AnalysisReport& r, const Envelope& env) {
  Json chain = Json::array();
  for (const auto& s : r.md_chain) chain.push_back({{"k", s.power}, {"type", s.type.to_string()}, {"dim", s.dim}});
  Json per = Json::array();
  for (const auto& p : r.peripheral) {
    per.push_back({{"re", p.eigenvalue.real()}, {"im", p.eigenvalue.imag()}, {"dim", p.dim}});
  }
  Json out{
      {"envelope",
       {{"tool", "chanalg"},
        {"version", kVersion},
        {"input_digest", env.input_digest},
        {"tolerances", tolerance_to_json(env.tol)},
        {"seed", env.seed},
        {"wall_time_s", env.wall_time_s}}},
      {"label", r.label},
      {"dim", r.dim},
      {"validation", {{"trace_preserving", r.validation.trace_preserving}, {"unital", r.validation.unital}}},
      {"fixed_points", {{"type", r.fixed_point_type.to_string()}, {"dim", r.fixed_point_dim}}},
      {"md_chain", std::move(chain)},
      {"kappa", r.kappa},
      {"stabilized", {{"type", r.stabilized_type.to_string()}, {"dim", r.stabilized_type.algebra_dim()}}},
      {"peripheral", std::move(per)},
      {"peripheral_cyclic_order", r.peripheral_cyclic_order ? Json(*r.peripheral_cyclic_order) : Json(nullptr)},
      {"irreducible", r.irreducible},
      {"primitive", r.primitive},
      {"md_trivial", r.md_trivial},
      {"factorable_possible", r.factorization.factorable_possible},
      {"factorization",
       {{"kappa", r.factorization.kappa},
        {"threshold", r.factorization.threshold},
        {"composite_dim", r.factorization.composite_dim}}},
  };
  if (r.fixed_point_basis) {
    Json chain_bases = Json::array();
    for (const auto& b : r.chain_bases) chain_bases.push_back(subspace_to_json(b));
    out["bases"] = {{"fixed_points", subspace_to_json(*r.fixed_point_basis)}, {"md_chain", std::move(chain_bases)}};
  }
  return out;
}

inline std::string format_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.6f%+.6fi", z.real(), z.imag());
  return buf;
}

inline std::string report_to_text(const AnalysisReport& r, const Envelope& env) {
  std::ostringstream s;
  s << "channel " << r.label << " on M_" << r.dim << "\n";
  s << "digest " << env.input_digest << "\n";
  s << "tolerances rank_rel=" << env.tol.rank_rel << " subspace_abs=" << env.tol.subspace_abs
    << " spectral_cluster=" << env.tol.spectral_cluster << "\n";
  s << "trace_preserving=" << std::boolalpha << r.validation.trace_preserving << " unital=" << r.validation.unital
    << "\n";
  s << "Fix: " << r.fixed_point_type.to_string() << " (dim " << r.fixed_point_dim << ")\n";
  for (const auto& c : r.md_chain) {
    s << "M_{E^" << c.power << "}: " << c.type.to_string() << " (dim " << c.dim << ")\n";
  }
  s << "kappa=" << r.kappa << "\n";
  s << "peripheral:";
  for (const auto& p : r.peripheral) s << " " << format_complex(p.eigenvalue) << "[" << p.dim << "]";
  s << "\n";
  s << "irreducible=" << r.irreducible << " primitive=" << r.primitive << " md_trivial=" << r.md_trivial << "\n";
  s << "factorable_possible=" << r.factorization.factorable_possible << " (kappa " << r.factorization.kappa
    << ", threshold " << r.factorization.threshold << ")\n";
  return s.str();
}

inline Json lattice_to_json(const LatticeGraph& g) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    Json blocks = Json::array();
    for (const auto& b : g.nodes[i].blocks()) blocks.push_back({b.n, b.k});
    nodes.push_back({{"id", i}, {"label", g.nodes[i].to_string()}, {"blocks", std::move(blocks)}, {"chi", chi(g.nodes[i])}});
  }
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  Json chain = Json::array();
  for (const int v : g.longest_chain()) chain.push_back(v);
  return Json{{"dim", g.d}, {"root", g.root}, {"bottom", g.bottom}, {"nodes", std::move(nodes)},
              {"edges", std::move(edges)}, {"longest_chain", std::move(chain)}};
}

inline std::string lattice_to_dot(const LatticeGraph& g) {
  std::ostringstream s;
  s << "digraph lattice_M" << g.d << " {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    s << "  n" << i << " [label=\"" << g.nodes[i].to_string() << "\"];\n";
  }
  for (const auto& [a, b] : g.edges) s << "  n" << a << " -> n" << b << ";\n";
  s << "}\n";
  return s.str();
}

}  // namespace io
}  // namespace chanalg
