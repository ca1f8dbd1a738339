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

#include <charconv>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chanalg/analysis.hpp"
#include "chanalg/errors.hpp"
#include "chanalg/gallery.hpp"

namespace chanalg::verify {

struct CaseResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteOptions {
  std::vector<std::vector<int>> dims;  // empty means the suite default
  int seeds = 3;
  int k = 3;  // highest power for convex-formula
  std::uint64_t seed = 0x5eedULL;
  Tolerance tol;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"md-splitting", "kappa-tensor", "fix-splitting", "convex-formula",
                                              "adjoint-index", "ucc",          "kappa-bound"};
  return names;
}

namespace detail {

inline int parse_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 1) {
    throw InvalidArgument("bad dimension '" + s + "'");
  }
  return v;
}

}  // namespace detail

/// "2x2,2x3" gives pairs, "2..6" a range of single dimensions, "2,4" a list.
inline std::vector<std::vector<int>> parse_dims(const std::string& text) {
  std::vector<std::vector<int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InvalidArgument("empty item in dimension list");
    if (const auto dots = item.find(".."); dots != std::string::npos) {
      const int lo = detail::parse_int(item.substr(0, dots));
      const int hi = detail::parse_int(item.substr(dots + 2));
      if (lo > hi) throw InvalidArgument("empty dimension range '" + item + "'");
      for (int d = lo; d <= hi; ++d) out.push_back({d});
    } else if (const auto x = item.find('x'); x != std::string::npos) {
      out.push_back({detail::parse_int(item.substr(0, x)), detail::parse_int(item.substr(x + 1))});
    } else {
      out.push_back({detail::parse_int(item)});
    }
  }
  if (out.empty()) throw InvalidArgument("empty dimension list");
  return out;
}

namespace detail {

inline std::vector<std::pair<int, int>> as_pairs(const SuiteOptions& o) {
  std::vector<std::pair<int, int>> out;
  if (o.dims.empty()) return {{2, 2}, {2, 3}, {3, 3}};
  for (const auto& d : o.dims) out.emplace_back(d.front(), d.back());
  return out;
}

inline std::vector<int> as_singles(const SuiteOptions& o) {
  if (o.dims.empty()) return {2, 3, 4};
  std::vector<int> out;
  for (const auto& d : o.dims) {
    if (d.size() != 1) throw InvalidArgument("this suite takes single dimensions, not pairs");
    out.push_back(d.front());
  }
  return out;
}

inline std::uint64_t case_seed(const SuiteOptions& o, std::size_t group, int i) {
  return o.seed + 7919u * group + static_cast<std::uint64_t>(i);
}

inline std::string dims_name(int a, int b) { return std::to_string(a) + "x" + std::to_string(b); }

inline void run_case(std::vector<CaseResult>& out, std::string name, const std::function<CaseResult()>& body) {
  try {
    CaseResult r = body();
    r.name = std::move(name);
    out.push_back(std::move(r));
  } catch (const Error& e) {
    out.push_back({std::move(name), false, std::string("error: ") + e.what()});
  }
}

template <class F>
std::vector<CaseResult> over_pairs(const SuiteOptions& o, F&& check) {
  std::vector<CaseResult> out;
  const auto pairs = as_pairs(o);
  for (std::size_t g = 0; g < pairs.size(); ++g) {
    const auto [da, db] = pairs[g];
    for (int i = 0; i < o.seeds; ++i) {
      const std::uint64_t s = case_seed(o, g, i);
      run_case(out, dims_name(da, db) + " seed=" + std::to_string(s), [&] {
        const Channel a = random_unital_channel(da, s);
        const Channel b = random_unital_channel(db, s ^ 0x9e3779b97f4a7c15ULL);
        return check(a, b);
      });
    }
  }
  return out;
}

}  // namespace detail

inline std::vector<CaseResult> run_suite(const std::string& name, const SuiteOptions& o) {
  o.tol.check();
  if (o.seeds < 1) throw InvalidArgument("--seeds must be >= 1");
  const Tolerance& tol = o.tol;
  auto fmt = [](double x) {
    std::ostringstream s;
    s << x;
    return s.str();
  };

  if (name == "md-splitting") {
    return detail::over_pairs(o, [&](const Channel& a, const Channel& b) {
      const auto c = check_md_splitting(a, b, tol);
      const auto s = check_stabilized_splitting(a, b, tol);
      return CaseResult{"", c.equal && s.equal,
                        "distance=" + fmt(c.distance) + " stabilized_distance=" + fmt(s.distance)};
    });
  }
  if (name == "kappa-tensor") {
    return detail::over_pairs(o, [&](const Channel& a, const Channel& b) {
      const auto c = kappa_tensor_check(a, b, tol);
      return CaseResult{"", c.equal,
                        "kappa_a=" + std::to_string(c.kappa_a) + " kappa_b=" + std::to_string(c.kappa_b) +
                            " kappa_product=" + std::to_string(c.kappa_product)};
    });
  }
  if (name == "fix-splitting") {
    return detail::over_pairs(o, [&](const Channel& a, const Channel& b) {
      const auto c = fix_splitting_check(a, b, tol);
      return CaseResult{"", c.consistent(),
                        std::string("splits=") + (c.splits ? "true" : "false") +
                            " predicted=" + (c.predicted ? "true" : "false") +
                            " dim_product=" + std::to_string(c.product_dim)};
    });
  }
  if (name == "ucc") {
    return detail::over_pairs(o, [&](const Channel& a, const Channel& b) {
      const OperatorSubspace lhs = ucc_algebra(tensor(a, b), tol);
      const OperatorSubspace rhs = tensor_subspace(ucc_algebra(a, tol), ucc_algebra(b, tol));
      const double dist = projector_distance(lhs, rhs);
      return CaseResult{"", dist <= tol.subspace_abs, "distance=" + fmt(dist)};
    });
  }

  std::vector<CaseResult> out;
  const auto singles = detail::as_singles(o);
  if (name == "convex-formula") {
    if (o.k < 1) throw InvalidArgument("--k must be >= 1");
    for (std::size_t g = 0; g < singles.size(); ++g) {
      const int d = singles[g];
      for (int i = 0; i < o.seeds; ++i) {
        const std::uint64_t s = detail::case_seed(o, g, i);
        const Channel a = random_unital_channel(d, s);
        const Channel b = random_unital_channel(d, s ^ 0x9e3779b97f4a7c15ULL);
        Rng rng(s);
        const double lambda = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
        for (int k = 1; k <= o.k; ++k) {
          detail::run_case(out, "d=" + std::to_string(d) + " seed=" + std::to_string(s) + " k=" + std::to_string(k),
                           [&] {
                             const auto c = convex_md_check(a, b, lambda, k, tol);
                             return CaseResult{"", c.equal,
                                               "dim=" + std::to_string(c.direct.dim()) + " distance=" + fmt(c.distance)};
                           });
        }
      }
    }
    return out;
  }
  if (name == "adjoint-index") {
    for (std::size_t g = 0; g < singles.size(); ++g) {
      for (int i = 0; i < o.seeds; ++i) {
        const std::uint64_t s = detail::case_seed(o, g, i);
        detail::run_case(out, "d=" + std::to_string(singles[g]) + " seed=" + std::to_string(s), [&] {
          const auto c = adjoint_index_check(random_unital_channel(singles[g], s), tol);
          return CaseResult{"", c.equal,
                            "kappa=" + std::to_string(c.kappa) + " kappa_adjoint=" + std::to_string(c.kappa_adjoint)};
        });
      }
    }
    return out;
  }
  if (name == "kappa-bound") {
    for (std::size_t g = 0; g < singles.size(); ++g) {
      const int d = singles[g];
      const int bound = std::max(1, 2 * d - 2);
      auto bounded = [&](const std::string& label, const std::function<Channel()>& make, int extra_bound) {
        detail::run_case(out, label, [&] {
          const int kappa = multiplicative_index(make(), tol);
          const bool ok = kappa <= bound && kappa <= extra_bound;
          return CaseResult{"", ok, "kappa=" + std::to_string(kappa) + " bound=" + std::to_string(std::min(bound, extra_bound))};
        });
      };
      for (int r = 1; r <= d; ++r) {
        bounded("etb(d=" + std::to_string(d) + ",r=" + std::to_string(r) + ")", [&] { return etb_channel(d, r); }, d);
      }
      if (d >= 3) bounded("schur-cycle(d=" + std::to_string(d) + ")", [&] { return schur_cycle_channel(d); }, bound);
      if (d >= 2) bounded("dephasing-shift(d=" + std::to_string(d) + ")", [&] { return dephasing_shift_channel(d); }, bound);
      for (int i = 0; i < o.seeds; ++i) {
        const std::uint64_t s = detail::case_seed(o, g, i);
        bounded("random-unital(d=" + std::to_string(d) + ",seed=" + std::to_string(s) + ")",
                [&] { return random_unital_channel(d, s); }, bound);
      }
    }
    return out;
  }
  throw InvalidArgument("unknown suite '" + name + "'");
}

}  // namespace chanalg::verify
