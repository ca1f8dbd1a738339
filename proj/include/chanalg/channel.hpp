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

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "chanalg/errors.hpp"
#include "chanalg/numeric.hpp"

namespace chanalg {

/// A completely positive map on d x d matrices in Kraus form,
/// x -> sum_j a_j x a_j^*.
///
/// Construction only checks shapes and finiteness; trace preservation and
/// unitality are properties reported by validate(). Kraus sets are never
/// canonicalized, so two channels are compared as maps (map_distance), not
/// by their Kraus operators.
class Channel {
 public:
  explicit Channel(std::vector<Matrix> kraus, std::string label = {})
      : kraus_(std::move(kraus)), label_(std::move(label)) {
    if (kraus_.empty()) throw InvalidChannel("channel needs at least one Kraus operator");
    const Index d = kraus_.front().rows();
    if (d == 0) throw InvalidChannel("channel dimension must be positive");
    for (const auto& a : kraus_) {
      if (a.rows() != d || a.cols() != d) {
        throw InvalidChannel("Kraus operators must all be square of the same size");
      }
      if (!all_finite(a)) throw InvalidChannel("Kraus operator has non-finite entries");
    }
    dim_ = d;
  }

  Index dim() const { return dim_; }
  std::size_t size() const { return kraus_.size(); }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  const std::string& label() const { return label_; }

  Channel relabeled(std::string label) const { return Channel(kraus_, std::move(label)); }

 private:
  std::vector<Matrix> kraus_;
  std::string label_;
  Index dim_ = 0;
};

struct ChannelFlags {
  bool trace_preserving = false;
  bool unital = false;
};

// Trace preservation and unitality, each decided by the max-entry residual of
// the Kraus resolution against the identity (threshold tol.rank_rel).
inline ChannelFlags validate(const Channel& ch, const Tolerance& tol = {}) {
  const Index d = ch.dim();
  Matrix tp = Matrix::Zero(d, d);
  Matrix un = Matrix::Zero(d, d);
  for (const auto& a : ch.kraus()) {
    tp.noalias() += a.adjoint() * a;
    un.noalias() += a * a.adjoint();
  }
  const Matrix id = Matrix::Identity(d, d);
  return {max_abs(tp - id) <= tol.rank_rel, max_abs(un - id) <= tol.rank_rel};
}

inline void require_trace_preserving(const Channel& ch, const Tolerance& tol = {}) {
  if (!validate(ch, tol).trace_preserving) {
    throw InvalidChannel("channel '" + ch.label() + "' is not trace preserving");
  }
}

inline void require_unital(const Channel& ch, const Tolerance& tol = {}) {
  const auto flags = validate(ch, tol);
  if (!flags.trace_preserving) {
    throw InvalidChannel("channel '" + ch.label() + "' is not trace preserving");
  }
  if (!flags.unital) {
    throw UnsupportedAnalysis("channel '" + ch.label() +
                              "' is not unital; this analysis is defined for unital channels only");
  }
}

inline Matrix apply(const Channel& ch, const Matrix& x) {
  if (x.rows() != ch.dim() || x.cols() != ch.dim()) {
    throw InvalidArgument("apply: operand size does not match channel dimension");
  }
  Matrix out = Matrix::Zero(ch.dim(), ch.dim());
  for (const auto& a : ch.kraus()) out.noalias() += a * x * a.adjoint();
  return out;
}

// Hilbert-Schmidt adjoint: Kraus set {a_j^*}.
inline Channel adjoint(const Channel& ch) {
  std::vector<Matrix> k;
  k.reserve(ch.size());
  for (const auto& a : ch.kraus()) k.emplace_back(a.adjoint());
  return Channel(std::move(k), ch.label().empty() ? std::string{} : ch.label() + "*");
}

// outer o inner, with Kraus set {b_i a_j}.
inline Channel compose(const Channel& outer, const Channel& inner) {
  if (outer.dim() != inner.dim()) throw InvalidArgument("compose: dimension mismatch");
  std::vector<Matrix> k;
  k.reserve(outer.size() * inner.size());
  for (const auto& b : outer.kraus()) {
    for (const auto& a : inner.kraus()) k.emplace_back(b * a);
  }
  return Channel(std::move(k));
}

inline Channel tensor(const Channel& a, const Channel& b) {
  std::vector<Matrix> k;
  k.reserve(a.size() * b.size());
  for (const auto& x : a.kraus()) {
    for (const auto& y : b.kraus()) k.emplace_back(kron(x, y));
  }
  std::string label;
  if (!a.label().empty() || !b.label().empty()) label = "(" + a.label() + ")x(" + b.label() + ")";
  return Channel(std::move(k), std::move(label));
}

struct WeightedChannel {
  double weight = 0.0;
  Channel channel;
};

// sum_i w_i E_i with Kraus union {sqrt(w_i) a}. Zero-weight terms are dropped.
inline Channel convex_combine(const std::vector<WeightedChannel>& terms) {
  if (terms.empty()) throw InvalidArgument("convex_combine: no terms");
  double total = 0.0;
  const Index d = terms.front().channel.dim();
  for (const auto& t : terms) {
    if (!(t.weight >= 0.0)) throw InvalidArgument("convex_combine: negative weight");
    if (t.channel.dim() != d) throw InvalidArgument("convex_combine: dimension mismatch");
    total += t.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("convex_combine: weights do not sum to 1");
  std::vector<Matrix> k;
  for (const auto& t : terms) {
    if (t.weight == 0.0) continue;
    const double s = std::sqrt(t.weight);
    for (const auto& a : t.channel.kraus()) k.emplace_back(s * a);
  }
  return Channel(std::move(k));
}

/// Matrix of a channel acting on column-major vectorized operators:
/// vec(E(x)) = matrix * vec(x), with matrix = sum_j conj(a_j) (x) a_j.
struct Superoperator {
  Index dim = 0;
  Matrix matrix;

  Matrix apply(const Matrix& x) const {
    if (x.rows() != dim || x.cols() != dim) {
      throw InvalidArgument("Superoperator::apply: operand size mismatch");
    }
    return unvec(matrix * vec(x), dim);
  }
};

inline Superoperator superoperator(const Channel& ch) {
  const Index d = ch.dim();
  Superoperator s{d, Matrix::Zero(d * d, d * d)};
  for (const auto& a : ch.kraus()) s.matrix += kron(a.conjugate(), a);
  return s;
}

inline Matrix matrix_power(const Matrix& m, int k) {
  if (k < 0) throw InvalidArgument("matrix_power: negative exponent");
  Matrix result = Matrix::Identity(m.rows(), m.cols());
  Matrix base = m;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

inline Superoperator superoperator_power(const Superoperator& s, int k) {
  if (k < 1) throw InvalidArgument("superoperator_power: k must be >= 1");
  return {s.dim, matrix_power(s.matrix, k)};
}

inline constexpr std::size_t kMaxMaterializedKraus = 10000;

// k-fold composition with explicit Kraus operators. Analysis code uses
// superoperator_power instead, since the Kraus count grows as n^k.
inline Channel power(const Channel& ch, int k) {
  if (k < 1) throw InvalidArgument("power: k must be >= 1");
  double count = std::pow(static_cast<double>(ch.size()), k);
  if (count > static_cast<double>(kMaxMaterializedKraus)) {
    throw InvalidArgument("power: Kraus materialization would exceed 1e4 operators; use superoperator_power");
  }
  Channel out = ch;
  for (int i = 1; i < k; ++i) out = compose(ch, out);
  return out.relabeled(ch.label().empty() ? std::string{} : ch.label() + "^" + std::to_string(k));
}

// Frobenius distance between superoperators; zero iff the maps agree.
inline double map_distance(const Channel& a, const Channel& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("map_distance: dimension mismatch");
  return (superoperator(a).matrix - superoperator(b).matrix).norm();
}

inline Channel identity_channel(Index d) {
  return Channel({Matrix::Identity(d, d)}, "identity(" + std::to_string(d) + ")");
}

inline Channel unitary_channel(const Matrix& u, std::string label = "unitary") {
  return Channel({u}, std::move(label));
}

}  // namespace chanalg
