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
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "chanalg/analysis.hpp"
#include "chanalg/channel.hpp"
#include "chanalg/errors.hpp"
#include "chanalg/numeric.hpp"

namespace chanalg {

// Delta_{ij} = w^{(i-1)(j-1)} / sqrt(d) with w = exp(2 pi i / d).
inline Matrix dft_matrix(Index d) {
  if (d < 1) throw InvalidArgument("dft_matrix: d must be >= 1");
  Matrix f(d, d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((i * j) % d) / static_cast<double>(d);
      f(i, j) = std::polar(s, angle);
    }
  }
  return f;
}

// Cyclic shift u e_i = e_{i+1 mod d}.
inline Matrix cyclic_shift(Index d) {
  Matrix u = Matrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) u((i + 1) % d, i) = 1.0;
  return u;
}

/// A list of unit vectors in C^d.
class VectorFamily {
 public:
  VectorFamily(Index dim, std::vector<Vector> vectors) : dim_(dim), vectors_(std::move(vectors)) {
    for (const auto& v : vectors_) {
      if (v.size() != dim_) throw InvalidArgument("VectorFamily: vector length differs from dim");
      if (std::abs(v.norm() - 1.0) > 1e-12) throw InvalidArgument("VectorFamily: vectors must have unit norm");
    }
  }

  static VectorFamily columns_of(const Matrix& m) {
    std::vector<Vector> v;
    for (Index j = 0; j < m.cols(); ++j) v.emplace_back(m.col(j));
    return VectorFamily(m.rows(), std::move(v));
  }

  static VectorFamily canonical(Index d) { return columns_of(Matrix::Identity(d, d)); }

  Index dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  const Vector& operator[](std::size_t i) const { return vectors_[i]; }
  const std::vector<Vector>& vectors() const { return vectors_; }

  VectorFamily prefix(std::size_t n) const {
    return VectorFamily(dim_, std::vector<Vector>(vectors_.begin(), vectors_.begin() + static_cast<long>(n)));
  }

  Matrix as_matrix() const {
    Matrix m(dim_, static_cast<Index>(vectors_.size()));
    for (std::size_t j = 0; j < vectors_.size(); ++j) m.col(static_cast<Index>(j)) = vectors_[j];
    return m;
  }

  bool orthonormal(double tol = 1e-10) const {
    const Matrix m = as_matrix();
    return max_abs(m.adjoint() * m - Matrix::Identity(m.cols(), m.cols())) <= tol;
  }

 private:
  Index dim_;
  std::vector<Vector> vectors_;
};

inline constexpr std::size_t kMaxComparableFamily = 14;

// Index subsets (0-based) with equal rank-one projector sums.
struct ComparabilityWitness {
  std::vector<int> phi_subset;
  std::vector<int> zeta_subset;
};

/// Looks for nonempty proper subsets K1, K2 with sum_{K1} phi phi^* equal to
/// sum_{K2} zeta zeta^* (Frobenius distance <= tol.subspace_abs). All 2^n
/// subsets K1 are tried; for each, K2 is forced to be the set of zeta
/// vectors lying in the range of the phi projector.
inline std::optional<ComparabilityWitness> comparability_witness(const VectorFamily& phi,
                                                                  const VectorFamily& zeta,
                                                                  const Tolerance& tol = {}) {
  if (phi.dim() != zeta.dim()) throw InvalidArgument("non_comparable: families live in different spaces");
  if (phi.size() > kMaxComparableFamily || zeta.size() > kMaxComparableFamily) {
    throw InvalidArgument("non_comparable: family size exceeds " + std::to_string(kMaxComparableFamily));
  }
  if (!phi.orthonormal() || !zeta.orthonormal()) throw InvalidArgument("non_comparable: families must be orthonormal");
  const Index d = phi.dim();
  const unsigned n = static_cast<unsigned>(phi.size());
  const unsigned m = static_cast<unsigned>(zeta.size());
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    Matrix p = Matrix::Zero(d, d);
    std::vector<int> k1;
    for (unsigned i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        p += phi[i] * phi[i].adjoint();
        k1.push_back(static_cast<int>(i));
      }
    }
    Matrix q = Matrix::Zero(d, d);
    std::vector<int> k2;
    for (unsigned j = 0; j < m; ++j) {
      if ((zeta[j].adjoint() * p * zeta[j])(0, 0).real() >= 0.5) {
        q += zeta[j] * zeta[j].adjoint();
        k2.push_back(static_cast<int>(j));
      }
    }
    if (k2.empty() || k2.size() == m) continue;
    if ((p - q).norm() <= tol.subspace_abs) return ComparabilityWitness{k1, k2};
  }
  return std::nullopt;
}

inline bool non_comparable(const VectorFamily& phi, const VectorFamily& zeta, const Tolerance& tol = {}) {
  return !comparability_witness(phi, zeta, tol).has_value();
}

// Rank-one Kraus channel x -> sum_i phi_i zeta_i^* x zeta_i phi_i^*.
inline Channel entanglement_breaking_channel(const VectorFamily& phi, const VectorFamily& zeta,
                                             std::string label = "etb") {
  if (phi.size() != zeta.size()) throw InvalidArgument("entanglement_breaking_channel: family sizes differ");
  std::vector<Matrix> kraus;
  for (std::size_t i = 0; i < phi.size(); ++i) kraus.emplace_back(phi[i] * zeta[i].adjoint());
  return Channel(std::move(kraus), std::move(label));
}

/// Unital entanglement-breaking channel on M_d with multiplicative index r.
///
/// r = 1 gives the pinching onto {zeta_i}. For r >= 2, phi_i = U zeta_i for
/// i <= m = d - r + 2, where U is the m-point DFT in the zeta coordinates,
/// phi_i = zeta_i otherwise, and the Kraus operators are phi_i zeta_{i-1}^*
/// with zeta_0 = zeta_d. The construction checks non-comparability of the
/// first m vectors and that the computed index is r.
inline Channel etb_channel(Index d, Index r, const std::optional<VectorFamily>& zeta_in = std::nullopt,
                           const Tolerance& tol = {}) {
  if (d < 1 || r < 1 || r > d) throw InvalidArgument("etb_channel: need 1 <= r <= d");
  const VectorFamily zeta = zeta_in.value_or(VectorFamily::canonical(d));
  if (zeta.dim() != d || zeta.size() != static_cast<std::size_t>(d) || !zeta.orthonormal()) {
    throw InvalidArgument("etb_channel: zeta must be an orthonormal basis of C^d");
  }
  const std::string label = "etb(d=" + std::to_string(d) + ",r=" + std::to_string(r) + ")";
  if (r == 1) return entanglement_breaking_channel(zeta, zeta, label);

  const Index m = d - r + 2;
  Matrix u = Matrix::Identity(d, d);
  u.topLeftCorner(m, m) = dft_matrix(m);
  const Matrix z = zeta.as_matrix();
  const VectorFamily phi = VectorFamily::columns_of(z * u);
  if (!non_comparable(phi.prefix(static_cast<std::size_t>(m)), zeta.prefix(static_cast<std::size_t>(m)), tol)) {
    throw NumericalFailure("etb_channel: DFT block is comparable to the basis");
  }
  std::vector<Vector> shifted;
  for (Index i = 0; i < d; ++i) shifted.push_back(zeta[static_cast<std::size_t>((i + d - 1) % d)]);
  Channel ch = entanglement_breaking_channel(phi, VectorFamily(d, std::move(shifted)), label);
  const int kappa = multiplicative_index(ch, tol);
  if (kappa != r) {
    throw NumericalFailure("etb_channel: computed index " + std::to_string(kappa) + " differs from " +
                           std::to_string(r));
  }
  return ch;
}

// The 3x3 example with Kraus operators f1 e3^*, f2 e1^*, f3 e2^*, where f1, f2
// are the 2-point DFT of e1, e2 and f3 = e3.
inline Channel m3_example() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix k1 = Matrix::Zero(3, 3), k2 = Matrix::Zero(3, 3), k3 = Matrix::Zero(3, 3);
  k1(0, 2) = s;
  k1(1, 2) = s;
  k2(0, 0) = s;
  k2(1, 0) = -s;
  k3(2, 1) = 1.0;
  return Channel({k1, k2, k3}, "m3-example");
}

/// x -> u (b ∘ x) u^* for a positive semidefinite b with unit diagonal.
/// Kraus operators u diag(v) over the eigen-factorization b = sum v v^*.
inline Channel schur_channel(const Matrix& b, const Matrix& u, std::string label = "schur") {
  const Index d = b.rows();
  if (b.cols() != d || u.rows() != d || u.cols() != d) throw InvalidArgument("schur_channel: size mismatch");
  if (max_abs(b - b.adjoint()) > 1e-12) throw InvalidArgument("schur_channel: b must be Hermitian");
  for (Index i = 0; i < d; ++i) {
    if (std::abs(b(i, i) - 1.0) > 1e-12) throw InvalidArgument("schur_channel: b needs unit diagonal");
  }
  if (max_abs(u.adjoint() * u - Matrix::Identity(d, d)) > 1e-12) {
    throw InvalidArgument("schur_channel: u must be unitary");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(b);
  const auto& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  if (ev(0) < -1e-12 * std::max(1.0, top)) throw InvalidArgument("schur_channel: b must be positive semidefinite");
  std::vector<Matrix> kraus;
  for (Index j = 0; j < d; ++j) {
    if (ev(j) <= 1e-14 * top) continue;
    const Vector v = std::sqrt(ev(j)) * es.eigenvectors().col(j);
    kraus.emplace_back(u * v.asDiagonal());
  }
  return Channel(std::move(kraus), std::move(label));
}

// b = J_{d-1} ⊕ 1 (all-ones block plus an isolated 1) followed by the d-cycle.
inline Channel schur_cycle_channel(Index d) {
  if (d < 3) throw InvalidArgument("schur_cycle_channel: d must be >= 3");
  Matrix b = Matrix::Zero(d, d);
  b.topLeftCorner(d - 1, d - 1).setOnes();
  b(d - 1, d - 1) = 1.0;
  return schur_channel(b, cyclic_shift(d), "schur-cycle(d=" + std::to_string(d) + ")");
}

// x -> u diag(x) u^*, Kraus e_{i+1} e_i^*.
inline Channel dephasing_shift_channel(Index d) {
  if (d < 2) throw InvalidArgument("dephasing_shift_channel: d must be >= 2");
  std::vector<Matrix> kraus;
  for (Index i = 0; i < d; ++i) {
    Matrix k = Matrix::Zero(d, d);
    k((i + 1) % d, i) = 1.0;
    kraus.push_back(std::move(k));
  }
  return Channel(std::move(kraus), "dephasing-shift(d=" + std::to_string(d) + ")");
}

/// The two unitary channels on M_3 whose equal mixture has index 2: the
/// unitary with rows (1,1,1; w,1,w^2; w^2,1,w)/sqrt 3, w = exp(2 pi i/3),
/// and the cyclic permutation with rows (0,1,0; 0,0,1; 1,0,0).
inline std::pair<Channel, Channel> omega_pair() {
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  Matrix f(3, 3);
  f << 1.0, 1.0, 1.0, w, 1.0, w * w, w * w, 1.0, w;
  f /= std::sqrt(3.0);
  Matrix p = Matrix::Zero(3, 3);
  p(0, 1) = 1.0;
  p(1, 2) = 1.0;
  p(2, 0) = 1.0;
  return {unitary_channel(f, "omega-e1"), unitary_channel(p, "omega-e2")};
}

// Flat Dirichlet weights.
inline std::vector<double> random_simplex(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) total += (x = expo(rng));
  for (auto& x : w) x /= total;
  return w;
}

/// sum_i lambda_i Ad_{u_i} with Haar unitaries and flat Dirichlet weights.
inline Channel random_mixed_unitary(Index d, Index n, std::uint64_t seed) {
  if (d < 1 || n < 1) throw InvalidArgument("random_mixed_unitary: need d >= 1 and n >= 1");
  Rng rng(seed);
  const auto w = random_simplex(static_cast<std::size_t>(n), rng);
  std::vector<Matrix> kraus;
  for (Index i = 0; i < n; ++i) kraus.emplace_back(std::sqrt(w[static_cast<std::size_t>(i)]) * haar_unitary(d, rng));
  return Channel(std::move(kraus), "random-mixed-unitary(d=" + std::to_string(d) + ",n=" + std::to_string(n) +
                                       ",seed=" + std::to_string(seed) + ")");
}

/// Random unital channel with a non-trivial multiplicative domain: a gallery
/// channel (ETB, Schur-cycle, dephasing-shift, unitary, or a 2-term mixed
/// unitary) sandwiched as Ad_v o E o Ad_w with Haar v, w.
inline Channel random_unital_channel(Index d, std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("random_unital_channel: d must be >= 1");
  Rng rng(seed);
  std::vector<int> families{0, 3, 4};
  if (d >= 2) families.push_back(2);
  if (d >= 3) families.push_back(1);
  const int family = families[std::uniform_int_distribution<std::size_t>(0, families.size() - 1)(rng)];
  Channel base = identity_channel(d);
  switch (family) {
    case 0: base = etb_channel(d, std::uniform_int_distribution<Index>(1, d)(rng)); break;
    case 1: base = schur_cycle_channel(d); break;
    case 2: base = dephasing_shift_channel(d); break;
    case 3: base = random_mixed_unitary(d, 1, rng()); break;
    default: base = random_mixed_unitary(d, 2, rng()); break;
  }
  const Matrix v = haar_unitary(d, rng);
  const Matrix w = haar_unitary(d, rng);
  std::vector<Matrix> kraus;
  for (const auto& a : base.kraus()) kraus.emplace_back(v * a * w);
  return Channel(std::move(kraus), "random-unital(d=" + std::to_string(d) + ",seed=" + std::to_string(seed) + ")");
}

}  // namespace chanalg
