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

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "chanalg/errors.hpp"
#include "chanalg/numeric.hpp"
#include "chanalg/wedderburn_type.hpp"

namespace chanalg {

/// A linear subspace of M_d, stored as a Hilbert-Schmidt orthonormal basis.
///
/// Basis element j is column j of basis(), holding vec(x_j) in column-major
/// order, so <x_i, x_j> = Tr(x_i x_j^*) is the ordinary inner product of
/// columns. The same type carries algebras, fixed-point sets, multiplicative
/// domains and eigenspaces.
class OperatorSubspace {
 public:
  OperatorSubspace() = default;

  // `basis` must already be orthonormal (Gram matrix within 1e-9 of I).
  OperatorSubspace(Index ambient_dim, Matrix basis)
      : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
    if (basis_.cols() == 0) basis_.resize(ambient_dim_ * ambient_dim_, 0);
    if (basis_.rows() != ambient_dim_ * ambient_dim_) {
      throw InvalidArgument("OperatorSubspace: basis vectors must have length d^2");
    }
    if (basis_.cols() > 0) {
      const Matrix gram = basis_.adjoint() * basis_;
      if (max_abs(gram - Matrix::Identity(gram.rows(), gram.cols())) > 1e-9) {
        throw NumericalFailure("OperatorSubspace: basis is not orthonormal");
      }
    }
  }

  static OperatorSubspace from_vectors(Index d, const Matrix& columns, const Tolerance& tol = {}) {
    return OperatorSubspace(d, orthonormalize(columns, tol));
  }

  static OperatorSubspace span(Index d, const std::vector<Matrix>& elements,
                               const Tolerance& tol = {}) {
    Matrix cols(d * d, static_cast<Index>(elements.size()));
    for (std::size_t j = 0; j < elements.size(); ++j) {
      if (elements[j].rows() != d || elements[j].cols() != d) {
        throw InvalidArgument("OperatorSubspace::span: element size mismatch");
      }
      cols.col(static_cast<Index>(j)) = vec(elements[j]);
    }
    return from_vectors(d, cols, tol);
  }

  static OperatorSubspace zero(Index d) { return OperatorSubspace(d, Matrix(d * d, 0)); }

  static OperatorSubspace full(Index d) {
    return OperatorSubspace(d, Matrix::Identity(d * d, d * d));
  }

  static OperatorSubspace scalars(Index d) {
    return OperatorSubspace(d, vec(Matrix::Identity(d, d)) / std::sqrt(static_cast<double>(d)));
  }

  Index ambient_dim() const { return ambient_dim_; }
  Index dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  Matrix element(Index j) const { return unvec(basis_.col(j), ambient_dim_); }

  std::vector<Matrix> elements() const {
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(dim()));
    for (Index j = 0; j < dim(); ++j) out.push_back(element(j));
    return out;
  }

  // Basis elements side by side, [x_1 | x_2 | ... ], as a d x (d*dim) view.
  Eigen::Map<const Matrix> stacked() const {
    return Eigen::Map<const Matrix>(basis_.data(), ambient_dim_, ambient_dim_ * dim());
  }

  // Orthogonal projector onto the subspace, acting on vec(x).
  Matrix projector() const { return basis_ * basis_.adjoint(); }

  // Frobenius norm of the component of x orthogonal to the subspace.
  double residual(const Matrix& x) const {
    const Vector v = vec(x);
    if (dim() == 0) return v.norm();
    return (v - basis_ * (basis_.adjoint() * v)).norm();
  }

  bool contains_element(const Matrix& x, double abs_tol) const {
    return residual(x) <= abs_tol * std::max(1.0, x.norm());
  }

 private:
  Index ambient_dim_ = 0;
  Matrix basis_;
};

namespace detail {

inline void require_same_ambient(const OperatorSubspace& a, const OperatorSubspace& b,
                                 const char* what) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw InvalidArgument(std::string(what) + ": ambient dimension mismatch");
  }
}

// ||(I - P_a) P_b||_F, computed without squaring.
inline double leak(const OperatorSubspace& a, const OperatorSubspace& b) {
  if (b.dim() == 0) return 0.0;
  if (a.dim() == 0) return std::sqrt(static_cast<double>(b.dim()));
  return (b.basis() - a.basis() * (a.basis().adjoint() * b.basis())).norm();
}

}  // namespace detail

// ||P_a - P_b||_F, split into the two mutually orthogonal leak terms.
inline double projector_distance(const OperatorSubspace& a, const OperatorSubspace& b) {
  detail::require_same_ambient(a, b, "projector_distance");
  const double ab = detail::leak(a, b);
  const double ba = detail::leak(b, a);
  return std::sqrt(ab * ab + ba * ba);
}

inline bool equal(const OperatorSubspace& a, const OperatorSubspace& b,
                  const Tolerance& tol = {}) {
  return projector_distance(a, b) <= tol.subspace_abs;
}

// Whether a contains b: ||P_a P_b - P_b||_F <= subspace_abs.
inline bool contains(const OperatorSubspace& a, const OperatorSubspace& b,
                     const Tolerance& tol = {}) {
  detail::require_same_ambient(a, b, "contains");
  return detail::leak(a, b) <= tol.subspace_abs;
}

/// Smallest subspace containing the generators (and 1 when requested) that is
/// closed under adjoints and products.
///
/// The generating set G is made *-closed, then the span S is grown by right
/// multiplication S <- S + S*G until no new direction appears. Only elements
/// added in the previous round are multiplied, so each round is linear in the
/// frontier. Terminates after at most d^2 rounds since the dimension
/// increases every round that does not stop.
inline OperatorSubspace star_algebra_closure(Index d, const std::vector<Matrix>& generators,
                                             bool include_identity, const Tolerance& tol = {}) {
  const Index n2 = d * d;
  Matrix gens(n2, n2);
  Index gcount = 0;
  double gscale = 0.0;
  for (const auto& g : generators) gscale = std::max(gscale, g.norm());
  for (const auto& g : generators) {
    if (g.rows() != d || g.cols() != d) {
      throw InvalidArgument("star_algebra_closure: generator size mismatch");
    }
    append_orthonormal(gens, gcount, vec(g), tol, gscale);
    append_orthonormal(gens, gcount, vec(g.adjoint()), tol, gscale);
  }

  Matrix q(n2, n2);
  Index count = 0;
  for (Index j = 0; j < gcount; ++j) append_orthonormal(q, count, gens.col(j), tol);
  if (include_identity) append_orthonormal(q, count, vec(Matrix::Identity(d, d)), tol);

  const Eigen::Map<const Matrix> gstack(gens.data(), d, d * gcount);
  Index done = 0;
  while (done < count && count < n2) {
    const Index end = count;
    for (Index i = done; i < end && count < n2; ++i) {
      const Matrix x = unvec(q.col(i), d);
      const Matrix prods = x * gstack;
      const Eigen::Map<const Matrix> as_vecs(prods.data(), n2, gcount);
      for (Index j = 0; j < gcount && count < n2; ++j) {
        append_orthonormal(q, count, as_vecs.col(j), tol, 1.0);
      }
    }
    done = end;
  }
  Matrix basis = q.leftCols(count);
  return OperatorSubspace(d, std::move(basis));
}

/// {x : g x = x g for every basis element g}, the joint null space of the
/// maps x -> g x - x g. Row blocks are stacked in batches and compressed to
/// their R factor, so memory stays O(d^4) for any number of generators.
inline OperatorSubspace commutant(const OperatorSubspace& sub, const Tolerance& tol = {}) {
  const Index d = sub.ambient_dim();
  const Index n2 = d * d;
  if (sub.dim() == 0) return OperatorSubspace::full(d);
  const Matrix id = Matrix::Identity(d, d);
  const Index batch = 3;
  Matrix acc(0, n2);
  Index j = 0;
  while (j < sub.dim()) {
    const Index take = std::min<Index>(batch, sub.dim() - j);
    Matrix stacked(acc.rows() + take * n2, n2);
    stacked.topRows(acc.rows()) = acc;
    for (Index t = 0; t < take; ++t) {
      const Matrix g = sub.element(j + t);
      stacked.middleRows(acc.rows() + t * n2, n2) = kron(id, g) - kron(g.transpose(), id);
    }
    j += take;
    if (stacked.rows() > n2) {
      Eigen::HouseholderQR<Matrix> qr(stacked);
      acc = qr.matrixQR().topRows(n2).triangularView<Eigen::Upper>();
    } else {
      acc = std::move(stacked);
    }
  }
  return OperatorSubspace(d, nullspace(acc, tol, 1.0));
}

// Span of pairwise Kronecker products of the two bases (already orthonormal).
inline OperatorSubspace tensor_subspace(const OperatorSubspace& a, const OperatorSubspace& b) {
  const Index d = a.ambient_dim() * b.ambient_dim();
  Matrix basis(d * d, a.dim() * b.dim());
  Index col = 0;
  for (Index i = 0; i < a.dim(); ++i) {
    const Matrix x = a.element(i);
    for (Index j = 0; j < b.dim(); ++j) basis.col(col++) = vec(kron(x, b.element(j)));
  }
  return OperatorSubspace(d, std::move(basis));
}

// a ∩ b as the null space of the stacked complementary projectors.
inline OperatorSubspace intersect(const OperatorSubspace& a, const OperatorSubspace& b,
                                  const Tolerance& tol = {}) {
  detail::require_same_ambient(a, b, "intersect");
  const Index n2 = a.ambient_dim() * a.ambient_dim();
  const Matrix id = Matrix::Identity(n2, n2);
  Matrix stacked(2 * n2, n2);
  stacked.topRows(n2) = id - a.projector();
  stacked.bottomRows(n2) = id - b.projector();
  return OperatorSubspace(a.ambient_dim(), nullspace(stacked, tol, 1.0));
}

// Largest residual of an adjoint or a pairwise product of basis elements
// outside the subspace. Zero exactly for *-closed algebras.
inline double algebra_defect(const OperatorSubspace& a) {
  const Index d = a.ambient_dim();
  const Index m = a.dim();
  if (m == 0) return 0.0;
  double worst = 0.0;
  const Matrix& basis = a.basis();
  const auto stack = a.stacked();
  for (Index i = 0; i < m; ++i) {
    const Matrix x = a.element(i);
    worst = std::max(worst, a.residual(x.adjoint()));
    const Matrix prods = x * stack;
    const Eigen::Map<const Matrix> v(prods.data(), d * d, m);
    const Matrix res = v - basis * (basis.adjoint() * v);
    worst = std::max(worst, res.colwise().norm().maxCoeff());
  }
  return worst;
}

inline bool is_star_algebra(const OperatorSubspace& a, const Tolerance& tol = {}) {
  return algebra_defect(a) <= tol.subspace_abs;
}

inline bool is_unital(const OperatorSubspace& a, const Tolerance& tol = {}) {
  return a.contains_element(Matrix::Identity(a.ambient_dim(), a.ambient_dim()), tol.subspace_abs);
}

inline OperatorSubspace center(const OperatorSubspace& a, const Tolerance& tol = {}) {
  if (!is_star_algebra(a, tol)) throw InvalidArgument("center: input is not a *-algebra");
  return intersect(a, commutant(a, tol), tol);
}

// True iff the subspace is exactly C*1.
inline bool is_trivial(const OperatorSubspace& a, const Tolerance& tol = {}) {
  return a.dim() == 1 && is_unital(a, tol);
}

struct WedderburnBlockData {
  Matrix central_projection;
  int n = 0;
  int k = 0;
};

struct WedderburnDecomposition {
  WedderburnType type;
  std::vector<WedderburnBlockData> blocks;  // aligned with type.blocks()
};

/// Wedderburn decomposition of a unital *-subalgebra of M_d.
///
/// Minimal central projections are the spectral projections of a generic
/// Hermitian element of the center (random Gaussian combination of a
/// Hermitian center basis, drawn from `rng`). The draw is repeated, up to 8
/// times, while two distinct eigenvalues sit closer than 1e-6 of the spread.
/// For a block with central projection p, n = sqrt(dim(p a p)) and
/// k = rank(p) / n.
inline WedderburnDecomposition wedderburn(const OperatorSubspace& a, const Tolerance& tol,
                                          Rng& rng) {
  const Index d = a.ambient_dim();
  if (a.dim() == 0) throw InvalidArgument("wedderburn: empty subspace");
  if (!is_unital(a, tol)) throw InvalidArgument("wedderburn: algebra does not contain 1");
  if (!is_star_algebra(a, tol)) throw InvalidArgument("wedderburn: input is not a *-algebra");

  const OperatorSubspace z = intersect(a, commutant(a, tol), tol);
  Matrix herm(d * d, 2 * z.dim());
  for (Index j = 0; j < z.dim(); ++j) {
    const Matrix c = z.element(j);
    herm.col(2 * j) = vec((c + c.adjoint()) / 2.0);
    herm.col(2 * j + 1) = vec((c - c.adjoint()) / (2.0 * kI));
  }
  const Matrix hbasis = orthonormalize(herm, tol);

  std::normal_distribution<double> normal(0.0, 1.0);
  constexpr int kMaxDraws = 8;
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    Vector coeffs(hbasis.cols());
    for (Index i = 0; i < coeffs.size(); ++i) coeffs(i) = normal(rng);
    Matrix zmat = unvec(hbasis * coeffs, d);
    zmat = (zmat + zmat.adjoint()).eval() / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(zmat);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double spread = ev(d - 1) - ev(0);
    const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);

    // Cluster sorted eigenvalues; a gap inside (tight, loose) is ambiguous.
    const double tight = 1e-8 * scale;
    const double loose = 1e-6 * spread;
    std::vector<std::pair<Index, Index>> clusters;  // [begin, end)
    bool ambiguous = false;
    Index begin = 0;
    for (Index i = 1; i <= d; ++i) {
      if (i == d || ev(i) - ev(i - 1) > tight) {
        if (i < d && ev(i) - ev(i - 1) < loose) ambiguous = true;
        clusters.emplace_back(begin, i);
        begin = i;
      }
    }
    if (ambiguous && hbasis.cols() > 1) continue;

    WedderburnDecomposition out;
    std::vector<WedderburnBlock> types;
    int total = 0;
    for (const auto& [b, e] : clusters) {
      const Index rank = e - b;
      const Matrix v = es.eigenvectors().middleCols(b, rank);
      Matrix compressed(rank * rank, a.dim());
      for (Index j = 0; j < a.dim(); ++j) {
        const Matrix block = v.adjoint() * a.element(j) * v;
        compressed.col(j) = vec(block);
      }
      const double block_dim = static_cast<double>(orthonormalize(compressed, tol).cols());
      const int n = static_cast<int>(std::lround(std::sqrt(block_dim)));
      if (n < 1 || std::abs(n * n - block_dim) > 1e-6 * block_dim || rank % n != 0) {
        throw NumericalFailure("wedderburn: ill-conditioned decomposition (block of dim " +
                               std::to_string(static_cast<long>(block_dim)) + ", rank " +
                               std::to_string(static_cast<long>(rank)) + ")");
      }
      const int k = static_cast<int>(rank / n);
      total += n * k;
      out.blocks.push_back({v * v.adjoint(), n, k});
      types.push_back({n, k});
    }
    if (total != d) throw NumericalFailure("wedderburn: block sizes do not add up to d");
    std::stable_sort(out.blocks.begin(), out.blocks.end(),
                     [](const WedderburnBlockData& x, const WedderburnBlockData& y) {
                       return std::pair(x.n, x.k) > std::pair(y.n, y.k);
                     });
    out.type = WedderburnType(std::move(types));
    return out;
  }
  throw NumericalFailure("wedderburn: could not separate central projections after 8 draws");
}

inline WedderburnType algebra_type(const OperatorSubspace& a, const Tolerance& tol, Rng& rng) {
  return wedderburn(a, tol, rng).type;
}

}  // namespace chanalg
