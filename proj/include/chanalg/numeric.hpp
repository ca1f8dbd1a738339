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
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <lapacke.h>

#include "chanalg/errors.hpp"

namespace chanalg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;
using Rng = std::mt19937_64;

inline constexpr Complex kI{0.0, 1.0};

// Thresholds used by every rank, subspace and spectral decision.
struct Tolerance {
  // Singular values at or below rank_rel * sigma_max count as zero.
  double rank_rel = 1e-9;
  // Absolute Frobenius distance between subspace projectors.
  double subspace_abs = 1e-7;
  // Distance from the unit circle for an eigenvalue to count as peripheral.
  double spectral_cluster = 1e-8;

  void check() const {
    for (double v : {rank_rel, subspace_abs, spectral_cluster}) {
      if (!(v > 0.0 && v < 1e-2)) {
        throw InvalidArgument("tolerances must lie in (0, 1e-2)");
      }
    }
  }
};

inline double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline bool all_finite(const Matrix& a) {
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  const Index br = b.rows(), bc = b.cols();
  Matrix out(a.rows() * br, a.cols() * bc);
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    }
  }
  return out;
}

// Column-major vectorization: vec(x)[i + d*j] = x(i, j).
inline Vector vec(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

inline Matrix unvec(const Vector& v, Index d) {
  if (v.size() != d * d) throw InvalidArgument("unvec: length is not d^2");
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

// Rotates v so its largest-magnitude entry (first one on ties) is real positive.
inline void phase_fix(Eigen::Ref<Vector> v) {
  Index best = 0;
  double best_abs = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs * (1.0 + 1e-12)) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs > 0.0) v *= std::conj(v(best)) / best_abs;
}

inline void phase_fix_columns(Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) phase_fix(m.col(j));
}

namespace detail {

// Singular values (descending) and, when requested, the full V factor, via
// LAPACK zgesvd. Eigen 3.4's BDCSVD reads out of bounds on some
// rank-deficient inputs and JacobiSVD is an order of magnitude slower at the
// sizes used here.
inline void svd_values_and_v(const Matrix& a, Eigen::VectorXd& s, Matrix* v) {
  const auto m = static_cast<lapack_int>(a.rows());
  const auto n = static_cast<lapack_int>(a.cols());
  Matrix work = a;
  s.resize(std::min(m, n));
  Matrix vt(v ? n : 1, v ? n : 1);
  Eigen::VectorXd superb(std::max<lapack_int>(1, std::min(m, n) - 1));
  Complex u_dummy;
  // std::complex<double> and LAPACK's complex type share layout.
  auto cplx = [](Complex* p) { return reinterpret_cast<lapack_complex_double*>(p); };
  const lapack_int info =
      LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'N', v ? 'A' : 'N', m, n, cplx(work.data()), std::max<lapack_int>(1, m),
                     s.data(), cplx(&u_dummy), 1, cplx(vt.data()), static_cast<lapack_int>(vt.rows()), superb.data());
  if (info != 0) throw NumericalFailure("svd: zgesvd failed with info " + std::to_string(info));
  if (v) *v = vt.adjoint();
  if (!s.allFinite() || (v && !all_finite(*v))) throw NumericalFailure("svd: non-finite factors");
}

}  // namespace detail

// Orthonormal basis (as columns) of the right null space of a. A singular
// value counts as zero when it is at most rank_rel * max(sigma_max, reference).
// Pass a reference norm when a may be numerically zero, so rounding noise is
// not mistaken for rank.
inline Matrix nullspace(const Matrix& a, const Tolerance& tol = {},
                        double reference = 0.0) {
  const Index n = a.cols();
  if (n == 0) return Matrix(0, 0);
  if (a.rows() == 0) {
    Matrix id = Matrix::Identity(n, n);
    return id;
  }
  Matrix work;
  if (a.rows() > 2 * n) {
    // Tall stacks: the null space of a equals that of its R factor.
    Eigen::HouseholderQR<Matrix> qr(a);
    work = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  } else {
    work = a;
  }
  Eigen::VectorXd s;
  Matrix vfull;
  detail::svd_values_and_v(work, s, &vfull);
  const double smax = s.size() > 0 ? s(0) : 0.0;
  const double cutoff = tol.rank_rel * std::max(smax, reference);
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) ++rank;
  }
  Matrix v = vfull.rightCols(n - rank);
  phase_fix_columns(v);
  return v;
}

inline Index numerical_rank(const Matrix& a, const Tolerance& tol = {},
                            double reference = 0.0) {
  if (a.size() == 0) return 0;
  Eigen::VectorXd s;
  detail::svd_values_and_v(a, s, nullptr);
  const double cutoff = tol.rank_rel * std::max(s(0), reference);
  return (s.array() > cutoff).count();
}

// Appends v to the first `count` orthonormal columns of q when its residual
// after two Gram-Schmidt passes exceeds rank_rel relative to max(|v|, scale).
// Returns whether a column was added.
inline bool append_orthonormal(Matrix& q, Index& count, const Vector& v,
                               const Tolerance& tol, double scale = 0.0) {
  const double norm0 = std::max(v.norm(), scale);
  if (norm0 == 0.0 || count >= q.cols()) return false;
  Vector w = v;
  for (int pass = 0; pass < 2; ++pass) {
    if (count > 0) {
      auto basis = q.leftCols(count);
      w -= basis * (basis.adjoint() * w);
    }
  }
  const double r = w.norm();
  if (r <= tol.rank_rel * norm0) return false;
  q.col(count++) = w / r;
  return true;
}

// Orthonormal spanning set (as columns) of the columns of `vectors`. Columns
// are judged against the largest input norm.
inline Matrix orthonormalize(const Matrix& vectors, const Tolerance& tol = {}) {
  const Index n = vectors.rows();
  Matrix q(n, std::min(n, vectors.cols()));
  Index count = 0;
  const double scale = vectors.cols() > 0 ? vectors.colwise().norm().maxCoeff() : 0.0;
  for (Index j = 0; j < vectors.cols() && count < n; ++j) {
    append_orthonormal(q, count, vectors.col(j), tol, scale);
  }
  Matrix out = q.leftCols(count);
  return out;
}

struct EigenPair {
  Complex value;
  Vector vector;
};

// Total order used for every reported spectrum: descending modulus (bucketed
// at 1e-9), then ascending argument in (-pi, pi].
inline bool spectral_before(Complex a, Complex b) {
  const auto ma = std::llround(std::abs(a) * 1e9);
  const auto mb = std::llround(std::abs(b) * 1e9);
  if (ma != mb) return ma > mb;
  return std::arg(a) < std::arg(b);
}

namespace detail {

// LAPACK zgeev: eigenvalues and, when requested, right eigenvectors.
// Eigen's ComplexEigenSolver fails to converge on some strongly non-normal
// superoperators (products of entanglement-breaking channels).
inline void zgeev(const Matrix& a, Vector& values, Matrix* vectors) {
  const auto n = static_cast<lapack_int>(a.rows());
  Matrix work = a;
  values.resize(n);
  Matrix vr(vectors ? n : 1, vectors ? n : 1);
  Complex vl_dummy;
  auto cplx = [](Complex* p) { return reinterpret_cast<lapack_complex_double*>(p); };
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', vectors ? 'V' : 'N', n, cplx(work.data()), n, cplx(values.data()),
                    cplx(&vl_dummy), 1, cplx(vr.data()), static_cast<lapack_int>(vr.rows()));
  if (info != 0) throw NumericalFailure("eigensolver: zgeev failed with info " + std::to_string(info));
  if (vectors) *vectors = std::move(vr);
}

}  // namespace detail

inline Vector eigenvalues_general(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("eigenvalues_general: matrix is not square");
  Vector values;
  if (a.rows() > 0) detail::zgeev(a, values, nullptr);
  return values;
}

inline std::vector<EigenPair> eig_general(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("eig_general: matrix is not square");
  std::vector<EigenPair> out;
  if (a.rows() == 0) return out;
  Vector values;
  Matrix vectors;
  detail::zgeev(a, values, &vectors);
  out.reserve(static_cast<std::size_t>(a.rows()));
  for (Index i = 0; i < a.rows(); ++i) {
    Vector v = vectors.col(i);
    v.normalize();
    phase_fix(v);
    out.push_back({values(i), std::move(v)});
  }
  std::stable_sort(out.begin(), out.end(), [](const EigenPair& x, const EigenPair& y) {
    return spectral_before(x.value, y.value);
  });
  return out;
}

inline Matrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im) / std::numbers::sqrt2;
    }
  }
  return g;
}

// Haar-distributed unitary: QR of a complex Gaussian with the phases of R's
// diagonal absorbed into Q.
inline Matrix haar_unitary(Index d, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(d, d, rng));
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  for (Index i = 0; i < d; ++i) {
    const Complex r = qr.matrixQR()(i, i);
    const double m = std::abs(r);
    if (m > 0.0) q.col(i) *= r / m;
  }
  return q;
}

inline Matrix random_hermitian(Index d, Rng& rng) {
  Matrix g = gaussian_matrix(d, d, rng);
  Matrix h = (g + g.adjoint()) / 2.0;
  return h;
}

}  // namespace chanalg
