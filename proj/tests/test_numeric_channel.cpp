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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "chanalg/chanalg.hpp"
#include "oracles.hpp"

namespace {

using namespace chanalg;

const Complex kOmega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

Matrix diag3(Complex a, Complex b, Complex c) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

Channel complete_dephasing(Index d) {
  std::vector<Matrix> k;
  for (Index i = 0; i < d; ++i) k.push_back(oracle::unit(d, i, i));
  return Channel(std::move(k), "dephasing");
}

// ---- numeric kernel ----

TEST(Kron, IdentityCase) { EXPECT_EQ(kron(Matrix::Identity(2, 2), Matrix::Identity(2, 2)), Matrix::Identity(4, 4)); }

TEST(Kron, DiagonalUnits) {
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  Matrix want = Matrix::Zero(4, 4);
  want(1, 1) = 1.0;
  EXPECT_EQ(kron(a, b), want);
}

TEST(Kron, ExchangeSquaredIsAntiDiagonal) {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const Matrix k = kron(x, x);
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) EXPECT_EQ(k(i, j), Complex(i + j == 3 ? 1.0 : 0.0));
  }
}

TEST(Kron, AssociativeOnRandomInputs) {
  Rng rng(3);
  const Matrix a = gaussian_matrix(2, 2, rng), b = gaussian_matrix(3, 3, rng), c = gaussian_matrix(2, 2, rng);
  EXPECT_LE(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))), 1e-14);
}

TEST(Nullspace, ZeroMatrixGivesEverything) {
  const Matrix v = nullspace(Matrix::Zero(3, 3), {}, 1.0);
  ASSERT_EQ(v.cols(), 3);
  EXPECT_LE(max_abs(v.adjoint() * v - Matrix::Identity(3, 3)), 1e-12);
}

TEST(Nullspace, IdentityGivesNothing) { EXPECT_EQ(nullspace(Matrix::Identity(3, 3)).cols(), 0); }

TEST(Nullspace, SingleVectorPhaseFixed) {
  const Matrix v = nullspace(diag3(1, 1, 0));
  ASSERT_EQ(v.cols(), 1);
  EXPECT_NEAR(v(2, 0).real(), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(v(0, 0)) + std::abs(v(1, 0)), 0.0, 1e-12);
}

TEST(Nullspace, ResidualBoundOnRandomLowRank) {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const Matrix a = gaussian_matrix(7, 3, rng) * gaussian_matrix(3, 6, rng);
    const Matrix v = nullspace(a);
    EXPECT_EQ(v.cols(), 3);
    Eigen::JacobiSVD<Matrix> svd(a);
    const double smax = svd.singularValues()(0);
    EXPECT_LE((a * v).norm(), 10.0 * 1e-9 * smax);
  }
}

TEST(EigGeneral, Diagonal) {
  const auto e = eig_general(Matrix(Eigen::Vector2cd(2.0, kI).asDiagonal()));
  ASSERT_EQ(e.size(), 2u);
  EXPECT_NEAR(std::abs(e[0].value - 2.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(e[1].value - kI), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(e[0].vector(0)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(e[1].vector(1)), 1.0, 1e-12);
}

TEST(EigGeneral, IdentityMultiplicity) {
  const auto e = eig_general(Matrix::Identity(4, 4));
  ASSERT_EQ(e.size(), 4u);
  for (const auto& p : e) EXPECT_NEAR(std::abs(p.value - 1.0), 0.0, 1e-12);
}

TEST(EigGeneral, ThreeCycleSuperoperator) {
  const Matrix s = superoperator(unitary_channel(cyclic_shift(3))).matrix;
  const auto e = eig_general(s);
  ASSERT_EQ(e.size(), 9u);
  int counts[3] = {0, 0, 0};
  for (const auto& p : e) {
    EXPECT_LE((s * p.vector - p.value * p.vector).norm(), 1e-8 * s.norm());
    for (int j = 0; j < 3; ++j) {
      if (std::abs(p.value - std::pow(kOmega, j)) < 1e-9) ++counts[j];
    }
  }
  EXPECT_EQ(counts[0], 3);
  EXPECT_EQ(counts[1], 3);
  EXPECT_EQ(counts[2], 3);
  // Ordering: equal modulus, so by ascending argument in (-pi, pi].
  for (std::size_t i = 1; i < e.size(); ++i) EXPECT_LE(std::arg(e[i - 1].value), std::arg(e[i].value) + 1e-9);
}

TEST(EigGeneral, RejectsNonSquare) { EXPECT_THROW(eig_general(Matrix::Zero(2, 3)), InvalidArgument); }

TEST(Orthonormalize, DropsParallel) {
  Matrix v = Matrix::Zero(3, 2);
  v(0, 0) = 1.0;
  v(0, 1) = 2.0;
  const Matrix q = orthonormalize(v);
  ASSERT_EQ(q.cols(), 1);
  EXPECT_NEAR(std::abs(q(0, 0)), 1.0, 1e-14);
}

TEST(Orthonormalize, SpansPlane) {
  Matrix v = Matrix::Zero(3, 2);
  v(0, 0) = 1.0;
  v(0, 1) = v(1, 1) = 1.0;
  const Matrix q = orthonormalize(v);
  ASSERT_EQ(q.cols(), 2);
  EXPECT_LE(max_abs(q.adjoint() * q - Matrix::Identity(2, 2)), 1e-10);
  EXPECT_NEAR(q.row(2).norm(), 0.0, 1e-14);
}

TEST(Orthonormalize, Empty) { EXPECT_EQ(orthonormalize(Matrix(4, 0)).cols(), 0); }

TEST(Orthonormalize, GramWithinBoundOnRandomSets) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const Matrix q = orthonormalize(gaussian_matrix(9, 5, rng) * gaussian_matrix(5, 8, rng));
    EXPECT_EQ(q.cols(), 5);
    EXPECT_LE(max_abs(q.adjoint() * q - Matrix::Identity(q.cols(), q.cols())), 1e-10);
  }
}

TEST(Tolerance, RejectsOutOfRange) {
  Tolerance t;
  t.rank_rel = 0.0;
  EXPECT_THROW(t.check(), InvalidArgument);
  t.rank_rel = 0.5;
  EXPECT_THROW(t.check(), InvalidArgument);
  EXPECT_NO_THROW(Tolerance{}.check());
}

TEST(HaarUnitary, IsUnitaryAndDeterministic) {
  Rng a(9), b(9);
  const Matrix u = haar_unitary(5, a);
  EXPECT_LE(max_abs(u.adjoint() * u - Matrix::Identity(5, 5)), 1e-12);
  EXPECT_EQ(u, haar_unitary(5, b));
}

// ---- channel ----

TEST(Validate, Unitary) {
  Rng rng(1);
  const auto f = validate(unitary_channel(haar_unitary(3, rng)));
  EXPECT_TRUE(f.trace_preserving);
  EXPECT_TRUE(f.unital);
}

TEST(Validate, AmplitudeDampingNotUnital) {
  const Channel ch({oracle::unit(2, 0, 0), oracle::unit(2, 0, 1)});
  const auto f = validate(ch);
  EXPECT_TRUE(f.trace_preserving);
  EXPECT_FALSE(f.unital);
  EXPECT_THROW(require_unital(ch), UnsupportedAnalysis);
}

TEST(Validate, M3Example) {
  const auto f = validate(m3_example());
  EXPECT_TRUE(f.trace_preserving);
  EXPECT_TRUE(f.unital);
}

TEST(Validate, NonTracePreservingRejected) {
  const Channel ch({2.0 * Matrix::Identity(2, 2)});
  EXPECT_FALSE(validate(ch).trace_preserving);
  EXPECT_THROW(require_unital(ch), InvalidChannel);
}

TEST(ChannelCtor, RejectsBadShapes) {
  EXPECT_THROW(Channel(std::vector<Matrix>{}), InvalidChannel);
  EXPECT_THROW(Channel({Matrix::Identity(2, 2), Matrix::Identity(3, 3)}), InvalidChannel);
  EXPECT_THROW(Channel({Matrix::Zero(2, 3)}), InvalidChannel);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Channel({bad}), InvalidChannel);
}

TEST(Apply, IdentityChannel) {
  Rng rng(2);
  const Matrix x = gaussian_matrix(3, 3, rng);
  EXPECT_LE(max_abs(chanalg::apply(identity_channel(3), x) - x), 1e-15);
}

TEST(Apply, M3ExampleOnDiagonal) {
  const Complex a = 0.3, b = -1.7, c = 2.2;
  const Matrix got = chanalg::apply(m3_example(), diag3(a, b, c));
  Matrix want(3, 3);
  want << a + c, -a + c, 0.0, -a + c, a + c, 0.0, 0.0, 0.0, 2.0 * b;
  want /= 2.0;
  EXPECT_LE(max_abs(got - want), 1e-14);
}

TEST(Apply, CompleteDephasingTakesDiagonal) {
  Rng rng(4);
  const Matrix x = gaussian_matrix(4, 4, rng);
  const Matrix want = x.diagonal().asDiagonal();
  EXPECT_LE(max_abs(chanalg::apply(complete_dephasing(4), x) - want), 1e-15);
}

TEST(Apply, SizeMismatch) { EXPECT_THROW(chanalg::apply(identity_channel(2), Matrix::Identity(3, 3)), InvalidArgument); }

TEST(Adjoint, UnitaryAndDephasing) {
  Rng rng(6);
  const Matrix u = haar_unitary(3, rng);
  EXPECT_LE(map_distance(adjoint(unitary_channel(u)), unitary_channel(u.adjoint())), 1e-12);
  EXPECT_LE(map_distance(adjoint(complete_dephasing(3)), complete_dephasing(3)), 1e-15);
}

TEST(Adjoint, TraceDualityOnM3Example) {
  const Channel e = m3_example();
  const Channel es = adjoint(e);
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    const Matrix x = gaussian_matrix(3, 3, rng), y = gaussian_matrix(3, 3, rng);
    EXPECT_LE(std::abs((chanalg::apply(e, x) * y).trace() - (x * chanalg::apply(es, y)).trace()), 1e-10);
  }
}

TEST(Adjoint, Involution) {
  const Channel e = schur_cycle_channel(4);
  EXPECT_LE(map_distance(adjoint(adjoint(e)), e), 1e-10);
}

TEST(Compose, IdentityAndUnitaries) {
  Rng rng(8);
  const Channel e = random_mixed_unitary(3, 3, 12);
  EXPECT_LE(map_distance(compose(identity_channel(3), e), e), 1e-12);
  const Matrix u = haar_unitary(3, rng), v = haar_unitary(3, rng);
  EXPECT_LE(map_distance(compose(unitary_channel(u), unitary_channel(v)), unitary_channel(u * v)), 1e-12);
}

TEST(Compose, AdjointTimesEtbGivesProjections) {
  // E = sum phi_i zeta_i^* . zeta_i phi_i^* with orthonormal families.
  Rng rng(10);
  const Matrix zu = haar_unitary(3, rng), pu = haar_unitary(3, rng);
  const Channel e = entanglement_breaking_channel(VectorFamily::columns_of(pu), VectorFamily::columns_of(zu));
  const Channel ee = compose(adjoint(e), e);
  std::vector<Matrix> want;
  for (Index i = 0; i < 3; ++i) want.emplace_back(zu.col(i) * zu.col(i).adjoint());
  EXPECT_LE(map_distance(ee, Channel(want)), 1e-12);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const Matrix& k = ee.kraus()[i * 3 + j];
      if (i == j) {
        EXPECT_LE(max_abs(k - want[i]), 1e-12);
      } else {
        EXPECT_LE(max_abs(k), 1e-12);
      }
    }
  }
}

TEST(Compose, SuperoperatorIsProduct) {
  const Channel a = random_mixed_unitary(3, 2, 1), b = schur_cycle_channel(3);
  EXPECT_LE(max_abs(superoperator(compose(a, b)).matrix - superoperator(a).matrix * superoperator(b).matrix), 1e-9);
  EXPECT_THROW(compose(a, identity_channel(2)), InvalidArgument);
}

TEST(Tensor, IdentitiesAndFlags) {
  EXPECT_LE(map_distance(tensor(identity_channel(2), identity_channel(3)), identity_channel(6)), 1e-15);
  const auto f = validate(tensor(m3_example(), schur_cycle_channel(3)));
  EXPECT_TRUE(f.trace_preserving);
  EXPECT_TRUE(f.unital);
}

TEST(Tensor, ActsOnProducts) {
  Rng rng(13);
  const Channel a = random_mixed_unitary(2, 2, 3), b = m3_example();
  const Matrix x = gaussian_matrix(2, 2, rng), y = gaussian_matrix(3, 3, rng);
  EXPECT_LE(max_abs(chanalg::apply(tensor(a, b), kron(x, y)) - kron(chanalg::apply(a, x), chanalg::apply(b, y))), 1e-9);
}

TEST(Tensor, SpectrumIsProductMultiset) {
  const Channel u = unitary_channel(cyclic_shift(3));
  const auto prod = eig_general(superoperator(tensor(u, u)).matrix);
  const auto one = eig_general(superoperator(u).matrix);
  ASSERT_EQ(prod.size(), 81u);
  std::vector<Complex> want;
  for (const auto& p : one) {
    for (const auto& q : one) want.push_back(p.value * q.value);
  }
  std::vector<bool> used(want.size(), false);
  for (const auto& p : prod) {
    bool found = false;
    for (std::size_t i = 0; i < want.size() && !found; ++i) {
      if (!used[i] && std::abs(want[i] - p.value) < 1e-9) used[i] = found = true;
    }
    EXPECT_TRUE(found);
  }
}

TEST(Convex, SingleTermAndErrors) {
  const Channel e = m3_example();
  EXPECT_LE(map_distance(convex_combine({{1.0, e}}), e), 1e-15);
  EXPECT_THROW(convex_combine({{0.5, e}}), InvalidArgument);
  EXPECT_THROW(convex_combine({{0.5, e}, {0.5, identity_channel(2)}}), InvalidArgument);
  EXPECT_THROW(convex_combine({{1.5, e}, {-0.5, e}}), InvalidArgument);
}

TEST(Convex, OmegaPairMixtureHasThreeDimensionalDomain) {
  const auto [e1, e2] = omega_pair();
  EXPECT_EQ(multiplicative_domain(convex_combine({{0.5, e1}, {0.5, e2}})).dim(), 3);
}

TEST(Convex, NineDimensionalSeparableExample) {
  const auto [e1, e2] = omega_pair();
  EXPECT_EQ(multiplicative_index(convex_combine({{0.5, tensor(e1, e1)}, {0.5, tensor(e2, e2)}})), 2);
}

TEST(Superoperator, IdentityChannel) {
  EXPECT_EQ(superoperator(identity_channel(3)).matrix, Matrix::Identity(9, 9));
}

TEST(Superoperator, AgreesWithApply) {
  Rng rng(14);
  const Channel e = random_mixed_unitary(3, 4, 2);
  const Superoperator s = superoperator(e);
  for (int t = 0; t < 5; ++t) {
    const Matrix x = gaussian_matrix(3, 3, rng);
    EXPECT_LE(max_abs(s.apply(x) - chanalg::apply(e, x)), 1e-10);
  }
  EXPECT_LE((s.matrix * vec(Matrix::Identity(3, 3)) - vec(Matrix::Identity(3, 3))).norm(), 1e-8);
}

TEST(Superoperator, ThreeCycleEigenvalues) {
  const auto e = eig_general(superoperator(unitary_channel(cyclic_shift(3))).matrix);
  for (const auto& p : e) EXPECT_NEAR(std::abs(std::pow(p.value, 3) - 1.0), 0.0, 1e-9);
}

TEST(Superoperator, DephasingTrace) {
  for (Index d = 2; d <= 5; ++d) {
    EXPECT_NEAR(std::abs(superoperator(complete_dephasing(d)).matrix.trace() - static_cast<double>(d)), 0.0, 1e-12);
  }
}

TEST(Power, Basics) {
  const Channel e = m3_example();
  EXPECT_LE(map_distance(power(e, 1), e), 1e-15);
  EXPECT_THROW(power(e, 0), InvalidArgument);
  for (Index d = 2; d <= 5; ++d) {
    EXPECT_LE(map_distance(power(unitary_channel(cyclic_shift(d)), static_cast<int>(d)), identity_channel(d)), 1e-12);
  }
  EXPECT_THROW(power(random_mixed_unitary(2, 10, 1), 5), InvalidArgument);
}

TEST(Power, M3ExampleSquareOnDiagonal) {
  const Complex a = 1.3, b = -0.4;
  const Matrix got = chanalg::apply(power(m3_example(), 2), diag3(a, b, a));
  Matrix want(3, 3);
  want << a + b, -a + b, 0.0, -a + b, a + b, 0.0, 0.0, 0.0, 2.0 * a;
  want /= 2.0;
  EXPECT_LE(max_abs(got - want), 1e-14);
  EXPECT_LE(max_abs(superoperator_power(superoperator(m3_example()), 2).apply(diag3(a, b, a)) - want), 1e-14);
}

}  // namespace
