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
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "chanalg/algebra.hpp"
#include "chanalg/channel.hpp"
#include "chanalg/errors.hpp"
#include "chanalg/numeric.hpp"
#include "chanalg/wedderburn_type.hpp"

namespace chanalg {

// Merge radius, in radians, when grouping peripheral eigenvalues.
inline constexpr double kAngularMergeRadius = 1e-6;

struct PeripheralDatum {
  Complex eigenvalue;  // unit modulus
  OperatorSubspace eigenspace;
};

/// The decreasing chain M_E ⊇ M_{E^2} ⊇ ... up to the multiplicative index.
/// domains[k-1] holds M_{E^k} for k = 1..kappa; stabilized is M_{E^kappa}.
struct IndexChain {
  std::vector<OperatorSubspace> domains;
  int kappa = 0;
  OperatorSubspace stabilized;
};

namespace detail {

inline double angular_distance(Complex a, Complex b) {
  return std::abs(std::arg(a / b));
}

// {x : ||S x|| = ||x||} for a unital channel power with superoperator S, i.e.
// the fixed points of (E^k)^* o E^k.
inline OperatorSubspace isometric_domain(Index d, const Matrix& s, const Tolerance& tol) {
  const Index n2 = d * d;
  return OperatorSubspace(d, nullspace(s.adjoint() * s - Matrix::Identity(n2, n2), tol, 1.0));
}

inline std::vector<PeripheralDatum> peripheral_of(const Superoperator& s, const Tolerance& tol) {
  const Index n2 = s.dim * s.dim;
  const Vector values = eigenvalues_general(s.matrix);
  std::vector<Complex> unit;
  for (Index i = 0; i < n2; ++i) {
    const Complex l = values(i);
    if (std::abs(std::abs(l) - 1.0) <= tol.spectral_cluster) unit.push_back(l / std::abs(l));
  }
  std::sort(unit.begin(), unit.end(),
            [](Complex a, Complex b) { return std::arg(a) < std::arg(b); });

  // Angular clustering on the circle; the first and last groups may wrap.
  std::vector<std::vector<Complex>> groups;
  for (const Complex l : unit) {
    if (!groups.empty() && angular_distance(groups.back().back(), l) <= kAngularMergeRadius) {
      groups.back().push_back(l);
    } else {
      groups.push_back({l});
    }
  }
  if (groups.size() > 1 &&
      angular_distance(groups.front().front(), groups.back().back()) <= kAngularMergeRadius) {
    groups.front().insert(groups.front().end(), groups.back().begin(), groups.back().end());
    groups.pop_back();
  }

  std::vector<PeripheralDatum> out;
  const Matrix id = Matrix::Identity(n2, n2);
  for (const auto& g : groups) {
    Complex mean = 0.0;
    for (const Complex l : g) mean += l;
    mean /= std::abs(mean);
    Matrix space = nullspace(s.matrix - mean * id, tol, 1.0);
    if (space.cols() == 0) {
      throw NumericalFailure("peripheral spectrum: empty eigenspace for a peripheral eigenvalue");
    }
    out.push_back({mean, OperatorSubspace(s.dim, std::move(space))});
  }
  std::sort(out.begin(), out.end(), [](const PeripheralDatum& a, const PeripheralDatum& b) {
    return spectral_before(a.eigenvalue, b.eigenvalue);
  });
  return out;
}

inline OperatorSubspace span_of_peripheral(Index d, const std::vector<PeripheralDatum>& data,
                                           const Tolerance& tol) {
  Index total = 0;
  for (const auto& p : data) total += p.eigenspace.dim();
  Matrix cols(d * d, total);
  Index c = 0;
  for (const auto& p : data) {
    cols.middleCols(c, p.eigenspace.dim()) = p.eigenspace.basis();
    c += p.eigenspace.dim();
  }
  return OperatorSubspace::from_vectors(d, cols, tol);
}

}  // namespace detail

/// Fix(E) = {x : E(x) = x}, the null space of (S - I) reshaped to matrices.
/// For unital input the result is additionally checked to be a *-algebra.
inline OperatorSubspace fixed_points(const Channel& ch, const Tolerance& tol = {}) {
  tol.check();
  const auto flags = validate(ch, tol);
  if (!flags.trace_preserving) {
    throw InvalidChannel("fixed_points: channel '" + ch.label() + "' is not trace preserving");
  }
  const Index d = ch.dim();
  const Superoperator s = superoperator(ch);
  OperatorSubspace fix(d, nullspace(s.matrix - Matrix::Identity(d * d, d * d), tol, 1.0));
  if (flags.unital && !is_star_algebra(fix, tol)) {
    throw NumericalFailure("fixed_points: fixed-point set of a unital channel is not a *-algebra");
  }
  return fix;
}

/// M_E for a unital channel, computed as Fix(E^* o E) from the superoperator
/// and cross-checked against the commutant of alg*({a_i^* a_j} ∪ {1}).
inline OperatorSubspace multiplicative_domain(const Channel& ch, const Tolerance& tol = {}) {
  tol.check();
  require_unital(ch, tol);
  const Index d = ch.dim();
  const OperatorSubspace md = detail::isometric_domain(d, superoperator(ch).matrix, tol);

  std::vector<Matrix> gens;
  gens.reserve(ch.size() * ch.size());
  for (const auto& ai : ch.kraus()) {
    for (const auto& aj : ch.kraus()) gens.emplace_back(ai.adjoint() * aj);
  }
  const OperatorSubspace alt = commutant(star_algebra_closure(d, gens, true, tol), tol);
  if (!equal(md, alt, tol)) {
    throw NumericalFailure("multiplicative_domain: Fix(E*E) and the Kraus commutant disagree (distance " +
                           std::to_string(projector_distance(md, alt)) + ")");
  }
  return md;
}

// M_{E^k}, from the k-th superoperator power.
inline OperatorSubspace md_of_power(const Channel& ch, int k, const Tolerance& tol = {}) {
  if (k < 1) throw InvalidArgument("md_of_power: k must be >= 1");
  require_unital(ch, tol);
  return detail::isometric_domain(ch.dim(), matrix_power(superoperator(ch).matrix, k), tol);
}

inline std::vector<PeripheralDatum> peripheral_spectrum(const Channel& ch, const Tolerance& tol = {}) {
  tol.check();
  require_unital(ch, tol);
  return detail::peripheral_of(superoperator(ch), tol);
}

/// Span of the eigen-operators of E whose eigenvalues lie on the unit circle.
/// This equals M_{E^∞} and serves as an independent route to it.
inline OperatorSubspace stabilized_md_via_spectrum(const Channel& ch, const Tolerance& tol = {}) {
  return detail::span_of_peripheral(ch.dim(), peripheral_spectrum(ch, tol), tol);
}

/// Multiplicative-domain chain and index.
///
/// M_{E^k} = Fix((E^k)^* o E^k) is taken from superoperator powers. The
/// chain stops at the first k with M_{E^{k+1}} = M_{E^k} as subspaces
/// (projector distance, not dimension). Any unital channel stabilizes by
/// k = 2d - 2, so running past that, a non-monotone step, or disagreement
/// with the peripheral-eigenspace route all raise NumericalFailure.
inline IndexChain md_chain(const Channel& ch, const Tolerance& tol = {}) {
  tol.check();
  require_unital(ch, tol);
  const Index d = ch.dim();
  const int cap = std::max<int>(1, static_cast<int>(2 * d - 2));
  const Matrix s = superoperator(ch).matrix;

  IndexChain chain;
  Matrix sk = s;
  chain.domains.push_back(detail::isometric_domain(d, sk, tol));
  for (int k = 2;; ++k) {
    sk = s * sk;
    OperatorSubspace cur = detail::isometric_domain(d, sk, tol);
    const OperatorSubspace& prev = chain.domains.back();
    if (!contains(prev, cur, tol)) {
      throw NumericalFailure("md_chain: M_{E^" + std::to_string(k) + "} is not contained in M_{E^" +
                             std::to_string(k - 1) + "}");
    }
    if (equal(prev, cur, tol)) {
      chain.kappa = k - 1;
      break;
    }
    if (k > cap) {
      throw NumericalFailure("md_chain: no stabilization within 2d-2 = " + std::to_string(cap) +
                             " steps");
    }
    chain.domains.push_back(std::move(cur));
  }
  chain.stabilized = chain.domains.back();

  const OperatorSubspace spectral = stabilized_md_via_spectrum(ch, tol);
  if (!equal(chain.stabilized, spectral, tol)) {
    throw NumericalFailure("md_chain: stabilized domain disagrees with the peripheral eigenspaces (distance " +
                           std::to_string(projector_distance(chain.stabilized, spectral)) + ")");
  }
  return chain;
}

inline int multiplicative_index(const Channel& ch, const Tolerance& tol = {}) {
  return md_chain(ch, tol).kappa;
}

// Irreducible iff Fix(E) = C*1, which for unital channels is equivalent to
// the absence of a non-trivial projection p with E(p) <= lambda p.
inline bool is_irreducible(const Channel& ch, const Tolerance& tol = {}) {
  require_unital(ch, tol);
  return is_trivial(fixed_points(ch, tol), tol);
}

inline bool is_primitive(const Channel& ch, const Tolerance& tol = {}) {
  return is_irreducible(ch, tol) && peripheral_spectrum(ch, tol).size() == 1;
}

// If the peripheral eigenvalues are exactly the N-th roots of unity, N.
inline std::optional<int> peripheral_cyclic_order(const std::vector<PeripheralDatum>& data) {
  const int n = static_cast<int>(data.size());
  if (n == 0) return std::nullopt;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto& p : data) {
    const double turns = std::arg(p.eigenvalue) / (2.0 * std::numbers::pi) * n;
    const long r = std::lround(turns);
    if (std::abs(turns - static_cast<double>(r)) * 2.0 * std::numbers::pi / n > kAngularMergeRadius) {
      return std::nullopt;
    }
    const auto slot = static_cast<std::size_t>(((r % n) + n) % n);
    if (seen[slot]) return std::nullopt;
    seen[slot] = true;
  }
  return n;
}

/// Direct search for a reducing projection: spectral projections (ranks
/// 1..d-1) of a generic Hermitian fixed point, each tested for
/// (1 - p) E(p) (1 - p) = 0, i.e. E(p) <= lambda p for some lambda > 0.
inline bool has_reducing_projection(const Channel& ch, const Tolerance& tol, Rng& rng) {
  const Index d = ch.dim();
  const OperatorSubspace fix = fixed_points(ch, tol);
  Matrix herm(d * d, 2 * fix.dim());
  for (Index j = 0; j < fix.dim(); ++j) {
    const Matrix c = fix.element(j);
    herm.col(2 * j) = vec((c + c.adjoint()) / 2.0);
    herm.col(2 * j + 1) = vec((c - c.adjoint()) / (2.0 * kI));
  }
  const Matrix hb = orthonormalize(herm, tol);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector coeffs(hb.cols());
  for (Index i = 0; i < coeffs.size(); ++i) coeffs(i) = normal(rng);
  Matrix z = unvec(hb * coeffs, d);
  z = (z + z.adjoint()).eval() / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(z);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  const Matrix id = Matrix::Identity(d, d);
  for (Index r = 1; r < d; ++r) {
    if (ev(r) - ev(r - 1) <= 1e-8 * scale) continue;
    const Matrix v = es.eigenvectors().leftCols(r);
    const Matrix p = v * v.adjoint();
    const Matrix q = id - p;
    if ((q * chanalg::apply(ch, p) * q).norm() <= tol.subspace_abs) return true;
  }
  return false;
}

struct SplittingCertificate {
  OperatorSubspace lhs;  // computed on the product channel
  OperatorSubspace rhs;  // tensor product of the factors' subspaces
  double distance = 0.0;
  bool equal = false;
};

// M_{a⊗b} against M_a ⊗ M_b. A false `equal` signals numerical trouble.
inline SplittingCertificate check_md_splitting(const Channel& a, const Channel& b,
                                               const Tolerance& tol = {}) {
  SplittingCertificate c;
  c.lhs = multiplicative_domain(tensor(a, b), tol);
  c.rhs = tensor_subspace(multiplicative_domain(a, tol), multiplicative_domain(b, tol));
  c.distance = projector_distance(c.lhs, c.rhs);
  c.equal = c.distance <= tol.subspace_abs;
  return c;
}

// Same comparison for the stabilized domains M_{(a⊗b)^∞} and M_{a^∞} ⊗ M_{b^∞}.
inline SplittingCertificate check_stabilized_splitting(const Channel& a, const Channel& b,
                                                       const Tolerance& tol = {}) {
  SplittingCertificate c;
  c.lhs = md_chain(tensor(a, b), tol).stabilized;
  c.rhs = tensor_subspace(md_chain(a, tol).stabilized, md_chain(b, tol).stabilized);
  c.distance = projector_distance(c.lhs, c.rhs);
  c.equal = c.distance <= tol.subspace_abs;
  return c;
}

struct KappaTensorCheck {
  int kappa_a = 0;
  int kappa_b = 0;
  int kappa_product = 0;
  int kappa_max = 0;
  bool equal = false;
};

inline KappaTensorCheck kappa_tensor_check(const Channel& a, const Channel& b,
                                           const Tolerance& tol = {}) {
  KappaTensorCheck c;
  c.kappa_a = multiplicative_index(a, tol);
  c.kappa_b = multiplicative_index(b, tol);
  c.kappa_product = multiplicative_index(tensor(a, b), tol);
  c.kappa_max = std::max(c.kappa_a, c.kappa_b);
  c.equal = c.kappa_product == c.kappa_max;
  return c;
}

struct PeripheralTensorCertificate {
  Complex lambda;
  OperatorSubspace eigenspace;  // eigenspace of the product at lambda
  OperatorSubspace predicted;   // span of x ⊗ y over peripheral pairs with mu*nu = lambda
  double distance = 0.0;
  bool equal = false;
};

/// Eigenspace of (a⊗b) at a unimodular lambda against the span of products
/// of peripheral eigen-operators whose eigenvalues multiply to lambda.
inline PeripheralTensorCertificate tensor_peripheral_check(const Channel& a, const Channel& b,
                                                           Complex lambda,
                                                           const Tolerance& tol = {}) {
  if (std::abs(std::abs(lambda) - 1.0) > tol.spectral_cluster) {
    throw InvalidArgument("tensor_peripheral_check: lambda must lie on the unit circle");
  }
  require_unital(a, tol);
  require_unital(b, tol);
  const Channel ab = tensor(a, b);
  const Index n = ab.dim();
  const Matrix s = superoperator(ab).matrix;

  PeripheralTensorCertificate c;
  c.lambda = lambda;
  c.eigenspace = OperatorSubspace(n, nullspace(s - lambda * Matrix::Identity(n * n, n * n), tol, 1.0));

  const auto pa = peripheral_spectrum(a, tol);
  const auto pb = peripheral_spectrum(b, tol);
  Matrix cols(n * n, 0);
  for (const auto& x : pa) {
    for (const auto& y : pb) {
      if (detail::angular_distance(x.eigenvalue * y.eigenvalue, lambda) > kAngularMergeRadius) continue;
      const OperatorSubspace prod = tensor_subspace(x.eigenspace, y.eigenspace);
      Matrix grown(n * n, cols.cols() + prod.dim());
      grown << cols, prod.basis();
      cols = std::move(grown);
    }
  }
  c.predicted = OperatorSubspace::from_vectors(n, cols, tol);
  c.distance = projector_distance(c.eigenspace, c.predicted);
  c.equal = c.distance <= tol.subspace_abs;
  return c;
}

struct FixSplittingCheck {
  bool splits = false;     // Fix(a⊗b) = Fix(a) ⊗ Fix(b)
  bool predicted = false;  // peripheral spectra meet only at 1
  Index product_dim = 0;
  Index split_dim = 0;
  bool consistent() const { return splits == predicted; }
};

inline FixSplittingCheck fix_splitting_check(const Channel& a, const Channel& b,
                                             const Tolerance& tol = {}) {
  require_unital(a, tol);
  require_unital(b, tol);
  FixSplittingCheck c;
  const OperatorSubspace lhs = fixed_points(tensor(a, b), tol);
  const OperatorSubspace rhs = tensor_subspace(fixed_points(a, tol), fixed_points(b, tol));
  c.product_dim = lhs.dim();
  c.split_dim = rhs.dim();
  c.splits = equal(lhs, rhs, tol);

  const auto pa = peripheral_spectrum(a, tol);
  const auto pb = peripheral_spectrum(b, tol);
  bool shared = false;
  for (const auto& x : pa) {
    if (detail::angular_distance(x.eigenvalue, 1.0) <= kAngularMergeRadius) continue;
    for (const auto& y : pb) {
      if (detail::angular_distance(x.eigenvalue, y.eigenvalue) <= kAngularMergeRadius) shared = true;
    }
  }
  c.predicted = !shared;
  return c;
}

struct FactorizationVerdict {
  int kappa = 0;
  int threshold = 0;  // d - 1
  bool factorable_possible = true;
  bool composite_dim = false;  // false means no tensor factorization exists anyway
};

// Necessary condition only: a product channel on M_d has kappa <= d - 2, so
// kappa >= d - 1 rules out every tensor factorization.
inline FactorizationVerdict factorization_verdict(int kappa, Index d) {
  FactorizationVerdict v;
  v.kappa = kappa;
  v.threshold = static_cast<int>(d) - 1;
  v.factorable_possible = kappa < v.threshold;
  for (Index s = 2; s * s <= d; ++s) {
    if (d % s == 0) v.composite_dim = true;
  }
  return v;
}

inline FactorizationVerdict factorization_obstruction(const Channel& ch, const Tolerance& tol = {}) {
  return factorization_verdict(multiplicative_index(ch, tol), ch.dim());
}

struct ConvexFormulaCertificate {
  int power = 1;
  OperatorSubspace direct;   // M_{E^k} of the mixture
  OperatorSubspace formula;  // M_{a^k} ∩ M_{b^k} ∩ {x : a^n(x) = b^n(x), n <= k}
  double distance = 0.0;
  bool equal = false;
};

inline ConvexFormulaCertificate convex_md_check(const Channel& a, const Channel& b, double lambda,
                                                int k, const Tolerance& tol = {}) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InvalidArgument("convex_md_check: need 0 < lambda < 1");
  if (k < 1) throw InvalidArgument("convex_md_check: k must be >= 1");
  if (a.dim() != b.dim()) throw InvalidArgument("convex_md_check: dimension mismatch");
  require_unital(a, tol);
  require_unital(b, tol);
  const Index d = a.dim();
  const Index n2 = d * d;
  const Channel mix = convex_combine({{lambda, a}, {1.0 - lambda, b}});

  ConvexFormulaCertificate c;
  c.power = k;
  c.direct = md_of_power(mix, k, tol);

  const Matrix sa = superoperator(a).matrix;
  const Matrix sb = superoperator(b).matrix;
  Matrix stacked(k * n2, n2);
  Matrix pa = sa, pb = sb;
  for (int n = 1; n <= k; ++n) {
    stacked.middleRows((n - 1) * n2, n2) = pa - pb;
    if (n < k) {
      pa = sa * pa;
      pb = sb * pb;
    }
  }
  const OperatorSubspace agree(d, nullspace(stacked, tol, 1.0));
  const OperatorSubspace ma = detail::isometric_domain(d, pa, tol);
  const OperatorSubspace mb = detail::isometric_domain(d, pb, tol);
  c.formula = intersect(intersect(ma, mb, tol), agree, tol);
  c.distance = projector_distance(c.direct, c.formula);
  c.equal = c.distance <= tol.subspace_abs;
  return c;
}

struct SeparableTerm {
  double weight = 0.0;
  Channel first;   // acts on M_d
  Channel second;  // acts on M_c
};

struct SeparableBoundCheck {
  bool applicable = false;  // some first factor has trivial stabilized domain
  int kappa = 0;
  int bound = 0;  // max(2d - 2, 2c - 2)
  bool ok = false;
};

inline SeparableBoundCheck separable_bound_check(const std::vector<SeparableTerm>& terms,
                                                 const Tolerance& tol = {}) {
  if (terms.empty()) throw InvalidArgument("separable_bound_check: no terms");
  const Index d = terms.front().first.dim();
  const Index c = terms.front().second.dim();
  SeparableBoundCheck out;
  std::vector<WeightedChannel> mix;
  for (const auto& t : terms) {
    if (t.first.dim() != d || t.second.dim() != c) {
      throw InvalidArgument("separable_bound_check: factor dimensions differ between terms");
    }
    require_unital(t.first, tol);
    require_unital(t.second, tol);
    if (is_trivial(md_chain(t.first, tol).stabilized, tol)) out.applicable = true;
    mix.push_back({t.weight, tensor(t.first, t.second)});
  }
  out.kappa = multiplicative_index(convex_combine(mix), tol);
  out.bound = static_cast<int>(std::max(2 * d - 2, 2 * c - 2));
  out.ok = out.applicable && out.kappa <= out.bound;
  return out;
}

// The algebra of the largest unitarily correctable code; for unital channels
// this is the multiplicative domain.
inline OperatorSubspace ucc_algebra(const Channel& ch, const Tolerance& tol = {}) {
  return multiplicative_domain(ch, tol);
}

struct AdjointIndexCheck {
  int kappa = 0;
  int kappa_adjoint = 0;
  bool equal = false;
};

inline AdjointIndexCheck adjoint_index_check(const Channel& ch, const Tolerance& tol = {}) {
  AdjointIndexCheck c;
  c.kappa = multiplicative_index(ch, tol);
  c.kappa_adjoint = multiplicative_index(adjoint(ch), tol);
  c.equal = c.kappa == c.kappa_adjoint;
  return c;
}

// Trivial M_E is necessary (not sufficient) for strict contractivity.
inline bool md_triviality_probe(const Channel& ch, const Tolerance& tol = {}) {
  return is_trivial(multiplicative_domain(ch, tol), tol);
}

struct DomainSummary {
  int power = 1;
  WedderburnType type;
  Index dim = 0;
};

struct PeripheralSummary {
  Complex eigenvalue;
  Index dim = 0;
};

struct AnalysisOptions {
  int powers = 0;  // report M_{E^k} for k up to max(kappa, powers)
  std::uint64_t seed = 0x5eedULL;
  bool keep_bases = false;
};

struct AnalysisReport {
  std::string label;
  Index dim = 0;
  ChannelFlags validation;
  WedderburnType fixed_point_type;
  Index fixed_point_dim = 0;
  std::vector<DomainSummary> md_chain;
  int kappa = 0;
  WedderburnType stabilized_type;
  std::vector<PeripheralSummary> peripheral;
  std::optional<int> peripheral_cyclic_order;
  bool irreducible = false;
  bool primitive = false;
  bool md_trivial = false;
  FactorizationVerdict factorization;

  // Filled when AnalysisOptions::keep_bases is set.
  std::optional<OperatorSubspace> fixed_point_basis;
  std::vector<OperatorSubspace> chain_bases;
};

inline AnalysisReport analyze(const Channel& ch, const Tolerance& tol = {},
                              const AnalysisOptions& opts = {}) {
  tol.check();
  AnalysisReport r;
  r.label = ch.label();
  r.dim = ch.dim();
  r.validation = validate(ch, tol);
  require_unital(ch, tol);

  Rng rng(opts.seed);
  const OperatorSubspace fix = fixed_points(ch, tol);
  r.fixed_point_dim = fix.dim();
  r.fixed_point_type = algebra_type(fix, tol, rng);

  const IndexChain chain = md_chain(ch, tol);
  r.kappa = chain.kappa;
  for (int k = 1; k <= std::max(chain.kappa, opts.powers); ++k) {
    const OperatorSubspace dom = k <= chain.kappa ? chain.domains[static_cast<std::size_t>(k - 1)]
                                                  : md_of_power(ch, k, tol);
    r.md_chain.push_back({k, algebra_type(dom, tol, rng), dom.dim()});
    if (opts.keep_bases) r.chain_bases.push_back(dom);
  }
  r.stabilized_type = algebra_type(chain.stabilized, tol, rng);
  r.md_trivial = is_trivial(chain.domains.front(), tol);

  const auto per = peripheral_spectrum(ch, tol);
  for (const auto& p : per) r.peripheral.push_back({p.eigenvalue, p.eigenspace.dim()});
  r.peripheral_cyclic_order = peripheral_cyclic_order(per);
  r.irreducible = is_trivial(fix, tol);
  r.primitive = r.irreducible && per.size() == 1;
  r.factorization = factorization_verdict(chain.kappa, ch.dim());
  if (opts.keep_bases) r.fixed_point_basis = fix;
  return r;
}

}  // namespace chanalg
