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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chanalg/chanalg.hpp"
#include "oracles.hpp"

namespace {

using namespace chanalg;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Every index computed during the run, for the global bound check.
struct KappaRecord {
  std::string label;
  Index dim;
  int kappa;
  bool etb;
};
std::vector<KappaRecord> g_kappas;

int record(const std::string& label, Index d, int kappa, bool etb = false) {
  g_kappas.push_back({label, d, kappa, etb});
  return kappa;
}

int kappa_of(const Channel& ch, const std::string& label, bool etb = false) {
  return record(label, ch.dim(), multiplicative_index(ch), etb);
}

class Checker {
 public:
  explicit Checker(Outcome& o) : o_(o) {}
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && o_.pass) o_.detail = what;
    if (!ok) o_.pass = false;
  }
  int checks() const { return checks_; }

 private:
  Outcome& o_;
  int checks_ = 0;
};

std::string str(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

OperatorSubspace diagonals(Index d) {
  std::vector<Matrix> e;
  for (Index i = 0; i < d; ++i) e.push_back(oracle::unit(d, i, i));
  return OperatorSubspace::span(d, e);
}

Channel omega_mixture() {
  const auto [e1, e2] = omega_pair();
  return convex_combine({{0.5, e1}, {0.5, e2}}).relabeled("omega-mixture");
}

Channel omega_nine() {
  const auto [e1, e2] = omega_pair();
  return convex_combine({{0.5, tensor(e1, e1)}, {0.5, tensor(e2, e2)}}).relabeled("omega-nine");
}

// ---- criteria ----

Outcome m3_worked_example() {
  Outcome o;
  Checker c(o);
  const auto r = analyze(m3_example(), {}, {.powers = 3, .keep_bases = true});
  record("m3-example", 3, r.kappa);
  c.expect(r.kappa == 3, "kappa = " + std::to_string(r.kappa));
  c.expect(r.md_chain.size() == 3 && r.md_chain[0].dim == 3 && r.md_chain[1].dim == 2 && r.md_chain[2].dim == 1,
           "chain dims differ");
  c.expect(r.chain_bases.size() == 3 && equal(r.chain_bases[0], diagonals(3)), "M_E is not the diagonal algebra");
  c.expect(r.chain_bases.size() == 3 && is_trivial(r.chain_bases[2]), "M_{E^3} is not C1");
  o.detail = o.pass ? "chain dims 3,2,1; kappa=3" : o.detail;
  return o;
}

Outcome etb_grid() {
  Outcome o;
  Checker c(o);
  for (Index d = 2; d <= 6; ++d) {
    for (Index r = 1; r <= d; ++r) {
      const Channel ch = etb_channel(d, r);
      const auto chain = md_chain(ch);
      record("etb(" + std::to_string(d) + "," + std::to_string(r) + ")", d, chain.kappa, true);
      c.expect(chain.kappa == r, "etb(" + std::to_string(d) + "," + std::to_string(r) + ") kappa=" +
                                     std::to_string(chain.kappa));
      c.expect(projector_distance(chain.domains.front(), diagonals(d)) <= 1e-7, "M_E not diagonal");
      if (r > 1) c.expect(is_trivial(chain.stabilized), "stabilized domain not trivial");
    }
  }
  if (o.pass) o.detail = std::to_string(c.checks()) + " checks over d=2..6";
  return o;
}

Outcome schur_cycle() {
  Outcome o;
  Checker c(o);
  Rng rng(3);
  for (Index d = 3; d <= 6; ++d) {
    const Channel ch = schur_cycle_channel(d);
    const int k = kappa_of(ch, ch.label());
    const auto t = algebra_type(multiplicative_domain(ch), {}, rng);
    c.expect(k == d - 1, "d=" + std::to_string(d) + " kappa=" + std::to_string(k));
    c.expect(t == WedderburnType({{static_cast<int>(d) - 1, 1}, {1, 1}}), "d=" + std::to_string(d) + " type " + t.to_string());
  }
  if (o.pass) o.detail = "kappa=d-1, M_E type M_{d-1}+M1 for d=3..6";
  return o;
}

Outcome splitting_law() {
  Outcome o;
  Checker c(o);
  const std::vector<std::pair<Index, Index>> shapes{{2, 2}, {2, 3}, {3, 3}, {3, 4}, {2, 6}, {4, 3}};
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    const auto [da, db] = shapes[static_cast<std::size_t>(i) % shapes.size()];
    const Channel a = random_unital_channel(da, 1000 + 2 * static_cast<std::uint64_t>(i));
    const Channel b = random_unital_channel(db, 1001 + 2 * static_cast<std::uint64_t>(i));
    const auto m = check_md_splitting(a, b);
    const auto s = check_stabilized_splitting(a, b);
    worst = std::max({worst, m.distance, s.distance});
    c.expect(m.distance <= 1e-6, "pair " + std::to_string(i) + " md distance " + str(m.distance));
    c.expect(s.distance <= 1e-6, "pair " + std::to_string(i) + " stabilized distance " + str(s.distance));
  }
  if (o.pass) o.detail = "30 pairs, worst projector distance " + str(worst);
  return o;
}

Outcome index_law() {
  Outcome o;
  Checker c(o);
  int cases = 0;
  auto check = [&](const Channel& a, const std::string& la, const Channel& b, const std::string& lb, bool etb) {
    const auto k = kappa_tensor_check(a, b);
    record(la, a.dim(), k.kappa_a, etb && la.rfind("etb", 0) == 0);
    record(lb, b.dim(), k.kappa_b, etb && lb.rfind("etb", 0) == 0);
    record(la + "x" + lb, a.dim() * b.dim(), k.kappa_product);
    ++cases;
    c.expect(k.equal, la + "x" + lb + ": " + std::to_string(k.kappa_product) + " vs max " + std::to_string(k.kappa_max));
  };
  auto etb_name = [](Index d, Index r) { return "etb(" + std::to_string(d) + "," + std::to_string(r) + ")"; };
  for (Index d = 2; d <= 6; ++d) {
    for (Index e = d; d * e <= 12; ++e) {
      for (Index r = 1; r <= d; ++r) {
        for (Index s = 1; s <= e; ++s) check(etb_channel(d, r), etb_name(d, r), etb_channel(e, s), etb_name(e, s), true);
      }
    }
  }
  for (Index cd : {3, 4}) {
    for (Index d = 2; d * cd <= 12; ++d) {
      for (Index r = 1; r <= d; ++r) {
        check(etb_channel(d, r), etb_name(d, r), schur_cycle_channel(cd), "schur-cycle(" + std::to_string(cd) + ")", true);
      }
    }
  }
  Rng rng(5);
  const std::vector<Channel> others{m3_example(), schur_cycle_channel(4), etb_channel(4, 3), dephasing_shift_channel(4),
                                    omega_mixture(), random_unital_channel(4, 6), etb_channel(6, 4)};
  for (Index u = 2; u <= 3; ++u) {
    for (const auto& b : others) {
      if (u * b.dim() > 12) continue;
      check(unitary_channel(haar_unitary(u, rng)), "unitary(" + std::to_string(u) + ")", b, b.label(), false);
    }
  }
  if (o.pass) o.detail = std::to_string(cases) + " pairs, kappa(a x b) = max exactly";
  return o;
}

Outcome omega_example() {
  Outcome o;
  Checker c(o);
  const auto [e1, e2] = omega_pair();
  c.expect(kappa_of(e1, "omega-e1") == 1 && kappa_of(e2, "omega-e2") == 1, "factors not index 1");
  const Channel mix = omega_mixture();
  const auto chain = md_chain(mix);
  record("omega-mixture", 3, chain.kappa);
  c.expect(chain.domains.front().dim() == 3, "dim M_E = " + std::to_string(chain.domains.front().dim()));
  c.expect(chain.kappa == 2, "kappa = " + std::to_string(chain.kappa));
  c.expect(is_trivial(md_of_power(mix, 2)), "M_{E^2} not C1");
  Rng rng(7);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Complex a(normal(rng), normal(rng)), b(normal(rng), normal(rng)), cc(normal(rng), normal(rng));
    Matrix x(3, 3);
    x << a, b, -cc, b, 2.0 * b + a - cc, b, -cc, b, a;
    worst = std::max(worst, chain.domains.front().residual(x) / x.norm());
  }
  c.expect(worst <= 1e-8, "family membership residual " + str(worst));
  const Channel nine = omega_nine();
  const auto chain9 = md_chain(nine);
  record("omega-nine", 9, chain9.kappa);
  c.expect(chain9.kappa == 2, "9-dim kappa = " + std::to_string(chain9.kappa));
  if (o.pass) {
    o.detail = "dim M_E=3, residual " + str(worst) + ", kappa=2; 9-dim dims " + std::to_string(chain9.domains[0].dim()) +
               "," + std::to_string(chain9.domains[1].dim()) + " kappa=2";
  }
  return o;
}

Outcome convex_formula() {
  Outcome o;
  Checker c(o);
  Rng rng(8);
  std::uniform_real_distribution<double> unif(0.1, 0.9);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Index d = 2 + i % 2;
    const Channel a = random_unital_channel(d, 2000 + 2 * static_cast<std::uint64_t>(i));
    const Channel b = random_unital_channel(d, 2001 + 2 * static_cast<std::uint64_t>(i));
    const double lambda = unif(rng);
    for (int k = 1; k <= 3; ++k) {
      const auto r = convex_md_check(a, b, lambda, k);
      worst = std::max(worst, r.distance);
      c.expect(r.distance <= 1e-6, "pair " + std::to_string(i) + " k=" + std::to_string(k) + " distance " + str(r.distance));
    }
    kappa_of(convex_combine({{lambda, a}, {1.0 - lambda, b}}), "mixture-" + std::to_string(i));
  }
  if (o.pass) o.detail = "30 cases, worst projector distance " + str(worst);
  return o;
}

Outcome peripheral_structure() {
  Outcome o;
  Checker c(o);
  double worst = 0.0;
  int eigen_checks = 0;
  for (const auto& [d, e] : std::vector<std::pair<Index, Index>>{{2, 2}, {2, 3}, {3, 3}}) {
    const Channel a = dephasing_shift_channel(d), b = dephasing_shift_channel(e);
    const std::string name = std::to_string(d) + "x" + std::to_string(e);
    for (const auto& p : peripheral_spectrum(tensor(a, b))) {
      const auto t = tensor_peripheral_check(a, b, p.eigenvalue);
      worst = std::max(worst, t.distance);
      ++eigen_checks;
      c.expect(t.distance <= 1e-6 && t.eigenspace.dim() == p.eigenspace.dim(), name + " eigenspace mismatch");
    }
    const auto f = fix_splitting_check(a, b);
    const bool coprime = std::gcd(d, e) == 1;
    c.expect(f.splits == coprime && f.predicted == coprime, name + " fix-splitting verdict");
  }
  const Channel u = unitary_channel(cyclic_shift(3), "three-cycle");
  const auto f = fix_splitting_check(u, u);
  c.expect(f.product_dim == 27 && f.split_dim == 9 && !f.splits, "three-cycle dims " + std::to_string(f.product_dim) +
                                                                   " vs " + std::to_string(f.split_dim));
  if (o.pass) {
    o.detail = std::to_string(eigen_checks) + " eigenspaces, worst distance " + str(worst) + "; gcd verdicts ok; 27 vs 9";
  }
  return o;
}

Outcome mupsa_lattice() {
  Outcome o;
  Checker c(o);
  const auto g4 = build_lattice(4);
  c.expect(g4.longest_chain().size() == 7, "longest chain in M_4 has " + std::to_string(g4.longest_chain().size()) + " nodes");
  int types = 0;
  for (int d = 1; d <= 5; ++d) {
    for (const auto& t : all_types(d)) {
      auto got = enumerate_mupsas(t);
      std::sort(got.begin(), got.end());
      ++types;
      c.expect(got == oracle::maximal_subtypes(t), "maximal subtypes differ for " + t.to_string());
    }
  }
  int edges = 0;
  for (int d = 2; d <= kMaxLatticeDim; ++d) {
    const auto g = build_lattice(d);
    for (const auto& [a, b] : g.edges) {
      ++edges;
      c.expect(chi(g.nodes[static_cast<std::size_t>(a)]) - chi(g.nodes[static_cast<std::size_t>(b)]) >= 1,
               "chi does not drop on edge in M_" + std::to_string(d));
    }
  }
  if (o.pass) {
    o.detail = "chain 7; " + std::to_string(types) + " types match oracle; chi drops on " + std::to_string(edges) + " edges";
  }
  return o;
}

Outcome wedderburn_engine() {
  Outcome o;
  Checker c(o);
  Rng rng(11);
  std::vector<WedderburnType> pool;
  for (int d = 1; d <= 8; ++d) {
    for (const auto& t : all_types(d)) pool.push_back(t);
  }
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int i = 0; i < 50; ++i) {
    const WedderburnType t = pool[pick(rng)];
    const Matrix u = haar_unitary(t.total_dim(), rng);
    const OperatorSubspace a = embed_type(t, u);
    const WedderburnType got = algebra_type(a, {}, rng);
    c.expect(got == t, t.to_string() + " recovered as " + got.to_string());
    c.expect(equal(commutant(commutant(a)), a), "double commutant fails for " + t.to_string());
  }
  if (o.pass) o.detail = "50 embedded types recovered; double commutant holds";
  return o;
}

Outcome section_identities() {
  Outcome o;
  Checker c(o);
  std::vector<Channel> gallery{identity_channel(2), m3_example(), omega_mixture(), dephasing_shift_channel(2),
                               dephasing_shift_channel(3), random_mixed_unitary(2, 3, 4), random_unital_channel(3, 12)};
  const auto [e1, e2] = omega_pair();
  gallery.push_back(e1);
  gallery.push_back(e2);
  for (Index d = 2; d <= 6; ++d) {
    for (Index r = 1; r <= d; ++r) gallery.push_back(etb_channel(d, r));
  }
  for (Index d = 3; d <= 6; ++d) gallery.push_back(schur_cycle_channel(d));
  for (Index d = 4; d <= 6; ++d) gallery.push_back(dephasing_shift_channel(d));
  gallery.push_back(omega_nine());
  int adjoint_cases = 0;
  for (const auto& ch : gallery) {
    const auto a = adjoint_index_check(ch);
    record(ch.label(), ch.dim(), a.kappa, ch.label().rfind("etb", 0) == 0);
    record(ch.label() + "*", ch.dim(), a.kappa_adjoint, ch.label().rfind("etb", 0) == 0);
    ++adjoint_cases;
    c.expect(a.equal, ch.label() + ": " + std::to_string(a.kappa) + " vs adjoint " + std::to_string(a.kappa_adjoint));
  }
  int ucc_cases = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < gallery.size(); ++i) {
    for (std::size_t j = i; j < gallery.size(); ++j) {
      const auto& a = gallery[i];
      const auto& b = gallery[j];
      if (a.dim() * b.dim() > 12) continue;
      const double dist = projector_distance(ucc_algebra(tensor(a, b)), tensor_subspace(ucc_algebra(a), ucc_algebra(b)));
      worst = std::max(worst, dist);
      ++ucc_cases;
      c.expect(dist <= 1e-6, a.label() + " x " + b.label() + " ucc distance " + str(dist));
    }
  }
  if (o.pass) {
    o.detail = std::to_string(ucc_cases) + " ucc pairs (worst " + str(worst) + "), " + std::to_string(adjoint_cases) +
               " adjoint indices equal";
  }
  return o;
}

Outcome kappa_bound() {
  Outcome o;
  Checker c(o);
  const KappaRecord* top = nullptr;  // largest kappa - d observed
  for (const auto& r : g_kappas) {
    if (!top || r.kappa - r.dim > top->kappa - top->dim) top = &r;
    const int bound = std::max<int>(1, 2 * static_cast<int>(r.dim) - 2);
    c.expect(r.kappa >= 1 && r.kappa <= bound, r.label + " kappa " + std::to_string(r.kappa) + " > " + std::to_string(bound));
    if (r.etb) c.expect(r.kappa <= r.dim, r.label + " etb kappa above d");
  }
  if (o.pass) {
    o.detail = std::to_string(g_kappas.size()) + " recorded indices within bounds";
    if (top) o.detail += "; max kappa - d = " + std::to_string(top->kappa - top->dim) + " (" + top->label + ")";
  }
  return o;
}

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "m3 worked example", 1.0, m3_worked_example},
      {2, "etb index grid", 30.0, etb_grid},
      {3, "schur-cycle index", 10.0, schur_cycle},
      {4, "tensor splitting of domains", 120.0, splitting_law},
      {5, "tensor index law", 120.0, index_law},
      {7, "omega convex example", 30.0, omega_example},
      {8, "convex intersection formula", 60.0, convex_formula},
      {9, "peripheral tensor structure", 60.0, peripheral_structure},
      {10, "mupsa lattice", 10.0, mupsa_lattice},
      {11, "wedderburn engine", 60.0, wedderburn_engine},
      {12, "ucc and adjoint identities", 60.0, section_identities},
      // Runs last so it sees every index computed above.
      {6, "index bound", 1.0, kappa_bound},
  };
  std::vector<std::string> lines(13);
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > cr.budget_s) {
      o.pass = false;
      o.detail += "; over time budget";
    }
    failed += o.pass ? 0 : 1;
    char head[160];
    std::snprintf(head, sizeof head, "%s criterion %2d  %-30s %7.2fs / %.0fs  ", o.pass ? "PASS" : "FAIL", cr.id,
                  cr.name.c_str(), secs, cr.budget_s);
    lines[static_cast<std::size_t>(cr.id)] = head + o.detail;
  }
  for (std::size_t i = 1; i < lines.size(); ++i) std::printf("%s\n", lines[i].c_str());
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
