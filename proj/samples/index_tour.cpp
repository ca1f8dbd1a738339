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

// A short walk through the library: build a few channels, print their
// multiplicative domain chains, and check two tensor laws.

#include <iostream>

#include "chanalg/chanalg.hpp"

namespace {

void show(const chanalg::Channel& ch) {
  const auto report = chanalg::analyze(ch);
  std::cout << ch.label() << " on M_" << ch.dim() << "\n";
  for (const auto& s : report.md_chain) {
    std::cout << "  M_{E^" << s.power << "} = " << s.type.to_string() << "  (dim " << s.dim << ")\n";
  }
  std::cout << "  kappa = " << report.kappa << ", Fix = " << report.fixed_point_type.to_string()
            << ", peripheral points = " << report.peripheral.size() << "\n";
}

}  // namespace

int main() {
  using namespace chanalg;

  show(m3_example());
  show(etb_channel(5, 4));
  show(schur_cycle_channel(4));
  show(dephasing_shift_channel(3));

  const auto [e1, e2] = omega_pair();
  show(convex_combine({{0.5, e1}, {0.5, e2}}).relabeled("omega mixture"));

  const Channel a = etb_channel(3, 2), b = schur_cycle_channel(4);
  const auto split = check_md_splitting(a, b);
  const auto index = kappa_tensor_check(a, b);
  std::cout << "M_{a x b} vs M_a x M_b: distance " << split.distance << "\n";
  std::cout << "kappa(a x b) = " << index.kappa_product << ", max = " << index.kappa_max << "\n";

  const auto lattice = build_lattice(4);
  std::cout << "subalgebra types of M_4: " << lattice.nodes.size() << ", longest chain "
            << lattice.longest_chain().size() << "\n";
  return 0;
}
