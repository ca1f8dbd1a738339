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
#include <compare>
#include <string>
#include <vector>

#include "chanalg/errors.hpp"

namespace chanalg {

// One Wedderburn summand M_n (x) 1_k.
struct WedderburnBlock {
  int n = 1;
  int k = 1;
  auto operator<=>(const WedderburnBlock&) const = default;
};

/// Isomorphism class of a unital *-subalgebra of M_d: the multiset of
/// (block size, multiplicity) pairs, kept sorted descending by (n, k).
class WedderburnType {
 public:
  WedderburnType() = default;
  explicit WedderburnType(std::vector<WedderburnBlock> blocks) : blocks_(std::move(blocks)) {
    for (const auto& b : blocks_) {
      if (b.n < 1 || b.k < 1) throw InvalidArgument("Wedderburn blocks need n, k >= 1");
    }
    std::sort(blocks_.begin(), blocks_.end(), std::greater<>{});
  }

  static WedderburnType full(int d) { return WedderburnType({{d, 1}}); }
  static WedderburnType scalars(int d) { return WedderburnType({{1, d}}); }

  const std::vector<WedderburnBlock>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }

  // sum n*k: the size of the matrix algebra this type is unitally embedded in.
  int total_dim() const {
    int s = 0;
    for (const auto& b : blocks_) s += b.n * b.k;
    return s;
  }

  // Linear dimension of the algebra, sum n^2.
  int algebra_dim() const {
    int s = 0;
    for (const auto& b : blocks_) s += b.n * b.n;
    return s;
  }

  // "M3⊕M1", "M2⊗1_2", "M1⊗1_2⊕M1⊕M1".
  std::string to_string() const {
    if (blocks_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (i > 0) out += "⊕";
      out += "M" + std::to_string(blocks_[i].n);
      if (blocks_[i].k > 1) out += "⊗1_" + std::to_string(blocks_[i].k);
    }
    return out;
  }

  auto operator<=>(const WedderburnType&) const = default;

 private:
  std::vector<WedderburnBlock> blocks_;
};

}  // namespace chanalg
