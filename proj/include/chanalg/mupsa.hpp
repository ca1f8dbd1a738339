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
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chanalg/algebra.hpp"
#include "chanalg/errors.hpp"
#include "chanalg/numeric.hpp"
#include "chanalg/wedderburn_type.hpp"

namespace chanalg {

inline constexpr int kMaxLatticeDim = 8;

// sum over blocks of (2n - 1); bounds the length of any chain of unital
// subalgebras below an algebra of this type.
inline int chi(const WedderburnType& t) {
  int s = 0;
  for (const auto& b : t.blocks()) s += 2 * b.n - 1;
  return s;
}

inline int max_kappa_bound(int d) {
  if (d < 2) throw InvalidArgument("max_kappa_bound: d must be >= 2");
  return 2 * d - 2;
}

namespace detail {

inline void collect_types(int remaining, WedderburnBlock cap, std::vector<WedderburnBlock>& cur,
                          std::vector<WedderburnType>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int n = std::min(remaining, cap.n); n >= 1; --n) {
    const int kmax = n == cap.n ? cap.k : remaining / n;
    for (int k = std::min(kmax, remaining / n); k >= 1; --k) {
      cur.push_back({n, k});
      collect_types(remaining - n * k, {n, k}, cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace detail

// Every Wedderburn type of a unital *-subalgebra of M_d.
inline std::vector<WedderburnType> all_types(int d) {
  if (d < 1) throw InvalidArgument("all_types: d must be >= 1");
  std::vector<WedderburnType> out;
  std::vector<WedderburnBlock> cur;
  detail::collect_types(d, {d, d}, cur, out);
  return out;
}

// M_{d-r} ⊕ M_r for 1 <= r <= d/2; r and d - r give the same type.
inline std::vector<WedderburnType> mupsas_of_full(int d) {
  if (d < 2) throw InvalidArgument("mupsas_of_full: d must be >= 2");
  std::vector<WedderburnType> out;
  for (int r = 1; r <= d / 2; ++r) out.emplace_back(std::vector<WedderburnBlock>{{d - r, 1}, {r, 1}});
  return out;
}

/// One covering step. Form 1 splits block `first` into (n - s, k) and (s, k);
/// form 2 merges blocks `first` and `second` (equal n) into (n, k1 + k2).
/// Block indices refer to the sorted order of the source type.
struct MupsaMove {
  int form = 1;
  int first = 0;
  int second = -1;
  int s = 0;
  WedderburnType result;
};

inline std::vector<MupsaMove> mupsa_moves(const WedderburnType& t) {
  std::vector<MupsaMove> out;
  std::set<WedderburnType> seen;
  const auto& blocks = t.blocks();
  const int m = static_cast<int>(blocks.size());
  auto emit = [&](MupsaMove mv, std::vector<WedderburnBlock> next) {
    mv.result = WedderburnType(std::move(next));
    if (seen.insert(mv.result).second) out.push_back(std::move(mv));
  };
  for (int j = 0; j < m; ++j) {
    const auto [n, k] = blocks[static_cast<std::size_t>(j)];
    for (int s = 1; s <= n / 2; ++s) {
      std::vector<WedderburnBlock> next;
      for (int i = 0; i < m; ++i) {
        if (i != j) next.push_back(blocks[static_cast<std::size_t>(i)]);
      }
      next.push_back({n - s, k});
      next.push_back({s, k});
      emit({1, j, -1, s, {}}, std::move(next));
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const auto& bi = blocks[static_cast<std::size_t>(i)];
      const auto& bj = blocks[static_cast<std::size_t>(j)];
      if (bi.n != bj.n) continue;
      std::vector<WedderburnBlock> next;
      for (int l = 0; l < m; ++l) {
        if (l != i && l != j) next.push_back(blocks[static_cast<std::size_t>(l)]);
      }
      next.push_back({bi.n, bi.k + bj.k});
      emit({2, i, j, 0, {}}, std::move(next));
    }
  }
  return out;
}

inline std::vector<WedderburnType> enumerate_mupsas(const WedderburnType& t) {
  std::vector<WedderburnType> out;
  for (auto& mv : mupsa_moves(t)) out.push_back(std::move(mv.result));
  return out;
}

/// Covering graph of Wedderburn types below M_d.
struct LatticeGraph {
  int d = 0;
  std::vector<WedderburnType> nodes;     // nodes[0] is the root M_d
  std::vector<std::pair<int, int>> edges;  // (from, to): `to` is a MUPSA type of `from`
  int root = 0;
  int bottom = 0;

  std::vector<int> children(int i) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges) {
      if (a == i) out.push_back(b);
    }
    return out;
  }

  // A longest root-to-bottom path, as node indices.
  std::vector<int> longest_chain() const {
    const int n = static_cast<int>(nodes.size());
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    // chi strictly decreases along edges, so ascending chi is a reverse topological order.
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return chi(nodes[static_cast<std::size_t>(a)]) < chi(nodes[static_cast<std::size_t>(b)]);
    });
    std::vector<int> len(static_cast<std::size_t>(n), 1), next(static_cast<std::size_t>(n), -1);
    for (const int v : order) {
      for (const int c : children(v)) {
        if (len[static_cast<std::size_t>(c)] + 1 > len[static_cast<std::size_t>(v)]) {
          len[static_cast<std::size_t>(v)] = len[static_cast<std::size_t>(c)] + 1;
          next[static_cast<std::size_t>(v)] = c;
        }
      }
    }
    std::vector<int> path;
    for (int v = root; v >= 0; v = next[static_cast<std::size_t>(v)]) path.push_back(v);
    return path;
  }
};

inline LatticeGraph build_lattice(int d) {
  if (d < 2 || d > kMaxLatticeDim) {
    throw InvalidArgument("build_lattice: d must lie in [2, " + std::to_string(kMaxLatticeDim) + "]");
  }
  LatticeGraph g;
  g.d = d;
  std::map<WedderburnType, int> index;
  std::queue<int> frontier;
  auto node_of = [&](const WedderburnType& t) {
    const auto it = index.find(t);
    if (it != index.end()) return it->second;
    const int id = static_cast<int>(g.nodes.size());
    g.nodes.push_back(t);
    index.emplace(t, id);
    frontier.push(id);
    return id;
  };
  g.root = node_of(WedderburnType::full(d));
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    const WedderburnType t = g.nodes[static_cast<std::size_t>(v)];
    for (const auto& m : enumerate_mupsas(t)) g.edges.emplace_back(v, node_of(m));
  }
  g.bottom = index.at(WedderburnType::scalars(d));
  return g;
}

/// Placement of one summand M_n inside M_d: the matrix x sits on the
/// diagonal blocks starting at each offset, so the summand is M_n ⊗ 1_k with
/// k = offsets.size().
struct BlockPlacement {
  int n = 1;
  std::vector<int> offsets;
};
using BlockLayout = std::vector<BlockPlacement>;

// Block-diagonal layout of a type, blocks in sorted order, copies adjacent.
inline BlockLayout standard_layout(const WedderburnType& t) {
  BlockLayout out;
  int pos = 0;
  for (const auto& b : t.blocks()) {
    BlockPlacement p{b.n, {}};
    for (int m = 0; m < b.k; ++m) {
      p.offsets.push_back(pos);
      pos += b.n;
    }
    out.push_back(std::move(p));
  }
  return out;
}

// Layout of the subalgebra produced by `move` inside an algebra laid out as `big`.
inline BlockLayout apply_move(const BlockLayout& big, const MupsaMove& move) {
  BlockLayout out;
  const int m = static_cast<int>(big.size());
  if (move.first < 0 || move.first >= m) throw InvalidArgument("apply_move: block index out of range");
  for (int i = 0; i < m; ++i) {
    if (i == move.first || i == move.second) continue;
    out.push_back(big[static_cast<std::size_t>(i)]);
  }
  const BlockPlacement& a = big[static_cast<std::size_t>(move.first)];
  if (move.form == 1) {
    if (move.s < 1 || move.s >= a.n) throw InvalidArgument("apply_move: bad split size");
    BlockPlacement lo{a.n - move.s, a.offsets};
    BlockPlacement hi{move.s, {}};
    for (const int o : a.offsets) hi.offsets.push_back(o + a.n - move.s);
    out.push_back(std::move(lo));
    out.push_back(std::move(hi));
  } else {
    if (move.second < 0 || move.second >= m) throw InvalidArgument("apply_move: block index out of range");
    const BlockPlacement& b = big[static_cast<std::size_t>(move.second)];
    if (a.n != b.n) throw InvalidArgument("apply_move: merged blocks differ in size");
    BlockPlacement merged{a.n, a.offsets};
    merged.offsets.insert(merged.offsets.end(), b.offsets.begin(), b.offsets.end());
    out.push_back(std::move(merged));
  }
  return out;
}

// The concrete algebra u (⊕ M_n ⊗ 1_k) u^* described by a layout.
inline OperatorSubspace layout_algebra(Index d, const BlockLayout& layout, const Matrix& u) {
  std::vector<Matrix> basis;
  for (const auto& p : layout) {
    const double w = 1.0 / std::sqrt(static_cast<double>(p.offsets.size()));
    for (int r = 0; r < p.n; ++r) {
      for (int c = 0; c < p.n; ++c) {
        Matrix e = Matrix::Zero(d, d);
        for (const int o : p.offsets) e(o + r, o + c) = w;
        basis.push_back(u * e * u.adjoint());
      }
    }
  }
  Matrix cols(d * d, static_cast<Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) cols.col(static_cast<Index>(j)) = vec(basis[j]);
  return OperatorSubspace(d, std::move(cols));
}

inline OperatorSubspace embed_type(const WedderburnType& t, const Matrix& u) {
  return layout_algebra(t.total_dim(), standard_layout(t), u);
}

}  // namespace chanalg
