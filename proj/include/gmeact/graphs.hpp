// Copyright 2026 The gmeact Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "tolerances.hpp"

// Graph states on a dense state-vector backend. Node i is qubit i, with
// qubit 0 the most significant bit of the computational-basis index.

namespace gmeact {

inline constexpr std::size_t kMaxGraphNodes = 14;

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t nodes) : n_(nodes), adj_(nodes) {}

  std::size_t node_count() const { return n_; }

  void add_edge(std::size_t i, std::size_t j) {
    check_node(i);
    check_node(j);
    if (i == j) throw std::invalid_argument("graph: self-loops are not allowed");
    adj_[i].insert(j);
    adj_[j].insert(i);
  }

  void remove_edge(std::size_t i, std::size_t j) {
    check_node(i);
    check_node(j);
    adj_[i].erase(j);
    adj_[j].erase(i);
  }

  bool adjacent(std::size_t i, std::size_t j) const {
    check_node(i);
    check_node(j);
    return adj_[i].count(j) > 0;
  }

  const std::set<std::size_t>& neighbors(std::size_t i) const {
    check_node(i);
    return adj_[i];
  }

  // Edges as ordered pairs (i < j), sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n_; ++i)
      for (auto j : adj_[i])
        if (i < j) out.emplace_back(i, j);
    return out;
  }

  const std::optional<std::vector<int>>& coloring() const { return coloring_; }

  void set_coloring(std::vector<int> colors) {
    if (colors.size() != n_) throw std::invalid_argument("coloring must assign every node");
    for (int c : colors)
      if (c != 0 && c != 1) throw std::invalid_argument("colors must be 0 or 1");
    coloring_ = std::move(colors);
  }

  void clear_coloring() { coloring_.reset(); }

  bool coloring_is_proper() const {
    if (!coloring_) return false;
    for (auto [i, j] : edges())
      if ((*coloring_)[i] == (*coloring_)[j]) return false;
    return true;
  }

  // Same node count and edge set; colorings are ignored.
  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

 private:
  void check_node(std::size_t i) const {
    if (i >= n_) throw std::out_of_range("node index " + std::to_string(i) + " out of range");
  }

  std::size_t n_ = 0;
  std::vector<std::set<std::size_t>> adj_;
  std::optional<std::vector<int>> coloring_;
};

// Two-coloring by breadth-first search; empty when the graph is not bipartite.
inline std::optional<std::vector<int>> find_two_coloring(const Graph& g) {
  std::vector<int> color(g.node_count(), -1);
  for (std::size_t s = 0; s < g.node_count(); ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::vector<std::size_t> queue = {s};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const auto u = queue[h];
      for (auto v : g.neighbors(u)) {
        if (color[v] == -1) {
          color[v] = 1 - color[u];
          queue.push_back(v);
        } else if (color[v] == color[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

// 2^{-N/2} sum_x (-1)^{sum_{(i,j) in E} x_i x_j} |x>
inline ComplexVector graph_state(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n > kMaxGraphNodes) throw std::invalid_argument("graph_state: too many nodes for the dense backend");
  const std::size_t dim = std::size_t{1} << n;
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(n));
  const auto edges = g.edges();
  ComplexVector psi(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    int parity = 0;
    for (auto [i, j] : edges) parity ^= static_cast<int>(((x >> (n - 1 - i)) & 1) & ((x >> (n - 1 - j)) & 1));
    psi[x] = parity ? -amp : amp;
  }
  return psi;
}

struct StabilizerElement {
  std::string letters;  // one of I, X, Y, Z per node
  int phase = 1;

  friend bool operator==(const StabilizerElement&, const StabilizerElement&) = default;
};

// g_i = X_i prod_{j in N(i)} Z_j
inline std::vector<StabilizerElement> stabilizers(const Graph& g) {
  std::vector<StabilizerElement> out;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    StabilizerElement s{std::string(g.node_count(), 'I'), 1};
    s.letters[i] = 'X';
    for (auto j : g.neighbors(i)) s.letters[j] = 'Z';
    out.push_back(s);
  }
  return out;
}

// Applies a Pauli product to a state vector.
inline ComplexVector apply_pauli(const StabilizerElement& s, std::span<const cplx> psi) {
  const std::size_t n = s.letters.size();
  if (psi.size() != (std::size_t{1} << n)) throw DimensionMismatch("apply_pauli: state dimension");
  std::size_t flip = 0;
  for (std::size_t q = 0; q < n; ++q)
    if (s.letters[q] == 'X' || s.letters[q] == 'Y') flip |= std::size_t{1} << (n - 1 - q);
  ComplexVector out(psi.size());
  for (std::size_t x = 0; x < psi.size(); ++x) {
    cplx f = static_cast<double>(s.phase);
    for (std::size_t q = 0; q < n; ++q) {
      const bool bit = (x >> (n - 1 - q)) & 1;
      switch (s.letters[q]) {
        case 'I':
        case 'X': break;
        case 'Z': if (bit) f = -f; break;
        case 'Y': f *= bit ? cplx(0, -1) : cplx(0, 1); break;  // Y|0> = i|1>, Y|1> = -i|0>
        default: throw std::invalid_argument("apply_pauli: bad letter");
      }
    }
    out[x ^ flip] += f * psi[x];
  }
  return out;
}

// Result of merging node j into node i: the merged node takes min(i, j),
// and label_map[old] gives the new index (-1 for the removed node).
struct FusionResult {
  Graph graph;
  std::vector<long> label_map;
};

namespace detail {

inline FusionResult merge_nodes(const Graph& g, std::size_t i, std::size_t j, const std::set<std::size_t>& merged_nbrs) {
  const std::size_t keep = std::min(i, j), drop = std::max(i, j);
  const std::size_t n = g.node_count();
  std::vector<long> map(n);
  for (std::size_t v = 0; v < n; ++v) map[v] = v < drop ? static_cast<long>(v) : static_cast<long>(v) - 1;
  map[drop] = -1;
  Graph out(n - 1);
  for (auto [a, b] : g.edges()) {
    if (a == i || a == j || b == i || b == j) continue;
    out.add_edge(map[a], map[b]);
  }
  for (auto v : merged_nbrs) out.add_edge(map[keep], map[v]);
  if (g.coloring()) {
    std::vector<int> colors;
    for (std::size_t v = 0; v < n; ++v)
      if (v != drop) colors.push_back((*g.coloring())[v]);
    out.set_coloring(colors);
  }
  return {out, map};
}

inline void check_pair(const Graph& g, std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("fusion needs two distinct nodes");
  if (g.adjacent(i, j)) throw std::invalid_argument("fusion nodes must not be adjacent");
}

}  // namespace detail

// E^z = |0><00| + |1><11|: the merged node is adjacent to N(i) Δ N(j).
inline FusionResult fuse_ez(const Graph& g, std::size_t i, std::size_t j) {
  detail::check_pair(g, i, j);
  std::set<std::size_t> sym;
  std::set_symmetric_difference(g.neighbors(i).begin(), g.neighbors(i).end(), g.neighbors(j).begin(),
                                g.neighbors(j).end(), std::inserter(sym, sym.end()));
  return detail::merge_nodes(g, i, j, sym);
}

// E^x = |+><++| + |-><--|, only for equal neighborhoods: the merged node keeps them.
inline FusionResult fuse_ex(const Graph& g, std::size_t i, std::size_t j) {
  detail::check_pair(g, i, j);
  if (g.neighbors(i) != g.neighbors(j)) throw std::invalid_argument("fuse_ex requires equal neighborhoods");
  return detail::merge_nodes(g, i, j, g.neighbors(i));
}

enum class FusionKind { Z, X };

// Applies E^z or E^x on qubits (i, j) of an n-qubit vector; the output qubit
// sits at min(i, j) and later qubits shift down by one.
inline ComplexVector apply_fusion(std::span<const cplx> psi, std::size_t n, std::size_t i, std::size_t j, FusionKind kind) {
  if (psi.size() != (std::size_t{1} << n)) throw DimensionMismatch("apply_fusion: state dimension");
  if (i == j || i >= n || j >= n) throw std::invalid_argument("apply_fusion: bad qubit pair");
  const std::size_t keep = std::min(i, j), drop = std::max(i, j);
  const std::size_t out_n = n - 1;
  ComplexVector out(std::size_t{1} << out_n);
  auto bit_of = [](std::size_t x, std::size_t nq, std::size_t q) { return (x >> (nq - 1 - q)) & 1; };
  // Build the input index from an output index and the two bits at (keep, drop).
  auto input_index = [&](std::size_t y, std::size_t bk, std::size_t bd) {
    std::size_t x = 0;
    for (std::size_t q = 0, src = 0; q < n; ++q) {
      std::size_t b;
      if (q == keep) {
        b = bk;
        ++src;
      } else if (q == drop) {
        b = bd;
      } else {
        b = bit_of(y, out_n, src);
        ++src;
      }
      x = (x << 1) | b;
    }
    return x;
  };
  for (std::size_t y = 0; y < out.size(); ++y) {
    const std::size_t o = bit_of(y, out_n, keep);
    if (kind == FusionKind::Z) {
      out[y] = psi[input_index(y, o, o)];
    } else {
      // E^x = (|0><00| + |0><11| + |1><01| + |1><10|)/sqrt2
      const double s = 1 / std::sqrt(2.0);
      if (o == 0) {
        out[y] = s * (psi[input_index(y, 0, 0)] + psi[input_index(y, 1, 1)]);
      } else {
        out[y] = s * (psi[input_index(y, 0, 1)] + psi[input_index(y, 1, 0)]);
      }
    }
  }
  return out;
}

// Disjoint union; b's nodes follow a's.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph out(a.node_count() + b.node_count());
  for (auto [i, j] : a.edges()) out.add_edge(i, j);
  for (auto [i, j] : b.edges()) out.add_edge(a.node_count() + i, a.node_count() + j);
  return out;
}

// Ordered list of fusion steps for merging two copies of a two-colored graph,
// in the current labels of the running graph (E^z on color-0 pairs first).
struct FusionStep {
  FusionKind kind;
  std::size_t i;
  std::size_t j;
};

inline std::vector<FusionStep> two_color_plan(const Graph& g) {
  if (!g.coloring() || !g.coloring_is_proper()) throw std::invalid_argument("two_color_fuse needs a proper 2-coloring");
  const std::size_t n = g.node_count();
  // Copy-one nodes keep their labels; the partner of v starts at n + v and
  // moves down once for every earlier-merged partner with a smaller label.
  std::vector<FusionStep> plan;
  std::vector<bool> merged(n, false);
  for (int color : {0, 1})
    for (std::size_t v = 0; v < n; ++v) {
      if ((*g.coloring())[v] != color) continue;
      std::size_t shift = 0;
      for (std::size_t u = 0; u < v; ++u)
        if (merged[u]) ++shift;
      plan.push_back({color == 0 ? FusionKind::Z : FusionKind::X, v, n + v - shift});
      merged[v] = true;
    }
  return plan;
}

// Fuses two copies of a two-colored graph. The result equals g.
inline FusionResult two_color_fuse(const Graph& g) {
  Graph current = disjoint_union(g, g);
  std::vector<long> total_map(current.node_count());
  for (std::size_t v = 0; v < total_map.size(); ++v) total_map[v] = static_cast<long>(v);
  for (const auto& step : two_color_plan(g)) {
    FusionResult r = step.kind == FusionKind::Z ? fuse_ez(current, step.i, step.j) : fuse_ex(current, step.i, step.j);
    for (auto& t : total_map)
      if (t >= 0) t = r.label_map[t];
    current = std::move(r.graph);
  }
  if (g.coloring()) current.set_coloring(*g.coloring());
  return {current, total_map};
}

// Matrix-level counterpart: applies the same fusion steps to |G>⊗|G>.
inline ComplexVector two_color_fuse_vector(const Graph& g, std::span<const cplx> first, std::span<const cplx> second) {
  const std::size_t n = g.node_count();
  if (2 * n > kMaxGraphNodes + 2) throw std::invalid_argument("two_color_fuse_vector: graph too large");
  ComplexVector psi = kron(first, second);
  std::size_t qubits = 2 * n;
  for (const auto& step : two_color_plan(g)) {
    psi = apply_fusion(psi, qubits, step.i, step.j, step.kind);
    --qubits;
  }
  return psi;
}

// Iterates the two-copy scheme: ((G ⊗ G) -> G) ⊗ G -> G, ...
inline ComplexVector fuse_copies_vector(const Graph& g, std::size_t copies) {
  if (copies < 1) throw std::invalid_argument("need at least one copy");
  const ComplexVector single = graph_state(g);
  ComplexVector acc = single;
  for (std::size_t c = 1; c < copies; ++c) acc = two_color_fuse_vector(g, acc, single);
  return acc;
}

// Largest |<a|b>| / (|a||b|) deviation from 1 and the phase-aligned scalar.
struct Proportionality {
  cplx scalar;      // b ≈ scalar * a
  double residual;  // || b/|b| - phase * a/|a| ||
};

inline Proportionality proportionality(std::span<const cplx> a, std::span<const cplx> b) {
  const double na = norm(a), nb = norm(b);
  if (na == 0 || nb == 0) return {0, INFINITY};
  const cplx ov = inner(a, b) / (na * na);
  double r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += std::norm(b[i] - ov * a[i]);
  return {ov, std::sqrt(r) / nb};
}

}  // namespace gmeact
