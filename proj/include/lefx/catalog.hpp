#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "lefx/fibration.hpp"

// The standard fibration families.  Vertex 1 is always "alpha"; on two-vertex
// fibers vertex 2 is "beta"; on longer paths vertex j is "alpha_j".

namespace lefx {

inline PlumbingTree path_tree(int vertices, int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < vertices; ++i) edges.emplace_back(i, i + 1);
  return PlumbingTree(vertices, std::move(edges), n);
}

// Path of length m with one extra leaf hung on vertex j (m + 1 vertices).
inline PlumbingTree t_shape_tree(int m, int j, int n) {
  if (m < 1 || j < 1 || j > m) throw std::invalid_argument("t-shape tree needs 1 <= j <= m");
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < m; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(j, m + 1);
  return PlumbingTree(m + 1, std::move(edges), n);
}

struct TreeSpec {
  enum class Family { a, d, e, t, explicit_edges };

  Family family = Family::a;
  int m = 1;
  int j = 1;
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;

  static TreeSpec A(int m) {
    if (m < 1) throw std::invalid_argument("A-type tree needs m >= 1");
    TreeSpec s;
    s.family = Family::a;
    s.m = m;
    return s;
  }
  static TreeSpec D(int m) {
    if (m < 4) throw std::invalid_argument("D-type tree needs m >= 4");
    TreeSpec s;
    s.family = Family::d;
    s.m = m;
    return s;
  }
  static TreeSpec E(int m) {
    if (m < 6 || m > 8) throw std::invalid_argument("E-type tree needs m in {6,7,8}");
    TreeSpec s;
    s.family = Family::e;
    s.m = m;
    return s;
  }
  static TreeSpec T(int m, int j) {
    if (m < 1 || j < 1 || j > m) throw std::invalid_argument("T-type tree needs 1 <= j <= m");
    TreeSpec s;
    s.family = Family::t;
    s.m = m;
    s.j = j;
    return s;
  }
  static TreeSpec Explicit(int vertices, std::vector<std::pair<int, int>> edges) {
    TreeSpec s;
    s.family = Family::explicit_edges;
    s.vertices = vertices;
    s.edges = std::move(edges);
    return s;
  }

  // D_m and E_m are the T-shapes T_{m-1}^{m-2} and T_{m-1}^3.
  PlumbingTree build(int n) const {
    switch (family) {
      case Family::a:
        return path_tree(m, n);
      case Family::d:
        return t_shape_tree(m - 1, m - 2, n);
      case Family::e:
        return t_shape_tree(m - 1, 3, n);
      case Family::t:
        return t_shape_tree(m, j, n);
      case Family::explicit_edges:
        return PlumbingTree(vertices, edges, n);
    }
    throw std::invalid_argument("unknown tree family");
  }
};

// (m+1)-fold stack of the vertex sphere over a single vertex: the Milnor
// fiber presentation of the A_m singularity, one dimension up.
inline AbstractLF build_A_milnor(int m, int n) {
  if (m < 1) throw std::invalid_argument("build_A_milnor needs m >= 1");
  std::vector<CycleSpec> specs(m + 1, CycleSpec{1, {}});
  return AbstractLF(PlumbingTree(1, {}, n), specs);
}

// (A_2; a x(2k+1), t_a^{2k} b, b).
inline AbstractLF build_X(int k, int n) {
  if (k < 1) throw std::invalid_argument("build_X needs k >= 1");
  std::vector<CycleSpec> specs(2 * k + 1, CycleSpec{1, {}});
  TwistWord twisted(2 * k, {1, 1});
  specs.push_back({2, std::move(twisted)});
  specs.push_back({2, {}});
  return AbstractLF(path_tree(2, n), specs);
}

// (A_2; a x(2k+1), b, b).
inline AbstractLF build_Y(int k, int n) {
  if (k < 1) throw std::invalid_argument("build_Y needs k >= 1");
  std::vector<CycleSpec> specs(2 * k + 1, CycleSpec{1, {}});
  specs.push_back({2, {}});
  specs.push_back({2, {}});
  return AbstractLF(path_tree(2, n), specs);
}

// (A_k; a_1 x(i_1+1), ..., a_k x(i_k+1)).
inline AbstractLF build_Z(const std::vector<int>& multiplicities, int n) {
  if (multiplicities.empty()) throw std::invalid_argument("build_Z needs at least one block");
  for (int i : multiplicities)
    if (i < 1) throw std::invalid_argument("build_Z needs every multiplicity >= 1");
  const int k = static_cast<int>(multiplicities.size());
  std::vector<CycleSpec> specs;
  for (int v = 1; v <= k; ++v)
    for (int c = 0; c <= multiplicities[v - 1]; ++c) specs.push_back({v, {}});
  return AbstractLF(path_tree(k, n), specs);
}

// (A_2; a x m, b, b).
inline AbstractLF build_Q(int m, int n) {
  if (m < 1) throw std::invalid_argument("build_Q needs m >= 1");
  std::vector<CycleSpec> specs(m, CycleSpec{1, {}});
  specs.push_back({2, {}});
  specs.push_back({2, {}});
  return AbstractLF(path_tree(2, n), specs);
}

// (A_2; a x j, b, a x(m+1-j), b): the plumbing over the T-shape tree
// T_m^j, presented over the two-vertex path.  m + 3 cycles in total.
inline AbstractLF build_P_Tmj(int m, int j, int n) {
  if (m < 2) throw std::invalid_argument("build_P_Tmj needs m >= 2");
  if (j < 1 || j > m) throw std::invalid_argument("build_P_Tmj needs 1 <= j <= m");
  std::vector<CycleSpec> specs(j, CycleSpec{1, {}});
  specs.push_back({2, {}});
  for (int c = 0; c <= m - j; ++c) specs.push_back({1, {}});
  specs.push_back({2, {}});
  return AbstractLF(path_tree(2, n), specs);
}

namespace detail {

// Blocks of a bare-cycle fibration, rotated to start where the fiber path
// starts; empty when any cycle carries a word, a vertex is interleaved or
// unused, or the blocks do not follow the path.
inline std::vector<std::pair<int, int>> path_ordered_blocks(const AbstractLF& f) {
  if (!f.fiber().is_path()) return {};
  for (const Cycle& c : f.cycles())
    if (!c.word().empty()) return {};
  const int m = f.cycle_count();
  const auto order = f.fiber().path_order();
  if (f.fiber().vertex_count == 1) return {{1, m}};
  for (int rotation = 0; rotation < m; ++rotation) {
    if (f.cycle(rotation + 1).base() != order[0]) continue;
    if (m > 1 && f.cycle(rotation == 0 ? m : rotation).base() == order[0]) continue;
    std::vector<std::pair<int, int>> blocks;
    for (int s = 0; s < m; ++s) {
      const int base = f.cycle((rotation + s) % m + 1).base();
      if (!blocks.empty() && blocks.back().first == base)
        ++blocks.back().second;
      else
        blocks.emplace_back(base, 1);
    }
    if (static_cast<int>(blocks.size()) != f.fiber().vertex_count) return {};
    for (int v = 0; v < f.fiber().vertex_count; ++v)
      if (blocks[v].first != order[v]) return {};
    return blocks;
  }
  return {};
}

}  // namespace detail

// Concatenate path-fiber fibrations in vertex-block form into one fibration
// over the joined path; the total space is the end connected sum.
inline AbstractLF end_connect_sum_fibration(const std::vector<AbstractLF>& parts) {
  if (parts.empty()) throw std::invalid_argument("end connected sum needs at least one part");
  const int n = parts.front().n();
  int total_vertices = 0;
  std::vector<CycleSpec> specs;
  for (const AbstractLF& part : parts) {
    if (part.n() != n) throw std::invalid_argument("end connected sum needs equal fiber dimensions");
    const auto blocks = detail::path_ordered_blocks(part);
    if (blocks.empty())
      throw std::invalid_argument("end connected sum needs parts in vertex-block form");
    for (int v = 0; v < static_cast<int>(blocks.size()); ++v)
      for (int c = 0; c < blocks[v].second; ++c) specs.push_back({total_vertices + v + 1, {}});
    total_vertices += part.fiber().vertex_count;
  }
  return AbstractLF(path_tree(total_vertices, n), specs);
}

}  // namespace lefx
