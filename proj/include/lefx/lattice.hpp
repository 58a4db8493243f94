#pragma once

// Exact integer linear algebra for plumbing fibers: the middle-degree
// lattice of a tree plumbing of spheres, Picard-Lefschetz twist actions on
// it, and Smith normal form.  All arithmetic is arbitrary precision.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lefx {

using Int = boost::multiprecision::cpp_int;

// Homology class in the middle-degree lattice Z^V of a plumbing fiber,
// written in the vertex-sphere basis.
using HomClass = std::vector<Int>;

// Tree of spheres: vertices 1..vertex_count, edges = plumbing points,
// sphere_dim = dimension of each sphere (n >= 2).
struct PlumbingTree {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // normalized i < j, sorted
  int sphere_dim = 2;

  PlumbingTree() = default;
  PlumbingTree(int vertices, std::vector<std::pair<int, int>> edge_list, int n)
      : vertex_count(vertices), edges(std::move(edge_list)), sphere_dim(n) {
    if (sphere_dim < 2) throw std::invalid_argument("sphere dimension must be at least 2");
    if (vertex_count < 1) throw std::invalid_argument("plumbing tree needs at least one vertex");
    for (auto& e : edges) {
      if (e.first == e.second) throw std::invalid_argument("self loop in plumbing graph");
      if (e.first > e.second) std::swap(e.first, e.second);
      if (e.first < 1 || e.second > vertex_count)
        throw std::invalid_argument("edge endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw std::invalid_argument("duplicate edge in plumbing graph");
    if (static_cast<int>(edges.size()) != vertex_count - 1)
      throw std::invalid_argument("plumbing graph is not a tree (edge count)");
    // Connectivity: union-find over the V-1 edges.
    std::vector<int> parent(vertex_count + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto& e : edges) {
      int a = find(e.first), b = find(e.second);
      if (a == b) throw std::invalid_argument("plumbing graph is not a tree (cycle)");
      parent[a] = b;
    }
  }

  bool adjacent(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
  }

  int degree(int v) const {
    int d = 0;
    for (auto& e : edges)
      if (e.first == v || e.second == v) ++d;
    return d;
  }

  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (auto& e : edges) {
      if (e.first == v) out.push_back(e.second);
      if (e.second == v) out.push_back(e.first);
    }
    return out;
  }

  bool is_path() const {
    if (vertex_count == 1) return true;
    for (int v = 1; v <= vertex_count; ++v)
      if (degree(v) > 2) return false;
    return true;
  }

  // Vertex labels read along the path, starting from the smaller-labeled
  // endpoint.  Only valid when is_path().
  std::vector<int> path_order() const {
    if (!is_path()) throw std::invalid_argument("fiber tree is not a path");
    if (vertex_count == 1) return {1};
    int start = 0;
    for (int v = 1; v <= vertex_count; ++v)
      if (degree(v) == 1 && (start == 0 || v < start)) start = v;
    std::vector<int> order{start};
    int prev = 0, cur = start;
    while (static_cast<int>(order.size()) < vertex_count) {
      for (int w : neighbors(cur)) {
        if (w != prev) {
          order.push_back(w);
          prev = cur;
          cur = w;
          break;
        }
      }
    }
    return order;
  }

  bool operator==(const PlumbingTree& o) const {
    return vertex_count == o.vertex_count && edges == o.edges && sphere_dim == o.sphere_dim;
  }
};

// Intersection pairing on the middle lattice.  For n even the form is
// symmetric with diagonal -2; for n odd it is skew with zero diagonal.
// Off-diagonal entries are +/-1 exactly on tree edges, with entry(i,j) = +1
// for i < j adjacent and entry(j,i) = (-1)^n entry(i,j).
struct IntersectionForm {
  int rank = 0;
  int sphere_dim = 2;
  std::vector<std::vector<Int>> entries;

  const Int& at(int i, int j) const { return entries[i - 1][j - 1]; }
};

inline IntersectionForm intersection_form(const PlumbingTree& tree) {
  IntersectionForm form;
  form.rank = tree.vertex_count;
  form.sphere_dim = tree.sphere_dim;
  const bool even = tree.sphere_dim % 2 == 0;
  form.entries.assign(tree.vertex_count, std::vector<Int>(tree.vertex_count, 0));
  for (int i = 0; i < tree.vertex_count; ++i) form.entries[i][i] = even ? Int(-2) : Int(0);
  for (auto& e : tree.edges) {
    form.entries[e.first - 1][e.second - 1] = 1;
    form.entries[e.second - 1][e.first - 1] = even ? 1 : -1;
  }
  return form;
}

inline Int pairing(const IntersectionForm& form, const HomClass& x, const HomClass& y) {
  if (static_cast<int>(x.size()) != form.rank || static_cast<int>(y.size()) != form.rank)
    throw std::invalid_argument("class rank mismatch");
  Int total = 0;
  for (int i = 0; i < form.rank; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < form.rank; ++j) {
      if (form.entries[i][j] == 0 || y[j] == 0) continue;
      total += x[i] * form.entries[i][j] * y[j];
    }
  }
  return total;
}

inline HomClass vertex_class(const IntersectionForm& form, int v) {
  if (v < 1 || v > form.rank) throw std::invalid_argument("vertex out of range");
  HomClass c(form.rank, 0);
  c[v - 1] = 1;
  return c;
}

// Twist of x along the vertex sphere v.  Even n: reflection
// x - (2<x,d>/<d,d>) d = x + <x,d> d, an involution (sign ignored).
// Odd n: transvection x + sign <x,d> d.
inline HomClass picard_lefschetz(const IntersectionForm& form, const HomClass& x, int v,
                                 int sign = 1) {
  if (v < 1 || v > form.rank) throw std::invalid_argument("vertex out of range");
  if (sign != 1 && sign != -1) throw std::invalid_argument("twist sign must be +/-1");
  Int coeff = 0;
  for (int i = 0; i < form.rank; ++i)
    if (x[i] != 0) coeff += x[i] * form.entries[i][v - 1];
  HomClass out = x;
  if (form.sphere_dim % 2 == 0)
    out[v - 1] += coeff;
  else
    out[v - 1] += Int(sign) * coeff;
  return out;
}

// Word letter: (vertex, sign).  A word lists the outermost twist first, so
// applying [w1, w2] to x computes tau_{w1}(tau_{w2}(x)).
using TwistWord = std::vector<std::pair<int, int>>;

inline HomClass apply_twist_word(const IntersectionForm& form, const TwistWord& word,
                                 const HomClass& x) {
  HomClass out = x;
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    out = picard_lefschetz(form, out, it->first, it->second);
  return out;
}

template <typename T>
struct SmithResultT {
  std::vector<T> factors;  // positive, d1 | d2 | ... | dr
  int rank = 0;
};

using SmithResult = SmithResultT<Int>;

// Smith normal form by pivoting on a least nonzero entry and clearing its
// row and column; after each pivot stabilizes, divisibility over the rest of
// the matrix is enforced before recursing.
template <typename T>
SmithResultT<T> smith_normal_form(std::vector<std::vector<T>> m) {
  auto abs_of = [](const T& x) { return x < 0 ? T(-x) : x; };
  SmithResultT<T> result;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (auto& row : m)
    if (static_cast<int>(row.size()) != cols)
      throw std::invalid_argument("ragged matrix");
  int t = 0;
  while (true) {
    int pr = -1, pc = -1;
    T best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pr < 0 || abs_of(m[i][j]) < best)) {
          pr = i;
          pc = j;
          best = abs_of(m[i][j]);
        }
    if (pr < 0) break;
    std::swap(m[t], m[pr]);
    for (int i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        T q = m[i][t] / m[t][t];
        if (q != 0)
          for (int j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {  // remainder smaller than pivot: swap up and retry
          std::swap(m[t], m[i]);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        T q = m[t][j] / m[t][t];
        if (q != 0)
          for (int i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (int i = t; i < rows; ++i) std::swap(m[i][t], m[i][j]);
          clean = false;
        }
      }
    }
    // Divisibility: pivot must divide every remaining entry.
    bool redo = false;
    for (int i = t + 1; i < rows && !redo; ++i)
      for (int j = t + 1; j < cols && !redo; ++j)
        if (m[i][j] % m[t][t] != 0) {
          for (int jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
          redo = true;
        }
    if (redo) continue;
    ++t;
    if (t >= rows || t >= cols) break;
  }
  result.rank = t;
  for (int i = 0; i < t; ++i)
    result.factors.push_back(abs_of(m[i][i]));
  return result;
}

}  // namespace lefx
