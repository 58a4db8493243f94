#pragma once

#include <deque>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "lefx/catalog.hpp"
#include "lefx/fibration.hpp"

// Splitting a fibration into end-connected summands and the invariants that
// survive the splitting.

namespace lefx {

enum class BlockFailure { none, non_vertex_cycle, interleaved_vertex, unused_vertex };

// Success: every cycle is a bare vertex sphere, each vertex's occurrences are
// cyclically contiguous, and every fiber vertex is used.  blocks then lists
// (vertex, count) in cyclic order, rotated to the lexicographically least
// list so the result is invariant under cyclic shifts.
struct BlockDecomposition {
  bool ok = false;
  std::vector<std::pair<int, int>> blocks;
  std::vector<int> leftover_vertices;
  BlockFailure failure = BlockFailure::none;
  std::string failure_reason;
};

inline BlockDecomposition detect_blocks(const AbstractLF& f) {
  BlockDecomposition out;
  for (int i = 1; i <= f.cycle_count(); ++i)
    if (!f.cycle(i).word().empty()) {
      out.failure = BlockFailure::non_vertex_cycle;
      out.failure_reason = "cycle " + std::to_string(i) + " is not a bare vertex sphere";
      return out;
    }
  const int m = f.cycle_count();
  const int v = f.fiber().vertex_count;
  std::vector<int> starts(v + 1, 0), uses(v + 1, 0);
  for (int i = 1; i <= m; ++i) {
    const int base = f.cycle(i).base();
    ++uses[base];
    const int prev = f.cycle(i == 1 ? m : i - 1).base();
    if (prev != base) ++starts[base];
  }
  for (int w = 1; w <= v; ++w)
    if (starts[w] > 1) out.leftover_vertices.push_back(w);
  if (!out.leftover_vertices.empty()) {
    out.failure = BlockFailure::interleaved_vertex;
    out.failure_reason = "vertex occurrences are interleaved around the cycle list";
    return out;
  }
  for (int w = 1; w <= v; ++w)
    if (uses[w] == 0) out.leftover_vertices.push_back(w);
  if (!out.leftover_vertices.empty()) {
    out.failure = BlockFailure::unused_vertex;
    out.failure_reason = "fiber vertex unused by every vanishing cycle";
    return out;
  }
  std::vector<std::pair<int, int>> best;
  for (int r = 0; r < m; ++r) {
    if (m > 1 && f.cycle(r == 0 ? m : r).base() == f.cycle(r + 1).base()) continue;
    std::vector<std::pair<int, int>> blocks;
    for (int s = 0; s < m; ++s) {
      const int base = f.cycle((r + s) % m + 1).base();
      if (!blocks.empty() && blocks.back().first == base)
        ++blocks.back().second;
      else
        blocks.emplace_back(base, 1);
    }
    if (best.empty() || blocks < best) best = std::move(blocks);
  }
  if (best.empty()) best.emplace_back(f.cycle(1).base(), m);  // a single block
  out.ok = true;
  out.blocks = std::move(best);
  return out;
}

enum class Exactness { exact, lower_bound, unknown };

inline const char* exactness_name(Exactness e) {
  switch (e) {
    case Exactness::exact: return "exact";
    case Exactness::lower_bound: return "lower_bound";
    case Exactness::unknown: return "unknown";
  }
  return "unknown";
}

// Number of nonzero components of the wrapped Fukaya category the engine can
// certify.  A vertex block of multiplicity >= 2 is an indecomposable summand
// with one component; a multiplicity-1 block is a subcritical ball and
// contributes none.
struct ComponentCount {
  int value = 0;
  Exactness exactness = Exactness::unknown;
  std::string justification;
};

namespace detail {

inline int block_component_value(const std::vector<std::pair<int, int>>& blocks) {
  int value = 0;
  for (const auto& b : blocks) value += b.second >= 2 ? 1 : 0;
  return value;
}

inline long long total_word_length(const AbstractLF& f) {
  long long len = 0;
  for (const Cycle& c : f.cycles()) len += static_cast<long long>(c.word().size());
  return len;
}

}  // namespace detail

inline ComponentCount component_count(const AbstractLF& f,
                                      const SearchBudget& budget = {4, 4000, 1}) {
  ComponentCount out;
  const BlockDecomposition direct = detect_blocks(f);
  if (direct.ok) {
    out.value = detail::block_component_value(direct.blocks);
    out.exactness = Exactness::exact;
    out.justification =
        "vertex-block form: each block of multiplicity >= 2 is one component, "
        "multiplicity-1 blocks are subcritical";
    return out;
  }
  if (f.fiber().is_path()) {
    // Greedy Hurwitz descent on total word length, then a bounded
    // breadth-first search over weinstein moves for a block-form state.
    AbstractLF state = f;
    int greedy_moves = 0;
    for (bool shrunk = true; shrunk;) {
      shrunk = false;
      for (int i = 1; i <= state.cycle_count() && !shrunk; ++i)
        for (const HurwitzDir d : {HurwitzDir::left, HurwitzDir::right}) {
          const AbstractLF next = apply_move(state, Move::hurwitz_move(i, d), Mode::weinstein);
          if (detail::total_word_length(next) < detail::total_word_length(state)) {
            state = next;
            ++greedy_moves;
            shrunk = true;
            break;
          }
        }
    }
    const int vertex_cap = f.fiber().vertex_count + budget.allow_stabilize_up_to;
    std::deque<std::pair<AbstractLF, int>> queue;
    std::unordered_set<std::string> seen;
    queue.emplace_back(state, 0);
    seen.insert(state.canonical_key());
    while (!queue.empty() && static_cast<int>(seen.size()) <= budget.max_states) {
      const auto [g, depth] = queue.front();
      queue.pop_front();
      const BlockDecomposition blocks = detect_blocks(g);
      if (blocks.ok) {
        out.value = detail::block_component_value(blocks.blocks);
        out.exactness = Exactness::exact;
        std::ostringstream os;
        os << "reduced to vertex-block form by " << greedy_moves + depth
           << " weinstein moves within budget";
        out.justification = os.str();
        return out;
      }
      if (depth >= budget.max_depth) continue;
      for (const Move& m : legal_moves(g, Mode::weinstein)) {
        if (m.kind == MoveKind::stabilize && g.fiber().vertex_count >= vertex_cap) continue;
        const AbstractLF next = apply_move(g, m, Mode::weinstein);
        if (seen.insert(next.canonical_key()).second) queue.emplace_back(next, depth + 1);
      }
    }
  }
  out.value = 0;
  out.exactness = Exactness::unknown;
  out.justification = "no vertex-block representative found within budget";
  return out;
}

// Degree gaps between the two generator families of the wrapped complex for
// a k-step stack over an n-dimensional-sphere fiber; nonvanishing of the
// continuation elements is certified once both gaps clear the interval the
// product argument needs.
struct IndexGapReport {
  int n = 2;
  int k = 1;
  int gap_max_min = 0;
  int gap_min_max = 0;
  bool nonvanishing_certified = false;
};

inline IndexGapReport index_gaps(int n, int k) {
  if (n < 2) throw std::invalid_argument("index gaps need fiber sphere dimension n >= 2");
  if (k < 1) throw std::invalid_argument("index gaps need stack parameter k >= 1");
  IndexGapReport r;
  r.n = n;
  r.k = k;
  r.gap_max_min = (n - 1) * (k + 1) + 2;
  r.gap_min_max = n;
  r.nonvanishing_certified = r.gap_max_min >= 4 && r.gap_min_max >= 2;
  return r;
}

struct InvariantReport {
  int n = 2;
  TotalHomology homology;
  long long euler = 0;
  ComponentCount components;
  std::string weinstein_note = "SH comparison not implemented";

  bool operator==(const InvariantReport& o) const {
    return n == o.n && homology == o.homology && euler == o.euler &&
           components.value == o.components.value &&
           components.exactness == o.components.exactness && weinstein_note == o.weinstein_note;
  }
};

inline InvariantReport make_report(const AbstractLF& f,
                                   const SearchBudget& budget = {4, 4000, 1}) {
  InvariantReport r;
  r.n = f.n();
  r.homology = total_space_homology(f);
  r.euler = euler_characteristic(f);
  r.components = component_count(f, budget);
  return r;
}

// Invariants of the end connected sum of the two reported spaces.
inline InvariantReport sum_invariants(const InvariantReport& a, const InvariantReport& b) {
  if (a.n != b.n) throw std::invalid_argument("cannot sum invariants across fiber dimensions");
  InvariantReport r;
  r.n = a.n;
  r.homology.n = a.n;
  r.homology.middle.rank = a.homology.middle.rank + b.homology.middle.rank;
  r.homology.middle.torsion = a.homology.middle.torsion;
  r.homology.middle.torsion.insert(r.homology.middle.torsion.end(),
                                   b.homology.middle.torsion.begin(),
                                   b.homology.middle.torsion.end());
  std::sort(r.homology.middle.torsion.begin(), r.homology.middle.torsion.end());
  r.homology.top.rank = a.homology.top.rank + b.homology.top.rank;
  r.euler = a.euler + b.euler - 1;
  r.components.value = a.components.value + b.components.value;
  r.components.exactness = std::max(a.components.exactness, b.components.exactness);
  r.components.justification = "sum of the component counts of the parts";
  return r;
}

// Intersection pattern of the thimbles over a path fiber: one vertex per
// vanishing cycle, an edge whenever the arcs cross or coincide.  Diagnostic
// only; no invariant of the total space is derived from it.
struct ThimbleGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
};

inline ThimbleGraph thimble_graph(const AbstractLF& f) {
  if (!f.fiber().is_path())
    throw std::invalid_argument("thimble graph needs a path fiber");
  ThimbleGraph g;
  g.vertex_count = f.cycle_count();
  for (int i = 1; i <= f.cycle_count(); ++i)
    for (int j = i + 1; j <= f.cycle_count(); ++j) {
      const Arc& a = *f.cycle(i).arc();
      const Arc& b = *f.cycle(j).arc();
      if (a == b || sphere_intersection(a, b) > 0) g.edges.emplace_back(i, j);
    }
  return g;
}

}  // namespace lefx
