#pragma once

#include <deque>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lefx/catalog.hpp"
#include "lefx/fibration.hpp"

// Machine-checkable equivalence certificates: a start fibration, a move
// script, and the claimed end.  verify replays the script; search looks for
// one; the builtin generators write down the catalog equivalences directly.

namespace lefx {

struct Certificate {
  Mode mode = Mode::weinstein;
  AbstractLF start;
  std::vector<Move> steps;
  AbstractLF claimed_end;
  std::string provenance;
};

// failed_step: 1-based index of the illegal step, or 0 when every step is
// legal but the final state misses the claimed end.
struct VerifyResult {
  bool accepted = false;
  int failed_step = 0;
  std::string reason;
};

inline VerifyResult verify(const Certificate& cert) {
  AbstractLF state = cert.start;
  for (int i = 0; i < static_cast<int>(cert.steps.size()); ++i) {
    try {
      state = apply_move(state, cert.steps[i], cert.mode);
    } catch (const IllegalMove& e) {
      return {false, i + 1, e.what()};
    }
  }
  if (state.canonical_key() != cert.claimed_end.canonical_key())
    return {false, 0, "final state does not match the claimed end"};
  return {true, 0, ""};
}

// Moves turning `have` into exactly `want` when the two agree up to rotation
// and per-cycle normal form: shifts to align the rotation, then rewrites.
inline std::optional<std::vector<Move>> bridge_moves(const AbstractLF& have,
                                                     const AbstractLF& want) {
  if (have.canonical_key() != want.canonical_key()) return std::nullopt;
  const int m = have.cycle_count();
  int rot = -1;
  for (int r = 0; r < m && rot < 0; ++r) {
    bool all = true;
    for (int i = 0; i < m && all; ++i)
      all = have.cycle((r + i) % m + 1).canonical_code() == want.cycle(i + 1).canonical_code();
    if (all) rot = r;
  }
  if (rot < 0) return std::nullopt;
  std::vector<Move> out;
  AbstractLF state = have;
  for (int s = 0; s < rot; ++s) {
    out.push_back(Move::cyclic_shift_move(ShiftDir::forward));
    state = apply_move(state, out.back(), Mode::weinstein);
  }
  for (int i = 1; i <= m; ++i)
    if (!(state.cycle(i) == want.cycle(i)))
      out.push_back(Move::rewrite_move(i, want.cycle(i).base(), want.cycle(i).word()));
  return out;
}

namespace detail {

struct SearchNode {
  AbstractLF state;
  std::string parent;
  Move move;
  bool has_move = false;
};

// Move applied to child = apply_move(state, m) that lands back on state, up
// to normal form; nullopt when m has no single-move inverse.
inline std::optional<Move> inverse_move(const Move& m, const AbstractLF& state) {
  switch (m.kind) {
    case MoveKind::cyclic_shift:
      return Move::cyclic_shift_move(m.shift == ShiftDir::forward ? ShiftDir::backward
                                                                  : ShiftDir::forward);
    case MoveKind::hurwitz:
      return Move::hurwitz_move(m.position, m.direction == HurwitzDir::left ? HurwitzDir::right
                                                                            : HurwitzDir::left);
    case MoveKind::stabilize:
      return Move::destabilize_move(1);
    case MoveKind::destabilize: {
      // Invertible by a stabilization only when the removed leaf sits at the
      // front of the list and carries the top vertex label.
      if (m.position != 1) return std::nullopt;
      const int v = state.cycle(1).base();
      if (v != state.fiber().vertex_count) return std::nullopt;
      const auto neighbors = state.fiber().neighbors(v);
      if (neighbors.size() != 1) return std::nullopt;
      return Move::stabilize_move(neighbors.front());
    }
    case MoveKind::smooth_replace:
      return Move::smooth_replace_move(m.position, m.vertex, -m.exponent);
    case MoveKind::rewrite_cycle:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

// Bidirectional breadth-first search over canonical keys.  Returns a
// verified certificate, or nullopt when no certificate exists within budget.
inline std::optional<Certificate> search(const AbstractLF& from, const AbstractLF& to, Mode mode,
                                         const SearchBudget& budget = {}) {
  if (from.n() != to.n())
    throw std::invalid_argument("cannot search for certificates across fiber dimensions");
  if (from.canonical_key() == to.canonical_key())
    return Certificate{mode, from, {}, to, "search"};

  const int vertex_cap =
      std::max(from.fiber().vertex_count, to.fiber().vertex_count) + budget.allow_stabilize_up_to;
  std::unordered_map<std::string, detail::SearchNode> fwd, bwd;
  fwd.emplace(from.canonical_key(), detail::SearchNode{from, "", Move{}, false});
  bwd.emplace(to.canonical_key(), detail::SearchNode{to, "", Move{}, false});
  std::vector<std::string> fwd_frontier{from.canonical_key()};
  std::vector<std::string> bwd_frontier{to.canonical_key()};
  int fwd_depth = 0, bwd_depth = 0;
  int states = 2;
  std::optional<std::string> meet;

  auto stitch = [&](const std::string& key) -> std::optional<Certificate> {
    std::vector<Move> steps;
    for (std::string cur = key; fwd.at(cur).has_move; cur = fwd.at(cur).parent)
      steps.push_back(fwd.at(cur).move);
    std::reverse(steps.begin(), steps.end());
    AbstractLF state = fwd.at(key).state;
    for (std::string cur = key; bwd.at(cur).has_move; cur = bwd.at(cur).parent) {
      const detail::SearchNode& node = bwd.at(cur);
      const auto bridge = bridge_moves(state, node.state);
      if (!bridge) return std::nullopt;
      for (const Move& b : *bridge) {
        steps.push_back(b);
        state = apply_move(state, b, mode);
      }
      steps.push_back(node.move);
      state = apply_move(state, node.move, mode);
    }
    Certificate cert{mode, from, std::move(steps), to, "search"};
    if (!verify(cert).accepted) return std::nullopt;
    return cert;
  };

  while (true) {
    const bool can_fwd = fwd_depth + bwd_depth < budget.max_depth && !fwd_frontier.empty();
    const bool can_bwd = fwd_depth + bwd_depth < budget.max_depth && !bwd_frontier.empty();
    if (!can_fwd && !can_bwd) return std::nullopt;
    const bool forward = can_fwd && (!can_bwd || fwd_frontier.size() <= bwd_frontier.size());
    auto& frontier = forward ? fwd_frontier : bwd_frontier;
    auto& mine = forward ? fwd : bwd;
    auto& other = forward ? bwd : fwd;
    std::vector<std::string> next;
    for (const std::string& key : frontier) {
      const AbstractLF state = mine.at(key).state;
      for (const Move& m : legal_moves(state, mode)) {
        if (m.kind == MoveKind::stabilize && state.fiber().vertex_count >= vertex_cap) continue;
        std::optional<Move> edge = m;
        if (!forward) {
          edge = detail::inverse_move(m, state);
          if (!edge) continue;
        }
        const AbstractLF child = apply_move(state, m, mode);
        const std::string child_key = child.canonical_key();
        if (mine.count(child_key)) continue;
        if (++states > budget.max_states) return std::nullopt;
        mine.emplace(child_key, detail::SearchNode{child, key, *edge, true});
        next.push_back(child_key);
        if (other.count(child_key)) {
          meet = child_key;
          break;
        }
      }
      if (meet) break;
    }
    if (meet) return stitch(*meet);
    frontier = std::move(next);
    (forward ? fwd_depth : bwd_depth) += 1;
  }
}

namespace builtin {

// X_k to the A-Milnor stack on 2k+2 spheres: walk the worded cycle to the
// front shedding its twists, spin it to the back, absorb it into the last
// bare sphere, then drop the now-unused second vertex.
inline Certificate x_to_a_milnor(int k, int n) {
  if (k < 1) throw std::invalid_argument("x_to_a_milnor needs k >= 1");
  std::vector<Move> steps;
  for (int i = 2 * k + 1; i >= 1; --i) steps.push_back(Move::hurwitz_move(i, HurwitzDir::left));
  steps.push_back(Move::cyclic_shift_move(ShiftDir::forward));
  steps.push_back(Move::hurwitz_move(2 * k + 2, HurwitzDir::left));
  steps.push_back(Move::rewrite_move(2 * k + 2, 1, {}));
  steps.push_back(Move::destabilize_move(2 * k + 3));
  return Certificate{Mode::weinstein, build_X(k, n), std::move(steps), build_A_milnor(2 * k + 1, n),
                     "builtin: reduction of the k-step stack to the A-Milnor presentation"};
}

// X_k and Y_k differ by shedding the full twist on the worded cycle; the
// exponent 2k must be a multiple of the smooth step of n.
inline Certificate x_to_y(int k, int n) {
  if (k < 1) throw std::invalid_argument("x_to_y needs k >= 1");
  const int step = smooth_step(n);
  if (step == 0 || (2 * k) % step != 0)
    throw std::invalid_argument("x_to_y parameters outside the supported parity");
  std::vector<Move> steps{Move::smooth_replace_move(2 * k + 2, 1, 2 * k)};
  return Certificate{Mode::smooth, build_X(k, n), std::move(steps), build_Y(k, n),
                     "builtin: full-twist shedding between the stack pair"};
}

namespace detail {

// Merge the last two blocks of a chain presentation: slide one copy of the
// final sphere across everything, shed the divisible twist onto it, comb it
// back through the merged block, and drop the emptied vertex.
inline Certificate z_merge_last(const std::vector<int>& params, int n) {
  const int step = smooth_step(n);
  if (step == 0) throw std::invalid_argument("chain merges need an even fiber sphere dimension");
  const int q = static_cast<int>(params.size());
  if (q < 2) throw std::invalid_argument("chain merge needs at least two blocks");
  for (int p : params)
    if (p < 1) throw std::invalid_argument("chain merge needs every multiplicity >= 1");
  const int d = params[q - 2];
  const int w = params[q - 1];
  if (d % step != 0)
    throw std::invalid_argument("chain merge needs the merged multiplicity divisible by the step");
  int m0 = 0, prefix = 0;
  for (int j = 0; j < q; ++j) m0 += params[j] + 1;
  for (int j = 0; j + 2 < q; ++j) prefix += params[j] + 1;
  std::vector<Move> steps;
  steps.push_back(Move::cyclic_shift_move(ShiftDir::backward));
  for (int i = 1; i <= prefix; ++i) steps.push_back(Move::hurwitz_move(i, HurwitzDir::right));
  steps.push_back(Move::smooth_replace_move(prefix + 1, q - 1, d));
  for (int i = 0; i <= d; ++i)
    steps.push_back(Move::hurwitz_move(prefix + 1 + i, HurwitzDir::right));
  for (int i = 0; i < w; ++i)
    steps.push_back(Move::hurwitz_move(prefix + d + 2 + i, HurwitzDir::left));
  steps.push_back(Move::hurwitz_move(m0 - 1, HurwitzDir::left));
  steps.push_back(Move::destabilize_move(m0 - 1));
  std::vector<int> merged(params.begin(), params.end() - 2);
  merged.push_back(d + w);
  return Certificate{Mode::smooth, build_Z(params, n), std::move(steps), build_Z(merged, n),
                     "builtin: merging the last two blocks of a chain presentation"};
}

}  // namespace detail

// Certificates linking consecutive members of the family built from the step
// multiplicities (i_1, ..., i_k): member t splits t blocks off the chain;
// entry t of the result turns member t+1 into member t.
inline std::vector<Certificate> z_family_chain(const std::vector<int>& multiplicities, int n) {
  const int step = smooth_step(n);
  if (step == 0) throw std::invalid_argument("chain families need an even fiber sphere dimension");
  const int k = static_cast<int>(multiplicities.size());
  if (k < 1) throw std::invalid_argument("chain families need at least one multiplicity");
  for (int i : multiplicities)
    if (i < 1) throw std::invalid_argument("chain families need every multiplicity >= 1");
  std::vector<int> suffix(k + 1, 0);  // suffix[t] = R_t, 1-based
  suffix[k] = multiplicities[k - 1];
  for (int t = k - 1; t >= 1; --t) suffix[t] = step * multiplicities[t - 1] + suffix[t + 1];
  std::vector<Certificate> out;
  for (int t = 1; t + 1 <= k; ++t) {
    std::vector<int> params;
    for (int j = 1; j <= t; ++j) params.push_back(step * multiplicities[j - 1]);
    params.push_back(suffix[t + 1]);
    out.push_back(detail::z_merge_last(params, n));
  }
  return out;
}

// The member of the family above with t blocks split off.
inline AbstractLF z_family_member(const std::vector<int>& multiplicities, int t, int n) {
  const int step = smooth_step(n);
  if (step == 0) throw std::invalid_argument("chain families need an even fiber sphere dimension");
  const int k = static_cast<int>(multiplicities.size());
  if (t < 1 || t > k) throw std::invalid_argument("chain family member out of range");
  std::vector<int> suffix(k + 1, 0);
  suffix[k] = multiplicities[k - 1];
  for (int s = k - 1; s >= 1; --s) suffix[s] = step * multiplicities[s - 1] + suffix[s + 1];
  std::vector<int> params;
  for (int j = 1; j < t; ++j) params.push_back(step * multiplicities[j - 1]);
  params.push_back(suffix[t]);
  return build_Z(params, n);
}

namespace detail {

inline Certificate p_slide(int m, int j, int delta, int n, std::string provenance) {
  const int step = smooth_step(n);
  if (step == 0) throw std::invalid_argument("leaf slides need an even fiber sphere dimension");
  if (delta != step && delta != -step)
    throw std::invalid_argument("leaf slides move by exactly the smooth step");
  if (j < 1 || j > m) throw std::invalid_argument("leaf slide needs 1 <= j <= m");
  const int target = j + delta;
  if (target < 1 || target > m + 1) throw std::invalid_argument("leaf slide target out of range");
  std::vector<Move> steps;
  if (delta > 0) {
    for (int i = 0; i < step; ++i) steps.push_back(Move::hurwitz_move(j + 1 + i, HurwitzDir::right));
    steps.push_back(Move::smooth_replace_move(j + step + 1, 1, step));
  } else {
    for (int i = 0; i < step; ++i) steps.push_back(Move::hurwitz_move(j - i, HurwitzDir::left));
    steps.push_back(Move::smooth_replace_move(j - step + 1, 1, -step));
  }
  AbstractLF end = target <= m ? build_P_Tmj(m, target, n) : build_Q(m + 1, n);
  return Certificate{Mode::smooth, build_P_Tmj(m, j, n), std::move(steps), std::move(end),
                     std::move(provenance)};
}

}  // namespace detail

// Slide the lone leaf block of the path presentation by one smooth step.
inline Certificate p_leaf_shift(int m, int j, int delta, int n) {
  if (j + delta > m) throw std::invalid_argument("leaf shift target must stay inside the path");
  return detail::p_slide(m, j, delta, n,
                         "builtin: sliding the leaf block along the path presentation");
}

// Slide the leaf block off the end of the path: the presentation collapses
// to the end-sum form Q_{m+1}.
inline Certificate p_to_q(int m, int n) {
  const int step = smooth_step(n);
  if (step == 0) throw std::invalid_argument("leaf slides need an even fiber sphere dimension");
  if (m + 1 - step < 1) throw std::invalid_argument("p_to_q needs m + 1 > smooth step");
  return detail::p_slide(m, m + 1 - step, step, n,
                         "builtin: collapsing the leaf presentation to the end-sum presentation");
}

// A family of pairwise smoothly equivalent plumbings: members in chain
// order with certificates linking each consecutive pair.
struct FamilyChain {
  std::string name;
  int n = 2;
  std::vector<std::string> member_names;
  std::vector<AbstractLF> members;
  std::vector<Certificate> links;
};

namespace detail {

inline builtin::FamilyChain make_p_chain(std::string name, int n, int m, std::vector<int> js,
                                         bool ends_with_q, std::vector<std::string> member_names) {
  builtin::FamilyChain chain;
  chain.name = std::move(name);
  chain.n = n;
  chain.member_names = std::move(member_names);
  for (int j : js) chain.members.push_back(build_P_Tmj(m, j, n));
  for (int i = 0; i + 1 < static_cast<int>(js.size()); ++i)
    chain.links.push_back(builtin::p_leaf_shift(m, js[i], js[i + 1] - js[i], n));
  if (ends_with_q) {
    chain.members.push_back(build_Q(m + 1, n));
    chain.links.push_back(builtin::p_to_q(m, n));
  }
  return chain;
}

}  // namespace detail

// The smoothly equivalent Dynkin-plumbing groups reachable by leaf slides:
// the step is 2 over a 4-dimensional total space parameter (n = 2) and 4
// over even n >= 4.  j and m + 1 - j present the same T-shape, so a member
// may appear under its reflected leaf position.
inline std::vector<FamilyChain> dynkin_family_chains(int n, int k_max = 2) {
  std::vector<FamilyChain> out;
  if (n == 2) {
    out.push_back(detail::make_p_chain("A6/E6", n, 5, {1, 3}, false, {"A6", "E6"}));
    out.push_back(
        detail::make_p_chain("A7/E7/D7/Q7", n, 6, {1, 3, 5}, true, {"A7", "E7", "D7", "Q7"}));
    out.push_back(detail::make_p_chain("A8/E8", n, 7, {1, 3}, false, {"A8", "E8"}));
    for (int k = 2; k <= k_max; ++k) {
      std::vector<int> js;
      for (int j = 1; j <= 2 * k - 1; j += 2) js.push_back(j);
      std::vector<std::string> names;
      for (int j : js) {
        if (j == 1)
          names.push_back("A" + std::to_string(2 * k + 1));
        else if (j == 2 * k - 1)
          names.push_back("D" + std::to_string(2 * k + 1));
        else
          names.push_back("P(T_" + std::to_string(2 * k) + "^" + std::to_string(j) + ")");
      }
      names.push_back("Q" + std::to_string(2 * k + 1));
      out.push_back(detail::make_p_chain(
          "A" + std::to_string(2 * k + 1) + "/D" + std::to_string(2 * k + 1) + "/Q" +
              std::to_string(2 * k + 1),
          n, 2 * k, js, true, names));
    }
    return out;
  }
  if (n % 2 == 0) {
    out.push_back(detail::make_p_chain("E7/Q7", n, 6, {3}, true, {"E7", "Q7"}));
    out.push_back(detail::make_p_chain("A8/E8", n, 7, {1, 5}, false, {"A8", "E8"}));
    for (int k = 1; k <= k_max; ++k) {
      std::vector<int> js;
      std::vector<std::string> names;
      for (int j = 1; j <= 4 * k - 3; j += 4) js.push_back(j);
      names.push_back("A" + std::to_string(4 * k + 1));
      for (int i = 1; i < static_cast<int>(js.size()); ++i)
        names.push_back("P(T_" + std::to_string(4 * k) + "^" + std::to_string(js[i]) + ")");
      names.push_back("Q" + std::to_string(4 * k + 1));
      out.push_back(detail::make_p_chain(
          "A" + std::to_string(4 * k + 1) + "/Q" + std::to_string(4 * k + 1), n, 4 * k, js, true,
          names));

      js.clear();
      names.clear();
      for (int j = 2; j <= 4 * k - 2; j += 4) js.push_back(j);
      names.push_back("D" + std::to_string(4 * k + 2));
      for (int i = 1; i < static_cast<int>(js.size()); ++i)
        names.push_back("P(T_" + std::to_string(4 * k + 1) + "^" + std::to_string(js[i]) + ")");
      names.push_back("Q" + std::to_string(4 * k + 2));
      out.push_back(detail::make_p_chain(
          "D" + std::to_string(4 * k + 2) + "/Q" + std::to_string(4 * k + 2), n, 4 * k + 1, js,
          true, names));

      js.clear();
      names.clear();
      for (int j = 1; j <= 4 * k + 1; j += 4) js.push_back(j);
      names.push_back("A" + std::to_string(4 * k + 3));
      for (int i = 1; i + 1 < static_cast<int>(js.size()); ++i)
        names.push_back("P(T_" + std::to_string(4 * k + 2) + "^" + std::to_string(js[i]) + ")");
      names.push_back("D" + std::to_string(4 * k + 3));
      out.push_back(detail::make_p_chain(
          "A" + std::to_string(4 * k + 3) + "/D" + std::to_string(4 * k + 3), n, 4 * k + 2, js,
          false, names));
    }
    return out;
  }
  throw std::invalid_argument("smooth family chains need an even fiber sphere dimension");
}

struct NamedCertificate {
  std::string name;
  Certificate certificate;
};

// Desk-sized instances of every builtin generator at the given fiber
// dimension; smooth entries appear only when n is even.
inline std::vector<NamedCertificate> builtin_certificates(int n) {
  std::vector<NamedCertificate> out;
  for (int k = 1; k <= 3; ++k)
    out.push_back({"X" + std::to_string(k) + " to A-Milnor(" + std::to_string(2 * k + 1) + ")",
                   x_to_a_milnor(k, n)});
  if (n % 2 != 0) return out;
  const int step = smooth_step(n);
  for (int k = 1; k <= 3; ++k)
    if ((2 * k) % step == 0)
      out.push_back({"X" + std::to_string(k) + " to Y" + std::to_string(k), x_to_y(k, n)});
  int index = 1;
  for (const Certificate& c : z_family_chain({1, 2}, n))
    out.push_back({"Z chain (1,2) link " + std::to_string(index++), c});
  index = 1;
  for (const Certificate& c : z_family_chain({2, 1, 1}, n))
    out.push_back({"Z chain (2,1,1) link " + std::to_string(index++), c});
  out.push_back({"leaf shift T_6^1 up", p_leaf_shift(6, 1, step, n)});
  out.push_back({"leaf shift T_6^" + std::to_string(1 + step) + " down",
                 p_leaf_shift(6, 1 + step, -step, n)});
  out.push_back({"leaf collapse to Q7", p_to_q(6, n)});
  return out;
}

}  // namespace builtin

}  // namespace lefx
