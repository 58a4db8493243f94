#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lefx/arcs.hpp"
#include "lefx/lattice.hpp"

// Abstract Lefschetz fibrations: a plumbing-tree fiber together with a
// cyclically ordered list of vanishing cycles, each written as a twist word
// applied to a vertex sphere.  Moves rewrite the list without changing the
// total space (cyclic shift, Hurwitz, stabilize/destabilize) or without
// changing its smooth type (smooth replacement).

namespace lefx {

struct IllegalMove : std::runtime_error {
  explicit IllegalMove(const std::string& reason) : std::runtime_error(reason) {}
};

enum class Mode { weinstein, smooth };

inline const char* mode_name(Mode m) { return m == Mode::weinstein ? "weinstein" : "smooth"; }

// Smallest exponent a smooth replacement can shed.  Framings of the attaching
// sphere are classified mod 2 over a 4-dimensional fiber and mod 4 over even
// fibers of dimension >= 8; odd fibers admit no replacement at all (0 here).
inline int smooth_step(int n) {
  if (n % 2 != 0) return 0;
  return n == 2 ? 2 : 4;
}

inline TwistWord reduce_twist_word(const TwistWord& w) {
  TwistWord out;
  for (const auto& letter : w) {
    if (!out.empty() && out.back().first == letter.first && out.back().second == -letter.second)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

inline TwistWord invert_twist_word(const TwistWord& w) {
  TwistWord out(w.rbegin(), w.rend());
  for (auto& letter : out) letter.second = -letter.second;
  return out;
}

// A vanishing cycle: twist word (outermost letter first) applied to the base
// vertex sphere.  The constructor free-reduces the word, caches the homology
// class, and on path fibers caches the matching arc; a cycle whose arc is a
// standard vertex arc is stored as the bare vertex sphere.
class Cycle {
 public:
  Cycle(const PlumbingTree& fiber, int base, TwistWord word)
      : base_(base), word_(reduce_twist_word(std::move(word))) {
    if (base_ < 1 || base_ > fiber.vertex_count)
      throw std::invalid_argument("cycle base vertex out of range");
    for (const auto& letter : word_) {
      if (letter.first < 1 || letter.first > fiber.vertex_count)
        throw std::invalid_argument("cycle word vertex out of range");
      if (letter.second != 1 && letter.second != -1)
        throw std::invalid_argument("cycle word letters must have sign +/-1");
    }
    if (fiber.is_path()) {
      const auto order = fiber.path_order();
      std::vector<int> position(fiber.vertex_count + 1, 0);
      for (int s = 0; s < fiber.vertex_count; ++s) position[order[s]] = s + 1;
      BraidWord braid;
      braid.reserve(word_.size());
      for (const auto& letter : word_) braid.push_back({position[letter.first], letter.second});
      arc_ = Arc::standard(fiber.vertex_count + 1, position[base_]).apply_word(braid);
      for (int v = 1; v <= fiber.vertex_count; ++v) {
        if (*arc_ == Arc::standard(fiber.vertex_count + 1, position[v])) {
          base_ = v;
          word_.clear();
          break;
        }
      }
      code_ = arc_->code();
    } else {
      std::ostringstream os;
      os << 'v' << base_;
      for (const auto& letter : word_) os << (letter.second > 0 ? ".t" : ".u") << letter.first;
      code_ = os.str();
    }
    const IntersectionForm form = intersection_form(fiber);
    class_ = apply_twist_word(form, word_, vertex_class(form, base_));
  }

  int base() const { return base_; }
  const TwistWord& word() const { return word_; }
  const HomClass& hom_class() const { return class_; }
  const std::string& canonical_code() const { return code_; }
  const std::optional<Arc>& arc() const { return arc_; }

  // Normal-form equality: arc isotopy on path fibers, reduced word otherwise.
  bool equivalent(const Cycle& o) const { return code_ == o.code_; }
  // Syntactic equality of the stored representation.
  bool operator==(const Cycle& o) const { return base_ == o.base_ && word_ == o.word_; }

 private:
  int base_;
  TwistWord word_;
  HomClass class_;
  std::string code_;
  std::optional<Arc> arc_;
};

struct CycleSpec {
  int base = 1;
  TwistWord word;
};

class AbstractLF {
 public:
  AbstractLF(PlumbingTree fiber, const std::vector<CycleSpec>& specs) : fiber_(std::move(fiber)) {
    if (specs.empty()) throw std::invalid_argument("fibration needs at least one vanishing cycle");
    cycles_.reserve(specs.size());
    for (const auto& spec : specs) cycles_.emplace_back(fiber_, spec.base, spec.word);
    make_key();
  }

  AbstractLF(PlumbingTree fiber, std::vector<Cycle> cycles)
      : fiber_(std::move(fiber)), cycles_(std::move(cycles)) {
    if (cycles_.empty()) throw std::invalid_argument("fibration needs at least one vanishing cycle");
    make_key();
  }

  const PlumbingTree& fiber() const { return fiber_; }
  int n() const { return fiber_.sphere_dim; }
  int cycle_count() const { return static_cast<int>(cycles_.size()); }
  const std::vector<Cycle>& cycles() const { return cycles_; }

  const Cycle& cycle(int position) const {
    if (position < 1 || position > cycle_count())
      throw std::invalid_argument("cycle position out of range");
    return cycles_[position - 1];
  }

  // Equal for fibrations differing by a cyclic shift or by rewriting cycles
  // within their normal-form class; vertex labels are compared verbatim.
  const std::string& canonical_key() const { return key_; }

  bool operator==(const AbstractLF& o) const {
    return fiber_ == o.fiber_ && cycles_ == o.cycles_;
  }

 private:
  void make_key() {
    const int m = cycle_count();
    std::vector<std::string> codes(m);
    for (int i = 0; i < m; ++i) codes[i] = cycles_[i].canonical_code();
    std::string best;
    for (int r = 0; r < m; ++r) {
      std::string joined;
      for (int i = 0; i < m; ++i) {
        joined += codes[(r + i) % m];
        joined += '|';
      }
      if (r == 0 || joined < best) best = std::move(joined);
    }
    std::ostringstream os;
    os << best << "#n" << fiber_.sphere_dim << ";v" << fiber_.vertex_count;
    for (const auto& e : fiber_.edges) os << ';' << e.first << '-' << e.second;
    key_ = os.str();
  }

  PlumbingTree fiber_;
  std::vector<Cycle> cycles_;
  std::string key_;
};

inline HomClass cycle_class(const AbstractLF& f, int position) {
  return f.cycle(position).hom_class();
}

enum class MoveKind { cyclic_shift, hurwitz, stabilize, destabilize, smooth_replace, rewrite_cycle };
enum class ShiftDir { forward, backward };
enum class HurwitzDir { left, right };

struct Move {
  MoveKind kind = MoveKind::cyclic_shift;
  ShiftDir shift = ShiftDir::forward;
  HurwitzDir direction = HurwitzDir::left;
  int position = 0;
  int vertex = 0;
  int exponent = 0;
  int rewrite_base = 0;
  TwistWord rewrite_word;

  bool operator==(const Move&) const = default;

  static Move cyclic_shift_move(ShiftDir d) {
    Move m;
    m.kind = MoveKind::cyclic_shift;
    m.shift = d;
    return m;
  }
  static Move hurwitz_move(int position, HurwitzDir d) {
    Move m;
    m.kind = MoveKind::hurwitz;
    m.position = position;
    m.direction = d;
    return m;
  }
  static Move stabilize_move(int attach_vertex) {
    Move m;
    m.kind = MoveKind::stabilize;
    m.vertex = attach_vertex;
    return m;
  }
  static Move destabilize_move(int position) {
    Move m;
    m.kind = MoveKind::destabilize;
    m.position = position;
    return m;
  }
  static Move smooth_replace_move(int position, int vertex, int exponent) {
    Move m;
    m.kind = MoveKind::smooth_replace;
    m.position = position;
    m.vertex = vertex;
    m.exponent = exponent;
    return m;
  }
  static Move rewrite_move(int position, int base, TwistWord word) {
    Move m;
    m.kind = MoveKind::rewrite_cycle;
    m.position = position;
    m.rewrite_base = base;
    m.rewrite_word = std::move(word);
    return m;
  }

  std::string describe() const {
    std::ostringstream os;
    switch (kind) {
      case MoveKind::cyclic_shift:
        os << "shift " << (shift == ShiftDir::forward ? "forward" : "backward");
        break;
      case MoveKind::hurwitz:
        os << "hurwitz " << (direction == HurwitzDir::left ? "left" : "right") << " at "
           << position;
        break;
      case MoveKind::stabilize:
        os << "stabilize at vertex " << vertex;
        break;
      case MoveKind::destabilize:
        os << "destabilize at " << position;
        break;
      case MoveKind::smooth_replace:
        os << "smooth replace at " << position << " shedding twist " << exponent << " about vertex "
           << vertex;
        break;
      case MoveKind::rewrite_cycle:
        os << "rewrite cycle at " << position;
        break;
    }
    return os.str();
  }
};

namespace detail {

inline void check_position(const AbstractLF& f, int position) {
  if (position < 1 || position > f.cycle_count()) throw IllegalMove("position out of range");
}

// Word of tau_c(x) or its inverse applied to x: conjugate the base twist of c
// by c's own word.
inline TwistWord twist_conjugate(const Cycle& c, int sign, const Cycle& x) {
  TwistWord out = c.word();
  out.emplace_back(c.base(), sign);
  const TwistWord inv = invert_twist_word(c.word());
  out.insert(out.end(), inv.begin(), inv.end());
  out.insert(out.end(), x.word().begin(), x.word().end());
  return out;
}

inline bool destabilize_allowed(const AbstractLF& f, int position, std::string* why) {
  auto fail = [&](const char* reason) {
    if (why) *why = reason;
    return false;
  };
  if (position < 1 || position > f.cycle_count()) return fail("position out of range");
  if (f.cycle_count() < 2) return fail("destabilizing would leave no vanishing cycles");
  const Cycle& c = f.cycle(position);
  if (!c.word().empty()) return fail("cycle at the position is not a bare vertex sphere");
  const int v = c.base();
  if (f.fiber().vertex_count < 2) return fail("removing the only vertex leaves no fiber");
  if (f.fiber().degree(v) != 1) return fail("cycle vertex is not a leaf of the fiber tree");
  for (int i = 1; i <= f.cycle_count(); ++i) {
    if (i == position) continue;
    const Cycle& other = f.cycle(i);
    if (other.base() == v) return fail("vertex still used as another cycle's base");
    for (const auto& letter : other.word())
      if (letter.first == v) return fail("vertex still used in another cycle's word");
  }
  return true;
}

inline bool smooth_replace_allowed(const AbstractLF& f, const Move& m, Mode mode,
                                   std::string* why, std::optional<Cycle>* replacement) {
  auto fail = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  if (mode != Mode::smooth) return fail("smooth replacement is not a weinstein move");
  const int step = smooth_step(f.n());
  if (step == 0) return fail("smooth replacement parity: no exponent is trivial over an odd-dimensional sphere fiber");
  if (m.exponent == 0 || m.exponent % step != 0)
    return fail(std::string("smooth replacement parity: exponent must be a nonzero multiple of ") +
                std::to_string(step));
  if (m.position < 1 || m.position > f.cycle_count()) return fail("position out of range");
  if (m.vertex < 1 || m.vertex > f.fiber().vertex_count) return fail("twist vertex out of range");
  if (!f.fiber().is_path())
    return fail("smooth replacement legality is only decidable over a path fiber");
  TwistWord word;
  word.reserve(std::abs(m.exponent) + f.cycle(m.position).word().size());
  const int sign = m.exponent > 0 ? -1 : 1;
  for (int i = 0; i < std::abs(m.exponent); ++i) word.emplace_back(m.vertex, sign);
  const TwistWord& old = f.cycle(m.position).word();
  word.insert(word.end(), old.begin(), old.end());
  Cycle candidate(f.fiber(), f.cycle(m.position).base(), std::move(word));
  const Cycle vertex_sphere(f.fiber(), m.vertex, {});
  if (sphere_intersection(*candidate.arc(), *vertex_sphere.arc()) != 1)
    return fail("replacement does not meet the twisting vertex sphere exactly once");
  if (replacement) *replacement = std::move(candidate);
  return true;
}

inline bool rewrite_allowed(const AbstractLF& f, const Move& m, std::string* why,
                            std::optional<Cycle>* replacement) {
  auto fail = [&](const char* reason) {
    if (why) *why = reason;
    return false;
  };
  if (m.position < 1 || m.position > f.cycle_count()) return fail("position out of range");
  Cycle candidate(f.fiber(), m.rewrite_base, m.rewrite_word);
  const Cycle& old = f.cycle(m.position);
  if (f.fiber().is_path()) {
    if (!(*candidate.arc() == *old.arc())) return fail("rewrite target is not isotopic to the cycle");
  } else {
    if (!(candidate == old)) return fail("rewrite over a non-path fiber must preserve the reduced word");
  }
  if (replacement) *replacement = std::move(candidate);
  return true;
}

}  // namespace detail

inline AbstractLF apply_move(const AbstractLF& f, const Move& m, Mode mode) {
  const int count = f.cycle_count();
  switch (m.kind) {
    case MoveKind::cyclic_shift: {
      std::vector<Cycle> cycles;
      cycles.reserve(count);
      const int start = m.shift == ShiftDir::forward ? 1 : count - 1;
      for (int i = 0; i < count; ++i) cycles.push_back(f.cycle((start + i) % count + 1));
      return AbstractLF(f.fiber(), std::move(cycles));
    }
    case MoveKind::hurwitz: {
      detail::check_position(f, m.position);
      const int i = m.position;
      const int j = i % count + 1;
      std::vector<Cycle> cycles = f.cycles();
      const Cycle& a = f.cycle(i);
      const Cycle& b = f.cycle(j);
      if (m.direction == HurwitzDir::right) {
        Cycle twisted(f.fiber(), a.base(), detail::twist_conjugate(b, 1, a));
        cycles[i - 1] = b;
        cycles[j - 1] = std::move(twisted);
      } else {
        Cycle twisted(f.fiber(), b.base(), detail::twist_conjugate(a, -1, b));
        cycles[j - 1] = a;
        cycles[i - 1] = std::move(twisted);
      }
      return AbstractLF(f.fiber(), std::move(cycles));
    }
    case MoveKind::stabilize: {
      const int v = f.fiber().vertex_count;
      if (m.vertex < 1 || m.vertex > v) throw IllegalMove("attachment vertex out of range");
      auto edges = f.fiber().edges;
      edges.emplace_back(m.vertex, v + 1);
      PlumbingTree tree(v + 1, std::move(edges), f.n());
      std::vector<CycleSpec> specs;
      specs.reserve(count + 1);
      specs.push_back({v + 1, {}});
      for (const Cycle& c : f.cycles()) specs.push_back({c.base(), c.word()});
      return AbstractLF(std::move(tree), specs);
    }
    case MoveKind::destabilize: {
      std::string why;
      if (!detail::destabilize_allowed(f, m.position, &why)) throw IllegalMove(why);
      const int v = f.cycle(m.position).base();
      std::vector<std::pair<int, int>> edges;
      for (const auto& e : f.fiber().edges) {
        if (e.first == v || e.second == v) continue;
        edges.emplace_back(e.first - (e.first > v ? 1 : 0), e.second - (e.second > v ? 1 : 0));
      }
      PlumbingTree tree(f.fiber().vertex_count - 1, std::move(edges), f.n());
      std::vector<CycleSpec> specs;
      specs.reserve(count - 1);
      for (int i = 1; i <= count; ++i) {
        if (i == m.position) continue;
        const Cycle& c = f.cycle(i);
        TwistWord word = c.word();
        for (auto& letter : word) letter.first -= letter.first > v ? 1 : 0;
        specs.push_back({c.base() - (c.base() > v ? 1 : 0), std::move(word)});
      }
      return AbstractLF(std::move(tree), specs);
    }
    case MoveKind::smooth_replace: {
      std::string why;
      std::optional<Cycle> replacement;
      if (!detail::smooth_replace_allowed(f, m, mode, &why, &replacement)) throw IllegalMove(why);
      std::vector<Cycle> cycles = f.cycles();
      cycles[m.position - 1] = std::move(*replacement);
      return AbstractLF(f.fiber(), std::move(cycles));
    }
    case MoveKind::rewrite_cycle: {
      std::string why;
      std::optional<Cycle> replacement;
      if (!detail::rewrite_allowed(f, m, &why, &replacement)) throw IllegalMove(why);
      std::vector<Cycle> cycles = f.cycles();
      cycles[m.position - 1] = std::move(*replacement);
      return AbstractLF(f.fiber(), std::move(cycles));
    }
  }
  throw IllegalMove("unknown move kind");
}

// Exactly the moves apply_move accepts, in a fixed enumeration order: shifts,
// Hurwitz by position, destabilizations, stabilizations by attachment vertex,
// smooth replacements by position (minimal exponents only; larger multiples
// are compositions of these).
inline std::vector<Move> legal_moves(const AbstractLF& f, Mode mode) {
  std::vector<Move> out;
  out.push_back(Move::cyclic_shift_move(ShiftDir::forward));
  out.push_back(Move::cyclic_shift_move(ShiftDir::backward));
  for (int i = 1; i <= f.cycle_count(); ++i) {
    out.push_back(Move::hurwitz_move(i, HurwitzDir::left));
    out.push_back(Move::hurwitz_move(i, HurwitzDir::right));
  }
  for (int i = 1; i <= f.cycle_count(); ++i)
    if (detail::destabilize_allowed(f, i, nullptr)) out.push_back(Move::destabilize_move(i));
  for (int v = 1; v <= f.fiber().vertex_count; ++v) out.push_back(Move::stabilize_move(v));
  const int step = smooth_step(f.n());
  if (mode == Mode::smooth && step != 0 && f.fiber().is_path()) {
    for (int i = 1; i <= f.cycle_count(); ++i)
      for (int v = 1; v <= f.fiber().vertex_count; ++v)
        for (const int e : {step, -step}) {
          Move m = Move::smooth_replace_move(i, v, e);
          if (detail::smooth_replace_allowed(f, m, mode, nullptr, nullptr)) out.push_back(m);
        }
  }
  return out;
}

struct SearchBudget {
  int max_depth = 8;
  int max_states = 20000;
  int allow_stabilize_up_to = 1;  // extra fiber vertices a search may add
};

struct AbelianGroup {
  int rank = 0;
  std::vector<Int> torsion;
  bool operator==(const AbelianGroup&) const = default;
  bool trivial() const { return rank == 0 && torsion.empty(); }
};

// Reduced data of the total space: H_0 = Z, nothing between degrees 1 and
// n-1, H_n = coker of the class matrix, H_{n+1} = its kernel (free).
struct TotalHomology {
  int n = 2;
  AbelianGroup middle;
  AbelianGroup top;
  bool operator==(const TotalHomology&) const = default;

  AbelianGroup at(int degree) const {
    if (degree == 0) return {1, {}};
    if (degree == n) return middle;
    if (degree == n + 1) return top;
    return {};
  }
  std::vector<std::pair<int, AbelianGroup>> groups() const {
    std::vector<std::pair<int, AbelianGroup>> out;
    for (int d = 0; d <= n + 1; ++d) out.emplace_back(d, at(d));
    return out;
  }
};

inline TotalHomology total_space_homology(const AbstractLF& f) {
  const int v = f.fiber().vertex_count;
  const int m = f.cycle_count();
  std::vector<std::vector<Int>> matrix(v, std::vector<Int>(m, 0));
  for (int i = 1; i <= m; ++i) {
    const HomClass& c = f.cycle(i).hom_class();
    for (int r = 0; r < v; ++r) matrix[r][i - 1] = c[r];
  }
  const SmithResult smith = smith_normal_form(matrix);
  TotalHomology h;
  h.n = f.n();
  h.top.rank = m - smith.rank;
  h.middle.rank = v - smith.rank;
  for (const Int& d : smith.factors)
    if (d > 1) h.middle.torsion.push_back(d);
  return h;
}

inline long long euler_characteristic(const AbstractLF& f) {
  const long long fiber_chi = 1 + (f.n() % 2 == 0 ? 1LL : -1LL) * f.fiber().vertex_count;
  return fiber_chi + (f.n() % 2 == 0 ? -1LL : 1LL) * f.cycle_count();
}

}  // namespace lefx
