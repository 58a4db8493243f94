#pragma once

// Exact engine for embedded arcs joining marked points of a disk, with the
// signed half-twist action of the braid group.  An arc between marked
// points is stored by its crossing sequence against the downward rays cut
// from the marked points; that sequence, freely reduced and with powers of
// the endpoint letters stripped from either end, is a complete isotopy
// invariant, so arc equality is plain value equality.

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lefx {

// Half twist swapping marked points index, index+1; sign +1 turns
// counterclockwise.
struct BraidLetter {
  int index = 1;
  int sign = 1;

  bool operator==(const BraidLetter&) const = default;
};

// Outermost twist first: applying [u, v] to an arc computes u(v(arc)).
using BraidWord = std::vector<BraidLetter>;

namespace detail {

// Cancel adjacent inverse letters (letters are nonzero ints, inverse = negation).
inline void free_reduce(std::vector<int>& word) {
  std::vector<int> out;
  out.reserve(word.size());
  for (int letter : word) {
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  word = std::move(out);
}

}  // namespace detail

class Arc {
 public:
  Arc(int p, int from, int to, std::vector<int> word)
      : p_(p), from_(from), to_(to), word_(std::move(word)) {
    if (p_ < 2) throw std::invalid_argument("disk needs at least two marked points");
    if (from_ < 1 || from_ > p_ || to_ < 1 || to_ > p_ || from_ == to_)
      throw std::invalid_argument("arc endpoints must be distinct marked points");
    for (int letter : word_)
      if (letter == 0 || letter < -p_ || letter > p_)
        throw std::invalid_argument("crossing letter out of range");
    canonicalize();
  }

  // Straight arc between neighbors s, s+1.
  static Arc standard(int p, int s) {
    if (s < 1 || s + 1 > p) throw std::invalid_argument("standard arc index out of range");
    return Arc(p, s, s + 1, {});
  }

  int points() const { return p_; }
  int from() const { return from_; }
  int to() const { return to_; }
  const std::vector<int>& word() const { return word_; }

  bool operator==(const Arc&) const = default;

  // Image under one half twist.  The crossing word transforms by the letter
  // substitution of the twist on the ray loops, plus a boundary letter when
  // an endpoint sits at a swapped point, then the endpoints swap.
  Arc apply(const BraidLetter& t) const {
    const int k = t.index;
    if (k < 1 || k + 1 > p_) throw std::invalid_argument("twist index out of range");
    if (t.sign != 1 && t.sign != -1) throw std::invalid_argument("twist sign must be +/-1");
    std::vector<int> out;
    out.reserve(word_.size() * 3 + 2);
    auto emit = [&](std::initializer_list<int> letters) {
      for (int x : letters) out.push_back(x);
    };
    if (t.sign > 0) {
      if (from_ == k) out.push_back(-k);
      for (int letter : word_) {
        if (letter == k)
          emit({k, k + 1, -k});
        else if (letter == -k)
          emit({k, -(k + 1), -k});
        else if (letter == k + 1)
          out.push_back(k);
        else if (letter == -(k + 1))
          out.push_back(-k);
        else
          out.push_back(letter);
      }
      if (to_ == k) out.push_back(k);
    } else {
      if (from_ == k + 1) out.push_back(k + 1);
      for (int letter : word_) {
        if (letter == k)
          out.push_back(k + 1);
        else if (letter == -k)
          out.push_back(-(k + 1));
        else if (letter == k + 1)
          emit({-(k + 1), k, k + 1});
        else if (letter == -(k + 1))
          emit({-(k + 1), -k, k + 1});
        else
          out.push_back(letter);
      }
      if (to_ == k + 1) out.push_back(-(k + 1));
    }
    auto swap_pt = [&](int v) { return v == k ? k + 1 : v == k + 1 ? k : v; };
    return Arc(p_, swap_pt(from_), swap_pt(to_), std::move(out));
  }

  Arc apply_word(const BraidWord& w) const {
    Arc out = *this;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out = out.apply(*it);
    return out;
  }

  std::string code() const {
    std::ostringstream os;
    os << from_ << '-' << to_;
    for (int letter : word_) os << (letter > 0 ? ".r" : ".l") << std::abs(letter);
    return os.str();
  }

 private:
  void canonicalize() {
    detail::free_reduce(word_);
    if (from_ > to_) {
      std::swap(from_, to_);
      std::reverse(word_.begin(), word_.end());
      for (int& letter : word_) letter = -letter;
    }
    size_t lead = 0;
    while (lead < word_.size() && std::abs(word_[lead]) == from_) ++lead;
    word_.erase(word_.begin(), word_.begin() + lead);
    while (!word_.empty() && std::abs(word_.back()) == to_) word_.pop_back();
  }

  int p_, from_, to_;
  std::vector<int> word_;
};

namespace detail {

// Boundary blocks of the disk cut along all rays, counterclockwise: for
// marked point j the left ray bank, the point itself, then the right bank.
inline int bank_block(int v, bool right) { return 3 * (v - 1) + (right ? 2 : 0); }
inline int tip_block(int v) { return 3 * (v - 1) + 1; }

// Port sequence of a taut arc through the cut disk.  Even/odd consecutive
// pairs are the segments; the pair (2c+1, 2c+2) is the two-sided picture of
// crossing number c.
inline std::vector<int> arc_route(const Arc& a) {
  std::vector<int> route;
  route.reserve(a.word().size() * 2 + 2);
  route.push_back(tip_block(a.from()));
  for (int letter : a.word()) {
    const int v = std::abs(letter);
    if (letter > 0) {
      route.push_back(bank_block(v, false));
      route.push_back(bank_block(v, true));
    } else {
      route.push_back(bank_block(v, true));
      route.push_back(bank_block(v, false));
    }
  }
  route.push_back(tip_block(a.to()));
  return route;
}

// Tracks a pair of strands, one per arc, running side by side.  walk()
// follows both from a shared port until their ports part and reports which
// one peels off counterclockwise nearer.
struct StrandWalker {
  const std::vector<int>* routes[2];
  int blocks = 0;

  int block(int arc, int idx) const { return (*routes[arc])[idx]; }

  bool is_tip(int arc, int idx) const {
    return idx == 0 || idx + 1 == static_cast<int>(routes[arc]->size());
  }

  // +1 if strand a diverges ccw-nearer than b as seen from the shared
  // block, -1 if farther, 0 when both run into the same endpoint.
  int walk(int ia, int ib) const {
    int ref = block(0, ia);
    while (true) {
      ia ^= 1;  // cross the cut region along the segment
      ib ^= 1;
      const int ba = block(0, ia);
      const int bb = block(1, ib);
      if (ba != bb) {
        const int da = (ba - ref + 3 * blocks) % (3 * blocks);
        const int db = (bb - ref + 3 * blocks) % (3 * blocks);
        return da < db ? 1 : -1;
      }
      if (is_tip(0, ia) || is_tip(1, ib)) return 0;  // same block: both tips
      ia = (ia % 2 == 1) ? ia + 1 : ia - 1;  // pass through the ray
      ib = (ib % 2 == 1) ? ib + 1 : ib - 1;
      ref = block(0, ia);
    }
  }
};

}  // namespace detail

// Geometric count of intersection points of the two spheres attached to
// taut arcs: shared endpoints plus essential interior crossings.  Equal
// arcs count 2, one point for each shared endpoint.
//
// Interior crossings come from two disjoint sources.  Segments of the two
// arcs that pass through no common ray are rigid chords of the cut disk,
// and cross exactly when their port blocks interleave around its boundary.
// Where the arcs do share a ray they run in parallel corridors; a maximal
// corridor forces exactly one crossing when the strands peel off to
// clashing sides at its two ends, and none otherwise.  Which segment of a
// corridor carries its crossing is an isotopy choice, so corridors are
// counted once via their crossing pairs, and chord pairs sharing a block
// are skipped (they are corridor mates).
inline int sphere_intersection(const Arc& a, const Arc& b) {
  if (a.points() != b.points())
    throw std::invalid_argument("arcs live on different disks");
  if (a == b) return 2;
  int shared = 0;
  if (a.from() == b.from() || a.from() == b.to()) ++shared;
  if (a.to() == b.from() || a.to() == b.to()) ++shared;

  const auto route_a = detail::arc_route(a);
  const auto route_b = detail::arc_route(b);
  const detail::StrandWalker walker{{&route_a, &route_b}, a.points()};
  const int m = 3 * a.points();

  int crossings = 0;
  for (size_t i = 0; i + 1 < route_a.size(); i += 2)
    for (size_t j = 0; j + 1 < route_b.size(); j += 2) {
      const int a1 = route_a[i], a2 = route_a[i + 1];
      const int b1 = route_b[j], b2 = route_b[j + 1];
      if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2) continue;
      const int span = (a2 - a1 + m) % m;
      const bool in1 = (b1 - a1 + m) % m < span;
      const bool in2 = (b2 - a1 + m) % m < span;
      if (in1 != in2) ++crossings;
    }

  // Crossing pairs: for each pair of ray crossings on a common ray, the two
  // side walks agree exactly when the strands swap sides across the
  // corridor.  Count each corridor component once.
  const auto& wa = a.word();
  const auto& wb = b.word();
  std::vector<std::vector<char>> visited(wa.size(), std::vector<char>(wb.size(), 0));
  const auto side_token = [](const std::vector<int>& w, int c, bool right) {
    return 2 * c + ((w[c] > 0) == right ? 2 : 1);
  };
  for (size_t ca = 0; ca < wa.size(); ++ca)
    for (size_t cb = 0; cb < wb.size(); ++cb) {
      if (std::abs(wa[ca]) != std::abs(wb[cb]) || visited[ca][cb]) continue;
      const int right = walker.walk(side_token(wa, (int)ca, true), side_token(wb, (int)cb, true));
      const int left = walker.walk(side_token(wa, (int)ca, false), side_token(wb, (int)cb, false));
      if (right == 0 || right != left) continue;
      ++crossings;
      std::vector<std::pair<int, int>> queue{{(int)ca, (int)cb}};
      visited[ca][cb] = 1;
      while (!queue.empty()) {
        const auto [xa, xb] = queue.back();
        queue.pop_back();
        for (const bool side : {false, true}) {
          const int pa = side_token(wa, xa, side) ^ 1;
          const int pb = side_token(wb, xb, side) ^ 1;
          if (walker.is_tip(0, pa) || walker.is_tip(1, pb)) continue;
          if (route_a[pa] != route_b[pb]) continue;
          const int na = (pa - 1) / 2, nb = (pb - 1) / 2;
          if (!visited[na][nb]) {
            visited[na][nb] = 1;
            queue.push_back({na, nb});
          }
        }
      }
    }
  return shared + crossings;
}

}  // namespace lefx
