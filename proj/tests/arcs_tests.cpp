#include <catch2/catch_amalgamated.hpp>

#include <lefx/arcs.hpp>

#include "support/generators.hpp"
#include "support/min_position_oracle.hpp"
#include "support/pl_oracle.hpp"

using lefx::Arc;
using lefx::BraidLetter;
using lefx::BraidWord;
using lefx_test::pl_apply;
using lefx_test::pl_canonical;
using lefx_test::pl_standard;
using lefx_test::PlArc;

namespace {

PlArc pl_twisted(int p, int s, const BraidWord& word) {
  PlArc arc = pl_standard(p, s);
  for (auto it = word.rbegin(); it != word.rend(); ++it) pl_apply(arc, *it);
  return arc;
}

BraidWord random_braid(std::mt19937_64& rng, int p, int len) {
  BraidWord w;
  for (int i = 0; i < len; ++i)
    w.push_back({lefx_test::rand_int(rng, 1, p - 1), lefx_test::rand_int(rng, 0, 1) ? 1 : -1});
  return w;
}

}  // namespace

TEST_CASE("planar oracle reads untwisted arcs") {
  for (int p = 2; p <= 5; ++p)
    for (int s = 1; s < p; ++s)
      CHECK(pl_canonical(pl_standard(p, s)) == Arc::standard(p, s));
}

TEST_CASE("planar oracle agrees with hand-traced half twists") {
  // the twist fixes its own arc, both directions
  CHECK(pl_canonical(pl_twisted(3, 1, {{1, 1}})) == Arc::standard(3, 1));
  CHECK(pl_canonical(pl_twisted(3, 1, {{1, -1}})) == Arc::standard(3, 1));

  // counterclockwise twist at {1,2} throws the 2-3 arc over the top
  CHECK(pl_canonical(pl_twisted(3, 2, {{1, 1}})) == Arc(3, 1, 3, {}));

  // the full twist wraps it once around point 1
  CHECK(pl_canonical(pl_twisted(3, 2, {{1, 1}, {1, 1}})) == Arc(3, 2, 3, {-1}));

  // clockwise twist dives under point 2 instead
  CHECK(pl_canonical(pl_twisted(3, 2, {{1, -1}})) == Arc(3, 1, 3, {2}));
}

TEST_CASE("arc canonical form") {
  CHECK(Arc(3, 1, 2, {3, -3, 2, 1, -1}).word() == std::vector<int>{});
  CHECK(Arc(3, 3, 1, {2}) == Arc(3, 1, 3, {-2}));          // orientation flip
  CHECK(Arc(3, 2, 3, {2, 2, -1, 3}).word() == std::vector<int>{-1});  // end letters strip
  CHECK(Arc(4, 1, 4, {-1, 2, 4, 4}).word() == std::vector<int>{2});
  CHECK(Arc(2, 1, 2, {1, 1}) == Arc::standard(2, 1));
  CHECK_THROWS_AS(Arc(3, 1, 1, {}), std::invalid_argument);
  CHECK_THROWS_AS(Arc(3, 0, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(Arc(3, 1, 2, {4}), std::invalid_argument);
  CHECK_THROWS_AS(Arc(1, 1, 1, {}), std::invalid_argument);
  CHECK_THROWS_AS(Arc::standard(3, 3), std::invalid_argument);
  CHECK(Arc(3, 1, 3, {-2}).code() == "1-3.l2");
  CHECK(Arc(3, 1, 3, {2}).code() == "1-3.r2");
}

TEST_CASE("half twist engine basics") {
  for (int p = 2; p <= 5; ++p)
    for (int s = 1; s < p; ++s) {
      CHECK(Arc::standard(p, s).apply({s, 1}) == Arc::standard(p, s));
      CHECK(Arc::standard(p, s).apply({s, -1}) == Arc::standard(p, s));
    }

  // inverse half twists undo each other on arbitrary twisted arcs
  auto rng = lefx_test::make_rng(10);
  for (int trial = 0; trial < 120; ++trial) {
    const int p = lefx_test::rand_int(rng, 2, 5);
    Arc arc = Arc::standard(p, lefx_test::rand_int(rng, 1, p - 1))
                  .apply_word(random_braid(rng, p, lefx_test::rand_int(rng, 0, 7)));
    const int k = lefx_test::rand_int(rng, 1, p - 1);
    CHECK(arc.apply({k, 1}).apply({k, -1}) == arc);
    CHECK(arc.apply({k, -1}).apply({k, 1}) == arc);
  }

  // sliding one arc of a neighboring pair across the other
  CHECK(Arc::standard(3, 2).apply_word({{2, -1}, {1, -1}}) == Arc::standard(3, 1));

  CHECK_THROWS_AS(Arc::standard(3, 1).apply({3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Arc::standard(3, 1).apply({1, 2}), std::invalid_argument);
}

TEST_CASE("engine satisfies braid and commutation relations") {
  auto rng = lefx_test::make_rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const int p = lefx_test::rand_int(rng, 3, 6);
    Arc arc = Arc::standard(p, lefx_test::rand_int(rng, 1, p - 1))
                  .apply_word(random_braid(rng, p, lefx_test::rand_int(rng, 0, 6)));
    for (int k = 1; k + 2 <= p - 1; ++k)
      for (int l = k + 2; l <= p - 1; ++l)
        CHECK(arc.apply_word({{k, 1}, {l, 1}}) == arc.apply_word({{l, 1}, {k, 1}}));
    for (int k = 1; k + 1 <= p - 1; ++k)
      CHECK(arc.apply_word({{k, 1}, {k + 1, 1}, {k, 1}}) ==
            arc.apply_word({{k + 1, 1}, {k, 1}, {k + 1, 1}}));
  }
}

TEST_CASE("sphere intersection counts") {
  CHECK(lefx::sphere_intersection(Arc::standard(3, 1), Arc::standard(3, 2)) == 1);
  CHECK(lefx::sphere_intersection(Arc::standard(4, 1), Arc::standard(4, 3)) == 0);
  CHECK(lefx::sphere_intersection(Arc::standard(3, 1), Arc::standard(3, 1)) == 2);

  const Arc over = Arc::standard(3, 2).apply({1, 1});       // 1-3 above point 2
  const Arc wrapped = Arc::standard(3, 2).apply_word({{1, 1}, {1, 1}});
  CHECK(lefx::sphere_intersection(over, Arc::standard(3, 1)) == 1);
  CHECK(lefx::sphere_intersection(over, Arc::standard(3, 2)) == 1);
  CHECK(lefx::sphere_intersection(wrapped, Arc::standard(3, 2)) == 2);
  CHECK(lefx::sphere_intersection(wrapped, Arc::standard(3, 1)) == 1);

  CHECK_THROWS_AS(lefx::sphere_intersection(Arc::standard(3, 1), Arc::standard(4, 1)),
                  std::invalid_argument);
}

TEST_CASE("sphere intersection is symmetric and twist invariant") {
  auto rng = lefx_test::make_rng(12);
  for (int trial = 0; trial < 150; ++trial) {
    const int p = lefx_test::rand_int(rng, 2, 5);
    Arc a = Arc::standard(p, lefx_test::rand_int(rng, 1, p - 1))
                .apply_word(random_braid(rng, p, lefx_test::rand_int(rng, 0, 6)));
    Arc b = Arc::standard(p, lefx_test::rand_int(rng, 1, p - 1))
                .apply_word(random_braid(rng, p, lefx_test::rand_int(rng, 0, 6)));
    const int i = lefx::sphere_intersection(a, b);
    CHECK(lefx::sphere_intersection(b, a) == i);
    const BraidLetter t{lefx_test::rand_int(rng, 1, p - 1),
                        lefx_test::rand_int(rng, 0, 1) ? 1 : -1};
    CHECK(lefx::sphere_intersection(a.apply(t), b.apply(t)) == i);
  }
}

TEST_CASE("sphere intersection matches exhaustive minimal position") {
  // every distinct pair of short arcs on three points
  std::vector<Arc> arcs;
  for (int s = 1; s <= 2; ++s) {
    std::vector<BraidWord> words{{}};
    for (int len = 0; len < 4; ++len) {
      std::vector<BraidWord> next;
      for (const auto& w : words)
        for (int k = 1; k <= 2; ++k)
          for (int sign : {1, -1}) {
            BraidWord w2 = w;
            w2.insert(w2.begin(), {k, sign});
            next.push_back(w2);
          }
      for (const auto& w : next) arcs.push_back(Arc::standard(3, s).apply_word(w));
      words = next;
    }
    arcs.push_back(Arc::standard(3, s));
  }
  std::sort(arcs.begin(), arcs.end(),
            [](const Arc& x, const Arc& y) { return x.code() < y.code(); });
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  long checked = 0;
  for (size_t i = 0; i < arcs.size(); ++i)
    for (size_t j = i; j < arcs.size(); ++j) {
      if (arcs[i].word().size() + arcs[j].word().size() > 7) continue;
      ++checked;
      CAPTURE(arcs[i].code(), arcs[j].code());
      REQUIRE(lefx::sphere_intersection(arcs[i], arcs[j]) ==
              lefx_test::oracle_sphere_intersection(arcs[i], arcs[j]));
    }
  CHECK(checked > 200);

  // random pairs on wider disks
  auto rng = lefx_test::make_rng(13);
  for (int trial = 0; trial < 120; ++trial) {
    const int p = lefx_test::rand_int(rng, 2, 5);
    const Arc a = Arc::standard(p, lefx_test::rand_int(rng, 1, p - 1))
                      .apply_word(random_braid(rng, p, lefx_test::rand_int(rng, 0, 3)));
    const Arc b = Arc::standard(p, lefx_test::rand_int(rng, 1, p - 1))
                      .apply_word(random_braid(rng, p, lefx_test::rand_int(rng, 0, 3)));
    if (a.word().size() > 4 || b.word().size() > 4) continue;
    CAPTURE(a.code(), b.code());
    REQUIRE(lefx::sphere_intersection(a, b) == lefx_test::oracle_sphere_intersection(a, b));
  }
}

namespace {

void sweep_node(const Arc& engine, const PlArc& oracle, int depth_left, int skip_index,
                int skip_sign, long& nodes, long& mismatches) {
  ++nodes;
  if (!(pl_canonical(oracle) == engine)) {
    ++mismatches;
    CAPTURE(engine.code(), pl_canonical(oracle).code());
    REQUIRE(pl_canonical(oracle) == engine);
  }
  if (depth_left == 0) return;
  for (int k = 1; k < engine.points(); ++k)
    for (int sign : {1, -1}) {
      if (k == skip_index && sign == skip_sign) continue;  // would cancel the last twist
      PlArc next = oracle;
      pl_apply(next, {k, sign});
      sweep_node(engine.apply({k, sign}), next, depth_left - 1, k, -sign, nodes, mismatches);
    }
}

}  // namespace

TEST_CASE("engine matches the planar oracle on all short braid words", "[sweep]") {
  long nodes = 0, mismatches = 0;
  for (int p = 2; p <= 4; ++p)
    for (int s = 1; s < p; ++s)
      sweep_node(Arc::standard(p, s), pl_standard(p, s), 6, 0, 0, nodes, mismatches);
  CHECK(nodes == 13 + 2 * 1457 + 3 * 23437);
  CHECK(mismatches == 0);
}
