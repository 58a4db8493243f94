// Acceptance gate: replays every headline claim end to end and prints one
// PASS/FAIL line per criterion.  Exit code 0 only if all eight pass.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lefx/documents.hpp"
#include "support/generators.hpp"
#include "support/pl_oracle.hpp"
#include "support/snf_oracle.hpp"

using namespace lefx;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " " << number << ": " << label;
  if (!ok && !detail.empty()) std::cout << " -- " << detail;
  std::cout << "\n";
  if (!ok) ++failures;
}

template <typename Fn>
void run_criterion(int number, const std::string& label, Fn&& body) {
  bool ok = true;
  std::ostringstream detail;
  try {
    body(ok, detail);
  } catch (const std::exception& e) {
    ok = false;
    detail << "exception: " << e.what();
  }
  criterion(number, label, ok, detail.str());
}

bool same_homology(const AbstractLF& a, const AbstractLF& b) {
  const TotalHomology ha = total_space_homology(a);
  const TotalHomology hb = total_space_homology(b);
  return ha.middle.rank == hb.middle.rank && ha.middle.torsion == hb.middle.torsion &&
         ha.top.rank == hb.top.rank && ha.top.torsion == hb.top.torsion &&
         euler_characteristic(a) == euler_characteristic(b);
}

bool hom_equal_up_to_sign(const HomClass& a, const HomClass& b) {
  if (a == b) return true;
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != -b[i]) return false;
  return true;
}

PlumbingTree random_tree(std::mt19937_64& rng, int max_vertices, int n) {
  const int v = lefx_test::rand_int(rng, 1, max_vertices);
  std::vector<std::pair<int, int>> edges;
  for (int i = 2; i <= v; ++i) edges.emplace_back(lefx_test::rand_int(rng, 1, i - 1), i);
  return PlumbingTree(v, edges, n);
}

AbstractLF random_fibration(std::mt19937_64& rng, int n) {
  const PlumbingTree tree = random_tree(rng, 3, n);
  const int m = lefx_test::rand_int(rng, 2, 6);
  std::vector<CycleSpec> specs;
  for (int i = 0; i < m; ++i) {
    CycleSpec spec;
    spec.base = lefx_test::rand_int(rng, 1, tree.vertex_count);
    const int len = lefx_test::rand_int(rng, 0, 3);
    for (int j = 0; j < len; ++j)
      spec.word.push_back({lefx_test::rand_int(rng, 1, tree.vertex_count),
                           lefx_test::rand_int(rng, 0, 1) == 0 ? 1 : -1});
    specs.push_back(spec);
  }
  return AbstractLF(tree, specs);
}

void arc_oracle_sweep(const Arc& engine, const lefx_test::PlArc& oracle, int depth_left,
                      int skip_index, int skip_sign, long& nodes, long& mismatches) {
  ++nodes;
  if (!(lefx_test::pl_canonical(oracle) == engine)) ++mismatches;
  if (depth_left == 0) return;
  for (int k = 1; k < engine.points(); ++k)
    for (int sign : {1, -1}) {
      if (k == skip_index && sign == skip_sign) continue;
      lefx_test::PlArc next = oracle;
      lefx_test::pl_apply(next, {k, sign});
      arc_oracle_sweep(engine.apply({k, sign}), next, depth_left - 1, k, -sign, nodes, mismatches);
    }
}

bool rejects_smooth(const AbstractLF& f, const Move& m, std::string* message = nullptr) {
  try {
    apply_move(f, m, Mode::smooth);
    return false;
  } catch (const IllegalMove& e) {
    if (message) *message = e.what();
    return true;
  }
}

}  // namespace

int main() {
  run_criterion(1, "stack reduction certificates X_k to A-Milnor(2k+1) verify (k=1..5, n=2..4, each replay < 1s)",
                [](bool& ok, std::ostringstream& detail) {
                  for (int n = 2; n <= 4 && ok; ++n)
                    for (int k = 1; k <= 5 && ok; ++k) {
                      const Certificate cert = builtin::x_to_a_milnor(k, n);
                      const auto t0 = std::chrono::steady_clock::now();
                      const VerifyResult result = verify(cert);
                      const auto dt = std::chrono::steady_clock::now() - t0;
                      const double seconds = std::chrono::duration<double>(dt).count();
                      if (!result.accepted || !(cert.claimed_end == build_A_milnor(2 * k + 1, n)) ||
                          seconds >= 1.0) {
                        ok = false;
                        detail << "k=" << k << " n=" << n << " step " << result.failed_step << " "
                               << result.reason << " (" << seconds << "s)";
                      }
                    }
                });

  run_criterion(2, "stack pair X_k/Y_k: smooth certificates, component counts 1 vs 2 exact, equal homology (k=1..5)",
                [](bool& ok, std::ostringstream& detail) {
                  for (int k = 1; k <= 5 && ok; ++k) {
                    const Certificate cert = builtin::x_to_y(k, 2);
                    if (!verify(cert).accepted || !(cert.claimed_end == build_Y(k, 2))) {
                      ok = false;
                      detail << "smooth certificate failed at k=" << k << " n=2";
                      return;
                    }
                    if (k % 2 == 0 && !verify(builtin::x_to_y(k, 4)).accepted) {
                      ok = false;
                      detail << "smooth certificate failed at k=" << k << " n=4";
                      return;
                    }
                    for (int n = 2; n <= 4 && ok; ++n) {
                      const AbstractLF x = build_X(k, n);
                      const AbstractLF y = build_Y(k, n);
                      const ComponentCount cx = component_count(x);
                      const ComponentCount cy = component_count(y);
                      if (cx.value != 1 || cx.exactness != Exactness::exact || cy.value != 2 ||
                          cy.exactness != Exactness::exact) {
                        ok = false;
                        detail << "components k=" << k << " n=" << n << ": got " << cx.value << " ("
                               << exactness_name(cx.exactness) << ") vs " << cy.value << " ("
                               << exactness_name(cy.exactness) << ")";
                      } else if (!same_homology(x, y)) {
                        ok = false;
                        detail << "homology mismatch k=" << k << " n=" << n;
                      }
                    }
                  }
                });

  run_criterion(3, "chain families share homology and chi, counts enumerate 1..k, consecutive smooth certificates verify (k<=3, i_j<=2, n in {2,4})",
                [](bool& ok, std::ostringstream& detail) {
                  std::vector<std::vector<int>> lists;
                  for (int a = 1; a <= 2; ++a) {
                    lists.push_back({a});
                    for (int b = 1; b <= 2; ++b) {
                      lists.push_back({a, b});
                      for (int c = 1; c <= 2; ++c) lists.push_back({a, b, c});
                    }
                  }
                  for (int n : {2, 4})
                    for (const std::vector<int>& mult : lists) {
                      if (!ok) return;
                      const int k = static_cast<int>(mult.size());
                      for (const Certificate& link : builtin::z_family_chain(mult, n))
                        if (!verify(link).accepted) {
                          ok = false;
                          detail << "link failed, n=" << n << " k=" << k;
                          return;
                        }
                      for (int t = 1; t <= k; ++t) {
                        const AbstractLF member = builtin::z_family_member(mult, t, n);
                        if (!same_homology(member, builtin::z_family_member(mult, 1, n))) {
                          ok = false;
                          detail << "homology mismatch, n=" << n << " member " << t;
                          return;
                        }
                        const ComponentCount count = component_count(member);
                        if (count.value != t || count.exactness != Exactness::exact) {
                          ok = false;
                          detail << "count of member " << t << " is " << count.value << " ("
                                 << exactness_name(count.exactness) << "), n=" << n;
                          return;
                        }
                      }
                    }
                });

  run_criterion(4, "index gap table equals ((n-1)(k+1)+2, n) with certification bits (2<=n<=8, 1<=k<=8)",
                [](bool& ok, std::ostringstream& detail) {
                  for (int n = 2; n <= 8 && ok; ++n)
                    for (int k = 1; k <= 8 && ok; ++k) {
                      const IndexGapReport gaps = index_gaps(n, k);
                      const bool certified_expected = gaps.gap_max_min >= 4 && gaps.gap_min_max >= 2;
                      if (gaps.gap_max_min != (n - 1) * (k + 1) + 2 || gaps.gap_min_max != n ||
                          gaps.nonvanishing_certified != certified_expected ||
                          !gaps.nonvanishing_certified) {
                        ok = false;
                        detail << "n=" << n << " k=" << k << ": got (" << gaps.gap_max_min << ", "
                               << gaps.gap_min_max << ")";
                      }
                    }
                });

  run_criterion(5, "braid and commutation relations hold on both engines; arc equality implies homology equality up to sign",
                [](bool& ok, std::ostringstream& detail) {
                  for (int p = 2; p <= 6 && ok; ++p)
                    for (int i = 1; i < p && ok; ++i)
                      for (int j = 1; j < p && ok; ++j)
                        for (int s = 1; s < p && ok; ++s) {
                          const Arc x = Arc::standard(p, s);
                          if (i == j) {
                            if (!(x.apply_word({{i, 1}, {i, -1}}) == x)) {
                              ok = false;
                              detail << "arc inverse failed p=" << p << " i=" << i;
                            }
                          } else if (i + 1 == j || j + 1 == i) {
                            if (!(x.apply_word({{i, 1}, {j, 1}, {i, 1}}) ==
                                  x.apply_word({{j, 1}, {i, 1}, {j, 1}}))) {
                              ok = false;
                              detail << "arc braid relation failed p=" << p << " (" << i << "," << j
                                     << ") s=" << s;
                            }
                          } else if (!(x.apply_word({{i, 1}, {j, 1}}) ==
                                       x.apply_word({{j, 1}, {i, 1}}))) {
                            ok = false;
                            detail << "arc commutation failed p=" << p << " (" << i << "," << j
                                   << ") s=" << s;
                          }
                        }
                  if (!ok) return;

                  auto rng = lefx_test::make_rng(0xacce541);
                  for (int trial = 0; trial < 200 && ok; ++trial) {
                    const PlumbingTree tree = random_tree(rng, 5, 2 + trial % 3);
                    const auto form = intersection_form(tree);
                    HomClass x(tree.vertex_count);
                    for (auto& c : x) c = lefx_test::rand_int(rng, -9, 9);
                    for (int v = 1; v <= tree.vertex_count && ok; ++v)
                      for (int w = v + 1; w <= tree.vertex_count && ok; ++w) {
                        const bool adjacent = tree.adjacent(v, w);
                        const HomClass lhs = adjacent
                                                 ? apply_twist_word(form, {{v, 1}, {w, 1}, {v, 1}}, x)
                                                 : apply_twist_word(form, {{v, 1}, {w, 1}}, x);
                        const HomClass rhs = adjacent
                                                 ? apply_twist_word(form, {{w, 1}, {v, 1}, {w, 1}}, x)
                                                 : apply_twist_word(form, {{w, 1}, {v, 1}}, x);
                        if (lhs != rhs || apply_twist_word(form, {{v, 1}, {v, -1}}, x) != x) {
                          ok = false;
                          detail << "homology relation failed, trial " << trial;
                        }
                      }
                  }
                  if (!ok) return;

                  int rewrites = 0;
                  for (int trial = 0; trial < 500; ++trial) {
                    const int v = lefx_test::rand_int(rng, 2, 5);
                    std::vector<std::pair<int, int>> edges;
                    for (int i = 1; i < v; ++i) edges.emplace_back(i, i + 1);
                    const PlumbingTree tree(v, edges, lefx_test::rand_int(rng, 2, 4));
                    TwistWord word;
                    const int len = lefx_test::rand_int(rng, 0, 8);
                    for (int l = 0; l < len; ++l)
                      word.emplace_back(lefx_test::rand_int(rng, 1, v),
                                        lefx_test::rand_int(rng, 0, 1) * 2 - 1);
                    const int base = lefx_test::rand_int(rng, 1, v);
                    TwistWord other = word;
                    bool changed = false;
                    for (int attempt = 0; attempt < 8 && !changed; ++attempt) {
                      const int choice = lefx_test::rand_int(rng, 0, 2);
                      if (choice == 0 && other.size() >= 3) {
                        const int at =
                            lefx_test::rand_int(rng, 0, static_cast<int>(other.size()) - 3);
                        auto &a = other[at], &b = other[at + 1], &c = other[at + 2];
                        if (a == c && a.second == b.second && tree.adjacent(a.first, b.first)) {
                          std::swap(other[at], other[at + 1]);
                          other[at + 2] = other[at];
                          changed = true;
                        }
                      } else if (choice == 1 && other.size() >= 2) {
                        const int at =
                            lefx_test::rand_int(rng, 0, static_cast<int>(other.size()) - 2);
                        if (other[at].first != other[at + 1].first &&
                            !tree.adjacent(other[at].first, other[at + 1].first)) {
                          std::swap(other[at], other[at + 1]);
                          changed = true;
                        }
                      } else {
                        const int at = lefx_test::rand_int(rng, 0, static_cast<int>(other.size()));
                        const int tv = lefx_test::rand_int(rng, 1, v);
                        other.insert(other.begin() + at, {{tv, 1}, {tv, -1}});
                        changed = true;
                      }
                    }
                    if (!changed) continue;
                    ++rewrites;
                    const Cycle lhs(tree, base, word);
                    const Cycle rhs(tree, base, other);
                    if (!lhs.equivalent(rhs) ||
                        !hom_equal_up_to_sign(lhs.hom_class(), rhs.hom_class())) {
                      ok = false;
                      detail << "arc-equal pair with unequal classes, trial " << trial;
                      return;
                    }
                  }
                  if (rewrites < 400) {
                    ok = false;
                    detail << "only " << rewrites << " effective rewrites";
                  }
                });

  run_criterion(6, "oracle agreement: SNF vs determinantal divisors (all 3x3 in [-2,2]), arcs vs planar oracle (words <= 6, p <= 4), 200 search round trips",
                [](bool& ok, std::ostringstream& detail) {
                  std::vector<std::vector<std::int64_t>> m(3, std::vector<std::int64_t>(3));
                  std::vector<int> digits(9, 0);
                  long checked = 0;
                  while (ok) {
                    for (int t = 0; t < 9; ++t) m[t / 3][t % 3] = digits[t] - 2;
                    const auto expect = lefx_test::oracle_smith(m);
                    const auto got = smith_normal_form(m);
                    if (got.rank != expect.rank || got.factors != expect.factors) {
                      ok = false;
                      detail << "SNF mismatch at matrix " << checked;
                      return;
                    }
                    ++checked;
                    int t = 8;
                    while (t >= 0 && digits[t] == 4) digits[t--] = 0;
                    if (t < 0) break;
                    ++digits[t];
                  }
                  if (checked != 1953125) {
                    ok = false;
                    detail << "SNF sweep covered " << checked << " matrices";
                    return;
                  }

                  long nodes = 0, mismatches = 0;
                  for (int p = 2; p <= 4; ++p)
                    for (int s = 1; s < p; ++s)
                      arc_oracle_sweep(Arc::standard(p, s), lefx_test::pl_standard(p, s), 6, 0, 0,
                                       nodes, mismatches);
                  if (mismatches != 0 || nodes != 13 + 2 * 1457 + 3 * 23437) {
                    ok = false;
                    detail << "arc sweep: " << mismatches << " mismatches over " << nodes
                           << " nodes";
                    return;
                  }

                  auto rng = lefx_test::make_rng(0x5ea7c4);
                  for (int trial = 0; trial < 200; ++trial) {
                    const int n = lefx_test::rand_int(rng, 2, 4);
                    const Mode mode = n % 2 == 0 ? Mode::smooth : Mode::weinstein;
                    const AbstractLF start = random_fibration(rng, n);
                    const int cap = start.fiber().vertex_count + 1;
                    AbstractLF state = start;
                    const int walk = lefx_test::rand_int(rng, 0, 4);
                    for (int i = 0; i < walk; ++i) {
                      std::vector<Move> options;
                      for (const Move& mv : legal_moves(state, mode))
                        if (mv.kind != MoveKind::stabilize || state.fiber().vertex_count < cap)
                          options.push_back(mv);
                      if (options.empty()) break;
                      state = apply_move(
                          state,
                          options[lefx_test::rand_int(rng, 0, static_cast<int>(options.size()) - 1)],
                          mode);
                    }
                    const auto cert = search(start, state, mode, SearchBudget{8, 40000, 1});
                    if (!cert || !verify(*cert).accepted) {
                      ok = false;
                      detail << "round trip failed at trial " << trial;
                      return;
                    }
                  }
                });

  run_criterion(7, "plumbing family certificates verify with matching homology (A6/E6, A7/E7/D7/Q7, A8/E8 at n=2; paired lists at n=4); SH marker asserted",
                [](bool& ok, std::ostringstream& detail) {
                  for (int n : {2, 4}) {
                    std::vector<std::string> names;
                    for (const builtin::FamilyChain& chain : builtin::dynkin_family_chains(n)) {
                      names.push_back(chain.name);
                      for (const Certificate& link : chain.links)
                        if (!verify(link).accepted) {
                          ok = false;
                          detail << chain.name << " (n=" << n << "): certificate failed";
                          return;
                        }
                      for (const AbstractLF& member : chain.members)
                        if (!same_homology(member, chain.members.front())) {
                          ok = false;
                          detail << chain.name << " (n=" << n << "): homology mismatch";
                          return;
                        }
                    }
                    const auto has = [&](const std::string& name) {
                      for (const std::string& candidate : names)
                        if (candidate == name) return true;
                      return false;
                    };
                    const bool expected =
                        n == 2 ? has("A6/E6") && has("A7/E7/D7/Q7") && has("A8/E8")
                               : has("E7/Q7") && has("A8/E8") && has("A5/Q5") && has("D6/Q6") &&
                                     has("A7/D7");
                    if (!expected) {
                      ok = false;
                      detail << "group list incomplete at n=" << n;
                      return;
                    }
                  }
                  const InvariantReport report = make_report(build_P_Tmj(5, 1, 2));
                  const json doc = report_to_document(report);
                  if (report.weinstein_note != "SH comparison not implemented" ||
                      doc["weinstein_distinction"] != "SH comparison not implemented") {
                    ok = false;
                    detail << "missing SH scope marker";
                  }
                });

  run_criterion(8, "parity gates: exponent 2 accepted at n=2 and rejected at n=4, exponent 4 accepted at n=4, every smooth replacement rejected at n=3",
                [](bool& ok, std::ostringstream& detail) {
                  const Move exp2 = Move::smooth_replace_move(4, 1, 2);
                  if (!(apply_move(build_X(1, 2), exp2, Mode::smooth) == build_Y(1, 2))) {
                    ok = false;
                    detail << "exponent 2 at n=2 not accepted";
                    return;
                  }
                  std::string message;
                  if (!rejects_smooth(build_X(1, 4), exp2, &message) ||
                      message.find("multiple of 4") == std::string::npos) {
                    ok = false;
                    detail << "exponent 2 at n=4 not rejected with the parity message";
                    return;
                  }
                  if (!(apply_move(build_X(2, 4), Move::smooth_replace_move(6, 1, 4),
                                   Mode::smooth) == build_Y(2, 4))) {
                    ok = false;
                    detail << "exponent 4 at n=4 not accepted";
                    return;
                  }
                  for (int exponent : {2, -2, 4, -4, 6})
                    if (!rejects_smooth(build_X(2, 3), Move::smooth_replace_move(6, 1, exponent))) {
                      ok = false;
                      detail << "exponent " << exponent << " at n=3 not rejected";
                      return;
                    }
                  for (const Move& mv : legal_moves(build_X(1, 3), Mode::smooth))
                    if (mv.kind == MoveKind::smooth_replace) {
                      ok = false;
                      detail << "smooth replacement enumerated at n=3";
                      return;
                    }
                });

  std::cout << (failures == 0 ? "acceptance: all 8 criteria PASS"
                              : "acceptance: " + std::to_string(failures) + " criteria FAIL")
            << "\n";
  return failures == 0 ? 0 : 1;
}
