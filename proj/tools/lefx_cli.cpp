#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lefx/documents.hpp"

// lefx: build catalog fibrations, compute invariants, apply and search for
// equivalence moves, and verify certificates.  Exit codes: 0 success/accept,
// 1 negative result (reject / nothing found), 2 usage or input errors.

namespace {

using lefx::json;

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

lefx::AbstractLF load_fibration(const std::string& path) {
  return lefx::parse_fibration(lefx::read_document(read_text(path)));
}

void emit(const json& doc, const std::string& out_path) {
  const std::string text = lefx::print_document(doc);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot write " + out_path);
  out << text;
}

int parse_int(const std::string& token, const std::string& context) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer \"" + token + "\" in " + context);
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

// Move specs: shift:forward|backward, hurwitz:<pos>:left|right,
// stabilize:<vertex>, destabilize:<pos>, smooth:<pos>:<vertex>:<exponent>,
// rewrite:<pos>:<base>[:v,-v,...] (comma letters, sign per letter).
lefx::Move parse_move_spec(const std::string& spec) {
  const std::vector<std::string> t = split(spec, ':');
  const std::string& head = t[0];
  if (head == "shift" && t.size() == 2) {
    if (t[1] == "forward" || t[1] == "fwd")
      return lefx::Move::cyclic_shift_move(lefx::ShiftDir::forward);
    if (t[1] == "backward" || t[1] == "back")
      return lefx::Move::cyclic_shift_move(lefx::ShiftDir::backward);
    throw std::invalid_argument("shift direction must be forward or backward in \"" + spec + "\"");
  }
  if (head == "hurwitz" && t.size() == 3) {
    const int pos = parse_int(t[1], spec);
    if (t[2] == "left") return lefx::Move::hurwitz_move(pos, lefx::HurwitzDir::left);
    if (t[2] == "right") return lefx::Move::hurwitz_move(pos, lefx::HurwitzDir::right);
    throw std::invalid_argument("hurwitz direction must be left or right in \"" + spec + "\"");
  }
  if (head == "stabilize" && t.size() == 2)
    return lefx::Move::stabilize_move(parse_int(t[1], spec));
  if (head == "destabilize" && t.size() == 2)
    return lefx::Move::destabilize_move(parse_int(t[1], spec));
  if (head == "smooth" && t.size() == 4)
    return lefx::Move::smooth_replace_move(parse_int(t[1], spec), parse_int(t[2], spec),
                                           parse_int(t[3], spec));
  if (head == "rewrite" && (t.size() == 3 || t.size() == 4)) {
    lefx::TwistWord word;
    if (t.size() == 4 && !t[3].empty())
      for (const std::string& letter : split(t[3], ',')) {
        const int v = parse_int(letter, spec);
        if (v == 0) throw std::invalid_argument("zero vertex in \"" + spec + "\"");
        word.emplace_back(v > 0 ? v : -v, v > 0 ? 1 : -1);
      }
    return lefx::Move::rewrite_move(parse_int(t[1], spec), parse_int(t[2], spec), word);
  }
  throw std::invalid_argument(
      "unknown move spec \"" + spec +
      "\" (expected shift:<dir>, hurwitz:<pos>:<dir>, stabilize:<vertex>, destabilize:<pos>, "
      "smooth:<pos>:<vertex>:<exp>, rewrite:<pos>:<base>[:letters])");
}

lefx::Mode parse_mode(const std::string& name) {
  if (name == "weinstein") return lefx::Mode::weinstein;
  if (name == "smooth") return lefx::Mode::smooth;
  throw std::invalid_argument("mode must be weinstein or smooth");
}

// The index gap table applies to the stack pair: recognize X_k or Y_k up to
// rotation and cycle normal form.
std::optional<int> recognize_stack_parameter(const lefx::AbstractLF& f) {
  if (f.fiber().vertex_count != 2) return std::nullopt;
  const int m = f.cycle_count();
  if (m < 5 || (m - 3) % 2 != 0) return std::nullopt;
  const int k = (m - 3) / 2;
  const std::string key = f.canonical_key();
  if (key == lefx::build_X(k, f.n()).canonical_key()) return k;
  if (key == lefx::build_Y(k, f.n()).canonical_key()) return k;
  return std::nullopt;
}

json make_report_document(const lefx::AbstractLF& f, const lefx::SearchBudget& budget) {
  json doc = lefx::report_to_document(lefx::make_report(f, budget));
  if (const std::optional<int> k = recognize_stack_parameter(f)) {
    const lefx::IndexGapReport gaps = lefx::index_gaps(f.n(), *k);
    doc["index_gaps"] = {{"k", gaps.k},
                         {"gap_max_min", gaps.gap_max_min},
                         {"gap_min_max", gaps.gap_min_max},
                         {"certified", gaps.nonvanishing_certified}};
  }
  return doc;
}

int run_build(const std::string& family, int m, int k, int j, int n, const std::vector<int>& i,
              const std::string& out) {
  std::optional<lefx::AbstractLF> f;
  if (family == "A") {
    if (m < 0) throw std::invalid_argument("build A needs --m");
    f = lefx::build_A_milnor(m, n);
  } else if (family == "X") {
    if (k < 0) throw std::invalid_argument("build X needs --k");
    f = lefx::build_X(k, n);
  } else if (family == "Y") {
    if (k < 0) throw std::invalid_argument("build Y needs --k");
    f = lefx::build_Y(k, n);
  } else if (family == "Z") {
    if (i.empty()) throw std::invalid_argument("build Z needs --i");
    f = lefx::build_Z(i, n);
  } else if (family == "Q") {
    if (m < 0) throw std::invalid_argument("build Q needs --m");
    f = lefx::build_Q(m, n);
  } else if (family == "P") {
    if (m < 0 || j < 0) throw std::invalid_argument("build P needs --m and --j");
    f = lefx::build_P_Tmj(m, j, n);
  } else {
    throw std::invalid_argument("unknown family \"" + family + "\" (known: A, X, Y, Z, Q, P)");
  }
  emit(lefx::fibration_to_document(*f), out);
  return 0;
}

int run_invariants(const std::string& file, const lefx::SearchBudget& budget,
                   const std::string& out) {
  emit(make_report_document(load_fibration(file), budget), out);
  return 0;
}

int run_apply(const std::string& file, const std::vector<std::string>& specs, lefx::Mode mode,
              const std::string& out) {
  lefx::AbstractLF f = load_fibration(file);
  for (const std::string& spec : specs) f = lefx::apply_move(f, parse_move_spec(spec), mode);
  emit(lefx::fibration_to_document(f), out);
  return 0;
}

int run_search(const std::string& file1, const std::string& file2, lefx::Mode mode,
               const lefx::SearchBudget& budget, const std::string& out) {
  const std::optional<lefx::Certificate> cert =
      lefx::search(load_fibration(file1), load_fibration(file2), mode, budget);
  if (!cert) {
    std::cout << "no certificate within budget\n";
    return 1;
  }
  emit(lefx::certificate_to_document(*cert), out);
  return 0;
}

int run_verify(const std::string& file) {
  const lefx::Certificate cert = lefx::parse_certificate(lefx::read_document(read_text(file)));
  const lefx::VerifyResult result = lefx::verify(cert);
  if (result.accepted) {
    std::cout << "accepted: " << cert.steps.size() << " steps, mode " << lefx::mode_name(cert.mode)
              << "\n";
    return 0;
  }
  if (result.failed_step == 0)
    std::cout << "rejected: " << result.reason << "\n";
  else
    std::cout << "rejected at step " << result.failed_step << ": " << result.reason << "\n";
  return 1;
}

// ---------------------------------------------------------------------------
// Reproduction suite

constexpr const char* kDistinctionMarker =
    "Weinstein distinction: NOT IMPLEMENTED (SH out of scope)";

struct SuiteRow {
  std::string text;
  bool ok = true;
};

std::string seg(const std::string& label, bool ok, bool& row_ok) {
  row_ok = row_ok && ok;
  return label + (ok ? " PASS" : " FAIL");
}

bool same_homology(const lefx::AbstractLF& a, const lefx::AbstractLF& b) {
  const lefx::TotalHomology ha = lefx::total_space_homology(a);
  const lefx::TotalHomology hb = lefx::total_space_homology(b);
  return ha.middle.rank == hb.middle.rank && ha.middle.torsion == hb.middle.torsion &&
         ha.top.rank == hb.top.rank && ha.top.torsion == hb.top.torsion &&
         lefx::euler_characteristic(a) == lefx::euler_characteristic(b);
}

int run_suite() {
  std::vector<SuiteRow> rows;

  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k <= 3; ++k) {
      SuiteRow row;
      const lefx::Certificate cert = lefx::builtin::x_to_a_milnor(k, n);
      std::ostringstream text;
      text << "X" << k << " to A-Milnor(" << 2 * k + 1 << ") (n=" << n
           << "): " << seg("weinstein cert", lefx::verify(cert).accepted, row.ok);
      row.text = text.str();
      rows.push_back(row);
    }

  for (int n : {2, 4})
    for (int k = 1; k <= 3; ++k) {
      if (n == 4 && (2 * k) % 4 != 0) continue;
      SuiteRow row;
      const lefx::AbstractLF x = lefx::build_X(k, n);
      const lefx::AbstractLF y = lefx::build_Y(k, n);
      const lefx::Certificate cert = lefx::builtin::x_to_y(k, n);
      const lefx::ComponentCount cx = lefx::component_count(x);
      const lefx::ComponentCount cy = lefx::component_count(y);
      std::ostringstream text;
      text << "X" << k << "/Y" << k << " (n=" << n
           << "): " << seg("smooth cert", lefx::verify(cert).accepted, row.ok) << ", "
           << seg("components 1 vs 2",
                  cx.value == 1 && cy.value == 2 && cx.exactness == lefx::Exactness::exact &&
                      cy.exactness == lefx::Exactness::exact,
                  row.ok)
           << ", " << seg("homology match", same_homology(x, y), row.ok);
      row.text = text.str();
      rows.push_back(row);
    }

  const std::vector<std::vector<int>> families = {{1, 1}, {2, 1}, {3, 1}, {1, 2, 1}};
  for (int n : {2, 4})
    for (const std::vector<int>& mult : families) {
      SuiteRow row;
      const int k = static_cast<int>(mult.size());
      bool certs_ok = true, hom_ok = true, counts_ok = true;
      const std::vector<lefx::Certificate> links = lefx::builtin::z_family_chain(mult, n);
      for (const lefx::Certificate& link : links)
        certs_ok = certs_ok && lefx::verify(link).accepted;
      std::vector<int> counts;
      for (int t = 1; t <= k; ++t) {
        const lefx::AbstractLF member = lefx::builtin::z_family_member(mult, t, n);
        hom_ok = hom_ok && same_homology(member, lefx::builtin::z_family_member(mult, 1, n));
        const lefx::ComponentCount count = lefx::component_count(member);
        counts_ok = counts_ok && count.exactness == lefx::Exactness::exact && count.value == t;
        counts.push_back(count.value);
      }
      std::ostringstream label, text;
      label << "counts {";
      for (int t = 0; t < k; ++t) label << (t ? "," : "") << counts[t];
      label << "}";
      text << "Z family i=(";
      for (int t = 0; t < k; ++t) text << (t ? "," : "") << mult[t];
      text << ") (n=" << n << "): members " << k << ", " << seg("certs", certs_ok, row.ok) << ", "
           << seg("homology match", hom_ok, row.ok) << ", " << seg(label.str(), counts_ok, row.ok);
      row.text = text.str();
      rows.push_back(row);
    }

  for (int n : {2, 4})
    for (const lefx::builtin::FamilyChain& chain : lefx::builtin::dynkin_family_chains(n)) {
      SuiteRow row;
      bool certs_ok = true, hom_ok = true;
      for (const lefx::Certificate& link : chain.links)
        certs_ok = certs_ok && lefx::verify(link).accepted;
      for (const lefx::AbstractLF& member : chain.members)
        hom_ok = hom_ok && same_homology(member, chain.members.front());
      std::ostringstream text;
      text << chain.name << " (n=" << n << "): " << seg("smooth certs", certs_ok, row.ok) << ", "
           << seg("homology match", hom_ok, row.ok) << ", " << kDistinctionMarker;
      row.text = text.str();
      rows.push_back(row);
    }

  {
    SuiteRow row;
    bool ok = true;
    for (int n = 2; n <= 4; ++n)
      for (int k = 1; k <= 3; ++k) {
        const lefx::IndexGapReport gaps = lefx::index_gaps(n, k);
        ok = ok && gaps.gap_max_min == (n - 1) * (k + 1) + 2 && gaps.gap_min_max == n &&
             gaps.nonvanishing_certified;
      }
    row.text = "index gaps (2<=n<=4, 1<=k<=3): " + seg("formula match", ok, row.ok);
    rows.push_back(row);
  }

  {
    SuiteRow row;
    const auto throws_parity = [](const lefx::AbstractLF& f, const lefx::Move& m) {
      try {
        lefx::apply_move(f, m, lefx::Mode::smooth);
        return false;
      } catch (const lefx::IllegalMove&) {
        return true;
      }
    };
    const lefx::Move exp2 = lefx::Move::smooth_replace_move(4, 1, 2);
    const bool ok2 =
        lefx::apply_move(lefx::build_X(1, 2), exp2, lefx::Mode::smooth) == lefx::build_Y(1, 2);
    const bool rej4 = throws_parity(lefx::build_X(1, 4), exp2);
    const bool ok4 = lefx::apply_move(lefx::build_X(2, 4), lefx::Move::smooth_replace_move(6, 1, 4),
                                      lefx::Mode::smooth) == lefx::build_Y(2, 4);
    const bool rej3 = throws_parity(lefx::build_X(1, 3), exp2);
    std::ostringstream text;
    text << "parity gates: " << seg("exponent 2 at n=2", ok2, row.ok) << ", "
         << seg("exponent 2 rejected at n=4", rej4, row.ok) << ", "
         << seg("exponent 4 at n=4", ok4, row.ok) << ", "
         << seg("rejected at n=3", rej3, row.ok);
    row.text = text.str();
    rows.push_back(row);
  }

  int failures = 0;
  for (const SuiteRow& row : rows) {
    std::cout << row.text << "\n";
    if (!row.ok) ++failures;
  }
  std::cout << "suite: " << rows.size() << " rows, "
            << (failures == 0 ? "all PASS" : std::to_string(failures) + " FAIL") << "\n";
  return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// REPL

int run_repl(lefx::Mode mode, const std::string& initial) {
  std::optional<lefx::AbstractLF> state;
  std::vector<lefx::AbstractLF> history;

  const auto show_loaded = [&]() {
    std::cout << "loaded: " << state->fiber().vertex_count << " vertices, " << state->cycle_count()
              << " cycles, n=" << state->n() << "\n";
  };
  if (!initial.empty()) {
    state = load_fibration(initial);
    show_loaded();
  }

  const auto need_state = [&]() {
    if (!state) std::cout << "no fibration loaded (use: load <file>)\n";
    return state.has_value();
  };

  std::string line;
  std::cout << "lefx> " << std::flush;
  while (std::getline(std::cin, line)) {
    std::istringstream words(line);
    std::string cmd, arg;
    words >> cmd;
    std::getline(words, arg);
    if (!arg.empty() && arg.front() == ' ') arg.erase(0, arg.find_first_not_of(' '));
    try {
      if (cmd.empty()) {
      } else if (cmd == "quit" || cmd == "exit") {
        return 0;
      } else if (cmd == "help") {
        std::cout << "commands: load <file>, show, moves, apply <N>, undo, invariants, "
                     "save <file>, help, quit\n";
      } else if (cmd == "load") {
        if (arg.empty()) {
          std::cout << "usage: load <file>\n";
        } else {
          state = load_fibration(arg);
          history.clear();
          show_loaded();
        }
      } else if (cmd == "show") {
        if (need_state()) std::cout << lefx::print_document(lefx::fibration_to_document(*state));
      } else if (cmd == "moves") {
        if (need_state()) {
          const std::vector<lefx::Move> moves = lefx::legal_moves(*state, mode);
          for (std::size_t i = 0; i < moves.size(); ++i)
            std::cout << (i + 1) << ". " << moves[i].describe() << "\n";
        }
      } else if (cmd == "apply") {
        if (need_state()) {
          const std::vector<lefx::Move> moves = lefx::legal_moves(*state, mode);
          const int pick = arg.empty() ? 0 : parse_int(arg, "apply");
          if (pick < 1 || pick > static_cast<int>(moves.size())) {
            std::cout << "no such move (list them with: moves)\n";
          } else {
            history.push_back(*state);
            state = lefx::apply_move(*state, moves[pick - 1], mode);
            std::cout << "applied: " << moves[pick - 1].describe() << "\n";
          }
        }
      } else if (cmd == "undo") {
        if (history.empty()) {
          std::cout << "nothing to undo\n";
        } else {
          state = history.back();
          history.pop_back();
          std::cout << "restored previous state\n";
        }
      } else if (cmd == "invariants") {
        if (need_state()) std::cout << lefx::print_document(make_report_document(*state, {}));
      } else if (cmd == "save") {
        if (arg.empty()) {
          std::cout << "usage: save <file>\n";
        } else if (need_state()) {
          emit(lefx::fibration_to_document(*state), arg);
          std::cout << "saved " << arg << "\n";
        }
      } else {
        std::cout << "unknown command: " << cmd << " (try help)\n";
      }
    } catch (const std::exception& e) {
      std::cout << "error: " << e.what() << "\n";
    }
    std::cout << "lefx> " << std::flush;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic calculus for abstract Lefschetz fibrations over plumbing fibers"};
  app.require_subcommand(1);

  std::string out, mode_name = "smooth", family, file, file1, file2;
  std::vector<std::string> specs;
  std::vector<int> i_params;
  int m = -1, k = -1, j = -1, n = 2;
  lefx::SearchBudget budget;

  CLI::App* build = app.add_subcommand("build", "emit a catalog fibration document");
  build->add_option("family", family, "one of A, X, Y, Z, Q, P")->required();
  build->add_option("--m", m, "sphere count (A, Q) or path length (P)");
  build->add_option("--k", k, "stack parameter (X, Y)");
  build->add_option("--j", j, "leaf position (P)");
  build->add_option("--i", i_params, "chain multiplicities (Z)")->delimiter(',');
  build->add_option("--n", n, "fiber sphere dimension (default 2)");
  build->add_option("-o,--out", out, "output file (default stdout)");

  CLI::App* invariants = app.add_subcommand("invariants", "report for a fibration document");
  invariants->add_option("file", file, "fibration document (- for stdin)")->required();
  invariants->add_option("--depth", budget.max_depth, "component search depth");
  invariants->add_option("--max-states", budget.max_states, "component search state cap");
  invariants->add_option("--allow-stabilize", budget.allow_stabilize_up_to,
                         "extra stabilizations allowed");
  invariants->add_option("-o,--out", out, "output file (default stdout)");

  CLI::App* apply = app.add_subcommand("apply", "apply moves to a fibration document");
  apply->add_option("file", file, "fibration document (- for stdin)")->required();
  apply->add_option("moves", specs, "move specs, e.g. hurwitz:2:left smooth:4:1:2")->required();
  apply->add_option("--mode", mode_name, "weinstein or smooth (default smooth)");
  apply->add_option("-o,--out", out, "output file (default stdout)");

  CLI::App* search = app.add_subcommand("search", "search for a certificate between two documents");
  search->add_option("start", file1, "start fibration document")->required();
  search->add_option("end", file2, "end fibration document")->required();
  search->add_option("--mode", mode_name, "weinstein or smooth (default smooth)");
  search->add_option("--depth", budget.max_depth, "combined search depth (default 8)");
  search->add_option("--max-states", budget.max_states, "state cap (default 20000)");
  search->add_option("--allow-stabilize", budget.allow_stabilize_up_to,
                     "extra stabilizations allowed (default 1)");
  search->add_option("-o,--out", out, "output file (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "replay a certificate document");
  verify->add_option("file", file, "certificate document (- for stdin)")->required();

  CLI::App* suite =
      app.add_subcommand("paper-suite", "run the bundled reproduction suite and print PASS/FAIL rows");
  (void)suite;

  CLI::App* repl = app.add_subcommand("repl", "interactive move application");
  repl->add_option("file", file, "fibration document to load on startup");
  repl->add_option("--mode", mode_name, "weinstein or smooth (default smooth)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) return run_build(family, m, k, j, n, i_params, out);
    if (*invariants) return run_invariants(file, budget, out);
    if (*apply) return run_apply(file, specs, parse_mode(mode_name), out);
    if (*search) return run_search(file1, file2, parse_mode(mode_name), budget, out);
    if (*verify) return run_verify(file);
    if (*suite) return run_suite();
    if (*repl) return run_repl(parse_mode(mode_name), file);
  } catch (const lefx::IllegalMove& e) {
    std::cerr << "illegal move: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
