#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lefx/decomposition.hpp"
#include "lefx/search.hpp"

// JSON documents for fibrations, certificates, and invariant reports.
// Field order is fixed, words are run-length packed, and parse(print(x))
// always reproduces x.

namespace lefx {

using json = nlohmann::ordered_json;

namespace detail {

inline void expect(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument("document: " + message);
}

inline void expect_header(const json& doc, const std::string& kind) {
  expect(doc.is_object(), "expected a JSON object");
  expect(doc.contains("kind") && doc["kind"].is_string(), "missing kind");
  expect(doc["kind"].get<std::string>() == kind, "expected kind \"" + kind + "\"");
  expect(doc.contains("version") && doc["version"].is_number_integer(), "missing version");
  expect(doc["version"].get<int>() == 1, "unsupported version");
}

inline json word_to_json(const TwistWord& word) {
  json packed = json::array();
  std::size_t i = 0;
  while (i < word.size()) {
    std::size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    packed.push_back({word[i].first, word[i].second * static_cast<int>(j - i)});
    i = j;
  }
  return packed;
}

inline TwistWord json_to_word(const json& packed) {
  expect(packed.is_array(), "cycle word must be an array");
  TwistWord word;
  for (const json& entry : packed) {
    expect(entry.is_array() && entry.size() == 2 && entry[0].is_number_integer() &&
               entry[1].is_number_integer(),
           "word entries are [vertex, exponent] pairs");
    const int vertex = entry[0].get<int>();
    const int exponent = entry[1].get<int>();
    expect(exponent != 0, "word exponents must be nonzero");
    const int sign = exponent > 0 ? 1 : -1;
    for (int r = 0; r < (exponent > 0 ? exponent : -exponent); ++r) word.emplace_back(vertex, sign);
  }
  return word;
}

inline json fibration_body(const AbstractLF& f) {
  json doc;
  doc["n"] = f.n();
  json edges = json::array();
  for (const auto& e : f.fiber().edges) edges.push_back({e.first, e.second});
  doc["fiber"] = {{"vertices", f.fiber().vertex_count}, {"edges", std::move(edges)}};
  json cycles = json::array();
  for (int i = 1; i <= f.cycle_count(); ++i) {
    const Cycle& c = f.cycle(i);
    cycles.push_back({{"base", c.base()}, {"word", word_to_json(c.word())}});
  }
  doc["cycles"] = std::move(cycles);
  return doc;
}

inline AbstractLF fibration_from_body(const json& doc) {
  expect(doc.contains("n") && doc["n"].is_number_integer(), "missing n");
  expect(doc.contains("fiber") && doc["fiber"].is_object(), "missing fiber");
  const json& fiber = doc["fiber"];
  expect(fiber.contains("vertices") && fiber["vertices"].is_number_integer(),
         "fiber needs a vertex count");
  expect(fiber.contains("edges") && fiber["edges"].is_array(), "fiber needs an edge list");
  std::vector<std::pair<int, int>> edges;
  for (const json& e : fiber["edges"]) {
    expect(e.is_array() && e.size() == 2 && e[0].is_number_integer() && e[1].is_number_integer(),
           "edges are [i, j] pairs");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  PlumbingTree tree(fiber["vertices"].get<int>(), edges, doc["n"].get<int>());
  expect(doc.contains("cycles") && doc["cycles"].is_array() && !doc["cycles"].empty(),
         "a fibration needs at least one cycle");
  std::vector<CycleSpec> specs;
  for (const json& c : doc["cycles"]) {
    expect(c.is_object() && c.contains("base") && c["base"].is_number_integer() &&
               c.contains("word"),
           "cycles need a base and a word");
    specs.push_back({c["base"].get<int>(), json_to_word(c["word"])});
  }
  return AbstractLF(tree, specs);
}

}  // namespace detail

inline json fibration_to_document(const AbstractLF& f) {
  json doc;
  doc["kind"] = "fibration";
  doc["version"] = 1;
  json body = detail::fibration_body(f);
  for (auto& [key, value] : body.items()) doc[key] = std::move(value);
  return doc;
}

inline AbstractLF parse_fibration(const json& doc) {
  detail::expect_header(doc, "fibration");
  return detail::fibration_from_body(doc);
}

inline json move_to_json(const Move& m) {
  switch (m.kind) {
    case MoveKind::cyclic_shift:
      return {{"move", "shift"},
              {"direction", m.shift == ShiftDir::forward ? "forward" : "backward"}};
    case MoveKind::hurwitz:
      return {{"move", "hurwitz"},
              {"position", m.position},
              {"direction", m.direction == HurwitzDir::left ? "left" : "right"}};
    case MoveKind::stabilize:
      return {{"move", "stabilize"}, {"attach", m.vertex}};
    case MoveKind::destabilize:
      return {{"move", "destabilize"}, {"position", m.position}};
    case MoveKind::smooth_replace:
      return {{"move", "smooth_replace"},
              {"position", m.position},
              {"vertex", m.vertex},
              {"exponent", m.exponent}};
    case MoveKind::rewrite_cycle:
      return {{"move", "rewrite"},
              {"position", m.position},
              {"base", m.rewrite_base},
              {"word", detail::word_to_json(m.rewrite_word)}};
  }
  throw std::invalid_argument("document: unknown move kind");
}

inline Move json_to_move(const json& doc) {
  detail::expect(doc.is_object() && doc.contains("move") && doc["move"].is_string(),
                 "steps need a move name");
  const std::string name = doc["move"].get<std::string>();
  const auto integer = [&](const char* key) {
    detail::expect(doc.contains(key) && doc[key].is_number_integer(),
                   "move \"" + name + "\" needs integer field \"" + key + "\"");
    return doc[key].get<int>();
  };
  if (name == "shift") {
    detail::expect(doc.contains("direction") && doc["direction"].is_string(),
                   "shift needs a direction");
    const std::string dir = doc["direction"].get<std::string>();
    detail::expect(dir == "forward" || dir == "backward", "shift direction must be forward or backward");
    return Move::cyclic_shift_move(dir == "forward" ? ShiftDir::forward : ShiftDir::backward);
  }
  if (name == "hurwitz") {
    detail::expect(doc.contains("direction") && doc["direction"].is_string(),
                   "hurwitz needs a direction");
    const std::string dir = doc["direction"].get<std::string>();
    detail::expect(dir == "left" || dir == "right", "hurwitz direction must be left or right");
    return Move::hurwitz_move(integer("position"),
                              dir == "left" ? HurwitzDir::left : HurwitzDir::right);
  }
  if (name == "stabilize") return Move::stabilize_move(integer("attach"));
  if (name == "destabilize") return Move::destabilize_move(integer("position"));
  if (name == "smooth_replace")
    return Move::smooth_replace_move(integer("position"), integer("vertex"), integer("exponent"));
  if (name == "rewrite") {
    detail::expect(doc.contains("word"), "rewrite needs a word");
    return Move::rewrite_move(integer("position"), integer("base"),
                              detail::json_to_word(doc["word"]));
  }
  throw std::invalid_argument("document: unknown move \"" + name + "\"");
}

inline json certificate_to_document(const Certificate& cert) {
  json doc;
  doc["kind"] = "certificate";
  doc["version"] = 1;
  doc["mode"] = mode_name(cert.mode);
  doc["start"] = detail::fibration_body(cert.start);
  json steps = json::array();
  for (const Move& m : cert.steps) steps.push_back(move_to_json(m));
  doc["steps"] = std::move(steps);
  doc["end"] = detail::fibration_body(cert.claimed_end);
  doc["provenance"] = cert.provenance;
  return doc;
}

inline Certificate parse_certificate(const json& doc) {
  detail::expect_header(doc, "certificate");
  detail::expect(doc.contains("mode") && doc["mode"].is_string(), "missing mode");
  const std::string mode = doc["mode"].get<std::string>();
  detail::expect(mode == "weinstein" || mode == "smooth", "mode must be weinstein or smooth");
  detail::expect(doc.contains("start") && doc.contains("end"), "missing start or end");
  detail::expect(doc.contains("steps") && doc["steps"].is_array(), "missing steps");
  std::vector<Move> steps;
  for (const json& s : doc["steps"]) steps.push_back(json_to_move(s));
  std::string provenance;
  if (doc.contains("provenance")) {
    detail::expect(doc["provenance"].is_string(), "provenance must be a string");
    provenance = doc["provenance"].get<std::string>();
  }
  return Certificate{mode == "weinstein" ? Mode::weinstein : Mode::smooth,
                     detail::fibration_from_body(doc["start"]), std::move(steps),
                     detail::fibration_from_body(doc["end"]), std::move(provenance)};
}

namespace detail {

inline json group_to_json(const AbelianGroup& g, int degree) {
  json torsion = json::array();
  for (const Int& d : g.torsion) torsion.push_back(d.str());
  return {{"degree", degree}, {"rank", g.rank}, {"torsion", std::move(torsion)}};
}

inline AbelianGroup group_from_json(const json& doc) {
  expect(doc.is_object() && doc.contains("rank") && doc["rank"].is_number_integer(),
         "homology groups need a rank");
  AbelianGroup g;
  g.rank = doc["rank"].get<int>();
  expect(doc.contains("torsion") && doc["torsion"].is_array(), "homology groups need torsion");
  for (const json& t : doc["torsion"]) {
    expect(t.is_string(), "torsion entries are decimal strings");
    g.torsion.emplace_back(t.get<std::string>());
  }
  return g;
}

}  // namespace detail

inline json report_to_document(const InvariantReport& report) {
  json doc;
  doc["kind"] = "report";
  doc["version"] = 1;
  doc["n"] = report.n;
  doc["euler"] = report.euler;
  doc["homology"] = {{"middle", detail::group_to_json(report.homology.middle, report.n)},
                     {"top", detail::group_to_json(report.homology.top, report.n + 1)}};
  doc["components"] = {{"value", report.components.value},
                       {"exactness", exactness_name(report.components.exactness)},
                       {"justification", report.components.justification}};
  doc["weinstein_distinction"] = report.weinstein_note;
  return doc;
}

inline InvariantReport parse_report(const json& doc) {
  detail::expect_header(doc, "report");
  detail::expect(doc.contains("n") && doc["n"].is_number_integer(), "missing n");
  detail::expect(doc.contains("euler") && doc["euler"].is_number_integer(), "missing euler");
  detail::expect(doc.contains("homology") && doc["homology"].is_object(), "missing homology");
  detail::expect(doc.contains("components") && doc["components"].is_object(),
                 "missing components");
  InvariantReport report;
  report.n = doc["n"].get<int>();
  report.euler = doc["euler"].get<long long>();
  report.homology.n = report.n;
  report.homology.middle = detail::group_from_json(doc["homology"]["middle"]);
  report.homology.top = detail::group_from_json(doc["homology"]["top"]);
  const json& comp = doc["components"];
  detail::expect(comp.contains("value") && comp["value"].is_number_integer(),
                 "components need a value");
  report.components.value = comp["value"].get<int>();
  detail::expect(comp.contains("exactness") && comp["exactness"].is_string(),
                 "components need an exactness");
  const std::string exactness = comp["exactness"].get<std::string>();
  if (exactness == "exact")
    report.components.exactness = Exactness::exact;
  else if (exactness == "lower_bound")
    report.components.exactness = Exactness::lower_bound;
  else if (exactness == "unknown")
    report.components.exactness = Exactness::unknown;
  else
    throw std::invalid_argument("document: unknown exactness \"" + exactness + "\"");
  if (comp.contains("justification")) {
    detail::expect(comp["justification"].is_string(), "justification must be a string");
    report.components.justification = comp["justification"].get<std::string>();
  }
  detail::expect(doc.contains("weinstein_distinction") && doc["weinstein_distinction"].is_string(),
                 "missing weinstein_distinction");
  report.weinstein_note = doc["weinstein_distinction"].get<std::string>();
  return report;
}

// Kind dispatch for files whose flavor is not known in advance.
inline std::string document_kind(const json& doc) {
  detail::expect(doc.is_object() && doc.contains("kind") && doc["kind"].is_string(),
                 "missing kind");
  const std::string kind = doc["kind"].get<std::string>();
  detail::expect(kind == "fibration" || kind == "certificate" || kind == "report",
                 "unknown kind \"" + kind + "\"");
  return kind;
}

inline std::string print_document(const json& doc) { return doc.dump(2) + "\n"; }

inline json read_document(const std::string& text) {
  json doc = json::parse(text);
  document_kind(doc);
  return doc;
}

}  // namespace lefx
