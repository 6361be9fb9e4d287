#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "toric/classify.hpp"
#include "toric/code.hpp"
#include "toric/invariants.hpp"

namespace toric {

// Resolution order: TORIC_TABLES environment variable, then the build-time
// default, then ./tables relative to the working directory.
inline std::string tables_dir() {
  if (const char* env = std::getenv("TORIC_TABLES")) return env;
#ifdef TORIC_DEFAULT_TABLES_DIR
  return TORIC_DEFAULT_TABLES_DIR;
#else
  return "tables";
#endif
}

// A transcription defect in a published cell: `printed` is what the source
// shows, `corrected` the recomputed value shipped in `terms`.
struct Misprint {
  std::int64_t weight = 0;
  std::uint64_t printed = 0;
  std::uint64_t corrected = 0;
  std::string reason;
};

struct TableEntry {
  std::string class_id;
  std::int64_t q = 0;
  // leading terms: every listed (w, count) is exact and every unlisted
  // weight below the largest listed one is zero
  std::vector<std::pair<std::int64_t, std::uint64_t>> terms;
  std::vector<Misprint> misprints;
};

struct ATable {
  std::string name;  // "A1" | "A2" | "A3"
  std::vector<TableEntry> entries;
};

namespace tables_detail {

inline nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(in);
}

}  // namespace tables_detail

inline ATable load_table(const std::string& name,
                         const std::string& dir = tables_dir()) {
  if (name != "A1" && name != "A2" && name != "A3")
    throw std::invalid_argument("unknown enumerator table " + name);
  const auto j = tables_detail::load_json(dir + "/" + name + ".json");
  ATable t;
  t.name = j.at("table").get<std::string>();
  for (const auto& je : j.at("entries")) {
    TableEntry e;
    e.class_id = je.at("class").get<std::string>();
    e.q = je.at("q").get<std::int64_t>();
    for (const auto& term : je.at("terms")) {
      if (term[1].is_null())
        throw std::runtime_error("incomplete cell in " + name + " for " +
                                 e.class_id);
      e.terms.emplace_back(term[0].get<std::int64_t>(),
                           term[1].get<std::uint64_t>());
    }
    if (je.contains("misprints")) {
      for (const auto& jm : je.at("misprints")) {
        Misprint m;
        m.weight = jm.at("weight").get<std::int64_t>();
        m.printed = jm.at("printed").get<std::uint64_t>();
        m.corrected = jm.at("corrected").get<std::uint64_t>();
        m.reason = jm.at("reason").get<std::string>();
        e.misprints.push_back(std::move(m));
      }
    }
    t.entries.push_back(std::move(e));
  }
  return t;
}

// The shipped polygon catalog, for cross-checking against the embedded one.
inline std::vector<ClassRecord> load_catalog_json(
    const std::string& dir = tables_dir()) {
  const auto j = tables_detail::load_json(dir + "/catalog.json");
  std::vector<ClassRecord> out;
  for (const auto& jc : j.at("classes")) {
    ClassRecord r;
    r.id = jc.at("id").get<std::string>();
    std::vector<LatticePoint> verts;
    for (const auto& v : jc.at("vertices"))
      verts.push_back({v[0].get<std::int64_t>(), v[1].get<std::int64_t>()});
    r.representative = convex_hull(verts);
    r.k = static_cast<int>(lattice_points(r.representative).size());
    out.push_back(std::move(r));
  }
  return out;
}

// The shipped parent/vector/child extension table, as printed.
inline std::vector<Table1Row> load_table1_json(
    const std::string& dir = tables_dir()) {
  const auto j = tables_detail::load_json(dir + "/table1.json");
  std::vector<Table1Row> rows;
  for (const auto& jr : j.at("rows")) {
    Table1Row r;
    r.parent = jr.at("parent").get<std::string>();
    for (const auto& v : jr.at("vs"))
      r.vs.push_back({v[0].get<std::int64_t>(), v[1].get<std::int64_t>()});
    r.child = jr.at("child").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

struct CheckLine {
  std::string label;
  bool ok = false;
  std::string detail;  // empty when ok
};

struct VerifyReport {
  std::vector<CheckLine> lines;
  std::vector<std::string> notes;
  std::int64_t cells_checked = 0;
  std::int64_t failures = 0;

  bool ok() const { return failures == 0; }
  void add(std::string label, bool good, std::string detail = "") {
    if (!good) ++failures;
    lines.push_back({std::move(label), good, std::move(detail)});
  }
};

// Recomputes every entry of an enumerator table (optionally restricted to
// one q) and diffs it against the transcription under leading-term
// semantics. Misprint annotations are re-validated: the computed value must
// equal the shipped correction, never the printed one.
inline VerifyReport verify_enumerator_table(
    const ATable& table, std::optional<std::int64_t> q_filter = std::nullopt,
    int workers = 1) {
  VerifyReport rep;
  std::map<std::int64_t, FieldSpec> fields;
  for (const auto& e : table.entries) {
    if (q_filter && e.q != *q_filter) continue;
    auto fit = fields.find(e.q);
    if (fit == fields.end())
      fit = fields.emplace(e.q, make_field_q(static_cast<int>(e.q))).first;
    const auto C = build_code(fit->second, catalog_entry(e.class_id).representative);
    const auto W = weight_enumerator(C, EnumMode::projective, workers);

    std::int64_t maxw = 0;
    std::map<std::int64_t, std::uint64_t> listed;
    for (const auto& [w, c] : e.terms) {
      listed[w] = c;
      maxw = std::max(maxw, w);
    }
    bool good = true;
    std::string detail;
    for (std::int64_t w = 0; w <= maxw; ++w) {
      const std::uint64_t want =
          listed.count(w) ? listed[w] : std::uint64_t{0};
      const std::uint64_t got = W.counts[w];
      ++rep.cells_checked;
      if (got != want) {
        good = false;
        detail = "weight " + std::to_string(w) + ": transcription " +
                 std::to_string(want) + ", computed " + std::to_string(got);
        break;
      }
    }
    for (const auto& m : e.misprints) {
      ++rep.cells_checked;
      if (W.counts[m.weight] != m.corrected) {
        good = false;
        detail = "misprint cell at weight " + std::to_string(m.weight) +
                 ": correction " + std::to_string(m.corrected) +
                 " not reproduced (computed " +
                 std::to_string(W.counts[m.weight]) + ")";
      } else {
        rep.notes.push_back(
            e.class_id + " over F_" + std::to_string(e.q) + " at weight " +
            std::to_string(m.weight) + ": source prints " +
            std::to_string(m.printed) + ", computed " +
            std::to_string(m.corrected) + " (" + m.reason + ")");
      }
    }
    rep.add(table.name + " F" + std::to_string(e.q) + " " + e.class_id, good,
            detail);
  }
  return rep;
}

// Wraps the catalog/extension verification. Failures are structural
// problems (classification invariants); the known transcription defects in
// the extension table are reported as notes.
inline VerifyReport verify_extension_table(
    const std::string& dir = tables_dir()) {
  VerifyReport rep;
  const auto shipped = load_table1_json(dir);
  const auto embedded = table1_rows();
  bool same = shipped.size() == embedded.size();
  for (size_t i = 0; same && i < shipped.size(); ++i)
    same = shipped[i].parent == embedded[i].parent &&
           shipped[i].vs == embedded[i].vs &&
           shipped[i].child == embedded[i].child;
  rep.add("shipped extension table matches the embedded transcription", same);
  ++rep.cells_checked;

  const Theorem1Report t = verify_theorem1();
  rep.add("catalog self-check", t.catalog_self_check);
  rep.add("representatives pairwise inequivalent (" +
              std::to_string(t.inequivalence_checks) + " pairs)",
          t.pairwise_inequivalent);
  rep.add("every extension classifies", !t.any_unclassified);
  bool chains = !t.chain_complete.empty();
  for (const auto& [k, complete] : t.chain_complete) chains = chains && complete;
  rep.add("extension chains cover all classes", chains);
  rep.cells_checked += static_cast<std::int64_t>(t.agreements.size() +
                                                 t.discrepancies.size()) +
                       4;
  rep.add("rows reproduced as printed: " +
              std::to_string(t.agreements.size()) + " of " +
              std::to_string(t.agreements.size() + t.discrepancies.size()),
          true);
  for (const auto& d : t.discrepancies)
    rep.notes.push_back("transcription defect: " + d);
  return rep;
}

// Cross-checks the closed forms against enumeration (small q) and against
// the transcribed tables (q >= 23, where the count formulas are valid).
inline VerifyReport verify_formulas(
    std::optional<std::int64_t> q_filter = std::nullopt, int workers = 1,
    const std::string& dir = tables_dir()) {
  VerifyReport rep;

  for (std::int64_t q : {9, 11, 13}) {
    if (q_filter && q != *q_filter) continue;
    const auto F = make_field_q(static_cast<int>(q));
    // table with full leading terms for this q, if any, for the n1 column
    const ATable src = load_table(q == 9 ? "A1" : "A2", dir);
    std::map<std::string, const TableEntry*> by_class;
    for (const auto& e : src.entries)
      if (e.q == q) by_class[e.class_id] = &e;

    for (const auto& rec : catalog(6)) {
      const auto C = build_code(F, rec.representative);
      const auto W = weight_enumerator(C, EnumMode::projective, workers);
      const std::int64_t d = W.min_positive_weight();
      const std::int64_t want = predicted_distance(rec.id, q).value;
      ++rep.cells_checked;
      rep.add("distance " + rec.id + " over F_" + std::to_string(q),
              d == want,
              d == want ? "" : "enumerated " + std::to_string(d) +
                  ", closed form " + std::to_string(want));

      const auto it = by_class.find(rec.id);
      if (it == by_class.end()) continue;
      const std::int64_t w1 = (q - 1) * (q - 1) - 2 * (q - 1);
      std::int64_t maxw = 0;
      std::uint64_t cell = 0;
      bool have = false;
      for (const auto& [w, c] : it->second->terms) {
        maxw = std::max(maxw, w);
        if (w == w1) {
          cell = c;
          have = true;
        }
      }
      if (!have && w1 <= maxw) have = true;  // implicit zero
      if (have) {
        ++rep.cells_checked;
        rep.add("count at weight " + std::to_string(w1) + " " + rec.id +
                    " over F_" + std::to_string(q),
                W.counts[w1] == cell,
                W.counts[w1] == cell
                    ? ""
                    : "enumerated " + std::to_string(W.counts[w1]) +
                          ", transcription " + std::to_string(cell));
      }
    }
  }

  // formula-vs-transcription for every exact prediction at q >= 23
  for (const std::string tname : {"A2", "A3"}) {
    const ATable t = load_table(tname, dir);
    for (const auto& e : t.entries) {
      if (e.q < 23 || (q_filter && e.q != *q_filter)) continue;
      std::int64_t maxw = 0;
      std::map<std::int64_t, std::uint64_t> listed;
      for (const auto& [w, c] : e.terms) {
        listed[w] = c;
        maxw = std::max(maxw, w);
      }
      auto cell_value = [&](std::int64_t w) -> std::optional<std::uint64_t> {
        if (listed.count(w)) return listed[w];
        if (w <= maxw) return std::uint64_t{0};
        return std::nullopt;
      };
      const int idx = std::stoi(e.class_id.substr(3));
      if (idx < 3 || idx > 13) continue;

      const auto n1 = predicted_n1(e.class_id, e.q);
      if (n1.validity.holds(e.q)) {
        if (const auto cell = cell_value(n1.weight)) {
          ++rep.cells_checked;
          rep.add("n1 formula " + e.class_id + " over F_" +
                      std::to_string(e.q),
                  *cell == static_cast<std::uint64_t>(n1.value),
                  *cell == static_cast<std::uint64_t>(n1.value)
                      ? ""
                      : "formula " + std::to_string(n1.value) +
                            ", transcription " + std::to_string(*cell));
        }
      }
      std::optional<CountPrediction> n2;
      try {
        n2 = predicted_n2(e.class_id, e.q);
      } catch (const std::invalid_argument&) {
        // combination not addressed by the closed forms
      }
      if (n2 && n2->validity.holds(e.q)) {
        if (const auto cell = cell_value(n2->weight)) {
          ++rep.cells_checked;
          bool good = false;
          std::string expect;
          switch (n2->kind) {
            case CountPrediction::Kind::exact:
              good = *cell == static_cast<std::uint64_t>(n2->value);
              expect = std::to_string(n2->value);
              break;
            case CountPrediction::Kind::lower_bound:
              good = *cell >= static_cast<std::uint64_t>(n2->value);
              expect = ">= " + std::to_string(n2->value);
              break;
            case CountPrediction::Kind::positive:
              good = *cell > 0;
              expect = "> 0";
              break;
          }
          rep.add("n2 formula " + e.class_id + " over F_" +
                      std::to_string(e.q),
                  good,
                  good ? ""
                       : "formula " + expect + ", transcription " +
                             std::to_string(*cell));
        }
      }
    }
  }
  return rep;
}

// ---- serialization -------------------------------------------------------

inline nlohmann::json enumerator_document(
    const std::optional<std::string>& class_id, const ToricCode& C,
    const WeightEnumerator& W, EnumMode mode, int workers) {
  nlohmann::json doc;
  doc["class"] = class_id ? nlohmann::json(*class_id) : nlohmann::json();
  if (!class_id) {
    nlohmann::json poly = nlohmann::json::array();
    for (const auto& v : C.polygon.vertices)
      poly.push_back(nlohmann::json::array({v.x, v.y}));
    doc["polygon"] = poly;
  }
  doc["q"] = C.field.q;
  doc["modulus"] = C.field.modulus;
  doc["mode"] = mode == EnumMode::full ? "full" : "projective";
  doc["workers"] = workers;
  nlohmann::json weights = nlohmann::json::array();
  for (size_t w = 0; w < W.counts.size(); ++w)
    if (W.counts[w] != 0)
      weights.push_back(nlohmann::json::array({w, W.counts[w]}));
  doc["weights"] = weights;
  return doc;
}

inline std::string enumerator_csv(const WeightEnumerator& W) {
  std::ostringstream out;
  out << "weight,count\n";
  for (size_t w = 0; w < W.counts.size(); ++w)
    if (W.counts[w] != 0) out << w << "," << W.counts[w] << "\n";
  return out.str();
}

inline nlohmann::json checkpoint_to_json(const EnumCheckpoint& cp) {
  nlohmann::json j;
  std::ostringstream hash;
  hash << std::hex << cp.config_hash;
  j["config_hash"] = hash.str();
  j["total_chunks"] = cp.total_chunks;
  j["done"] = cp.done;
  j["histogram"] = cp.histogram;
  return j;
}

inline EnumCheckpoint checkpoint_from_json(const nlohmann::json& j) {
  EnumCheckpoint cp;
  cp.config_hash =
      std::stoull(j.at("config_hash").get<std::string>(), nullptr, 16);
  cp.total_chunks = j.at("total_chunks").get<std::uint64_t>();
  cp.done = j.at("done").get<std::vector<std::uint64_t>>();
  cp.histogram = j.at("histogram").get<std::vector<std::uint64_t>>();
  return cp;
}

}  // namespace toric
