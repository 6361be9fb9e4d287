// toric: command-line front end for the toric-code toolkit.
//
// Subcommands: catalog, enumerator, distance, classify, extend, verify.
// Exit codes: 0 success; 1 generic error or verification mismatch;
// 2 polygon does not fit the exponent box for the chosen field;
// 3 unknown class id; 4 classify called with an out-of-range point count;
// 5 classify found no matching class.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "toric/tables.hpp"

namespace {

using nlohmann::json;

struct RunConfig {
  std::string class_id;
  std::string polygon_literal;
  int q = 0;
  std::vector<int> modulus;
  int workers = 1;
  std::string format = "text";
  std::string out;
  std::string checkpoint;  // --resume: checkpoint file, written and read
  double checkpoint_interval = 15.0;
  std::string table;
  std::optional<int> q_filter;
  int k = 6;
};

int fail(const std::string& msg, int code) {
  std::cerr << "toric: " << msg << "\n";
  return code;
}

toric::LatticePolygon parse_polygon(const std::string& literal) {
  json j;
  try {
    j = json::parse(literal);
  } catch (const json::exception&) {
    throw std::invalid_argument("polygon literal must be JSON like "
                                "[[0,0],[2,0],[0,1]]");
  }
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("polygon literal must be a non-empty array "
                                "of [x,y] pairs");
  std::vector<toric::LatticePoint> pts;
  for (const auto& v : j) {
    if (!v.is_array() || v.size() != 2)
      throw std::invalid_argument("polygon vertices must be [x,y] pairs");
    pts.push_back({v[0].get<std::int64_t>(), v[1].get<std::int64_t>()});
  }
  return toric::convex_hull(std::move(pts));
}

void emit(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open output file " + cfg.out);
  f << payload;
}

std::string polygon_str(const toric::LatticePolygon& P) {
  json arr = json::array();
  for (const auto& v : P.vertices) arr.push_back(json::array({v.x, v.y}));
  return arr.dump();
}

// ---- catalog ---------------------------------------------------------------

int cmd_catalog(const RunConfig& cfg) {
  std::vector<toric::ClassRecord> recs;
  try {
    recs = toric::catalog(cfg.k);
  } catch (const std::out_of_range& e) {
    return fail(e.what(), 1);
  }

  std::ostringstream os;
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : recs) {
      const auto acc = toric::pick_accounting(r.representative);
      json row;
      row["id"] = r.id;
      row["points"] = acc.sharp;
      row["area2"] = acc.area2;
      row["boundary"] = acc.boundary;
      row["interior"] = acc.interior;
      row["minkowski_length"] =
          toric::full_minkowski_length(r.representative).L;
      json verts = json::array();
      for (const auto& v : r.representative.vertices)
        verts.push_back(json::array({v.x, v.y}));
      row["vertices"] = verts;
      arr.push_back(row);
    }
    os << arr.dump(1) << "\n";
  } else if (cfg.format == "csv") {
    os << "id,points,area2,boundary,interior,minkowski_length\n";
    for (const auto& r : recs) {
      const auto acc = toric::pick_accounting(r.representative);
      os << r.id << "," << acc.sharp << "," << acc.area2 << ","
         << acc.boundary << "," << acc.interior << ","
         << toric::full_minkowski_length(r.representative).L << "\n";
    }
  } else {
    os << std::left << std::setw(8) << "id" << std::right << std::setw(7)
       << "points" << std::setw(7) << "area2" << std::setw(9) << "boundary"
       << std::setw(9) << "interior" << std::setw(6) << "L" << "  vertices\n";
    for (const auto& r : recs) {
      const auto acc = toric::pick_accounting(r.representative);
      os << std::left << std::setw(8) << r.id << std::right << std::setw(7)
         << acc.sharp << std::setw(7) << acc.area2 << std::setw(9)
         << acc.boundary << std::setw(9) << acc.interior << std::setw(6)
         << toric::full_minkowski_length(r.representative).L << "  "
         << polygon_str(r.representative) << "\n";
    }
  }
  emit(cfg, os.str());
  return 0;
}

// ---- enumerator ------------------------------------------------------------

int resolve_code_polygon(const RunConfig& cfg, toric::LatticePolygon& P,
                         std::optional<std::string>& cls) {
  if (!cfg.class_id.empty()) {
    try {
      P = toric::catalog_entry(cfg.class_id).representative;
    } catch (const std::out_of_range& e) {
      return fail(e.what(), 3);
    }
    cls = cfg.class_id;
  } else {
    P = parse_polygon(cfg.polygon_literal);
  }
  return 0;
}

int cmd_enumerator(const RunConfig& cfg) {
  toric::LatticePolygon P;
  std::optional<std::string> cls;
  if (int rc = resolve_code_polygon(cfg, P, cls)) return rc;
  const auto F = toric::make_field_q(cfg.q, cfg.modulus);
  if (!toric::fits_torus_box(P, F.q))
    return fail("polygon " + polygon_str(P) +
                    " does not fit the exponent box for q = " +
                    std::to_string(F.q),
                2);
  const auto C = toric::build_code(F, P);

  toric::EnumOptions opts;
  opts.mode = toric::EnumMode::projective;
  opts.workers = cfg.workers;
  if (!cfg.checkpoint.empty()) {
    std::ifstream in(cfg.checkpoint);
    if (in.good()) opts.resume = toric::checkpoint_from_json(json::parse(in));
    const std::string path = cfg.checkpoint;
    opts.checkpoint_interval_s = cfg.checkpoint_interval;
    opts.on_checkpoint = [path](const toric::EnumCheckpoint& cp) {
      const std::string tmp = path + ".tmp";
      {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << toric::checkpoint_to_json(cp).dump(1) << "\n";
      }
      std::rename(tmp.c_str(), path.c_str());
    };
  }
  const auto W = toric::weight_enumerator(C, opts);

  std::ostringstream os;
  if (cfg.format == "json") {
    os << toric::enumerator_document(cls, C, W, opts.mode, opts.workers)
              .dump(1)
       << "\n";
  } else if (cfg.format == "csv") {
    os << toric::enumerator_csv(W);
  } else {
    os << (cls ? *cls : polygon_str(P)) << " over F_" << F.q << ": ["
       << C.n << ", " << C.k << "] code\n";
    for (size_t w = 0; w < W.counts.size(); ++w)
      if (W.counts[w] != 0) os << w << "\t" << W.counts[w] << "\n";
  }
  emit(cfg, os.str());
  return 0;
}

// ---- distance --------------------------------------------------------------

int cmd_distance(const RunConfig& cfg) {
  toric::LatticePolygon P;
  std::optional<std::string> cls;
  if (int rc = resolve_code_polygon(cfg, P, cls)) return rc;
  const auto F = toric::make_field_q(cfg.q, cfg.modulus);
  if (!toric::fits_torus_box(P, F.q))
    return fail("polygon " + polygon_str(P) +
                    " does not fit the exponent box for q = " +
                    std::to_string(F.q),
                2);
  const auto C = toric::build_code(F, P);
  const std::int64_t d = toric::min_distance(C);

  std::ostringstream os;
  if (cfg.format == "json") {
    json doc;
    doc["class"] = cls ? json(*cls) : json();
    if (!cls) {
      json poly = json::array();
      for (const auto& v : P.vertices) poly.push_back(json::array({v.x, v.y}));
      doc["polygon"] = poly;
    }
    doc["q"] = F.q;
    doc["modulus"] = F.modulus;
    doc["n"] = C.n;
    doc["k"] = C.k;
    doc["distance"] = d;
    os << doc.dump(1) << "\n";
  } else if (cfg.format == "csv") {
    os << "n,k,distance\n" << C.n << "," << C.k << "," << d << "\n";
  } else {
    os << (cls ? *cls : polygon_str(P)) << " over F_" << F.q << ": ["
       << C.n << ", " << C.k << ", " << d << "]\n";
  }
  emit(cfg, os.str());
  return 0;
}

// ---- classify --------------------------------------------------------------

int cmd_classify(const RunConfig& cfg) {
  const auto P = parse_polygon(cfg.polygon_literal);
  std::optional<std::string> id;
  try {
    id = toric::classify(P);
  } catch (const std::invalid_argument& e) {
    return fail(e.what(), 4);
  }
  if (!id)
    return fail("no catalog class matches " + polygon_str(P) +
                    "; this input is a counterexample to the classification",
                5);
  const auto& rep = toric::catalog_entry(*id).representative;
  const auto T = toric::lattice_equivalent(P, rep);
  if (!T) return fail("internal error: witness reconstruction failed", 1);

  std::ostringstream os;
  if (cfg.format == "json") {
    json doc;
    doc["class"] = *id;
    doc["witness"] = {
        {"matrix", {{T->m11, T->m12}, {T->m21, T->m22}}},
        {"translation", {T->t.x, T->t.y}},
    };
    json verts = json::array();
    for (const auto& v : rep.vertices) verts.push_back(json::array({v.x, v.y}));
    doc["representative"] = verts;
    os << doc.dump(1) << "\n";
  } else if (cfg.format == "csv") {
    os << "class,m11,m12,m21,m22,tx,ty\n"
       << *id << "," << T->m11 << "," << T->m12 << "," << T->m21 << ","
       << T->m22 << "," << T->t.x << "," << T->t.y << "\n";
  } else {
    os << *id << "\n"
       << "witness: (x, y) -> (" << T->m11 << " x + " << T->m12 << " y + "
       << T->t.x << ", " << T->m21 << " x + " << T->m22 << " y + " << T->t.y
       << ")\n"
       << "maps the input onto " << polygon_str(rep) << "\n";
  }
  emit(cfg, os.str());
  return 0;
}

// ---- extend ----------------------------------------------------------------

int cmd_extend(const RunConfig& cfg) {
  const toric::ClassRecord* parent = nullptr;
  try {
    parent = &toric::catalog_entry(cfg.class_id);
  } catch (const std::out_of_range& e) {
    return fail(e.what(), 3);
  }
  std::vector<toric::ExtensionRecord> rows;
  try {
    rows = toric::extensions(*parent);
  } catch (const std::invalid_argument& e) {
    return fail(e.what(), 1);
  }

  std::ostringstream os;
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json row;
      row["parent"] = r.parent;
      row["v"] = json::array({r.v.x, r.v.y});
      row["child"] = r.child.empty() ? json() : json(r.child);
      arr.push_back(row);
    }
    os << arr.dump(1) << "\n";
  } else if (cfg.format == "csv") {
    os << "parent,vx,vy,child\n";
    for (const auto& r : rows)
      os << r.parent << "," << r.v.x << "," << r.v.y << "," << r.child
         << "\n";
  } else {
    os << rows.size() << " single-point extensions of " << parent->id
       << "\n";
    for (const auto& r : rows)
      os << "(" << std::setw(3) << r.v.x << "," << std::setw(3) << r.v.y
         << ") -> " << (r.child.empty() ? "<unclassified>" : r.child) << "\n";
  }
  emit(cfg, os.str());
  return 0;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const RunConfig& cfg) {
  toric::VerifyReport rep;
  std::optional<std::int64_t> qf;
  if (cfg.q_filter) qf = *cfg.q_filter;
  if (cfg.table == "T1") {
    rep = toric::verify_extension_table();
  } else if (cfg.table == "props") {
    rep = toric::verify_formulas(qf, cfg.workers);
  } else {
    rep = toric::verify_enumerator_table(toric::load_table(cfg.table), qf,
                                         cfg.workers);
  }

  std::ostringstream os;
  for (const auto& line : rep.lines) {
    os << (line.ok ? "PASS " : "FAIL ") << line.label;
    if (!line.detail.empty()) os << ": " << line.detail;
    os << "\n";
  }
  for (const auto& note : rep.notes) os << "NOTE " << note << "\n";
  const std::int64_t total = static_cast<std::int64_t>(rep.lines.size());
  os << (rep.ok() ? "PASS" : "FAIL") << " " << (total - rep.failures) << "/"
     << total << " checks, " << rep.cells_checked << " cells\n";
  emit(cfg, os.str());
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for toric surface codes from lattice polygons "
               "with at most 6 points"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* sc_catalog =
      app.add_subcommand("catalog", "list the polygon classes for one size");
  sc_catalog->add_option("--k", cfg.k, "number of lattice points (3..6)")
      ->required();

  auto add_output = [&](CLI::App* sc) {
    sc->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sc->add_option("--out", cfg.out, "write output to this file");
  };
  add_output(sc_catalog);

  auto add_code_source = [&](CLI::App* sc) {
    auto* c = sc->add_option("--class", cfg.class_id, "catalog class id");
    auto* p = sc->add_option("--polygon", cfg.polygon_literal,
                             "polygon vertices as JSON, e.g. [[0,0],[2,0],[0,1]]");
    c->excludes(p);
    p->excludes(c);
    sc->add_option("--q", cfg.q, "field size (prime power, 5..64)")
        ->required();
    sc->add_option("--modulus", cfg.modulus,
                   "field modulus coefficients, constant first")
        ->delimiter(',');
  };

  auto* sc_enum = app.add_subcommand(
      "enumerator", "compute the exact weight enumerator of a code");
  add_code_source(sc_enum);
  sc_enum->add_option("--workers", cfg.workers, "worker thread count")
      ->check(CLI::Range(1, 1024));
  sc_enum->add_option("--resume", cfg.checkpoint,
                      "checkpoint file: loaded when present, refreshed "
                      "periodically during the run");
  sc_enum->add_option("--checkpoint-interval", cfg.checkpoint_interval,
                      "seconds between checkpoint snapshots");
  add_output(sc_enum);

  auto* sc_dist = app.add_subcommand(
      "distance", "compute the exact minimum distance of a code");
  add_code_source(sc_dist);
  add_output(sc_dist);

  auto* sc_classify = app.add_subcommand(
      "classify", "identify the class of a polygon and print a witness map");
  sc_classify
      ->add_option("--polygon", cfg.polygon_literal,
                   "polygon vertices as JSON")
      ->required();
  add_output(sc_classify);

  auto* sc_extend = app.add_subcommand(
      "extend", "list all single-point extensions of a catalog class");
  sc_extend->add_option("--class", cfg.class_id, "parent class id (k in 3..5)")
      ->required();
  add_output(sc_extend);

  auto* sc_verify = app.add_subcommand(
      "verify", "recompute shipped tables and report any mismatch");
  sc_verify
      ->add_option("--table", cfg.table,
                   "which artifact to verify: A1, A2, A3, T1, or props")
      ->required()
      ->check(CLI::IsMember({"A1", "A2", "A3", "T1", "props"}));
  int qf = 0;
  auto* qopt = sc_verify->add_option("--q", qf, "restrict to one field size");
  sc_verify->add_option("--workers", cfg.workers, "worker thread count")
      ->check(CLI::Range(1, 1024));
  add_output(sc_verify);

  CLI11_PARSE(app, argc, argv);
  if (qopt->count() > 0) cfg.q_filter = qf;

  try {
    if (sc_catalog->parsed()) return cmd_catalog(cfg);
    if (sc_enum->parsed()) return cmd_enumerator(cfg);
    if (sc_dist->parsed()) return cmd_distance(cfg);
    if (sc_classify->parsed()) return cmd_classify(cfg);
    if (sc_extend->parsed()) return cmd_extend(cfg);
    if (sc_verify->parsed()) return cmd_verify(cfg);
  } catch (const std::exception& e) {
    return fail(e.what(), 1);
  }
  return fail("no command", 1);
}
