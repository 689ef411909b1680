#pragma once

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mezzo/duality.hpp"
#include "mezzo/errors.hpp"
#include "mezzo/hodge.hpp"
#include "mezzo/indicial.hpp"
#include "mezzo/io.hpp"
#include "mezzo/mezzo.hpp"
#include "mezzo/refined.hpp"
#include "mezzo/space.hpp"
#include "mezzo/strata.hpp"

namespace mezzo::cli {

using json = io::json;

struct JobConfig {
  std::string command;
  std::string space_file;
  std::string mezzo_spec;  // file path, "zero" or "full"
  std::string metric_file;
  std::string delta;
  std::string stratum;
  std::string format = "text";
  double zero_threshold = 1e-8;
};

inline json number_or_inf(double x) { return std::isfinite(x) ? json(x) : json("inf"); }

inline json dims_json(const std::vector<std::size_t>& dims) {
  json arr = json::array();
  for (auto d : dims) arr.push_back(d);
  return arr;
}

inline json provenance_json(const refined::ProvenanceNode& node) {
  json j;
  j["stratum"] = node.path.empty() ? "regular" : node.path;
  j["rule"] = node.rule;
  j["dims"] = dims_json(node.dims);
  if (!node.children.empty()) {
    json kids = json::array();
    for (const auto& c : node.children) kids.push_back(provenance_json(c));
    j["children"] = kids;
  }
  return j;
}

inline json mezzo_json(const Mezzoperversity& m) {
  json j = json::object();
  for (const auto& [id, w] : m.assignments) j[id] = io::subspace_json(w);
  return j;
}

// ---------------------------------------------------------------------------
// Text rendering: the same document, laid out as indented key/value lines.
// ---------------------------------------------------------------------------

inline bool is_scalar_array(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (x.is_structured() && !is_scalar_array(x)) return false;
  return true;
}

inline std::string inline_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + inline_text(j[i]);
    return s + "]";
  }
  return j.dump();
}

inline void render_text(const json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const json& v = it.value();
      if (v.is_object() || (v.is_array() && !is_scalar_array(v))) {
        out << pad << it.key() << ":\n";
        render_text(v, out, indent + 2);
      } else {
        out << pad << it.key() << ": " << inline_text(v) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object()) {
        out << pad << "-\n";
        render_text(v, out, indent + 2);
      } else {
        out << pad << "- " << inline_text(v) << "\n";
      }
    }
  } else {
    out << pad << inline_text(j) << "\n";
  }
}

inline void emit(const json& doc, const std::string& format, std::ostream& out) {
  if (format == "structured")
    out << doc.dump(2) << "\n";
  else
    render_text(doc, out, 0);
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

inline Mezzoperversity load_mezzo(const JobConfig& cfg, const StratifiedSpace& space, bool required) {
  if (cfg.mezzo_spec.empty()) {
    if (required) throw Error(ErrorKind::input, "--mezzo is required for " + cfg.command);
    return {};
  }
  if (cfg.mezzo_spec == "zero") return extreme_mezzoperversity(space, Extreme::zero);
  if (cfg.mezzo_spec == "full") return extreme_mezzoperversity(space, Extreme::full);
  return io::mezzo_from(io::load_json(cfg.mezzo_spec), cfg.mezzo_spec);
}

inline json space_summary(const StratifiedSpace& space) {
  json j;
  j["kind"] = to_string(space.kind());
  j["dimension"] = space.dimension();
  j["depth"] = space.depth();
  return j;
}

inline json cmd_strata(const JobConfig& cfg, const StratifiedSpace& space) {
  Mezzoperversity m = load_mezzo(cfg, space, false);
  json doc;
  doc["command"] = "strata";
  doc["space"] = space_summary(space);
  json list = json::array();
  json regular;
  regular["id"] = "regular";
  regular["depth"] = 0;
  regular["status"] = "regular";
  list.push_back(regular);
  for (const auto& s : enumerate_strata(space)) {
    json e;
    e["id"] = s.id;
    e["depth"] = s.depth;
    e["link_kind"] = to_string(s.link->kind());
    e["link_dim"] = s.link_dim;
    e["components"] = s.components;
    try {
      WittStatus w = witt_status(s, m);
      e["status"] = w.witt ? "witt" : "non_witt";
      e["middle_dim"] = w.middle_dim;
    } catch (const StratumError& err) {
      e["status"] = "undetermined";
      e["depends_on"] = err.stratum();
    }
    list.push_back(e);
  }
  doc["strata"] = list;
  return doc;
}

inline json issue_json(const ValidationIssue& issue) {
  json j;
  j["kind"] = to_string(issue.kind);
  j["stratum"] = issue.stratum;
  if (issue.generator) j["generator"] = *issue.generator;
  j["message"] = issue.message;
  return j;
}

inline json cmd_validate(const JobConfig& cfg, const StratifiedSpace& space, bool& valid) {
  Mezzoperversity m = load_mezzo(cfg, space, true);
  ValidationReport rep = validate(space, m);
  valid = rep.valid();
  json doc;
  doc["command"] = "validate";
  doc["valid"] = rep.valid();
  json list = json::array();
  for (const auto& c : rep.strata) {
    json e;
    e["id"] = c.id;
    e["depth"] = c.depth;
    e["link_dim"] = c.link_dim;
    e["status"] = c.compatible ? (c.witt ? "witt" : "non_witt") : "undetermined";
    e["ambient_dim"] = c.ambient;
    e["w_dim"] = c.w_dim ? json(*c.w_dim) : json(nullptr);
    e["rank_ok"] = c.rank_ok;
    e["flat_ok"] = c.flat_ok;
    e["compatible"] = c.compatible;
    list.push_back(e);
  }
  doc["strata"] = list;
  json issues = json::array();
  for (const auto& i : rep.issues) issues.push_back(issue_json(i));
  doc["issues"] = issues;
  return doc;
}

inline json cmd_cohomology(const JobConfig& cfg, const StratifiedSpace& space) {
  Mezzoperversity m = load_mezzo(cfg, space, false);
  require_valid(space, m);
  refined::RefinedCohomology rc = refined::refined_cohomology(space, m, true);
  json doc;
  doc["command"] = "cohomology";
  doc["space"] = space_summary(space);
  json table = json::array();
  for (std::size_t k = 0; k < rc.dims.size(); ++k) {
    json row;
    row["degree"] = k;
    row["dim"] = rc.dims[k];
    table.push_back(row);
  }
  doc["dims"] = dims_json(rc.dims);
  doc["table"] = table;
  doc["chain_level_check"] = rc.chain_checked ? "agrees" : "skipped";
  if (!cfg.metric_file.empty()) {
    CochainComplex model = refined::chain_model(space, m);
    hodge::InnerProductFamily ip = io::metric_from(io::load_json(cfg.metric_file), model.dims, cfg.metric_file);
    auto harmonic = hodge::harmonic_dims(model, ip, cfg.zero_threshold);
    harmonic.resize(rc.dims.size());
    doc["harmonic_dims"] = dims_json(harmonic);
  }
  doc["provenance"] = provenance_json(rc.provenance);
  return doc;
}

inline json cmd_duality(const JobConfig& cfg, const StratifiedSpace& space) {
  Mezzoperversity m = load_mezzo(cfg, space, true);
  require_valid(space, m);
  Mezzoperversity d = dual_mezzoperversity(space, m);
  json doc;
  doc["command"] = "duality";
  doc["space"] = space_summary(space);
  json list = json::array();
  for (const auto& s : enumerate_strata(space)) {
    const QMatrix* w = m.find(s.id);
    if (!w) continue;
    IntersectionForm form = stratum_form(s);
    json e;
    e["id"] = s.id;
    e["form"] = io::matrix_json(form.matrix);
    e["parity"] = to_string(form.parity);
    e["W"] = io::subspace_json(w->cols() == 0 ? QMatrix(form.size(), 0) : *w);
    e["DW"] = io::subspace_json(*d.find(s.id));
    list.push_back(e);
  }
  doc["strata"] = list;
  const bool self_dual = is_self_dual(space, m);
  doc["self_dual"] = self_dual;
  if (space.is_closed_space()) {
    PoincareReport p = poincare_check(space, m);
    json pj;
    pj["dims_W"] = dims_json(p.dims);
    pj["dims_DW"] = dims_json(p.dual_dims);
    pj["dimension_symmetry"] = p.dimension_symmetry;
    pj["closed_pairings_nondegenerate"] = p.closed_pairings_nondegenerate;
    pj["checks"] = p.checks;
    doc["poincare"] = pj;
    if (self_dual) doc["signature"] = signature(space, m);
  } else {
    doc["poincare"] = "not applicable: space has boundary";
  }
  return doc;
}

inline const Stratum& pick_stratum(const std::vector<Stratum>& strata, const StratifiedSpace& space, const std::string& id) {
  const std::string wanted = id.empty() ? space.own_stratum_id() : id;
  for (const auto& s : strata)
    if (s.id == wanted) return s;
  throw Error(ErrorKind::reference, "unknown stratum id " + (wanted.empty() ? std::string("(closed space has none)") : wanted));
}

inline json root_json(const indicial::Root& r) {
  json j;
  j["value"] = r.value();
  j["exact"] = r.symbolic();
  j["degree"] = r.degree;
  if (r.harmonic) {
    j["multiplicity"] = r.multiplicity;
  } else {
    j["mu"] = r.mu;
    j["signs"] = json::array({r.outer_sign, r.sqrt_choice, r.inner_sign});
    j["multiplicity"] = r.multiplicity;
  }
  return j;
}

inline json cmd_indicial(const JobConfig& cfg, const StratifiedSpace& space) {
  Mezzoperversity m = load_mezzo(cfg, space, false);
  const auto strata = enumerate_strata(space);
  const Stratum& s = pick_stratum(strata, space, cfg.stratum);
  std::optional<hodge::InnerProductFamily> ip;
  const std::string scope = link_scope(s);
  CochainComplex model = refined::chain_model(*s.link, m.restricted(scope), scope);
  if (!cfg.metric_file.empty()) ip = io::metric_from(io::load_json(cfg.metric_file), model.dims, cfg.metric_file);
  hodge::SpectrumTable table = indicial::stratum_spectra(s, m, ip ? &*ip : nullptr, cfg.zero_threshold);
  indicial::RootSet roots = indicial::indicial_roots(table, s.link_dim, cohomology_dims(model));
  indicial::ScalingReport sc = indicial::suitably_scaled(table, s.link_dim);

  json doc;
  doc["command"] = "indicial";
  doc["stratum"] = s.id;
  doc["link_dim"] = s.link_dim;
  json spec = json::array();
  for (const auto& row : table.rows) {
    json r;
    r["degree"] = row.degree;
    r["eigenvalues"] = row.eigenvalues;
    spec.push_back(r);
  }
  doc["spectra"] = spec;
  json harm = json::array();
  for (const auto& r : roots.harmonic) harm.push_back(root_json(r));
  doc["harmonic_roots"] = harm;
  json non = json::array();
  for (const auto& r : roots.nonharmonic) non.push_back(root_json(r));
  doc["nonharmonic_roots"] = non;

  json sj;
  sj["suitably_scaled"] = sc.suitably_scaled;
  sj["threshold"] = sc.threshold;
  sj["strict"] = sc.strict;
  sj["relevant_degrees"] = sc.relevant_degrees;
  json viol = json::array();
  for (const auto& v : sc.violations) viol.push_back(json::array({v.degree, v.mu}));
  sj["violations"] = viol;
  sj["min_relevant_mu"] = number_or_inf(sc.min_relevant_mu);
  sj["s_star_infimum"] = sc.s_star_infimum;
  sj["s_star"] = sc.s_star;
  sj["metric_rescale"] = sc.metric_rescale;
  sj["window"] = json::array({to_string(sc.window_lo), to_string(sc.window_hi)});
  json wr = json::array();
  for (const auto& r : sc.window_roots) wr.push_back(r.symbolic());
  sj["window_roots"] = wr;
  sj["window_ok"] = sc.window_ok;
  if (!sc.note.empty()) sj["note"] = sc.note;
  doc["scaling"] = sj;

  if (!cfg.delta.empty()) {
    Rational delta;
    try {
      delta = parse_rational(cfg.delta);
    } catch (const Error&) {
      throw Error(ErrorKind::input, "--delta: not a rational literal: " + cfg.delta);
    }
    indicial::WeightGap g = indicial::weight_gaps(roots, delta);
    json gj;
    gj["delta"] = to_string(g.delta);
    gj["line"] = to_string(g.line);
    gj["eta_plus"] = number_or_inf(g.eta_plus);
    gj["eta_minus"] = number_or_inf(g.eta_minus);
    doc["weight_gap"] = gj;
  }
  return doc;
}

inline json cmd_cheeger(const JobConfig&, const StratifiedSpace& space) {
  CheegerReport rep = find_cheeger_structure(space);
  json doc;
  doc["command"] = "cheeger";
  doc["cheeger_space"] = rep.cheeger;
  json list = json::array();
  for (const auto& e : rep.strata) {
    json j;
    j["id"] = e.id;
    j["form"] = io::matrix_json(e.form.matrix);
    j["parity"] = to_string(e.form.parity);
    j["strategy"] = e.result.strategy;
    if (e.result.lagrangian) j["lagrangian"] = io::subspace_json(*e.result.lagrangian);
    if (e.result.obstruction) {
      json o;
      o["kind"] = to_string(e.result.obstruction->kind);
      if (e.result.obstruction->kind == ObstructionKind::nonzero_signature) o["signature"] = e.result.obstruction->signature;
      o["detail"] = e.result.obstruction->detail;
      j["obstruction"] = o;
    }
    list.push_back(j);
  }
  doc["strata"] = list;
  if (rep.cheeger) doc["self_dual_mezzoperversity"] = mezzo_json(rep.self_dual);
  return doc;
}

inline json error_json(const Error& e) {
  json j;
  j["kind"] = to_string(e.kind());
  if (const auto* s = dynamic_cast<const StratumError*>(&e)) j["stratum"] = s->stratum();
  if (const auto* f = dynamic_cast<const FlatnessError*>(&e)) {
    j["stratum"] = f->stratum();
    j["generator"] = f->generator();
  }
  j["message"] = e.what();
  json doc;
  doc["error"] = j;
  return doc;
}

/// Exit codes: 0 success, 1 validation or computation failure, 2 input error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  JobConfig cfg;
  CLI::App app{"Refined cohomology, duality and indicial data of stratified spaces"};
  app.add_option("command", cfg.command, "strata | validate | cohomology | duality | indicial | cheeger")
      ->required()
      ->check(CLI::IsMember({"strata", "validate", "cohomology", "duality", "indicial", "cheeger"}));
  app.add_option("--space", cfg.space_file, "space description (JSON)")->required();
  app.add_option("--mezzo", cfg.mezzo_spec, "mezzoperversity file, or zero / full");
  app.add_option("--metric", cfg.metric_file, "inner product file: \"identity\" or per-degree weights");
  app.add_option("--delta", cfg.delta, "weight δ for the gaps η±");
  app.add_option("--stratum", cfg.stratum, "stratum for indicial (default: the outermost one)");
  app.add_option("--format", cfg.format, "text | structured")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--zero-threshold", cfg.zero_threshold, "relative zero-eigenvalue threshold")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  }

  try {
    SpacePtr space = io::space_from(io::load_json(cfg.space_file), cfg.space_file);
    json doc;
    int code = 0;
    if (cfg.command == "strata") {
      doc = cmd_strata(cfg, *space);
    } else if (cfg.command == "validate") {
      bool valid = true;
      doc = cmd_validate(cfg, *space, valid);
      code = valid ? 0 : 1;
    } else if (cfg.command == "cohomology") {
      doc = cmd_cohomology(cfg, *space);
    } else if (cfg.command == "duality") {
      doc = cmd_duality(cfg, *space);
    } else if (cfg.command == "indicial") {
      doc = cmd_indicial(cfg, *space);
    } else {
      doc = cmd_cheeger(cfg, *space);
    }
    emit(doc, cfg.format, out);
    return code;
  } catch (const Error& e) {
    if (cfg.format == "structured") emit(error_json(e), cfg.format, out);
    err << e.what() << "\n";
    return e.kind() == ErrorKind::input ? 2 : 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mezzo::cli
