#include "k3cover/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace k3cover {

using Json = nlohmann::ordered_json;

std::string format_complex(CD z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

namespace {

Json json_complex(CD z) { return format_complex(z); }

Json json_datum(const BranchDatum& bd) {
  Json pairs = Json::array();
  for (const BranchPair& p : bd.pairs) pairs.push_back({p.degree, p.order});
  return pairs;
}

std::string pad(const std::string& s, size_t w) {
  std::string out = s;
  while (out.size() < w) out += ' ';
  return out;
}

}  // namespace

std::string render_classification(const std::vector<ExclusionVerdict>& rows, ReportFormat fmt,
                                  bool diagnostic) {
  if (fmt == ReportFormat::Structured) {
    Json out;
    out["report"] = "classification";
    out["diagnostic_line_branches"] = diagnostic;
    out["rows"] = Json::array();
    for (const ExclusionVerdict& v : rows) {
      Json row;
      row["datum"] = v.datum.str();
      row["pairs"] = json_datum(v.datum);
      row["order"] = v.datum.group_order();
      row["euler"] = v.euler_char;
      row["status"] = v.admissible ? "ADMISSIBLE" : "EXCLUDED";
      row["reason"] = v.admissible ? "" : reason_tag(v.reason);
      row["group"] = v.group_label;
      row["surface"] = v.surface_label;
      row["derivation"] = v.derivation;
      out["rows"].push_back(std::move(row));
    }
    int adm = 0;
    for (const ExclusionVerdict& v : rows) adm += v.admissible;
    out["admissible"] = adm;
    return out.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "branch-data classification (" << rows.size() << " candidates";
  if (diagnostic) os << ", line-branch diagnostic rows included";
  os << ")\n";
  os << pad("datum", 18) << pad("n", 5) << pad("chi", 6) << pad("status", 12)
     << pad("reason", 26) << pad("group", 8) << "surface\n";
  for (const ExclusionVerdict& v : rows) {
    os << pad(v.datum.str(), 18) << pad(std::to_string(v.datum.group_order()), 5)
       << pad(std::to_string(v.euler_char), 6)
       << pad(v.admissible ? "ADMISSIBLE" : "EXCLUDED", 12)
       << pad(v.admissible ? "-" : reason_tag(v.reason), 26)
       << pad(v.admissible ? v.group_label : "-", 8)
       << (v.admissible ? v.surface_label : "-") << "\n";
    os << "    " << v.derivation << "\n";
  }
  int adm = 0;
  for (const ExclusionVerdict& v : rows) adm += v.admissible;
  os << "admissible data: " << adm << "\n";
  return os.str();
}

std::string render_monodromy(const MonodromyResult& res, std::uint64_t seed, ReportFormat fmt) {
  if (fmt == ReportFormat::Structured) {
    Json out;
    out["report"] = "monodromy";
    out["seed"] = seed;
    out["degree"] = res.degree;
    out["discriminant_method"] = res.discriminant_method;
    out["base"] = json_complex(res.base_s);
    out["branch_points"] = Json::array();
    for (size_t i = 0; i < res.branch_points.size(); ++i) {
      Json bp;
      bp["s"] = json_complex(res.branch_points[i]);
      bp["cycles"] = cycle_string(res.loop_permutations[i]);
      out["branch_points"].push_back(std::move(bp));
    }
    out["group_order"] = res.group.order();
    out["group"] = res.group.iso_label();
    out["element_orders"] = res.group.order_multiset();
    out["transitive"] = res.group.transitive();
    out["galois"] = res.galois.galois;
    out["galois_reason"] = res.galois.reason;
    out["genus"] = res.genus;
    out["max_tracking_residual"] = res.max_tracking_residual;
    out["fiber_separation"] = res.fiber_separation;
    out["reseeds"] = res.reseeds_used;
    return out.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "monodromy of the pencil cover (degree " << res.degree << ", seed " << seed << ")\n";
  os << "  discriminant method: " << res.discriminant_method << "\n";
  os << "  base value: " << format_complex(res.base_s) << "\n";
  os << "  branch points (" << res.branch_points.size() << "), loop cycle types:\n";
  for (size_t i = 0; i < res.branch_points.size(); ++i)
    os << "    " << pad(format_complex(res.branch_points[i]), 34) << " "
       << cycle_string(res.loop_permutations[i]) << "\n";
  os << "  group: order " << res.group.order() << ", " << res.group.iso_label()
     << (res.group.transitive() ? ", transitive" : ", intransitive") << "\n";
  os << "  Galois: " << (res.galois.galois ? "TRUE" : "FALSE") << " (" << res.galois.reason
     << ")\n";
  os << "  genus: " << res.genus << "\n";
  os << "  max tracking residual: " << res.max_tracking_residual << "\n";
  return os.str();
}

std::string render_bitangents(const BitangentReport& rep, std::uint64_t seed, ReportFormat fmt) {
  if (fmt == ReportFormat::Structured) {
    Json out;
    out["report"] = "bitangents";
    out["seed"] = seed;
    out["bitangents"] = rep.bitangents;
    out["hyperflexes"] = rep.hyperflexes;
    out["ledger"] = {{"dual_degree", rep.ledger.dual_degree},
                     {"simple_flexes", rep.ledger.simple_flexes},
                     {"hyperflexes", rep.ledger.hyperflexes},
                     {"nodes", rep.ledger.nodes}};
    out["lines"] = Json::array();
    for (const BitangentRecord& r : rep.records) {
      Json rec;
      rec["line"] = {json_complex(r.line[0]), json_complex(r.line[1]), json_complex(r.line[2])};
      rec["hyperflex"] = r.hyperflex;
      rec["real"] = r.real_line;
      rec["residual"] = r.residual;
      rec["points"] = Json::array();
      for (const auto& p : r.points)
        rec["points"].push_back({json_complex(p[0]), json_complex(p[1]), json_complex(p[2])});
      out["lines"].push_back(std::move(rec));
    }
    return out.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "bitangent analysis (seed " << seed << ")\n";
  os << "  non-degenerate bitangents: " << rep.bitangents << "\n";
  os << "  hyperflex tangents:        " << rep.hyperflexes << "\n";
  os << "  ledger: dual degree " << rep.ledger.dual_degree << ", simple flexes "
     << rep.ledger.simple_flexes << ", nodes " << rep.ledger.nodes << " (= 28 - "
     << rep.ledger.hyperflexes << ")\n";
  for (const BitangentRecord& r : rep.records) {
    os << "  [" << (r.hyperflex ? "hyperflex" : "bitangent") << (r.real_line ? ", real" : "")
       << "] " << format_complex(r.line[0]) << " , " << format_complex(r.line[1]) << " , "
       << format_complex(r.line[2]) << "  residual " << r.residual << "\n";
  }
  return os.str();
}

std::string render_euler(const BranchDatum& datum, long chi, ReportFormat fmt) {
  if (fmt == ReportFormat::Structured) {
    Json out;
    out["report"] = "euler";
    out["datum"] = datum.str();
    out["pairs"] = json_datum(datum);
    out["order"] = datum.group_order();
    out["euler"] = chi;
    return out.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "datum " << datum.str() << "  order " << datum.group_order() << "  chi " << chi << "\n";
  return os.str();
}

std::string render_certificate(const VerifyCertificate& cert, ReportFormat fmt) {
  auto genus_expect = [&] { return cert.expected_genus; };
  if (fmt == ReportFormat::Structured) {
    Json out;
    out["report"] = "verify";
    out["family"] = cert.family_label;
    out["seed"] = cert.seed;
    out["construction"] = cert.construction_ok;
    out["smoothness_probe"] = cert.smoothness_probe_ok;
    out["group"] = {{"order", cert.group_order},
                    {"element_orders", cert.group_order_multiset},
                    {"label", cert.group_label}};
    out["criterion"] = {{"order", cert.criterion.cond_order},
                        {"scalar_system", cert.criterion.cond_scalar_system},
                        {"base_point_free", cert.criterion.cond_base_point_free},
                        {"verdict", cert.criterion.verdict}};
    out["decomposition"] = {{"kernel_order", cert.gamma.g1_order},
                            {"kernel", cert.gamma.g1_label},
                            {"image_order", cert.gamma.g2_order},
                            {"image", cert.gamma.g2_label},
                            {"kernel_cyclic", cert.gamma.g1_cyclic}};
    out["hypersurface_rule"] = cert.hypersurface_rule_ok;
    out["character"] = {{"image_order", cert.characters.image_order},
                        {"kernel_order", cert.characters.kernel_order},
                        {"oracle_gap", cert.character_oracle_gap}};
    Json eps = Json::array();
    for (const auto& ru : cert.characters.epsilon_exact)
      eps.push_back(ru ? ru->str() : "?");
    out["character"]["epsilon"] = std::move(eps);
    out["monodromy"] = {{"order", cert.monodromy.group.order()},
                        {"group", cert.monodromy.group.iso_label()},
                        {"galois", cert.monodromy.galois.galois},
                        {"genus", cert.monodromy.genus},
                        {"expected_genus", genus_expect()},
                        {"branch_points", cert.monodromy.branch_points.size()},
                        {"max_residual", cert.monodromy.max_tracking_residual}};
    out["group_matches"] = cert.group_matches;
    Json ledger;
    ledger["pairs"] = Json::array();
    for (const BranchPair& p : cert.ledger.pairs) ledger["pairs"].push_back({p.degree, p.order});
    ledger["identity"] = cert.ledger.identity_holds;
    ledger["left"] = cert.ledger.left;
    ledger["right"] = cert.ledger.right;
    out["ramification_ledger"] = std::move(ledger);
    out["tower"] = {{"ok", cert.tower_ok},
                    {"fibers", {cert.tower_sizes[0], cert.tower_sizes[1], cert.tower_sizes[2]}}};
    out["extra_generators"] = cert.extra_generator_notes;
    out["all_ok"] = cert.all_ok;
    out["failed_stage"] = cert.failed_stage;
    return out.dump(2) + "\n";
  }
  std::ostringstream os;
  auto mark = [](bool ok) { return ok ? "ok" : "FAIL"; };
  os << "verification certificate: family " << cert.family_label << " (seed " << cert.seed
     << ")\n";
  os << "  group:                       " << cert.group_label << " of order " << cert.group_order
     << ", element orders";
  for (int o : cert.group_order_multiset) os << " " << o;
  os << "\n";
  os << "  construction / validators:   " << mark(cert.construction_ok) << "\n";
  os << "  smoothness probe:            " << mark(cert.smoothness_probe_ok) << "\n";
  os << "  embedding criterion:         " << mark(cert.criterion.verdict) << " (order "
     << mark(cert.criterion.cond_order) << ", scalar system "
     << mark(cert.criterion.cond_scalar_system) << ", base-point free "
     << mark(cert.criterion.cond_base_point_free) << ")\n";
  os << "  block decomposition:         kernel " << cert.gamma.g1_label << " (order "
     << cert.gamma.g1_order << ", cyclic " << mark(cert.gamma.g1_cyclic) << "), image "
     << cert.gamma.g2_label << "\n";
  os << "  hypersurface cyclic rule:    " << mark(cert.hypersurface_rule_ok) << "\n";
  os << "  2-form character:            image order " << cert.characters.image_order
     << ", symplectic kernel " << cert.characters.kernel_order << ", oracle gap "
     << cert.character_oracle_gap << "\n";
  os << "  monodromy:                   order " << cert.monodromy.group.order() << " ("
     << cert.monodromy.group.iso_label() << "), Galois "
     << (cert.monodromy.galois.galois ? "TRUE" : "FALSE") << ", genus " << cert.monodromy.genus
     << " (expected " << cert.expected_genus << "), " << cert.monodromy.branch_points.size()
     << " branch points\n";
  os << "  group match:                 " << mark(cert.group_matches) << "\n";
  os << "  ramification ledger:         " << mark(cert.ledger.identity_holds) << " ("
     << cert.ledger.left << " = " << cert.ledger.right << ")\n";
  if (cert.family_label == "S222")
    os << "  tower of double covers:      " << mark(cert.tower_ok) << " (fibers "
       << cert.tower_sizes[0] << ", " << cert.tower_sizes[1] << ", " << cert.tower_sizes[2]
       << ")\n";
  for (const std::string& note : cert.extra_generator_notes) os << "  generator: " << note << "\n";
  os << (cert.all_ok ? "ALL CHECKS PASSED" : "FAILED at stage: " + cert.failed_stage) << "\n";
  return os.str();
}

}  // namespace k3cover
