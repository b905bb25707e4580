// k3cover: verify Galois covers of the plane by K3 surfaces, classify the
// admissible abelian deck groups, and analyze branch quartics.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "k3cover/classify.hpp"
#include "k3cover/curves.hpp"
#include "k3cover/errors.hpp"
#include "k3cover/families.hpp"
#include "k3cover/group.hpp"
#include "k3cover/monodromy.hpp"
#include "k3cover/report.hpp"
#include "k3cover/textio.hpp"

using namespace k3cover;

namespace {

struct GlobalOptions {
  std::uint64_t seed = kDefaultSeed;
  double tol_newton = 1e-12;
  double tol_match = 1e-6;
  int threads = 1;
  std::string format = "plain";

  ReportFormat report_format() const {
    return format == "structured" ? ReportFormat::Structured : ReportFormat::Plain;
  }
  MonodromyOptions monodromy() const {
    MonodromyOptions o;
    o.tol_newton = tol_newton;
    o.tol_match = tol_match;
    o.threads = threads;
    return o;
  }
};

int run_classify(const GlobalOptions& g, bool diagnostic) {
  auto rows = classify_all(diagnostic);
  std::cout << render_classification(rows, g.report_format(), diagnostic);
  int admissible = 0;
  bool expected = true;
  for (const ExclusionVerdict& v : rows) {
    if (!v.admissible) continue;
    ++admissible;
    expected = expected && (v.group_label == "Z4" || v.group_label == "Z6" ||
                            v.group_label == "Z2^3");
  }
  return (admissible == 3 && expected) ? 0 : 1;
}

VerifyCertificate verify_family(const FamilySpec& fs, const std::vector<MatC>& extra,
                                const GlobalOptions& g) {
  VerifyCertificate cert;
  cert.family_label = to_string(fs.label);
  cert.seed = g.seed;
  cert.failed_stage = "";
  cert.group_order = fs.group.order();
  cert.group_order_multiset = fs.group.order_multiset();
  cert.group_label = fs.group.iso_label();
  cert.construction_ok = true;  // build_family already validated

  auto fail = [&](const std::string& stage) {
    if (cert.failed_stage.empty()) cert.failed_stage = stage;
  };

  cert.smoothness_probe_ok = !surface_singularity_probe(fs.cover, g.seed, 150).has_value();
  if (!cert.smoothness_probe_ok) fail("smoothness");

  auto l = fs.invariant_system();
  cert.criterion = galois_criterion(fs.group, fs.cover.equations, l, g.seed,
                                    fs.cover.exact_equations ? &*fs.cover.exact_equations
                                                             : nullptr);
  if (!cert.criterion.verdict) fail("criterion");

  cert.gamma = gamma_decomposition(fs.group, l);
  if (!cert.gamma.g1_cyclic || cert.gamma.g1_order * cert.gamma.g2_order != fs.group.order())
    fail("decomposition");

  cert.hypersurface_rule_ok = hypersurface_cyclic_rule(fs.ambient, fs.group);
  if (!cert.hypersurface_rule_ok) fail("hypersurface-rule");

  cert.characters = character_table(fs.group, fs.cover.equations, l);
  double gap = 0;
  for (int gi : fs.group.generator_indices) {
    CD numeric = residue_form_scaling(fs.cover, fs.group.elements[static_cast<size_t>(gi)],
                                      g.seed + static_cast<std::uint64_t>(gi));
    gap = std::max(gap, std::abs(numeric - cert.characters.epsilon[static_cast<size_t>(gi)]));
  }
  cert.character_oracle_gap = gap;
  if (gap > 1e-8) fail("character-oracle");

  cert.monodromy = monodromy_group(fs.cover, g.seed, g.monodromy());
  cert.expected_genus = expected_section_genus(fs.cover);
  cert.group_matches = cert.monodromy.group.order() == fs.group.order() &&
                       cert.monodromy.group.order_multiset() == fs.group.order_multiset();
  if (!cert.monodromy.galois.galois || !cert.group_matches ||
      cert.monodromy.genus != cert.expected_genus)
    fail("monodromy");

  cert.ledger = ramification_ledger(fs);
  if (!cert.ledger.identity_holds) fail("ledger");

  if (fs.label == FamilyLabel::S222) {
    TowerReport tower = tower_check(fs, g.seed);
    cert.tower_ok = tower.ok;
    cert.tower_sizes = tower.fiber_sizes;
    if (!tower.ok) fail("tower");
  } else {
    cert.tower_ok = true;
  }

  // Optional user-supplied matrices: verified as automorphisms of the ideal.
  for (size_t i = 0; i < extra.size(); ++i) {
    ProjGroup probe;
    probe.size = fs.ambient + 1;
    probe.elements = {MatC::identity(fs.ambient + 1), normalize_projective_matrix(extra[i])};
    probe.generator_indices = {1};
    probe.element_orders = {1, 0};
    InvarianceResult inv = ideal_invariance(probe, fs.cover.equations);
    std::string note = "matrix " + std::to_string(i) + ": ";
    if (inv.invariant) {
      note += "preserves the ideal; scalars";
      for (const CD& mu : inv.scalars[1]) note += " " + format_complex(mu);
    } else {
      note += "NOT an automorphism (" + inv.witness->describe() + ")";
      fail("extra-generator");
    }
    cert.extra_generator_notes.push_back(std::move(note));
  }

  cert.all_ok = cert.failed_stage.empty();
  return cert;
}

int run_verify(const GlobalOptions& g, const std::string& builtin, const std::string& family_path) {
  FamilySpec fs;
  std::vector<MatC> extra;
  if (!family_path.empty()) {
    FamilyFileInput in = family_from_file(family_path, g.seed);
    fs = std::move(in.family);
    extra = std::move(in.extra_generators);
  } else {
    auto label = parse_family_label(builtin);
    if (!label) throw InputError("unknown builtin family: " + builtin);
    if (builtin == "fermat")
      fs = fermat_family(g.seed);
    else
      fs = build_family_random(*label, g.seed);
  }
  VerifyCertificate cert = verify_family(fs, extra, g);
  std::cout << render_certificate(cert, g.report_format());
  return cert.all_ok ? 0 : 1;
}

int run_monodromy(const GlobalOptions& g, const std::string& system_path,
                  const std::string& center_path) {
  CoverSpec cover = cover_from_files(system_path, center_path, g.seed);
  MonodromyResult res = monodromy_group(cover, g.seed, g.monodromy());
  std::cout << render_monodromy(res, g.seed, g.report_format());
  return 0;
}

int run_bitangents(const GlobalOptions& g, const std::string& curve_path) {
  PlaneQuartic q = quartic_from_file(curve_path, g.seed);
  BitangentReport rep = find_bitangents(q, g.seed);
  std::cout << render_bitangents(rep, g.seed, g.report_format());
  return 0;
}

int run_euler(const GlobalOptions& g, const std::string& datum_text) {
  // "d:n,d:n,..."
  BranchDatum bd;
  std::string tok;
  std::istringstream in(datum_text);
  while (std::getline(in, tok, ',')) {
    size_t colon = tok.find(':');
    if (colon == std::string::npos)
      throw InputError("branch datum entries look like 'degree:order'");
    bd.pairs.push_back(
        {std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1))});
  }
  if (bd.pairs.empty()) throw InputError("empty branch datum");
  long chi = stratified_euler_char(bd);
  std::cout << render_euler(bd, chi, g.report_format());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galois covers of the plane by K3 surfaces: verification, monodromy, classification"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  GlobalOptions g;
  app.add_option("--seed", g.seed, "random seed (all randomness derives from it)")
      ->capture_default_str();
  app.add_option("--tol-newton", g.tol_newton, "Newton corrector tolerance")->capture_default_str();
  app.add_option("--tol-match", g.tol_match, "fiber matching tolerance")->capture_default_str();
  app.add_option("--threads", g.threads, "parallel loop tracking")->capture_default_str();
  app.add_option("--format", g.format, "output format: plain | structured")
      ->check(CLI::IsMember({"plain", "structured"}))
      ->capture_default_str();

  auto* classify = app.add_subcommand("classify", "enumerate branch data and run every exclusion");
  bool diagnostic = false;
  classify->add_flag("--diagnostic-d1", diagnostic,
                     "include degree-1 branch rows and re-derive their exclusion");

  auto* verify = app.add_subcommand("verify", "full verification certificate for a family");
  std::string builtin = "fermat", family_path;
  verify->add_option("--builtin", builtin, "fermat | s4 | s23 | s222")->capture_default_str();
  verify->add_option("--family", family_path, "family description file");

  auto* monodromy = app.add_subcommand("monodromy", "monodromy group of a projection");
  std::string system_path, center_path;
  monodromy->add_option("--system", system_path, "surface system file")->required();
  monodromy->add_option("--center", center_path, "projection center file")->required();

  auto* bitangents = app.add_subcommand("bitangents", "bitangents of a smooth plane quartic");
  std::string curve_path;
  bitangents->add_option("--curve", curve_path, "curve file")->required();

  auto* euler = app.add_subcommand("euler", "stratified Euler characteristic of a branch datum");
  std::string datum_text;
  euler->add_option("datum", datum_text, "e.g. 2:2,2:2,2:2")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(classify)) return run_classify(g, diagnostic);
    if (app.got_subcommand(verify)) return run_verify(g, builtin, family_path);
    if (app.got_subcommand(monodromy)) return run_monodromy(g, system_path, center_path);
    if (app.got_subcommand(bitangents)) return run_bitangents(g, curve_path);
    if (app.got_subcommand(euler)) return run_euler(g, datum_text);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const CheckFailure& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
