// Acceptance suite: the end-to-end checks that gate a release, one per
// headline claim.  Prints one PASS/FAIL line per criterion and exits
// nonzero when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "k3cover/classify.hpp"
#include "k3cover/curves.hpp"
#include "k3cover/families.hpp"
#include "k3cover/group.hpp"
#include "k3cover/monodromy.hpp"
#include "k3cover/perm.hpp"
#include "k3cover/resolvent.hpp"
#include "k3cover/rng.hpp"
#include "k3cover/roots.hpp"

using namespace k3cover;
using Clock = std::chrono::steady_clock;

namespace {

struct Harness {
  int failures = 0;

  void run(int index, const std::string& title, double budget_seconds,
           const std::function<void(std::ostringstream&)>& body) {
    auto t0 = Clock::now();
    std::ostringstream note;
    bool ok = true;
    std::string error;
    try {
      body(note);
    } catch (const std::exception& e) {
      ok = false;
      error = e.what();
    }
    double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    if (budget_seconds > 0 && dt > budget_seconds) {
      ok = false;
      error += (error.empty() ? "" : "; ") + std::string("over time budget ") +
               std::to_string(budget_seconds) + "s";
    }
    if (!ok) ++failures;
    std::printf("[%s] criterion %d: %s%s%s (%.2fs)\n", ok ? "PASS" : "FAIL", index, title.c_str(),
                note.str().empty() ? "" : (" — " + note.str()).c_str(),
                error.empty() ? "" : (" [" + error + "]").c_str(), dt);
    std::fflush(stdout);
  }
};

void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

CoverSpec fermat_cover_at(int center_coord) {
  auto centers = fermat_galois_centers();
  return CoverSpec::make_exact(3, {parse_poly_exact("X0^4+X1^4+X2^4+X3^4", 4)},
                               centers[static_cast<size_t>(center_coord)]);
}

CoverSpec fermat_generic_center(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PolyQ> forms;
  for (int t = 0; t < 3; ++t) {
    PolyQ f(4);
    for (unsigned v = 0; v < 4; ++v) {
      Expo e(4, 0);
      e[v] = 1;
      f.add_term(e, Rational(rng.int_in(-5, 5), rng.int_in(1, 3)));
    }
    forms.push_back(f);
  }
  return CoverSpec::make_exact(3, {parse_poly_exact("X0^4+X1^4+X2^4+X3^4", 4)}, std::move(forms));
}

}  // namespace

int main() {
  Harness h;

  h.run(1, "classification: 8 candidates, 3 admissible (Z4, Z6, Z2^3)", 1.0,
        [](std::ostringstream& note) {
          auto rows = classify_all();
          require(rows.size() == 8, "expected 8 candidates");
          std::vector<std::pair<std::string, std::string>> admissible;
          for (const auto& v : rows)
            if (v.admissible) admissible.emplace_back(v.group_label, v.surface_label);
          require(admissible.size() == 3, "expected 3 admissible rows");
          require(admissible[0] == std::make_pair(std::string("Z4"), std::string("S(4)")),
                  "first admissible row");
          require(admissible[1] == std::make_pair(std::string("Z6"), std::string("S(23)")),
                  "second admissible row");
          require(admissible[2] == std::make_pair(std::string("Z2^3"), std::string("S(222)")),
                  "third admissible row");
          note << "rows in canonical order, exclusions tagged";
        });

  h.run(2, "stratified Euler characteristics: 24 on admissible data, 36 on (2,4|2,4)", 0,
        [](std::ostringstream& note) {
          require(stratified_euler_char({{ {4, 4} }}) == 24, "(4,4)");
          require(stratified_euler_char({{ {3, 3}, {2, 2} }}) == 24, "(3,3|2,2)");
          require(stratified_euler_char({{ {2, 2}, {2, 2}, {2, 2} }}) == 24, "(2,2|2,2|2,2)");
          require(stratified_euler_char({{ {2, 4}, {2, 4} }}) == 36, "(2,4|2,4)");
          note << "exact integer equality";
        });

  h.run(3, "local-order feasibility: n=4 gives (3,3) only, n=5 gives nothing", 0,
        [](std::ostringstream& note) {
          auto n4 = quotient_euler_solutions(4);
          require(n4.size() == 1 && n4[0] == std::make_pair(3, 3), "n=4 solutions");
          require(quotient_euler_solutions(5).empty(), "n=5 solutions");
          note << "exact";
        });

  h.run(4, "Fermat quartic: four regular Z4 Galois points, generic center gives S4", 150.0,
        [](std::ostringstream& note) {
          for (int c = 0; c < 4; ++c) {
            auto t0 = Clock::now();
            MonodromyResult res = monodromy_group(fermat_cover_at(c), 1000 + c);
            double dt = std::chrono::duration<double>(Clock::now() - t0).count();
            require(dt < 30.0, "per-center time budget");
            require(res.group.order() == 4 && res.group.is_cyclic(), "cyclic of order 4");
            require(res.group.transitive(), "transitive");
            require(res.galois.galois, "regular (Galois)");
            require(res.max_tracking_residual < 1e-9, "tracking residual");
          }
          long order0 = -1;
          for (std::uint64_t seed : {11ull, 12ull, 13ull, 14ull, 15ull}) {
            MonodromyResult res = monodromy_group(fermat_cover_at(3), seed);
            if (order0 < 0) order0 = res.group.order();
            require(res.group.order() == order0, "group order stable across seeds");
          }
          require(order0 == 4, "stable order is 4");
          CoverSpec generic = fermat_generic_center(2026);
          auto t0 = Clock::now();
          MonodromyResult res = monodromy_group(generic, 11);
          require(std::chrono::duration<double>(Clock::now() - t0).count() < 30.0,
                  "generic-center time budget");
          require(res.group.order() == 24 && !res.galois.galois, "generic center gives order 24");
          require(res.max_tracking_residual < 1e-9, "tracking residual (generic)");
          PencilCover pc = build_pencil(generic, 11, {});
          auto cert = certify_symmetric_quartic_monodromy(*pc.fiber_univariate_exact,
                                                          Rational(17, 5));
          require(cert.specialization.label == QuarticGaloisLabel::S4,
                  "resolvent specialization is S4");
          require(cert.monodromy_is_S4, "certified symmetric monodromy");
          note << "4 Galois points, 5-seed stability, exact resolvent cross-check";
        });

  h.run(5, "criterion and monodromy agree on 5 seeded members of each family", 180.0,
        [](std::ostringstream& note) {
          const std::pair<FamilyLabel, int> plan[] = {{FamilyLabel::S4, 3},
                                                      {FamilyLabel::S23, 4},
                                                      {FamilyLabel::S222, 5}};
          for (const auto& [label, genus] : plan) {
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
              FamilySpec fs = build_family_random(label, 7000 + 10 * seed +
                                                             static_cast<std::uint64_t>(genus));
              auto l = fs.invariant_system();
              CriterionReport crit =
                  galois_criterion(fs.group, fs.cover.equations, l, seed,
                                   fs.cover.exact_equations ? &*fs.cover.exact_equations
                                                            : nullptr);
              require(crit.verdict, "criterion verdict for " + to_string(label));
              MonodromyResult mono = monodromy_group(fs.cover, seed);
              require(mono.galois.galois, "monodromy regular for " + to_string(label));
              require(mono.group.order() == fs.group.order(), "order matches");
              require(mono.group.order_multiset() == fs.group.order_multiset(),
                      "isomorphism type matches");
              require(mono.genus == genus, "genus " + std::to_string(genus));
            }
          }
          note << "verdict TRUE, types {Z4, Z6, Z2^3}, genera {3, 4, 5}";
        });

  h.run(6, "2-form character: image orders {4,6,2}, symplectic kernels {1,1,4}", 60.0,
        [](std::ostringstream& note) {
          const std::tuple<FamilyLabel, int, int> plan[] = {
              {FamilyLabel::S4, 4, 1}, {FamilyLabel::S23, 6, 1}, {FamilyLabel::S222, 2, 4}};
          for (const auto& [label, image, kernel] : plan) {
            FamilySpec fs = build_family_random(label, 4242 + static_cast<std::uint64_t>(image));
            CharacterTable tab =
                character_table(fs.group, fs.cover.equations, fs.invariant_system());
            require(tab.image_order == image, "image order for " + to_string(label));
            require(tab.kernel_order == kernel, "kernel order for " + to_string(label));
            for (int gi : fs.group.generator_indices) {
              CD numeric = residue_form_scaling(fs.cover, fs.group.elements[static_cast<size_t>(gi)],
                                                99 + static_cast<std::uint64_t>(gi));
              require(std::abs(numeric - tab.epsilon[static_cast<size_t>(gi)]) < 1e-8,
                      "numeric residue-form oracle agrees");
            }
          }
          note << "formula vs numeric pullback oracle within 1e-8";
        });

  h.run(7, "bitangents: Fermat 16+12, seeded random quartic 28+0, ledger reconciled", 60.0,
        [](std::ostringstream& note) {
          PlaneQuartic fermat = PlaneQuartic::make(parse_poly_exact("X0^4+X1^4+X2^4", 3));
          BitangentReport fr = find_bitangents(fermat, 2024);
          require(fr.bitangents == 16 && fr.hyperflexes == 12, "Fermat counts");
          require(fr.ledger.nodes == 16, "Fermat ledger");
          for (const auto& r : fr.records) require(r.residual < 1e-8, "Fermat residuals");

          Rng rng(515);
          PolyQ q(3);
          for (unsigned a = 0; a <= 4; ++a)
            for (unsigned b = 0; a + b <= 4; ++b)
              q.add_term(Expo{a, b, 4 - a - b}, Rational(rng.int_in(-5, 5)));
          BitangentReport rr = find_bitangents(PlaneQuartic::make(q, 1), 99);
          require(rr.bitangents == 28 && rr.hyperflexes == 0, "random quartic counts");
          require(rr.ledger.nodes == 28, "random ledger");
          for (const auto& r : rr.records) require(r.residual < 1e-8, "random residuals");
          require(dual_degree_oracle(q, 5) == 12, "dual degree oracle");
          note << "counts exact, coordinates at 1e-8 residual, bound nodes >= 16 held";
        });

  h.run(8, "pullback splitting: 2 orbits over each Fermat bitangent, 1 over generic lines", 400.0,
        [](std::ostringstream& note) {
          PlaneQuartic fermat = PlaneQuartic::make(parse_poly_exact("X0^4+X1^4+X2^4", 3));
          BitangentReport rep = find_bitangents(fermat, 2024);
          int checked = 0;
          for (const auto& r : rep.records) {
            if (r.hyperflex) continue;
            SplitReport split = pullback_splitting_check(fermat, r.line, 5);
            require(split.orbit_count == 2, "bitangent pullback splits in two");
            require(split.orbit_self_intersection == std::vector<int>{-2, -2},
                    "two (-2)-components");
            require(split.cross_intersection == 4, "components meet in 4 points");
            ++checked;
          }
          require(checked == 16, "all sixteen bitangents checked");
          Rng rng(31);
          for (int i = 0; i < 5; ++i) {
            std::array<CD, 3> line{CD(rng.sym(2), rng.sym(2)), CD(rng.sym(2), rng.sym(2)),
                                   CD(rng.sym(2), rng.sym(2))};
            SplitReport split = pullback_splitting_check(fermat, line, 17 + i);
            require(split.orbit_count == 1, "generic line stays irreducible");
          }
          note << "16 bitangents split, 5 generic lines transitive";
        });

  h.run(9, "property suites: sphere relation, ramification ledger, action law, Vieta", 120.0,
        [](std::ostringstream& note) {
          // Sphere relation, asserted again on fresh runs of all families.
          for (auto label : {FamilyLabel::S4, FamilyLabel::S23, FamilyLabel::S222}) {
            FamilySpec fs = build_family_random(label, 31337);
            MonodromyResult res = monodromy_group(fs.cover, 8);
            Perm acc = perm_identity(static_cast<int>(res.degree));
            for (const Perm& p : res.loop_permutations) acc = perm_compose(acc, p);
            require(perm_is_identity(acc), "sphere relation for " + to_string(label));
            RamificationLedger led = ramification_ledger(fs);
            require(led.identity_holds && led.left == 3 * led.order,
                    "ramification ledger for " + to_string(label));
          }
          // act_linear right-action law on 100 random instances.
          {
            Rng rng(606);
            for (int i = 0; i < 100; ++i) {
              PolyQ p(3);
              for (int t = 0; t < 4; ++t) {
                Expo e{static_cast<unsigned>(rng.int_in(0, 3)),
                       static_cast<unsigned>(rng.int_in(0, 3)),
                       static_cast<unsigned>(rng.int_in(0, 3))};
                p.add_term(e, Rational(rng.int_in(-9, 9), rng.int_in(1, 4)));
              }
              MatQ a(3, 3), b(3, 3);
              for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) {
                  a(r, c) = Rational(rng.int_in(-4, 4));
                  b(r, c) = Rational(rng.int_in(-4, 4));
                }
              require(act_linear(p, a * b) == act_linear(act_linear(p, a), b),
                      "right-action law");
            }
          }
          // Vieta reconciliation on 100 random polynomials of degree <= 10.
          {
            Rng rng(707);
            for (int i = 0; i < 100; ++i) {
              int deg = static_cast<int>(rng.int_in(1, 10));
              std::vector<CD> p(static_cast<size_t>(deg) + 1);
              for (CD& z : p) z = CD(rng.sym(2.0), rng.sym(2.0));
              if (std::abs(p.back()) < 0.2) p.back() += CD(1.0);
              auto roots = roots_univariate(p);
              require(static_cast<int>(roots.size()) == deg, "root count");
              std::vector<CD> rec{p.back()};
              for (const CD& r : roots) {
                std::vector<CD> next(rec.size() + 1, CD(0.0));
                for (size_t k = 0; k < rec.size(); ++k) {
                  next[k + 1] += rec[k];
                  next[k] -= rec[k] * r;
                }
                rec = std::move(next);
              }
              double scale = 0;
              for (const CD& z : p) scale = std::max(scale, std::abs(z));
              for (size_t k = 0; k < p.size(); ++k)
                require(std::abs(rec[k] - p[k]) < 1e-8 * std::max(scale, 1.0), "Vieta");
            }
          }
          note << "all four property families hold";
        });

  if (h.failures == 0) {
    std::printf("acceptance: 9/9 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", h.failures);
  return 1;
}
