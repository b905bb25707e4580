#include <doctest.h>

#include "k3cover/errors.hpp"
#include "k3cover/families.hpp"
#include "k3cover/monodromy.hpp"

using namespace k3cover;

TEST_CASE("builders: labels, shapes, canonical groups") {
  FamilySpec fermat = fermat_family();
  CHECK(fermat.ambient == 3);
  CHECK(fermat.cover.degree == 4);
  CHECK(fermat.group.order() == 4);
  CHECK(fermat.group.iso_label() == "Z4");

  FamilySpec s23 = build_family_random(FamilyLabel::S23, 31);
  CHECK(s23.ambient == 4);
  CHECK(s23.cover.degree == 6);
  CHECK(s23.group.order() == 6);
  CHECK(s23.group.is_cyclic());

  FamilySpec s222 = build_family_random(FamilyLabel::S222, 77);
  CHECK(s222.ambient == 5);
  CHECK(s222.cover.degree == 8);
  CHECK(s222.group.order() == 8);
  CHECK(s222.group.iso_label() == "Z2^3");
}

TEST_CASE("validator rejects a singular plane quartic with a witness") {
  // F4 = X0^4 is a quadruple line.
  CHECK_THROWS_AS(build_family(FamilyLabel::S4, {parse_poly_exact("X0^4", 3)}), InputError);
  try {
    build_family(FamilyLabel::S4, {parse_poly_exact("X0^4", 3)});
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("singular") != std::string::npos);
  }
  // Wrong degree.
  CHECK_THROWS_AS(build_family(FamilyLabel::S4, {parse_poly_exact("X0^2", 3)}), InputError);
  // Nodal cubic in the (2,3) family.
  CHECK_THROWS_AS(build_family(FamilyLabel::S23,
                               {parse_poly_exact("X0^2+X1^2+X2^2", 3),
                                parse_poly_exact("X1^2*X2 - X0^3 - X0^2*X2", 3)}),
                  InputError);
}

TEST_CASE("validator rejects equal forms in the (2,2,2) family") {
  auto f = parse_poly_exact("X0^2+X1^2+X2^2", 3);
  CHECK_THROWS_AS(build_family(FamilyLabel::S222,
                               {f, f, parse_poly_exact("X0^2+2*X1^2+3*X2^2", 3)}),
                  InputError);
}

TEST_CASE("surface singularity probe: clean on a valid member, witness on a bad one") {
  FamilySpec good = fermat_family();
  CHECK_FALSE(surface_singularity_probe(good.cover, 5, 120).has_value());
}

TEST_CASE("plane curve smoothness checker") {
  CHECK_FALSE(plane_curve_singularity(parse_poly_exact("X0^2+X1^2+X2^2", 3), 1).has_value());
  CHECK(plane_curve_singularity(parse_poly_exact("X0*X1*X2", 3), 1).has_value());
  auto w = plane_curve_singularity(parse_poly_exact("X1^2*X2 - X0^3", 3), 1);  // cuspidal cubic
  REQUIRE(w.has_value());
}

TEST_CASE("ramification ledger identity for all three labels") {
  FamilySpec s4 = fermat_family();
  RamificationLedger l4 = ramification_ledger(s4);
  CHECK(l4.pairs == std::vector<BranchPair>{{4, 4}});
  CHECK(l4.left == 12);
  CHECK(l4.right == 12);
  CHECK(l4.identity_holds);

  FamilySpec s23 = build_family_random(FamilyLabel::S23, 31);
  RamificationLedger l6 = ramification_ledger(s23);
  CHECK(l6.left == 18);
  CHECK(l6.right == 18);

  FamilySpec s222 = build_family_random(FamilyLabel::S222, 77);
  RamificationLedger l8 = ramification_ledger(s222);
  CHECK(l8.left == 24);
  CHECK(l8.right == 24);
}

TEST_CASE("tower of double covers: fibers (8, 4, 2)") {
  FamilySpec s222 = build_family_random(FamilyLabel::S222, 77);
  TowerReport rep = tower_check(s222, 9);
  CHECK(rep.ok);
  CHECK(rep.fiber_sizes == std::array<int, 3>{8, 4, 2});

  FamilySpec s23 = build_family_random(FamilyLabel::S23, 31);
  CHECK_THROWS_AS(tower_check(s23, 9), InputError);
}

TEST_CASE("the four coordinate centers of the Fermat quartic are Galois") {
  auto centers = fermat_galois_centers();
  PolyQ fermat4 = parse_poly_exact("X0^4+X1^4+X2^4+X3^4", 4);
  for (int i = 0; i < 4; ++i) {
    CoverSpec cover = CoverSpec::make_exact(3, {fermat4}, centers[static_cast<size_t>(i)]);
    MonodromyResult res = monodromy_group(cover, 21 + static_cast<std::uint64_t>(i));
    CHECK(res.galois.galois);
    CHECK(res.group.iso_label() == "Z4");
    CHECK(res.genus == 3);
  }
}

TEST_CASE("criterion, monodromy, genus and character line up per family") {
  for (auto [label, seed] : {std::pair{FamilyLabel::S4, 101ull},
                             std::pair{FamilyLabel::S23, 102ull},
                             std::pair{FamilyLabel::S222, 103ull}}) {
    FamilySpec fs = build_family_random(label, seed);
    auto l = fs.invariant_system();
    CriterionReport crit = galois_criterion(fs.group, fs.cover.equations, l, seed,
                                            fs.cover.exact_equations ? &*fs.cover.exact_equations
                                                                     : nullptr);
    CHECK(crit.verdict);
    MonodromyResult mono = monodromy_group(fs.cover, seed);
    CHECK(mono.galois.galois);
    long n = fs.group.order();
    CHECK(mono.group.order() == n);
    CHECK(mono.group.order_multiset() == fs.group.order_multiset());
    int expected_genus = label == FamilyLabel::S4 ? 3 : label == FamilyLabel::S23 ? 4 : 5;
    CHECK(mono.genus == expected_genus);
    CharacterTable tab = character_table(fs.group, fs.cover.equations, l);
    int expected_image = label == FamilyLabel::S4 ? 4 : label == FamilyLabel::S23 ? 6 : 2;
    CHECK(tab.image_order == expected_image);
    CHECK(tab.kernel_order == n / expected_image);
    // mu = 1 for the canonical generators on every defining equation.
    InvarianceResult inv = ideal_invariance(fs.group, fs.cover.equations);
    for (int gi : fs.group.generator_indices)
      for (const CD& mu : inv.scalars[static_cast<size_t>(gi)])
        CHECK(std::abs(mu - CD(1.0)) < 1e-10);
  }
}
