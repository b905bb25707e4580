#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "k3cover/errors.hpp"
#include "k3cover/monodromy.hpp"
#include "k3cover/resolvent.hpp"
#include "k3cover/rng.hpp"
#include "k3cover/univariate.hpp"

using namespace k3cover;

namespace {

CoverSpec fermat_cover(int center_coord = 3) {
  std::vector<PolyQ> center;
  for (int i = 0; i <= 3; ++i)
    if (i != center_coord) center.push_back(PolyQ::variable(4, static_cast<unsigned>(i)));
  return CoverSpec::make_exact(3, {parse_poly_exact("X0^4+X1^4+X2^4+X3^4", 4)},
                               std::move(center));
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
  return CoverSpec::make_exact(3, {parse_poly_exact("X0^4+X1^4+X2^4+X3^4", 4)},
                               std::move(forms));
}

CoverSpec s23_cover() {
  return CoverSpec::make_exact(
      4,
      {parse_poly_exact("X3^2 + X0^2+X1^2+X2^2", 5),
       parse_poly_exact("X4^3 + X0^3+X1^3+X2^3 + X0*X1*X2", 5)},
      {PolyQ::variable(5, 0), PolyQ::variable(5, 1), PolyQ::variable(5, 2)});
}

CoverSpec s222_cover() {
  return CoverSpec::make_exact(
      5,
      {parse_poly_exact("X3^2 + X0^2+X1^2+X2^2", 6),
       parse_poly_exact("X4^2 + X0^2+2*X1^2+3*X2^2", 6),
       parse_poly_exact("X5^2 + X0^2+3*X1^2+7*X2^2", 6)},
      {PolyQ::variable(6, 0), PolyQ::variable(6, 1), PolyQ::variable(6, 2)});
}

}  // namespace

TEST_CASE("expected section genus by adjunction") {
  CHECK(expected_section_genus(fermat_cover()) == 3);
  CHECK(expected_section_genus(s23_cover()) == 4);
  CHECK(expected_section_genus(s222_cover()) == 5);
}

TEST_CASE("genus_from_cycles: the three families and the parity guard") {
  // d=4, four full 4-cycles: 2g-2 = -8 + 4*3 -> g = 3.
  std::vector<std::vector<int>> t4(4, std::vector<int>{4});
  CHECK(genus_from_cycles(4, t4) == 3);
  // d=6, three 3+3 points and two 2+2+2 points -> g = 4.
  std::vector<std::vector<int>> t6{{3, 3}, {3, 3}, {3, 3}, {2, 2, 2}, {2, 2, 2}};
  CHECK(genus_from_cycles(6, t6) == 4);
  // d=8, six 2^4 points -> g = 5.
  std::vector<std::vector<int>> t8(6, std::vector<int>{2, 2, 2, 2});
  CHECK(genus_from_cycles(8, t8) == 5);
  // d=4, twelve simple branch points -> g = 3.
  std::vector<std::vector<int>> tg(12, std::vector<int>{2, 1, 1});
  CHECK(genus_from_cycles(4, tg) == 3);
  // Odd parity signals a tracking failure.
  CHECK_THROWS_AS(genus_from_cycles(4, {{2, 1, 1}}), NumericalFailure);
}

TEST_CASE("pencil on the Fermat quartic from a coordinate center") {
  CoverSpec cover = fermat_cover();
  MonodromyOptions opts;
  PencilCover pc = build_pencil(cover, 42, opts);
  REQUIRE(pc.fiber_univariate.has_value());
  REQUIRE(pc.fiber_univariate_exact.has_value());
  CHECK(pc.degree == 4);

  Rng rng(42);
  DiscriminantReport disc = discriminant_points(pc, rng, 2 * 3 - 2 + 2 * 4);
  CHECK(disc.points.size() == 4);  // the line meets the branch quartic in 4 points
  CHECK(disc.method == "coefficient-roots");

  // Contractible loop around nothing: identity permutation.
  CD faraway(50.0, 37.0);
  auto fiber = fiber_points(pc, faraway, rng);
  REQUIRE(fiber.size() == 4);
  Perm id = track_loop(pc, fiber, faraway, faraway + CD(3.0, 0.0), 0.2, opts);
  CHECK(perm_is_identity(id));
}

TEST_CASE("Fermat quartic: Galois center gives the regular Z4 cover") {
  CoverSpec cover = fermat_cover();
  MonodromyResult res = monodromy_group(cover, 7);
  CHECK(res.degree == 4);
  CHECK(res.branch_points.size() == 4);
  CHECK(res.group.order() == 4);
  CHECK(res.group.is_cyclic());
  CHECK(res.group.transitive());
  CHECK(res.galois.galois);
  CHECK(res.genus == 3);
  CHECK(res.max_tracking_residual < 1e-9);
  // Every petal is a full 4-cycle (total ramification).
  for (const Perm& p : res.loop_permutations) CHECK(cycle_type(p) == std::vector<int>{4});
  // All four coordinate centers work.
  for (int c = 0; c < 3; ++c) {
    MonodromyResult r = monodromy_group(fermat_cover(c), 7);
    CHECK(r.galois.galois);
    CHECK(r.group.iso_label() == "Z4");
  }
}

TEST_CASE("Fermat quartic: generic center gives the full symmetric cover") {
  CoverSpec cover = fermat_generic_center(2026);
  MonodromyResult res = monodromy_group(cover, 11);
  CHECK(res.degree == 4);
  CHECK(res.branch_points.size() == 12);  // twelve simple branch points
  CHECK(res.group.order() == 24);
  CHECK(res.group.iso_label() == "S4");
  CHECK_FALSE(res.galois.galois);
  CHECK(res.genus == 3);
  for (const Perm& p : res.loop_permutations)
    CHECK(cycle_type(p) == std::vector<int>{2, 1, 1});

  // Exact cross-check: the resolvent oracle certifies S4 monodromy.
  PencilCover pc = build_pencil(cover, 11, {});
  REQUIRE(pc.fiber_univariate_exact.has_value());
  auto cert = certify_symmetric_quartic_monodromy(*pc.fiber_univariate_exact, Rational(17, 5));
  CHECK(cert.specialization.label == QuarticGaloisLabel::S4);
  CHECK(cert.monodromy_is_S4);
}

TEST_CASE("monodromy matches the criterion verdict across seeds (quartic)") {
  CoverSpec cover = fermat_cover();
  long order0 = -1;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    MonodromyResult r = monodromy_group(cover, seed);
    CHECK(r.galois.galois);
    if (order0 < 0) order0 = r.group.order();
    CHECK(r.group.order() == order0);
    CHECK(r.group.order_multiset() == std::vector<int>{1, 2, 4, 4});
  }
}

TEST_CASE("numerics match the exact oracles on 20+20 random quartic covers") {
  Rng master(909);
  // Twenty quartic-family members (X3^4 + F4 shape) from the Galois point:
  // the coefficient polynomial of the pencil is squarefree, so the exact
  // cyclic-cover certificate forces a regular Z4; numerics must agree.
  int family_runs = 0;
  for (int i = 0; i < 40 && family_runs < 20; ++i) {
    PolyQ f4(3);
    for (unsigned a = 0; a <= 4; ++a)
      for (unsigned b = 0; a + b <= 4; ++b)
        f4.add_term(Expo{a, b, 4 - a - b}, Rational(master.int_in(-5, 5)));
    std::vector<PolyQ> lift{PolyQ::variable(4, 0), PolyQ::variable(4, 1), PolyQ::variable(4, 2)};
    PolyQ e = f4.substitute(lift) + PolyQ::variable(4, 3).pow(4);
    CoverSpec cover;
    try {
      cover = CoverSpec::make_exact(3, {e},
                                    {PolyQ::variable(4, 0), PolyQ::variable(4, 1),
                                     PolyQ::variable(4, 2)});
    } catch (const InputError&) {
      continue;  // degenerate draw
    }
    MonodromyResult res;
    try {
      res = monodromy_group(cover, 100 + static_cast<std::uint64_t>(i));
    } catch (const NumericalFailure&) {
      continue;  // singular member; the oracle comparison needs the generic case
    }
    PencilCover pc = build_pencil(cover, 100 + static_cast<std::uint64_t>(i), {});
    auto coeffs = pc.fiber_univariate_exact->coefficients_in(0);
    PolyQ g = coeffs[0].substitute({PolyQ::variable(1, 0), PolyQ::variable(1, 0)});
    auto cert = cyclic_cover_monodromy(uni_from_poly(g), 4);
    if (!cert.regular_full_cyclic) continue;
    CHECK(res.group.order() == 4);
    CHECK(res.group.is_cyclic());
    CHECK(res.galois.galois);
    ++family_runs;
  }
  CHECK(family_runs == 20);

  // Twenty generic quartic surfaces with random rational centers: when the
  // specialization and discriminant certify full symmetric monodromy, the
  // numerical group must land on all 24 permutations with simple branch
  // cycles.
  int generic_runs = 0;
  for (int i = 0; i < 40 && generic_runs < 20; ++i) {
    PolyQ q(4);
    for (const Expo& e : {Expo{4, 0, 0, 0}, Expo{0, 4, 0, 0}, Expo{0, 0, 4, 0}, Expo{0, 0, 0, 4}})
      q.add_term(e, Rational(master.int_in(1, 5)));
    for (int t = 0; t < 8; ++t) {
      Expo e(4, 0);
      unsigned rest = 4;
      for (unsigned v = 0; v < 3; ++v) {
        e[v] = static_cast<unsigned>(master.int_in(0, static_cast<long long>(rest)));
        rest -= e[v];
      }
      e[3] = rest;
      q.add_term(e, Rational(master.int_in(-4, 4)));
    }
    std::vector<PolyQ> forms;
    for (int t = 0; t < 3; ++t) {
      PolyQ f(4);
      for (unsigned v = 0; v < 4; ++v) {
        Expo e(4, 0);
        e[v] = 1;
        f.add_term(e, Rational(master.int_in(-5, 5)));
      }
      forms.push_back(f);
    }
    CoverSpec cover;
    try {
      cover = CoverSpec::make_exact(3, {q}, std::move(forms));
    } catch (const InputError&) {
      continue;
    }
    PencilCover pc = build_pencil(cover, 500 + static_cast<std::uint64_t>(i), {});
    if (!pc.fiber_univariate_exact) continue;
    auto cert = certify_symmetric_quartic_monodromy(*pc.fiber_univariate_exact, Rational(13, 7));
    if (!cert.monodromy_is_S4) continue;
    MonodromyResult res;
    try {
      res = monodromy_group(cover, 500 + static_cast<std::uint64_t>(i));
    } catch (const NumericalFailure&) {
      continue;
    }
    CHECK(res.group.order() == 24);
    bool has_transposition = false;
    for (const Perm& p : res.loop_permutations)
      if (cycle_type(p) == std::vector<int>{2, 1, 1}) has_transposition = true;
    CHECK(has_transposition);
    ++generic_runs;
  }
  CHECK(generic_runs == 20);
}

TEST_CASE("(2,3) family: regular Z6 cover, genus 4") {
  CoverSpec cover = s23_cover();
  MonodromyResult res = monodromy_group(cover, 5);
  CHECK(res.degree == 6);
  CHECK(res.group.order() == 6);
  CHECK(res.group.is_cyclic());
  CHECK(res.galois.galois);
  CHECK(res.genus == 4);
  CHECK(res.branch_points.size() == 5);  // cubic (3) + conic (2) meet the line
  CHECK(res.discriminant_method == "critical-newton");
}

TEST_CASE("(2,2,2) family: regular elementary-abelian cover, genus 5") {
  CoverSpec cover = s222_cover();
  MonodromyResult res = monodromy_group(cover, 5);
  CHECK(res.degree == 8);
  CHECK(res.group.order() == 8);
  for (int o : res.group.order_multiset()) CHECK(o <= 2);
  CHECK(res.galois.galois);
  CHECK(res.genus == 5);
  CHECK(res.branch_points.size() == 6);  // three conics, two points each
}
