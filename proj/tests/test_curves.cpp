#include <doctest.h>

#include "k3cover/curves.hpp"
#include "k3cover/errors.hpp"
#include "k3cover/rng.hpp"

using namespace k3cover;

namespace {

PolyQ random_smooth_quartic(std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 10; ++attempt) {
    PolyQ f(3);
    for (unsigned a = 0; a <= 4; ++a)
      for (unsigned b = 0; a + b <= 4; ++b)
        f.add_term(Expo{a, b, 4 - a - b}, Rational(rng.int_in(-5, 5)));
    try {
      PlaneQuartic::make(f, seed + attempt);
      return f;
    } catch (const InputError&) {
      continue;
    }
  }
  throw std::runtime_error("no smooth quartic drawn");
}

}  // namespace

TEST_CASE("plucker ledger: the documented rows") {
  PluckerLedger generic = plucker_ledger(0);
  CHECK(generic.dual_degree == 12);
  CHECK(generic.simple_flexes == 24);
  CHECK(generic.nodes == 28);

  PluckerLedger extremal = plucker_ledger(12);
  CHECK(extremal.simple_flexes == 0);
  CHECK(extremal.nodes == 16);

  CHECK_THROWS_AS(plucker_ledger(13), InputError);
  CHECK_THROWS_AS(plucker_ledger(-1), InputError);

  for (int a2 = 0; a2 <= 12; ++a2) CHECK(plucker_ledger(a2).nodes == 28 - a2);
}

TEST_CASE("smoothness gate") {
  CHECK_THROWS_AS(PlaneQuartic::make(parse_poly_exact("X0^4", 3)), InputError);
  CHECK_THROWS_AS(PlaneQuartic::make(parse_poly_exact("X0^2*X1^2 - X2^4", 3)), InputError);
  CHECK_NOTHROW(PlaneQuartic::make(parse_poly_exact("X0^4+X1^4+X2^4", 3)));
}

TEST_CASE("dual degree oracle: exact resultant gives 12") {
  CHECK(dual_degree_oracle(parse_poly_exact("X0^4+X1^4+X2^4", 3), 3) == 12);
  CHECK(dual_degree_oracle(random_smooth_quartic(404), 4) == 12);
}

TEST_CASE("Fermat quartic: 16 bitangents and 12 hyperflex tangents") {
  PlaneQuartic fermat = PlaneQuartic::make(parse_poly_exact("X0^4+X1^4+X2^4", 3));
  BitangentReport rep = find_bitangents(fermat, 2024);
  CHECK(rep.bitangents == 16);
  CHECK(rep.hyperflexes == 12);
  CHECK(rep.records.size() == 28);
  CHECK(rep.ledger.nodes == 16);
  for (const BitangentRecord& r : rep.records) CHECK(r.residual < 1e-8);
}

TEST_CASE("random smooth quartic: 28 bitangents, no hyperflexes") {
  PlaneQuartic q = PlaneQuartic::make(random_smooth_quartic(515), 1);
  BitangentReport rep = find_bitangents(q, 99);
  CHECK(rep.bitangents == 28);
  CHECK(rep.hyperflexes == 0);
  CHECK(rep.ledger.nodes == 28);
  for (const BitangentRecord& r : rep.records) CHECK(r.residual < 1e-8);
}

TEST_CASE("bitangent set is projectively equivariant") {
  PolyQ base = random_smooth_quartic(616);
  PlaneQuartic q = PlaneQuartic::make(base, 2);
  BitangentReport rep = find_bitangents(q, 7);

  // Transform both the quartic and the lines; the sets must match.
  MatQ t = MatQ::identity(3);
  t(0, 1) = Rational(1, 2);
  t(1, 2) = Rational(-2, 3);
  t(2, 0) = Rational(1);
  PlaneQuartic moved = PlaneQuartic::make(act_linear(base, t), 3);
  BitangentReport rep2 = find_bitangents(moved, 8);
  REQUIRE(rep2.records.size() == rep.records.size());

  // line l of q corresponds to t^T l for q o t.
  MatC tc(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) tc(i, j) = to_complex(t(i, j));
  auto proj_dist = [](const std::array<CD, 3>& a, const std::array<CD, 3>& b) {
    CD dot(0.0);
    double na = 0, nb = 0;
    for (size_t i = 0; i < 3; ++i) {
      dot += a[i] * std::conj(b[i]);
      na += std::norm(a[i]);
      nb += std::norm(b[i]);
    }
    return 1.0 - std::norm(dot) / (na * nb);
  };
  int matched = 0;
  for (const BitangentRecord& r : rep.records) {
    std::array<CD, 3> lt{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) lt[static_cast<size_t>(i)] += tc(j, i) * r.line[static_cast<size_t>(j)];
    for (const BitangentRecord& s : rep2.records) {
      if (proj_dist(lt, s.line) < 1e-8) {
        ++matched;
        break;
      }
    }
  }
  CHECK(matched == static_cast<int>(rep.records.size()));
}

TEST_CASE("pullback over a Fermat bitangent splits into two (-2)-curves") {
  PlaneQuartic fermat = PlaneQuartic::make(parse_poly_exact("X0^4+X1^4+X2^4", 3));
  BitangentReport rep = find_bitangents(fermat, 2024);
  int checked = 0;
  for (const BitangentRecord& r : rep.records) {
    if (r.hyperflex) continue;
    SplitReport split = pullback_splitting_check(fermat, r.line, 5);
    CHECK(split.orbit_count == 2);
    CHECK(split.orbit_sizes == std::vector<int>{2, 2});
    CHECK(split.orbit_self_intersection == std::vector<int>{-2, -2});
    CHECK(split.cross_intersection == 4);
    if (++checked == 3) break;  // the acceptance suite runs all sixteen
  }
  CHECK(checked == 3);
}

TEST_CASE("pullback over a generic line stays irreducible") {
  PlaneQuartic fermat = PlaneQuartic::make(parse_poly_exact("X0^4+X1^4+X2^4", 3));
  Rng rng(31);
  for (int i = 0; i < 2; ++i) {
    std::array<CD, 3> line{CD(rng.sym(2), rng.sym(2)), CD(rng.sym(2), rng.sym(2)),
                           CD(rng.sym(2), rng.sym(2))};
    SplitReport split = pullback_splitting_check(fermat, line, 17 + i);
    CHECK(split.orbit_count == 1);
  }
}
