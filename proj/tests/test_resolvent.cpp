#include <doctest.h>

#include "k3cover/resolvent.hpp"

using namespace k3cover;

namespace {
UniQ quartic(long c0, long c1, long c2, long c3, long c4 = 1) {
  return UniQ{Rational(c0), Rational(c1), Rational(c2), Rational(c3), Rational(c4)};
}
}  // namespace

TEST_CASE("quartic Galois groups over Q: classical examples") {
  // x^4 + x + 1: resolvent irreducible, disc = 229 nonsquare -> S4.
  auto s4 = quartic_galois_group(quartic(1, 1, 0, 0));
  CHECK(s4.label == QuarticGaloisLabel::S4);
  CHECK(s4.resolvent_irreducible);
  CHECK(s4.discriminant == 229);
  CHECK_FALSE(s4.disc_is_square);

  // x^4 + 8x + 12: disc = 576^2 -> A4.
  auto a4 = quartic_galois_group(quartic(12, 8, 0, 0));
  CHECK(a4.label == QuarticGaloisLabel::A4);
  CHECK(a4.disc_is_square);

  // x^4 - 2 -> D4.
  auto d4 = quartic_galois_group(quartic(-2, 0, 0, 0));
  CHECK(d4.label == QuarticGaloisLabel::D4);

  // x^4 + x^3 + x^2 + x + 1 (5th cyclotomic) -> Z4.
  auto z4 = quartic_galois_group(quartic(1, 1, 1, 1));
  CHECK(z4.label == QuarticGaloisLabel::Z4);

  // x^4 + 1 -> V4.
  auto v4 = quartic_galois_group(quartic(1, 0, 0, 0));
  CHECK(v4.label == QuarticGaloisLabel::V4);
  CHECK(v4.irreducible);

  // x^4 + 4 = (x^2+2x+2)(x^2-2x+2) -> reducible.
  auto red = quartic_galois_group(quartic(4, 0, 0, 0));
  CHECK(red.label == QuarticGaloisLabel::Reducible);

  // Rational-root case.
  auto lin = quartic_galois_group(quartic(0, 0, 0, 0, 1));  // x^4
  CHECK(lin.label == QuarticGaloisLabel::Reducible);
}

TEST_CASE("cyclic cover monodromy certificate") {
  // Squarefree quartic: full Z4 regular cover.
  UniQ g = uni_mul(uni_mul({Rational(-1), Rational(1)}, {Rational(1), Rational(1)}),
                   uni_mul({Rational(-2), Rational(1)}, {Rational(3), Rational(1)}));
  auto full = cyclic_cover_monodromy(g, 4);
  CHECK(full.regular_full_cyclic);
  CHECK(full.group_order == 4);
  CHECK(full.orbit_count == 1);

  // (s^2 - 1)^2: the double-tangency shape, two orbits.
  UniQ sq = uni_mul({Rational(-1), Rational(0), Rational(1)},
                    {Rational(-1), Rational(0), Rational(1)});
  auto split2 = cyclic_cover_monodromy(sq, 4);
  CHECK_FALSE(split2.regular_full_cyclic);
  CHECK(split2.orbit_count == 2);
  CHECK(split2.group_order == 2);

  // (s - 1)^4: contact of order four, fully split cover.
  UniQ quad{Rational(1), Rational(-4), Rational(6), Rational(-4), Rational(1)};
  auto split4 = cyclic_cover_monodromy(quad, 4);
  CHECK(split4.orbit_count == 4);
  CHECK(split4.group_order == 1);
}

TEST_CASE("resolvent cubic formula") {
  // f = x^4 + px + q has resolvent y^3 - 4q y - p^2.
  UniQ f = quartic(3, 2, 0, 0);
  UniQ r = resolvent_cubic(f);
  CHECK(r == UniQ{Rational(-4), Rational(-12), Rational(0), Rational(1)});
}
