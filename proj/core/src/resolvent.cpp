#include "k3cover/resolvent.hpp"

#include <numeric>

#include "k3cover/errors.hpp"

namespace k3cover {

std::string to_string(QuarticGaloisLabel l) {
  switch (l) {
    case QuarticGaloisLabel::S4: return "S4";
    case QuarticGaloisLabel::A4: return "A4";
    case QuarticGaloisLabel::D4: return "D4";
    case QuarticGaloisLabel::Z4: return "Z4";
    case QuarticGaloisLabel::V4: return "V4";
    case QuarticGaloisLabel::Reducible: return "reducible";
  }
  return "?";
}

bool has_rational_root(const UniQ& p) { return !uni_rational_roots(p).empty(); }

namespace {

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  auto n = integer_sqrt_exact(numerator(q));
  auto d = integer_sqrt_exact(denominator(q));
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

// A monic rational quartic with no rational root splits into two rational
// quadratics (x^2+ax+b)(x^2+cx+d) exactly when some rational resolvent root
// theta = b + d yields rational b, d (roots of z^2 - theta z + c0) and
// rational a, c (roots of z^2 - c3 z + (c2 - theta)) whose cross term
// reproduces c1.
bool splits_into_rational_quadratics(const UniQ& f, const std::vector<Rational>& resolvent_roots) {
  const Rational &c0 = f[0], &c1 = f[1], &c2 = f[2], &c3 = f[3];
  for (const Rational& theta : resolvent_roots) {
    auto s = rational_sqrt(theta * theta - Rational(4) * c0);
    auto t = rational_sqrt(c3 * c3 - Rational(4) * (c2 - theta));
    if (!s || !t) continue;
    for (int sgn_s : {1, -1})
      for (int sgn_t : {1, -1}) {
        Rational b = (theta + Rational(sgn_s) * *s) / 2;
        Rational d = theta - b;
        Rational a = (c3 + Rational(sgn_t) * *t) / 2;
        Rational c = c3 - a;
        if (a * d + b * c == c1) return true;
      }
  }
  return false;
}

}  // namespace

UniQ resolvent_cubic(const UniQ& f) {
  const Rational &c0 = f[0], &c1 = f[1], &c2 = f[2], &c3 = f[3];
  // y^3 - c2 y^2 + (c1 c3 - 4 c0) y - (c1^2 + c0 c3^2 - 4 c0 c2)
  return UniQ{-(c1 * c1 + c0 * c3 * c3 - Rational(4) * c0 * c2), c1 * c3 - Rational(4) * c0,
              -c2, Rational(1)};
}

QuarticGaloisReport quartic_galois_group(const UniQ& quartic) {
  QuarticGaloisReport rep;
  UniQ f = uni_trim(quartic);
  if (uni_degree(f) != 4) throw InputError("expected a degree-4 polynomial");
  Rational lead = f[4];
  for (Rational& c : f) c /= lead;

  rep.discriminant = uni_discriminant(f);
  rep.disc_is_square = is_square(rep.discriminant);
  if (rep.discriminant == 0) {
    rep.label = QuarticGaloisLabel::Reducible;
    rep.detail = "repeated roots";
    return rep;
  }

  UniQ res = resolvent_cubic(f);
  auto res_roots = uni_rational_roots(res);
  rep.resolvent_irreducible = res_roots.empty();

  // Irreducibility over Q: no rational root, no rational quadratic factor.
  bool lin = has_rational_root(f);
  bool quad = !lin && splits_into_rational_quadratics(f, res_roots);
  rep.irreducible = !lin && !quad;

  if (!rep.irreducible) {
    rep.label = QuarticGaloisLabel::Reducible;
    rep.detail = lin ? "rational root" : "rational quadratic factor";
    return rep;
  }
  if (rep.resolvent_irreducible) {
    rep.label = rep.disc_is_square ? QuarticGaloisLabel::A4 : QuarticGaloisLabel::S4;
    return rep;
  }
  if (res_roots.size() >= 2) {
    // A monic cubic with two rational roots splits completely.
    rep.label = QuarticGaloisLabel::V4;
    return rep;
  }
  // Exactly one rational root: D4 or Z4 (Kappe-Warren).
  const Rational& theta = res_roots[0];
  const Rational &c0 = f[0], &c2 = f[2], &c3 = f[3];
  Rational t1 = (c3 * c3 - Rational(4) * (c2 - theta)) * rep.discriminant;
  Rational t2 = (theta * theta - Rational(4) * c0) * rep.discriminant;
  rep.label = (is_square(t1) && is_square(t2)) ? QuarticGaloisLabel::Z4 : QuarticGaloisLabel::D4;
  return rep;
}

CyclicCoverCertificate cyclic_cover_monodromy(const UniQ& g, int d) {
  CyclicCoverCertificate cert;
  cert.cover_degree = d;
  auto strata = uni_squarefree_decomposition(g);
  int common = d;
  for (size_t j = 0; j < strata.size(); ++j)
    if (uni_degree(strata[j]) > 0)
      common = std::gcd(common, static_cast<int>(j) + 1);
  cert.orbit_count = common;
  cert.group_order = d / common;
  cert.regular_full_cyclic = common == 1;
  return cert;
}

SymmetricQuarticCertificate certify_symmetric_quartic_monodromy(const PolyQ& family,
                                                                const Rational& s0) {
  if (family.arity() != 2) throw InputError("fiber family must have two variables (mu, s)");
  SymmetricQuarticCertificate cert;
  cert.base_value = s0;
  // Specialize s = s0.
  PolyQ at = family.substitute({PolyQ::variable(1, 0), PolyQ::constant(1, s0)});
  cert.specialization = quartic_galois_group(uni_from_poly(at));
  // disc(s) as an exact univariate; an odd-multiplicity root keeps it from
  // being a square in C(s).
  PolyQ disc2 = resultant(family, family.derivative(0), 0);
  UniQ disc = uni_from_poly(disc2.substitute({PolyQ::variable(1, 0), PolyQ::variable(1, 0)}));
  auto strata = uni_squarefree_decomposition(disc);
  for (size_t j = 0; j < strata.size(); ++j)
    if ((j + 1) % 2 == 1 && uni_degree(strata[j]) > 0) cert.disc_has_odd_multiplicity_root = true;
  // An S4 specialization pins Gal over Q(s) to S4; the geometric monodromy is
  // then normal with abelian quotient, so S4 or A4, and the odd-multiplicity
  // discriminant root rules out A4.
  cert.monodromy_is_S4 = cert.specialization.label == QuarticGaloisLabel::S4 &&
                         cert.disc_has_odd_multiplicity_root;
  return cert;
}

}  // namespace k3cover
