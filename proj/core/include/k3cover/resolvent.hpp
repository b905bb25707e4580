#pragma once

#include <string>

#include "k3cover/multipoly.hpp"
#include "k3cover/univariate.hpp"

namespace k3cover {

enum class QuarticGaloisLabel { S4, A4, D4, Z4, V4, Reducible };

std::string to_string(QuarticGaloisLabel l);

/// Exact Galois group over Q of a quartic, by resolvent-cubic factorization
/// plus the discriminant square test (and the Kappe-Warren refinement for
/// the one-rational-root case).
struct QuarticGaloisReport {
  QuarticGaloisLabel label = QuarticGaloisLabel::Reducible;
  bool irreducible = false;
  bool resolvent_irreducible = false;
  bool disc_is_square = false;
  Rational discriminant;
  std::string detail;
};

QuarticGaloisReport quartic_galois_group(const UniQ& quartic);

/// Exact factorization probe over Q.
bool has_rational_root(const UniQ& p);

/// Resolvent cubic of x^4 + c3 x^3 + c2 x^2 + c1 x + c0 (monic input).
UniQ resolvent_cubic(const UniQ& monic_quartic);

// ---------------------------------------------------------------------------
// Exact monodromy certificates for pencils.
// ---------------------------------------------------------------------------

/// Monodromy of the cyclic cover y^d = g(s) over the s-line: the subgroup of
/// Z_d generated by the root multiplicities of g.  Transitive (and then
/// regular Z_d) exactly when gcd(d, multiplicities) = 1; the orbit count is
/// that gcd.
struct CyclicCoverCertificate {
  int cover_degree = 0;
  int group_order = 0;   // |<multiplicities mod d>|
  int orbit_count = 0;   // gcd(d, multiplicities)
  bool regular_full_cyclic = false;
};

CyclicCoverCertificate cyclic_cover_monodromy(const UniQ& g, int d);

/// Certified full-symmetric monodromy for a quartic fiber family f(mu, s)
/// over Q: an S4 specialization pins the arithmetic group, and an
/// odd-multiplicity root of disc(s) rules the geometric part out of A4.
struct SymmetricQuarticCertificate {
  QuarticGaloisReport specialization;
  bool disc_has_odd_multiplicity_root = false;
  bool monodromy_is_S4 = false;
  Rational base_value;
};

SymmetricQuarticCertificate certify_symmetric_quartic_monodromy(const PolyQ& fiber_family,
                                                                const Rational& s0);

}  // namespace k3cover
