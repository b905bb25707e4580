#pragma once

#include <vector>

#include "k3cover/multipoly.hpp"
#include "k3cover/rational.hpp"

namespace k3cover {

/// Dense univariate polynomials, coefficients ascending in the degree.
using UniQ = std::vector<Rational>;
using UniC = std::vector<CD>;

template <class C>
int uni_degree(const std::vector<C>& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (!detail::coeff_is_zero(p[static_cast<size_t>(i)])) return i;
  return -1;
}

UniQ uni_trim(UniQ p);
UniQ uni_add(const UniQ& a, const UniQ& b);
UniQ uni_sub(const UniQ& a, const UniQ& b);
UniQ uni_mul(const UniQ& a, const UniQ& b);
UniQ uni_scale(const UniQ& a, const Rational& s);
UniQ uni_derivative(const UniQ& p);
Rational uni_eval(const UniQ& p, const Rational& x);

/// Euclidean division over the rationals; returns {quotient, remainder}.
std::pair<UniQ, UniQ> uni_divmod(const UniQ& a, const UniQ& b);

/// Monic gcd over the rationals (gcd of the zero pair is zero).
UniQ uni_gcd(UniQ a, UniQ b);

/// Yun's squarefree decomposition: result[i] is the (monic) product of the
/// irreducible factors of multiplicity i+1.  Exact, characteristic zero.
std::vector<UniQ> uni_squarefree_decomposition(const UniQ& p);

UniQ uni_squarefree_part(const UniQ& p);

/// Resultant of two univariate rationals (Sylvester, a-rows first).
Rational uni_resultant(const UniQ& a, const UniQ& b);

/// disc(p) = (-1)^(n(n-1)/2) res(p, p') / lc(p).
Rational uni_discriminant(const UniQ& p);

/// Conversions to/from arity-1 MultiPoly.
UniQ uni_from_poly(const PolyQ& p);
PolyQ uni_to_poly(const UniQ& p);
UniC uni_from_poly_c(const PolyC& p);

/// All rational roots of an exact univariate (each listed once).
std::vector<Rational> uni_rational_roots(const UniQ& p);

}  // namespace k3cover
