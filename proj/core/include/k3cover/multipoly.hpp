#pragma once

#include <algorithm>
#include <cctype>
#include <complex>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "k3cover/errors.hpp"
#include "k3cover/linalg.hpp"
#include "k3cover/rational.hpp"

namespace k3cover {

using Expo = std::vector<unsigned>;

inline unsigned total_degree(const Expo& e) {
  unsigned s = 0;
  for (unsigned v : e) s += v;
  return s;
}

/// Graded lexicographic order: total degree first, then lex.  Canonical term
/// order for storage and (reversed) for printing.
struct GradedLex {
  bool operator()(const Expo& a, const Expo& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

struct ParseError : InputError {
  ParseError(const std::string& what, size_t position)
      : InputError(what + " at position " + std::to_string(position)), pos(position) {}
  size_t pos;
};

namespace detail {
inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const CD& c) { return c == CD(0.0, 0.0); }
inline Rational coeff_from_rational(const Rational& q, const Rational*) { return q; }
inline CD coeff_from_rational(const Rational& q, const CD*) { return to_complex(q); }
}  // namespace detail

/// Sparse multivariate polynomial over an exact rational or complex floating
/// coefficient field.  Immutable in spirit: operations return new values.
template <class C>
class MultiPoly {
 public:
  using Terms = std::map<Expo, C, GradedLex>;

  MultiPoly() : arity_(0) {}
  explicit MultiPoly(unsigned arity) : arity_(arity) {}

  static MultiPoly zero(unsigned arity) { return MultiPoly(arity); }
  static MultiPoly constant(unsigned arity, const C& c) {
    MultiPoly p(arity);
    p.add_term(Expo(arity, 0), c);
    return p;
  }
  static MultiPoly variable(unsigned arity, unsigned index) {
    if (index >= arity) throw InputError("variable index out of range");
    MultiPoly p(arity);
    Expo e(arity, 0);
    e[index] = 1;
    p.add_term(e, C(1));
    return p;
  }

  unsigned arity() const { return arity_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  void add_term(const Expo& e, const C& c) {
    if (e.size() != arity_) throw InputError("exponent vector length != arity");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!detail::coeff_is_zero(c)) terms_.emplace(e, c);
    } else {
      it->second += c;
      if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  C coefficient(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C(0) : it->second;
  }

  /// Total degree; -1 for the zero polynomial (degree undefined).
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(total_degree(e)));
    return d;
  }

  int degree_in(unsigned var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
    return d;
  }

  /// Common total degree when homogeneous, nullopt otherwise.  Homogeneity is
  /// always checked, never assumed.
  std::optional<unsigned> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    unsigned d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) != d) return std::nullopt;
    return d;
  }

  MultiPoly operator-() const {
    MultiPoly out(arity_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
  }
  MultiPoly operator+(const MultiPoly& o) const {
    check_same_arity(o);
    MultiPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
  }
  MultiPoly operator-(const MultiPoly& o) const {
    check_same_arity(o);
    MultiPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
  }
  MultiPoly operator*(const MultiPoly& o) const {
    check_same_arity(o);
    MultiPoly out(arity_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) {
        Expo e(arity_);
        for (unsigned i = 0; i < arity_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  MultiPoly operator*(const C& s) const {
    MultiPoly out(arity_);
    if (detail::coeff_is_zero(s)) return out;
    for (const auto& [e, c] : terms_) out.add_term(e, c * s);
    return out;
  }

  bool operator==(const MultiPoly& o) const {
    return arity_ == o.arity_ && terms_ == o.terms_;
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly out = constant(arity_, C(1));
    MultiPoly base = *this;
    while (k) {
      if (k & 1) out = out * base;
      base = base * base;
      k >>= 1;
    }
    return out;
  }

  /// Max coefficient magnitude (1-norm of the largest coefficient).
  double magnitude() const {
    double m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(to_complex(c)));
    return m;
  }

  /// Drop float noise below tol * magnitude; no-op for exact coefficients.
  MultiPoly pruned(double tol) const {
    if constexpr (std::is_same_v<C, Rational>) {
      (void)tol;
      return *this;
    } else {
      double cut = tol * magnitude();
      MultiPoly out(arity_);
      for (const auto& [e, c] : terms_)
        if (std::abs(c) > cut) out.terms_.emplace(e, c);
      return out;
    }
  }

  template <class S>
  S eval(const std::vector<S>& x) const {
    if (x.size() != arity_) throw InputError("evaluation point has wrong dimension");
    // Per-variable power tables make repeated evaluation cheap.
    std::vector<std::vector<S>> pw(arity_);
    for (unsigned v = 0; v < arity_; ++v) {
      int d = degree_in(v);
      pw[v].resize(static_cast<size_t>(std::max(d, 0)) + 1);
      pw[v][0] = S(1);
      for (int k = 1; k <= d; ++k) pw[v][static_cast<size_t>(k)] = pw[v][static_cast<size_t>(k) - 1] * x[v];
    }
    S acc(0);
    for (const auto& [e, c] : terms_) {
      S t(to_value<S>(c));
      for (unsigned v = 0; v < arity_; ++v)
        if (e[v]) t *= pw[v][e[v]];
      acc += t;
    }
    return acc;
  }

  MultiPoly derivative(unsigned var) const {
    if (var >= arity_) throw InputError("derivative variable out of range");
    MultiPoly out(arity_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Expo d = e;
      d[var] -= 1;
      out.add_term(d, c * C(static_cast<int>(e[var])));
    }
    return out;
  }

  /// Substitute variable i |-> images[i]; all images share out_arity.
  MultiPoly substitute(const std::vector<MultiPoly>& images) const {
    if (images.size() != arity_) throw InputError("substitute: wrong image count");
    unsigned out_arity = arity_ == 0 ? 0 : images[0].arity();
    for (const auto& im : images)
      if (im.arity() != out_arity) throw InputError("substitute: mixed image arities");
    // Memoized image powers.
    std::vector<std::vector<MultiPoly>> pw(arity_);
    for (unsigned v = 0; v < arity_; ++v) pw[v].push_back(constant(out_arity, C(1)));
    MultiPoly out(out_arity);
    for (const auto& [e, c] : terms_) {
      MultiPoly t = constant(out_arity, c);
      for (unsigned v = 0; v < arity_; ++v) {
        while (pw[v].size() <= e[v]) pw[v].push_back(pw[v].back() * images[v]);
        if (e[v]) t = t * pw[v][e[v]];
      }
      out = out + t;
    }
    return out;
  }

  /// Coefficients of the polynomial viewed as univariate in var; entry k is
  /// the coefficient of var^k, a polynomial with var's exponent zeroed.
  std::vector<MultiPoly> coefficients_in(unsigned var) const {
    int d = degree_in(var);
    std::vector<MultiPoly> out(static_cast<size_t>(std::max(d, -1) + 1), MultiPoly(arity_));
    for (const auto& [e, c] : terms_) {
      Expo r = e;
      unsigned k = r[var];
      r[var] = 0;
      out[k].add_term(r, c);
    }
    return out;
  }

  std::string str() const;

 private:
  template <class S>
  static S to_value(const C& c) {
    if constexpr (std::is_same_v<S, C>) return c;
    else if constexpr (std::is_same_v<S, CD>) return to_complex(c);
    else return c;
  }
  void check_same_arity(const MultiPoly& o) const {
    if (arity_ != o.arity_) throw InputError("arity mismatch");
  }

  unsigned arity_;
  Terms terms_;
};

using PolyQ = MultiPoly<Rational>;
using PolyC = MultiPoly<CD>;

inline PolyC to_complex_poly(const PolyQ& p) {
  PolyC out(p.arity());
  for (const auto& [e, c] : p.terms()) out.add_term(e, to_complex(c));
  return out;
}

// ---------------------------------------------------------------------------
// Parsing.  Grammar: variables X0..X{arity-1}, integer/rational coefficients,
// operators + - * ^ and parentheses.
// ---------------------------------------------------------------------------

template <class C>
MultiPoly<C> parse_poly(const std::string& text, unsigned arity);

extern template PolyQ parse_poly<Rational>(const std::string&, unsigned);
extern template PolyC parse_poly<CD>(const std::string&, unsigned);

inline PolyQ parse_poly_exact(const std::string& text, unsigned arity) {
  return parse_poly<Rational>(text, arity);
}
inline PolyC parse_poly_complex(const std::string& text, unsigned arity) {
  return parse_poly<CD>(text, arity);
}

// ---------------------------------------------------------------------------
// Linear substitution (group actions on forms): act(p, M) = p o M, i.e.
// X |-> M*X.  Right action: act(p, A*B) == act(act(p, A), B).
// ---------------------------------------------------------------------------

template <class C>
MultiPoly<C> act_linear(const MultiPoly<C>& p, const Mat<C>& m) {
  if (m.rows() != static_cast<int>(p.arity()) || m.cols() != m.rows())
    throw InputError("act_linear: matrix size must equal arity");
  std::vector<MultiPoly<C>> images;
  images.reserve(p.arity());
  for (unsigned i = 0; i < p.arity(); ++i) {
    MultiPoly<C> li(p.arity());
    for (unsigned j = 0; j < p.arity(); ++j) {
      Expo e(p.arity(), 0);
      e[j] = 1;
      li.add_term(e, m(static_cast<int>(i), static_cast<int>(j)));
    }
    images.push_back(li);
  }
  return p.substitute(images);
}

// ---------------------------------------------------------------------------
// Sylvester resultant eliminating one variable.  Sign convention: the
// Sylvester determinant with p-rows first.
// ---------------------------------------------------------------------------

template <class C>
MultiPoly<C> resultant(const MultiPoly<C>& p, const MultiPoly<C>& q, unsigned var);

extern template PolyQ resultant<Rational>(const PolyQ&, const PolyQ&, unsigned);
extern template PolyC resultant<CD>(const PolyC&, const PolyC&, unsigned);

/// Determinant of a square matrix of polynomials (Laplace expansion with
/// memoized minors; fine for the Sylvester sizes used here).
template <class C>
MultiPoly<C> poly_determinant(const std::vector<std::vector<MultiPoly<C>>>& m);

extern template PolyQ poly_determinant<Rational>(const std::vector<std::vector<PolyQ>>&);
extern template PolyC poly_determinant<CD>(const std::vector<std::vector<PolyC>>&);

}  // namespace k3cover
