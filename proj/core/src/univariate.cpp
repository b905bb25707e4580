#include "k3cover/univariate.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>

#include "k3cover/roots.hpp"

namespace k3cover {

UniQ uni_trim(UniQ p) {
  int d = uni_degree(p);
  p.resize(static_cast<size_t>(d + 1));
  return p;
}

UniQ uni_add(const UniQ& a, const UniQ& b) {
  UniQ out(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return uni_trim(std::move(out));
}

UniQ uni_sub(const UniQ& a, const UniQ& b) {
  UniQ out(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return uni_trim(std::move(out));
}

UniQ uni_mul(const UniQ& a, const UniQ& b) {
  if (a.empty() || b.empty()) return {};
  UniQ out(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return uni_trim(std::move(out));
}

UniQ uni_scale(const UniQ& a, const Rational& s) {
  if (s == 0) return {};
  UniQ out = a;
  for (Rational& c : out) c *= s;
  return out;
}

UniQ uni_derivative(const UniQ& p) {
  if (p.size() <= 1) return {};
  UniQ out(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * Rational(static_cast<long>(i));
  return uni_trim(std::move(out));
}

Rational uni_eval(const UniQ& p, const Rational& x) {
  Rational acc(0);
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

std::pair<UniQ, UniQ> uni_divmod(const UniQ& a, const UniQ& b) {
  int db = uni_degree(b);
  if (db < 0) throw std::invalid_argument("division by zero polynomial");
  UniQ rem = uni_trim(a);
  int da = uni_degree(rem);
  if (da < db) return {{}, rem};
  UniQ quot(static_cast<size_t>(da - db + 1), Rational(0));
  const Rational lead = b[static_cast<size_t>(db)];
  while ((da = uni_degree(rem)) >= db) {
    Rational f = rem[static_cast<size_t>(da)] / lead;
    quot[static_cast<size_t>(da - db)] = f;
    for (int i = 0; i <= db; ++i)
      rem[static_cast<size_t>(da - db + i)] -= f * b[static_cast<size_t>(i)];
    rem = uni_trim(std::move(rem));
    if (rem.empty()) break;
  }
  return {uni_trim(std::move(quot)), rem};
}

namespace {

// Primitive integer form: clear denominators, divide by the content, make
// the leading coefficient positive.  Keeps the Euclidean remainder sequence
// from blowing up.
UniQ primitive_part(UniQ p) {
  p = uni_trim(std::move(p));
  if (p.empty()) return p;
  BigInt lcm_den(1);
  for (const Rational& c : p) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
  BigInt content(0);
  std::vector<BigInt> ints;
  ints.reserve(p.size());
  for (const Rational& c : p) {
    BigInt v = numerator(c) * (lcm_den / denominator(c));
    ints.push_back(v);
    content = boost::multiprecision::gcd(content, v < 0 ? BigInt(-v) : v);
  }
  if (ints.back() < 0) content = -content;
  // content divides every entry; integer division avoids the (num, den)
  // constructor, which rejects negative denominators.
  for (size_t i = 0; i < p.size(); ++i) p[i] = Rational(ints[i] / content);
  return p;
}

}  // namespace

UniQ uni_gcd(UniQ a, UniQ b) {
  a = primitive_part(std::move(a));
  b = primitive_part(std::move(b));
  while (!b.empty()) {
    UniQ r = primitive_part(uni_divmod(a, b).second);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a[a.size() - 1];
    for (Rational& c : a) c /= lead;
  }
  return a;
}

std::vector<UniQ> uni_squarefree_decomposition(const UniQ& p0) {
  UniQ p = uni_trim(p0);
  std::vector<UniQ> out;
  if (uni_degree(p) < 1) return out;
  // Yun's algorithm.
  UniQ dp = uni_derivative(p);
  UniQ g = uni_gcd(p, dp);
  UniQ c = uni_divmod(p, g).first;
  UniQ d = uni_sub(uni_divmod(dp, g).first, uni_derivative(c));
  while (uni_degree(c) > 0) {
    UniQ ai = uni_gcd(c, d);
    out.push_back(ai);
    UniQ c1 = uni_divmod(c, ai).first;
    d = uni_sub(uni_divmod(d, ai).first, uni_derivative(c1));
    c = std::move(c1);
  }
  return out;
}

UniQ uni_squarefree_part(const UniQ& p) {
  auto dec = uni_squarefree_decomposition(p);
  UniQ out{Rational(1)};
  for (const UniQ& f : dec) out = uni_mul(out, f);
  return out;
}

Rational uni_resultant(const UniQ& a0, const UniQ& b0) {
  UniQ a = uni_trim(a0), b = uni_trim(b0);
  int da = uni_degree(a), db = uni_degree(b);
  if (da < 0 || db < 0) throw std::invalid_argument("resultant of zero polynomial");
  if (db == 0) {
    Rational out(1);
    for (int i = 0; i < da; ++i) out *= b[0];
    return out;
  }
  if (da == 0) {
    Rational out(1);
    for (int i = 0; i < db; ++i) out *= a[0];
    return out;
  }
  PolyQ r = resultant(uni_to_poly(a), uni_to_poly(b), 0);
  return r.coefficient(Expo(1, 0));
}

Rational uni_discriminant(const UniQ& p0) {
  UniQ p = uni_trim(p0);
  int n = uni_degree(p);
  if (n < 2) throw std::invalid_argument("discriminant needs degree >= 2");
  Rational res = uni_resultant(p, uni_derivative(p));
  Rational disc = res / p[static_cast<size_t>(n)];
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) disc = -disc;
  return disc;
}

UniQ uni_from_poly(const PolyQ& p) {
  if (p.arity() != 1) throw InputError("expected a univariate polynomial");
  UniQ out(static_cast<size_t>(std::max(p.degree(), -1) + 1), Rational(0));
  for (const auto& [e, c] : p.terms()) out[e[0]] = c;
  return out;
}

PolyQ uni_to_poly(const UniQ& p) {
  PolyQ out(1);
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) out.add_term(Expo{static_cast<unsigned>(i)}, p[i]);
  return out;
}

UniC uni_from_poly_c(const PolyC& p) {
  if (p.arity() != 1) throw InputError("expected a univariate polynomial");
  UniC out(static_cast<size_t>(std::max(p.degree(), -1) + 1), CD(0.0));
  for (const auto& [e, c] : p.terms()) out[e[0]] = c;
  return out;
}

std::vector<Rational> uni_rational_roots(const UniQ& p0) {
  // Numeric-seeded, exactly verified: a rational root of p corresponds to an
  // integer root of the monicized integer transform y = lc * x, which the
  // double-precision roots locate and a high-precision Newton polish pins to
  // within rounding distance.  Complete for squarefree input, and the
  // squarefree part is taken first.
  using HP = boost::multiprecision::cpp_bin_float_100;
  UniQ p = uni_trim(p0);
  std::vector<Rational> roots;
  if (uni_degree(p) < 1) return roots;
  size_t shift = 0;
  while (shift < p.size() && p[shift] == 0) ++shift;
  if (shift > 0) {
    roots.push_back(Rational(0));
    p.erase(p.begin(), p.begin() + static_cast<long>(shift));
  }
  p = uni_squarefree_part(p);
  int deg = uni_degree(p);
  if (deg < 1) return roots;
  if (deg == 1) {
    Rational r = -p[0] / p[1];
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    return roots;
  }
  // Primitive integer form and its double shadow.
  BigInt lcm_den(1);
  for (const Rational& c : p) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
  std::vector<BigInt> ip;
  ip.reserve(p.size());
  for (const Rational& c : p) ip.push_back(numerator(c) * (lcm_den / denominator(c)));
  const BigInt& lead = ip.back();

  std::vector<CD> shadow(ip.size());
  for (size_t i = 0; i < ip.size(); ++i) shadow[i] = CD(ip[i].convert_to<double>(), 0.0);
  std::vector<CD> approx;
  try {
    approx = roots_univariate(shadow);
  } catch (...) {
    return roots;
  }
  std::vector<HP> hp(ip.size());
  for (size_t i = 0; i < ip.size(); ++i) hp[i] = HP(ip[i]);
  auto hp_eval = [&](const std::vector<HP>& q, const HP& x) {
    HP acc(0);
    for (size_t i = q.size(); i-- > 0;) acc = acc * x + q[i];
    return acc;
  };
  std::vector<HP> dhp(ip.size() - 1);
  for (size_t i = 1; i < ip.size(); ++i) dhp[i - 1] = hp[i] * HP(static_cast<long>(i));

  for (const CD& r : approx) {
    double scale = 1.0 + std::abs(r);
    if (std::abs(r.imag()) > 1e-6 * scale) continue;  // rational roots are real
    HP x(r.real());
    for (int it = 0; it < 8; ++it) {
      HP fx = hp_eval(hp, x);
      HP dfx = hp_eval(dhp, x);
      if (dfx == 0) break;
      x -= fx / dfx;
    }
    // y = lead * x must be an integer; round and verify exactly.
    HP y = boost::multiprecision::floor(x * HP(lead) + HP(0.5));
    BigInt y0 = y.convert_to<BigInt>();
    Rational cand(y0, lead);
    if (uni_eval(p, cand) != 0) continue;
    if (std::find(roots.begin(), roots.end(), cand) == roots.end()) roots.push_back(cand);
  }
  return roots;
}

}  // namespace k3cover
