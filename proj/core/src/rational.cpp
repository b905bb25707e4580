#include "k3cover/rational.hpp"

#include <cmath>

namespace k3cover {

std::optional<BigInt> integer_sqrt_exact(const BigInt& n) {
  if (n < 0) return std::nullopt;
  BigInt r = boost::multiprecision::sqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

bool is_square(const Rational& q) {
  if (q < 0) return false;
  return integer_sqrt_exact(numerator(q)).has_value() &&
         integer_sqrt_exact(denominator(q)).has_value();
}

std::string RootOfUnity::str() const {
  if (power == 0) return "1";
  if (order == 2) return "-1";
  if (order == 4 && power == 1) return "i";
  if (order == 4 && power == 3) return "-i";
  return "e(" + std::to_string(power) + "/" + std::to_string(order) + ")";
}

std::optional<RootOfUnity> RootOfUnity::fit(std::complex<double> z, unsigned max_order,
                                            double tol) {
  if (std::abs(std::abs(z) - 1.0) > tol) return std::nullopt;
  constexpr double two_pi = 6.283185307179586476925286766559;
  double a = std::arg(z);
  long k = std::lround(a * max_order / two_pi);
  RootOfUnity w(max_order, k);
  if (std::abs(z - w.value()) > tol) return std::nullopt;
  return w;
}

Rational parse_rational(const std::string& text) {
  size_t i = 0;
  auto fail = [&] { throw std::invalid_argument("bad rational literal: " + text); };
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
  size_t d0 = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (d0 == i) fail();
  BigInt num(text.substr(d0, i - d0));
  BigInt den(1);
  if (i < text.size() && text[i] == '/') {
    ++i;
    size_t e0 = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (e0 == i) fail();
    den = BigInt(text.substr(e0, i - e0));
    if (den == 0) fail();
  }
  if (i != text.size()) fail();
  Rational q(num, den);
  return neg ? Rational(-q) : q;
}

}  // namespace k3cover
