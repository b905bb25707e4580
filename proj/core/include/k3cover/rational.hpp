#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace k3cover {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline std::complex<double> to_complex(const Rational& q) {
  return {to_double(q), 0.0};
}
inline std::complex<double> to_complex(const std::complex<double>& z) { return z; }

inline std::string to_string(const Rational& q) { return q.str(); }

/// Exact square test; returns the root when n is a perfect square.
std::optional<BigInt> integer_sqrt_exact(const BigInt& n);

/// Exact square test for rationals.
bool is_square(const Rational& q);

/// Exact root of unity e^(2*pi*i*power/order), stored in lowest terms.
/// Covers the scalar data (lambda, mu, epsilon) of finite diagonal actions
/// without needing an algebraic-number field.
struct RootOfUnity {
  unsigned order = 1;   // n
  unsigned power = 0;   // k, 0 <= k < n, gcd reduced

  RootOfUnity() = default;
  RootOfUnity(unsigned n, long k) {
    long kk = ((k % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n);
    unsigned g = std::gcd(n, static_cast<unsigned>(kk));
    if (kk == 0) { order = 1; power = 0; }
    else { order = n / g; power = static_cast<unsigned>(kk) / g; }
  }

  bool is_one() const { return power == 0; }
  unsigned multiplicative_order() const { return power == 0 ? 1 : order; }

  std::complex<double> value() const {
    double t = 6.283185307179586476925286766559 * power / order;
    return {std::cos(t), std::sin(t)};
  }

  RootOfUnity operator*(const RootOfUnity& o) const {
    unsigned n = std::lcm(order, o.order);
    long k = static_cast<long>(power) * (n / order) +
             static_cast<long>(o.power) * (n / o.order);
    return RootOfUnity(n, k);
  }
  RootOfUnity inverse() const { return RootOfUnity(order, -static_cast<long>(power)); }
  bool operator==(const RootOfUnity& o) const {
    return order == o.order && power == o.power;
  }

  std::string str() const;

  /// Match a complex scalar against the roots of unity of order dividing
  /// max_order.  Fails (nullopt) when z is farther than tol from all of them.
  static std::optional<RootOfUnity> fit(std::complex<double> z, unsigned max_order,
                                        double tol = 1e-10);
};

/// Parses "a" or "a/b" with optional sign.  Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

}  // namespace k3cover
