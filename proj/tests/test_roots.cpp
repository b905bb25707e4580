#include <doctest.h>

#include <algorithm>
#include <complex>

#include "k3cover/errors.hpp"
#include "k3cover/rng.hpp"
#include "k3cover/roots.hpp"

using namespace k3cover;

namespace {

// Expand lc * prod (t - r_i); the Vieta oracle.
std::vector<CD> from_roots(const std::vector<CD>& roots, CD lc) {
  std::vector<CD> p{lc};
  for (const CD& r : roots) {
    std::vector<CD> next(p.size() + 1, CD(0.0));
    for (size_t i = 0; i < p.size(); ++i) {
      next[i + 1] += p[i];
      next[i] -= p[i] * r;
    }
    p = std::move(next);
  }
  return p;
}

bool contains_root(const std::vector<CD>& roots, CD v, double tol) {
  return std::any_of(roots.begin(), roots.end(),
                     [&](const CD& r) { return std::abs(r - v) < tol; });
}

}  // namespace

TEST_CASE("roots of unity") {
  std::vector<CD> p{CD(-1), CD(0), CD(0), CD(0), CD(1)};  // t^4 - 1
  auto roots = roots_univariate(p);
  REQUIRE(roots.size() == 4);
  for (CD v : {CD(1, 0), CD(-1, 0), CD(0, 1), CD(0, -1)})
    CHECK(contains_root(roots, v, 1e-10));
}

TEST_CASE("double root recovered to 1e-9: (t-2)^2 (t+1)") {
  // t^3 - 3t^2 + 0t + 4
  std::vector<CD> p{CD(4), CD(0), CD(-3), CD(1)};
  auto roots = roots_univariate(p);
  REQUIRE(roots.size() == 3);
  int near2 = 0;
  for (const CD& r : roots) {
    if (std::abs(r - CD(2.0)) < 1e-9) ++near2;
  }
  CHECK(near2 == 2);
  CHECK(contains_root(roots, CD(-1.0), 1e-9));
}

TEST_CASE("error paths: degree 0 and non-finite") {
  CHECK_THROWS_AS(roots_univariate({CD(3.0)}), InputError);
  CHECK_THROWS_AS(roots_univariate({CD(0.0)}), InputError);
  double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(roots_univariate({CD(1.0), CD(inf)}), InputError);
}

TEST_CASE("Vieta reconciliation on 100 random polynomials of degree <= 10") {
  Rng rng(20250808);
  for (int trial = 0; trial < 100; ++trial) {
    int deg = static_cast<int>(rng.int_in(1, 10));
    std::vector<CD> p(static_cast<size_t>(deg) + 1);
    for (CD& c : p) c = CD(rng.sym(2.0), rng.sym(2.0));
    if (std::abs(p.back()) < 0.2) p.back() += CD(1.0);
    auto roots = roots_univariate(p);
    REQUIRE(static_cast<int>(roots.size()) == deg);
    auto rec = from_roots(roots, p.back());
    double scale = 0;
    for (const CD& c : p) scale = std::max(scale, std::abs(c));
    for (size_t i = 0; i < p.size(); ++i)
      CHECK(std::abs(rec[i] - p[i]) < 1e-8 * std::max(scale, 1.0));
  }
}

TEST_CASE("residual certificate") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<CD> p(7);
    for (CD& c : p) c = CD(rng.sym(3.0), rng.sym(3.0));
    p.back() = CD(1.0);
    double norm = 0;
    for (const CD& c : p) norm = std::max(norm, std::abs(c));
    for (const CD& r : roots_univariate(p)) {
      CD val(0.0);
      for (size_t i = p.size(); i-- > 0;) val = val * r + p[i];
      double fiber_scale = std::pow(std::max(1.0, std::abs(r)), static_cast<double>(p.size() - 1));
      CHECK(std::abs(val) < 1e-8 * norm * fiber_scale);
    }
  }
}
