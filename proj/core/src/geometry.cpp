#include "k3cover/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "k3cover/errors.hpp"
#include "k3cover/newton.hpp"
#include "k3cover/roots.hpp"
#include "k3cover/univariate.hpp"

namespace k3cover {

namespace {

std::vector<PolyC> linear_images_from_basis(const std::vector<std::vector<CD>>& basis,
                                            unsigned ambient_vars) {
  // x_i = sum_j basis[j][i] * t_j
  unsigned m = static_cast<unsigned>(basis.size());
  std::vector<PolyC> images(ambient_vars, PolyC(m));
  for (unsigned i = 0; i < ambient_vars; ++i) {
    PolyC li(m);
    for (unsigned j = 0; j < m; ++j) {
      Expo e(m, 0);
      e[j] = 1;
      li.add_term(e, basis[j][i]);
    }
    images[i] = li;
  }
  return images;
}

std::vector<PolyQ> linear_images_from_basis_exact(const std::vector<std::vector<Rational>>& basis,
                                                  unsigned ambient_vars) {
  unsigned m = static_cast<unsigned>(basis.size());
  std::vector<PolyQ> images(ambient_vars, PolyQ(m));
  for (unsigned i = 0; i < ambient_vars; ++i) {
    PolyQ li(m);
    for (unsigned j = 0; j < m; ++j) {
      Expo e(m, 0);
      e[j] = 1;
      li.add_term(e, basis[j][i]);
    }
    images[i] = li;
  }
  return images;
}

}  // namespace

MatC LinearSubspace::coefficient_matrix() const {
  MatC m(codimension(), ambient + 1);
  for (int r = 0; r < codimension(); ++r)
    for (int c = 0; c <= ambient; ++c) {
      Expo e(static_cast<size_t>(ambient) + 1, 0);
      e[static_cast<size_t>(c)] = 1;
      m(r, c) = forms[static_cast<size_t>(r)].coefficient(e);
    }
  return m;
}

std::optional<MatQ> LinearSubspace::exact_coefficient_matrix() const {
  if (!exact_forms) return std::nullopt;
  MatQ m(codimension(), ambient + 1);
  for (int r = 0; r < codimension(); ++r)
    for (int c = 0; c <= ambient; ++c) {
      Expo e(static_cast<size_t>(ambient) + 1, 0);
      e[static_cast<size_t>(c)] = 1;
      m(r, c) = (*exact_forms)[static_cast<size_t>(r)].coefficient(e);
    }
  return m;
}

std::vector<std::vector<CD>> LinearSubspace::spanning_basis() const {
  return nullspace(coefficient_matrix());
}

std::optional<std::vector<std::vector<Rational>>> LinearSubspace::exact_spanning_basis() const {
  auto m = exact_coefficient_matrix();
  if (!m) return std::nullopt;
  return nullspace(*m);
}

LinearSubspace LinearSubspace::from_forms(int ambient, std::vector<PolyC> forms) {
  LinearSubspace s;
  s.ambient = ambient;
  for (const PolyC& f : forms) {
    if (f.arity() != static_cast<unsigned>(ambient) + 1)
      throw InputError("subspace form arity must be N+1");
    if (f.homogeneous_degree() != 1u) throw InputError("subspace forms must be linear");
  }
  s.forms = std::move(forms);
  if (rank_of(s.coefficient_matrix()) != s.codimension())
    throw InputError("subspace forms are linearly dependent");
  return s;
}

LinearSubspace LinearSubspace::from_exact_forms(int ambient, std::vector<PolyQ> forms) {
  std::vector<PolyC> cforms;
  cforms.reserve(forms.size());
  for (const PolyQ& f : forms) cforms.push_back(to_complex_poly(f));
  LinearSubspace s = from_forms(ambient, std::move(cforms));
  s.exact_forms = std::move(forms);
  if (rank_of(*s.exact_coefficient_matrix()) != s.codimension())
    throw InputError("subspace forms are linearly dependent");
  return s;
}

std::vector<int> CoverSpec::equation_degrees() const {
  std::vector<int> d;
  d.reserve(equations.size());
  for (const PolyC& e : equations) d.push_back(e.degree());
  return d;
}

CoverSpec CoverSpec::make(int ambient, std::vector<PolyC> equations, LinearSubspace center,
                          std::uint64_t seed) {
  CoverSpec cs;
  cs.ambient = ambient;
  if (static_cast<int>(equations.size()) != ambient - 2)
    throw InputError("a surface in P^N needs N-2 defining equations");
  long deg = 1;
  for (const PolyC& e : equations) {
    if (e.arity() != static_cast<unsigned>(ambient) + 1)
      throw InputError("equation arity must be N+1");
    auto h = e.homogeneous_degree();
    if (!h || *h < 1) throw InputError("equations must be homogeneous of positive degree");
    deg *= static_cast<long>(*h);
  }
  if (center.ambient != ambient || center.codimension() != 3)
    throw InputError("projection center must have codimension 3");
  cs.equations = std::move(equations);
  cs.center = std::move(center);
  cs.degree = deg;
  EmptinessReport rep = is_empty_intersection(cs.equations, cs.center, 4, seed, nullptr);
  if (!rep.empty) throw InputError("projection center meets the surface (base point found)");
  return cs;
}

CoverSpec CoverSpec::make_exact(int ambient, std::vector<PolyQ> equations,
                                std::vector<PolyQ> center_forms, std::uint64_t seed) {
  std::vector<PolyC> ceqs;
  ceqs.reserve(equations.size());
  for (const PolyQ& e : equations) ceqs.push_back(to_complex_poly(e));
  LinearSubspace center = LinearSubspace::from_exact_forms(ambient, std::move(center_forms));
  CoverSpec cs = make(ambient, std::move(ceqs), std::move(center), seed);
  cs.exact_equations = std::move(equations);
  return cs;
}

std::vector<CD> normalize_projective(std::vector<CD> x) {
  size_t best = 0;
  for (size_t i = 1; i < x.size(); ++i)
    if (std::abs(x[i]) > std::abs(x[best])) best = i;
  CD inv = CD(1.0) / x[best];
  for (CD& z : x) z *= inv;
  return x;
}

namespace {

EmptinessReport check_point(const std::vector<PolyC>& restricted,
                            const std::vector<std::vector<CD>>& basis) {
  EmptinessReport rep;
  rep.method = "evaluate";
  std::vector<CD> t{CD(1.0)};
  for (const PolyC& r : restricted) {
    double scale = std::max(1.0, r.magnitude());
    if (std::abs(r.eval(t)) > 1e-9 * scale) {
      rep.empty = true;
      return rep;
    }
  }
  rep.empty = false;
  rep.witness = normalize_projective(basis[0]);
  return rep;
}

// Exact decision on a projective line: common root of binary forms iff the
// dehomogenized gcd is nonconstant or every form drops degree (root at
// infinity of the chart).
EmptinessReport check_line_exact(const std::vector<PolyQ>& restricted,
                                 const std::vector<std::vector<CD>>& basis) {
  EmptinessReport rep;
  rep.method = "gcd";
  bool all_drop = true;
  UniQ g;
  for (const PolyQ& f : restricted) {
    unsigned hd = *f.homogeneous_degree();
    // Dehomogenize t1 = 1: coefficient of t0^k.
    UniQ u(hd + 1, Rational(0));
    for (const auto& [e, c] : f.terms()) u[e[0]] = c;
    if (uni_degree(u) == static_cast<int>(hd)) all_drop = false;
    g = g.empty() ? uni_trim(u) : uni_gcd(g, u);
  }
  if (all_drop) {
    rep.empty = false;
    std::vector<CD> w(basis[0].size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = basis[0][i];  // point t = (1 : 0)
    rep.witness = normalize_projective(w);
    return rep;
  }
  if (uni_degree(g) >= 1) {
    rep.empty = false;
    // Produce a numeric witness from a root of the gcd.
    UniC gc(g.size());
    for (size_t i = 0; i < g.size(); ++i) gc[i] = to_complex(g[i]);
    CD root = roots_univariate(gc)[0];
    std::vector<CD> w(basis[0].size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = basis[0][i] * root + basis[1][i];
    rep.witness = normalize_projective(w);
    return rep;
  }
  rep.empty = true;
  return rep;
}

EmptinessReport check_line_numeric(const std::vector<PolyC>& restricted,
                                   const std::vector<std::vector<CD>>& basis) {
  EmptinessReport rep;
  rep.method = "root-match";
  // Roots of the first form; a common zero must be among them (or at the
  // chart's infinity).
  const PolyC& f0 = restricted[0];
  unsigned hd = *f0.homogeneous_degree();
  UniC u(hd + 1, CD(0.0));
  for (const auto& [e, c] : f0.terms()) u[e[0]] = c;
  std::vector<std::vector<CD>> candidates;  // (t0, t1) pairs
  if (uni_degree(u) < static_cast<int>(hd)) candidates.push_back({CD(1.0), CD(0.0)});
  if (uni_degree(u) >= 1)
    for (const CD& r : roots_univariate(u)) candidates.push_back({r, CD(1.0)});
  for (const auto& cand : candidates) {
    bool common = true;
    for (const PolyC& f : restricted) {
      double scale = std::max(1.0, f.magnitude()) * std::pow(std::max(1.0, std::abs(cand[0])),
                                                             *f.homogeneous_degree());
      if (std::abs(f.eval(cand)) > 1e-8 * scale) { common = false; break; }
    }
    if (common) {
      rep.empty = false;
      std::vector<CD> w(basis[0].size());
      for (size_t i = 0; i < w.size(); ++i) w[i] = basis[0][i] * cand[0] + basis[1][i] * cand[1];
      rep.witness = normalize_projective(w);
      return rep;
    }
  }
  rep.empty = true;
  return rep;
}

}  // namespace

EmptinessReport is_empty_intersection(const std::vector<PolyC>& eqs,
                                      const LinearSubspace& subspace, int trials,
                                      std::uint64_t seed, const std::vector<PolyQ>* exact_eqs) {
  Rng rng(seed ^ 0x15EC710Dull);
  // Parametrize the subspace and restrict.
  auto exact_basis = subspace.exact_spanning_basis();
  std::vector<std::vector<CD>> basis;
  if (exact_basis) {
    for (const auto& v : *exact_basis) {
      std::vector<CD> w(v.size());
      for (size_t i = 0; i < v.size(); ++i) w[i] = to_complex(v[i]);
      basis.push_back(std::move(w));
    }
  } else {
    basis = subspace.spanning_basis();
  }
  const unsigned m = static_cast<unsigned>(basis.size());
  const unsigned vars = static_cast<unsigned>(subspace.ambient) + 1;

  std::vector<PolyC> restricted;
  std::optional<std::vector<PolyQ>> restricted_exact;
  {
    auto images = linear_images_from_basis(basis, vars);
    for (const PolyC& e : eqs) restricted.push_back(e.substitute(images).pruned(1e-14));
    if (exact_eqs && exact_basis) {
      restricted_exact.emplace();
      auto exact_images = linear_images_from_basis_exact(*exact_basis, vars);
      for (const PolyQ& e : *exact_eqs) restricted_exact->push_back(e.substitute(exact_images));
    }
  }

  // Drop identically-zero restrictions; if all vanish, the subspace lies on
  // the locus.
  {
    std::vector<PolyC> keep;
    std::optional<std::vector<PolyQ>> keep_exact;
    if (restricted_exact) {
      keep_exact.emplace();
      for (size_t i = 0; i < restricted_exact->size(); ++i)
        if (!(*restricted_exact)[i].is_zero()) {
          keep_exact->push_back((*restricted_exact)[i]);
          keep.push_back(restricted[i]);
        }
    } else {
      for (const PolyC& r : restricted)
        if (!r.is_zero()) keep.push_back(r);
    }
    restricted = std::move(keep);
    restricted_exact = std::move(keep_exact);
  }
  if (restricted.empty()) {
    EmptinessReport rep;
    rep.method = "evaluate";
    rep.empty = false;
    rep.witness = normalize_projective(basis[0]);
    return rep;
  }

  if (m == 1) return check_point(restricted, basis);
  if (m == 2) {
    if (restricted_exact) return check_line_exact(*restricted_exact, basis);
    return check_line_numeric(restricted, basis);
  }

  // Dimension >= 2: randomized complete solve.  Square the system up with
  // random combinations plus a random chart, find every Bezout solution of
  // the squared system, and test the full restricted system on each; common
  // zeros of the full system are always among them.
  EmptinessReport rep;
  rep.method = "sweep";
  for (int trial = 0; trial < std::max(trials, 1); ++trial) {
    std::vector<PolyC> square;
    const unsigned k = static_cast<unsigned>(restricted.size());
    if (k == m - 1) {
      square = restricted;
    } else {
      for (unsigned r = 0; r < m - 1; ++r) {
        PolyC combo(m);
        for (unsigned j = 0; j < k; ++j) combo = combo + restricted[j] * rng.unit_complex();
        square.push_back(combo);
      }
    }
    // Random affine chart c.t = 1.
    PolyC chart = PolyC::constant(m, CD(-1.0));
    for (unsigned j = 0; j < m; ++j)
      chart = chart + PolyC::variable(m, j) * rng.unit_complex();
    square.push_back(chart);

    HomotopyOutcome sols = solve_all_total_degree(square, rng);
    for (const auto& t : sols.solutions) {
      bool common = true;
      double tscale = 1.0;
      for (const CD& z : t) tscale = std::max(tscale, std::abs(z));
      for (const PolyC& f : restricted) {
        double scale = std::max(1.0, f.magnitude()) * std::pow(tscale, *f.homogeneous_degree());
        if (std::abs(f.eval(t)) > 1e-7 * scale) { common = false; break; }
      }
      if (common) {
        std::vector<CD> w(vars, CD(0.0));
        for (unsigned j = 0; j < m; ++j)
          for (unsigned i = 0; i < vars; ++i) w[i] += basis[j][i] * t[j];
        rep.empty = false;
        rep.witness = normalize_projective(w);
        return rep;
      }
    }
    if (sols.complete && static_cast<long>(sols.solutions.size()) > 0) break;
  }
  rep.empty = true;
  return rep;
}

}  // namespace k3cover
