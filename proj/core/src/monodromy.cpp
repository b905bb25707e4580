#include "k3cover/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "k3cover/errors.hpp"
#include "k3cover/roots.hpp"
#include "k3cover/univariate.hpp"

namespace k3cover {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double point_distance(const std::vector<CD>& a, const std::vector<CD>& b) {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<CD> chart_normalize(const std::vector<CD>& x, const std::vector<CD>& chart) {
  CD cx(0.0);
  for (size_t i = 0; i < x.size(); ++i) cx += chart[i] * x[i];
  std::vector<CD> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] / cx;
  return out;
}

// Symbolic 3x3 determinant of column vectors given as polynomials.
PolyC det3(const std::array<PolyC, 3>& c0, const std::array<PolyC, 3>& c1,
           const std::array<PolyC, 3>& c2) {
  return c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c0[1] * (c1[0] * c2[2] - c1[2] * c2[0]) +
         c0[2] * (c1[0] * c2[1] - c1[1] * c2[0]);
}

double min_pairwise(const std::vector<std::vector<CD>>& pts) {
  double m = 1e300;
  for (size_t a = 0; a + 1 < pts.size(); ++a)
    for (size_t b = a + 1; b < pts.size(); ++b) m = std::min(m, point_distance(pts[a], pts[b]));
  return m;
}

}  // namespace

int expected_section_genus(const CoverSpec& cover) {
  // Adjunction for the complete-intersection curve (equations plus one
  // hyperplane): 2g - 2 = deg * (sum of degrees - N).
  long sum = 1;  // the hyperplane
  for (int d : cover.equation_degrees()) sum += d;
  long two_g_minus_2 = cover.degree * (sum - (cover.ambient + 1));
  return static_cast<int>(two_g_minus_2 / 2 + 1);
}

int genus_from_cycles(long degree, const std::vector<std::vector<int>>& branch_cycle_types) {
  long total = -2 * degree;
  for (const auto& cycles : branch_cycle_types)
    for (int len : cycles) total += len - 1;
  if (total % 2 != 0)
    throw NumericalFailure("odd ramification parity: tracking failure");
  // Negative values signal a disconnected cover (the connected formula
  // overcounts); callers working over special lines read orbits instead.
  return static_cast<int>(total / 2 + 1);
}

PencilCover build_pencil(const CoverSpec& cover, std::uint64_t seed,
                         const MonodromyOptions& opts) {
  Rng rng(seed);
  PencilCover pc;
  pc.cover = cover;
  pc.seed = seed;
  pc.degree = cover.degree;
  const int n = cover.ambient;
  const unsigned vars = static_cast<unsigned>(n) + 2;  // x0..xN, s

  // Line through two anchor points of the projection plane.
  bool exact_line = cover.exact() && !opts.line;
  if (opts.line) {
    pc.line = *opts.line;
  } else if (exact_line) {
    std::array<std::vector<Rational>, 2> uv;
    for (auto& pt : uv) {
      pt.resize(3);
      for (Rational& c : pt) c = Rational(rng.int_in(-6, 6), rng.int_in(1, 3));
    }
    // Nondegenerate anchors.
    if (uv[0] == uv[1]) uv[1][0] += 1;
    pc.exact_line = uv;
    for (int i = 0; i < 2; ++i) {
      pc.line[static_cast<size_t>(i)].resize(3);
      for (int j = 0; j < 3; ++j)
        pc.line[static_cast<size_t>(i)][static_cast<size_t>(j)] = to_complex(uv[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    }
  } else {
    for (auto& pt : pc.line) {
      pt.resize(3);
      for (CD& c : pt) c = rng.disk(2.0);
    }
  }

  // Charts.
  pc.chart.resize(static_cast<size_t>(n) + 1);
  for (CD& c : pc.chart) c = rng.unit_complex();
  pc.aux_chart.resize(static_cast<size_t>(n) + 1);
  for (CD& c : pc.aux_chart) c = rng.unit_complex();

  // Square fiber system in (x, s): surface equations, two rank conditions
  // pinning (L0:L1:L2)(x) to the moving point u + s v, and the chart.
  {
    std::vector<PolyC> fiber;
    std::vector<PolyC> ximg;
    for (unsigned i = 0; i < vars - 1; ++i) ximg.push_back(PolyC::variable(vars, i));
    PolyC svar = PolyC::variable(vars, vars - 1);
    for (const PolyC& e : cover.equations) {
      std::vector<PolyC> im = ximg;
      fiber.push_back(e.substitute(im));
    }
    std::array<PolyC, 3> lx;
    for (int t = 0; t < 3; ++t) {
      std::vector<PolyC> im = ximg;
      lx[static_cast<size_t>(t)] = cover.center.forms[static_cast<size_t>(t)].substitute(im);
    }
    std::array<PolyC, 3> ys;
    for (int t = 0; t < 3; ++t)
      ys[static_cast<size_t>(t)] = PolyC::constant(vars, pc.line[0][static_cast<size_t>(t)]) +
                                   svar * pc.line[1][static_cast<size_t>(t)];
    for (int r = 0; r < 2; ++r) {
      std::array<PolyC, 3> a;
      pc.rank_vectors[static_cast<size_t>(r)].resize(3);
      for (int t = 0; t < 3; ++t) {
        CD val = rng.unit_complex();
        pc.rank_vectors[static_cast<size_t>(r)][static_cast<size_t>(t)] = val;
        a[static_cast<size_t>(t)] = PolyC::constant(vars, val);
      }
      fiber.push_back(det3(a, ys, lx));
    }
    PolyC chart_eq = PolyC::constant(vars, CD(-1.0));
    for (unsigned i = 0; i < vars - 1; ++i) chart_eq = chart_eq + ximg[i] * pc.chart[i];
    fiber.push_back(chart_eq);
    pc.fiber.emplace(std::move(fiber));
  }

  // N = 3: the fiber is a quartic along the moving line through the center
  // point; build it as a two-variable family f(mu, s).
  if (n == 3) {
    auto exact_basis = cover.center.exact_spanning_basis();
    if (exact_basis && exact_line && cover.exact_equations) {
      if (exact_basis->size() != 1) throw InputError("center of a P^3 cover must be a point");
      const auto& w = (*exact_basis)[0];
      MatQ lmat = *cover.center.exact_coefficient_matrix();
      // Right inverse: L A = I column by column.
      std::vector<std::vector<Rational>> acols;
      for (int t = 0; t < 3; ++t) {
        std::vector<Rational> rhs(3, Rational(0));
        rhs[static_cast<size_t>(t)] = 1;
        acols.push_back(solve_particular(lmat, rhs));
      }
      std::vector<PolyQ> images;
      PolyQ mu = PolyQ::variable(2, 0), sv = PolyQ::variable(2, 1);
      for (int i = 0; i <= n; ++i) {
        PolyQ qi(2);
        for (int t = 0; t < 3; ++t) {
          Rational a_it = acols[static_cast<size_t>(t)][static_cast<size_t>(i)];
          qi = qi + PolyQ::constant(2, a_it * (*pc.exact_line)[0][static_cast<size_t>(t)]) +
               sv * (a_it * (*pc.exact_line)[1][static_cast<size_t>(t)]);
        }
        qi = qi + mu * w[static_cast<size_t>(i)];
        images.push_back(qi);
      }
      pc.fiber_univariate_exact = (*cover.exact_equations)[0].substitute(images);
      pc.fiber_univariate = to_complex_poly(*pc.fiber_univariate_exact);
      pc.center_point.resize(static_cast<size_t>(n) + 1);
      for (int i = 0; i <= n; ++i) pc.center_point[static_cast<size_t>(i)] = to_complex(w[static_cast<size_t>(i)]);
      pc.line_lift.resize(2 * (static_cast<size_t>(n) + 1));
      for (int i = 0; i <= n; ++i) {
        CD c0(0.0), c1(0.0);
        for (int t = 0; t < 3; ++t) {
          CD a_it = to_complex(acols[static_cast<size_t>(t)][static_cast<size_t>(i)]);
          c0 += a_it * pc.line[0][static_cast<size_t>(t)];
          c1 += a_it * pc.line[1][static_cast<size_t>(t)];
        }
        pc.line_lift[static_cast<size_t>(i)] = c0;
        pc.line_lift[static_cast<size_t>(i) + static_cast<size_t>(n) + 1] = c1;
      }
    } else {
      auto basis = cover.center.spanning_basis();
      if (basis.size() != 1) throw InputError("center of a P^3 cover must be a point");
      const auto& w = basis[0];
      // Right inverse A = L^T (L L^T)^{-1} (complex bilinear).
      MatC lmat = cover.center.coefficient_matrix();
      MatC llt(3, 3);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          CD s(0.0);
          for (int j = 0; j <= n; ++j) s += lmat(a, j) * lmat(b, j);
          llt(a, b) = s;
        }
      MatC inv = inverse(llt);
      MatC at(n + 1, 3);
      for (int i = 0; i <= n; ++i)
        for (int t = 0; t < 3; ++t) {
          CD s(0.0);
          for (int a = 0; a < 3; ++a) s += lmat(a, i) * inv(a, t);
          at(i, t) = s;
        }
      std::vector<PolyC> images;
      PolyC mu = PolyC::variable(2, 0), sv = PolyC::variable(2, 1);
      pc.center_point = w;
      pc.line_lift.resize(2 * (static_cast<size_t>(n) + 1));
      for (int i = 0; i <= n; ++i) {
        CD c0(0.0), c1(0.0);
        for (int t = 0; t < 3; ++t) {
          c0 += at(i, t) * pc.line[0][static_cast<size_t>(t)];
          c1 += at(i, t) * pc.line[1][static_cast<size_t>(t)];
        }
        pc.line_lift[static_cast<size_t>(i)] = c0;
        pc.line_lift[static_cast<size_t>(i) + static_cast<size_t>(n) + 1] = c1;
        PolyC qi = PolyC::constant(2, c0) + sv * c1 + mu * w[static_cast<size_t>(i)];
        images.push_back(qi);
      }
      pc.fiber_univariate = cover.equations[0].substitute(images).pruned(1e-14);
    }
    // The leading mu-coefficient is E(center) and must not vanish.
    auto coeffs = pc.fiber_univariate->coefficients_in(0);
    if (static_cast<long>(coeffs.size()) - 1 != pc.degree)
      throw InputError("fiber family has wrong degree (center on the surface?)");
  }
  return pc;
}

// ---------------------------------------------------------------------------
// Discriminant points.
// ---------------------------------------------------------------------------

namespace {

// Adaptive clustering of discriminant roots: pick the smallest radius whose
// clustering is well separated.
std::pair<std::vector<CD>, std::vector<int>> cluster_discriminant(const std::vector<CD>& roots) {
  double scale = 1.0;
  for (const CD& r : roots) scale = std::max(scale, std::abs(r));
  const double candidates[] = {1e-6, 1e-5, 1e-4, 5e-4, 2e-3};
  for (double rel : candidates) {
    auto cl = cluster_points(roots, rel * scale);
    double minsep = 1e300;
    for (size_t a = 0; a + 1 < cl.size(); ++a)
      for (size_t b = a + 1; b < cl.size(); ++b)
        minsep = std::min(minsep, std::abs(cl[a].first - cl[b].first));
    if (cl.size() == 1 || minsep > 25 * rel * scale) {
      std::vector<CD> pts;
      std::vector<int> mult;
      for (const auto& [c, m] : cl) {
        pts.push_back(c);
        mult.push_back(m);
      }
      return {pts, mult};
    }
  }
  auto cl = cluster_points(roots, 2e-3 * scale);
  std::vector<CD> pts;
  std::vector<int> mult;
  for (const auto& [c, m] : cl) {
    pts.push_back(c);
    mult.push_back(m);
  }
  return {pts, mult};
}

DiscriminantReport discriminant_from_univariate(const PencilCover& pc) {
  DiscriminantReport rep;
  const PolyC& f = *pc.fiber_univariate;
  auto coeffs = f.coefficients_in(0);  // polynomials in s
  const int d = static_cast<int>(coeffs.size()) - 1;
  // Pure-power shape mu^d = -g(s): branch points are the roots of g.  This
  // keeps tangency clusters at double-root accuracy instead of running them
  // through the resultant (where they would appear with multiplicity d-1).
  bool pure = true;
  double scale = f.magnitude();
  for (int k = 1; k < d; ++k)
    if (coeffs[static_cast<size_t>(k)].magnitude() > 1e-12 * scale) { pure = false; break; }
  std::vector<CD> roots;
  if (pure) {
    rep.method = "coefficient-roots";
    PolyC g = coeffs[0].substitute({PolyC::variable(1, 0), PolyC::variable(1, 0)});
    if (g.degree() < 1) throw NumericalFailure("degenerate pencil line: constant fiber family");
    roots = roots_univariate(uni_from_poly_c(g));
  } else {
    rep.method = "resultant";
    if (pc.fiber_univariate_exact) {
      PolyQ disc = resultant(*pc.fiber_univariate_exact,
                             pc.fiber_univariate_exact->derivative(0), 0);
      UniQ u = uni_from_poly(disc.substitute({PolyQ::variable(1, 0), PolyQ::variable(1, 0)}));
      if (uni_degree(u) < 1) throw NumericalFailure("degenerate pencil line: constant discriminant");
      UniC uc(u.size());
      for (size_t i = 0; i < u.size(); ++i) uc[i] = to_complex(u[i]);
      roots = roots_univariate(uc);
    } else {
      PolyC disc = resultant(f, f.derivative(0), 0).pruned(1e-13);
      UniC u = uni_from_poly_c(disc.substitute({PolyC::variable(1, 0), PolyC::variable(1, 0)}));
      if (uni_degree(u) < 1) throw NumericalFailure("degenerate pencil line: constant discriminant");
      roots = roots_univariate(u);
    }
  }
  auto [pts, mult] = cluster_discriminant(roots);
  rep.points = pts;
  rep.multiplicities = mult;
  return rep;
}

DiscriminantReport discriminant_from_critical_system(const PencilCover& pc, Rng& rng,
                                                     long expected_ramification) {
  DiscriminantReport rep;
  rep.method = "critical-newton";
  const int n = pc.cover.ambient;
  const int nx = n + 1;           // x variables
  const unsigned vars = static_cast<unsigned>(2 * nx + 1);  // x, v, s

  // Lift the fiber system F(x, s) and its x-Jacobian times a kernel vector.
  std::vector<PolyC> ximg;
  for (int i = 0; i < nx; ++i) ximg.push_back(PolyC::variable(vars, static_cast<unsigned>(i)));
  ximg.push_back(PolyC::variable(vars, vars - 1));  // s rides last
  std::vector<PolyC> crit;
  for (const PolyC& fp : pc.fiber->equations()) crit.push_back(fp.substitute(ximg));
  for (const PolyC& fp : pc.fiber->equations()) {
    PolyC row(vars);
    for (int b = 0; b < nx; ++b) {
      PolyC dfb = fp.derivative(static_cast<unsigned>(b)).substitute(ximg);
      row = row + dfb * PolyC::variable(vars, static_cast<unsigned>(nx + b));
    }
    crit.push_back(row);
  }
  {
    PolyC norm = PolyC::constant(vars, CD(-1.0));
    for (int b = 0; b < nx; ++b)
      norm = norm + PolyC::variable(vars, static_cast<unsigned>(nx + b)) * pc.aux_chart[static_cast<size_t>(b)];
    crit.push_back(norm);
  }
  SquareSystem critical(std::move(crit));

  NewtonOptions nopts;
  nopts.tol = 1e-11;
  nopts.max_iter = 140;
  nopts.quadratic_guard = false;  // tangency criticals converge linearly

  std::vector<CD> svals;
  auto cluster_now = [&]() {
    return cluster_points(svals, 3e-5 * std::max(1.0, [&] {
      double m = 0;
      for (const CD& s : svals) m = std::max(m, std::abs(s));
      return m;
    }()));
  };
  const int batch = 150;
  const int max_starts = static_cast<int>(200 * std::max<long>(expected_ramification, 4));
  int idle_batches = 0;
  size_t last_count = 0;
  for (int done = 0; done < max_starts && idle_batches < 2; done += batch) {
    for (int b = 0; b < batch; ++b) {
      std::vector<CD> start(vars);
      for (int i = 0; i < nx; ++i) start[static_cast<size_t>(i)] = rng.disk(2.5);
      for (int i = 0; i < nx; ++i) start[static_cast<size_t>(nx + i)] = rng.disk(2.0);
      start[vars - 1] = rng.disk(4.0);
      NewtonResult r = newton_solve(critical, std::move(start), nopts);
      if (!r.ok) continue;
      // Reject drift toward the chart's infinity: genuine fiber points are
      // chart-normalized and stay moderate.
      double xmag = 0;
      for (int i = 0; i < nx; ++i) xmag = std::max(xmag, std::abs(r.x[static_cast<size_t>(i)]));
      if (xmag > 300.0) continue;
      svals.push_back(r.x[vars - 1]);
    }
    auto cl = cluster_now();
    if (cl.size() == last_count && !cl.empty())
      ++idle_batches;
    else
      idle_batches = 0;
    last_count = cl.size();
  }
  if (svals.empty()) throw NumericalFailure("no ramification points found");
  // Drop the rank-condition artifact: at the one s with u + s v inside
  // span(a, b) the two conditions cut a plane instead of the moving point's
  // line, and the critical search picks up that degeneration as a cluster.
  auto spurious = [&](CD s) {
    const auto& a = pc.rank_vectors[0];
    const auto& b = pc.rank_vectors[1];
    CD y0 = pc.line[0][0] + s * pc.line[1][0];
    CD y1 = pc.line[0][1] + s * pc.line[1][1];
    CD y2 = pc.line[0][2] + s * pc.line[1][2];
    CD det = a[0] * (b[1] * y2 - b[2] * y1) - a[1] * (b[0] * y2 - b[2] * y0) +
             a[2] * (b[0] * y1 - b[1] * y0);
    double scale = std::sqrt((std::norm(y0) + std::norm(y1) + std::norm(y2)) *
                             (std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2])) *
                             (std::norm(b[0]) + std::norm(b[1]) + std::norm(b[2])));
    return std::abs(det) < 1e-6 * std::max(scale, 1e-12);
  };
  for (const auto& [c, m] : cluster_now()) {
    if (spurious(c)) continue;
    rep.points.push_back(c);
    rep.multiplicities.push_back(m);
  }
  if (rep.points.empty()) throw NumericalFailure("only spurious ramification clusters found");
  return rep;
}

}  // namespace

DiscriminantReport discriminant_points(const PencilCover& pc, Rng& rng,
                                       long expected_ramification) {
  DiscriminantReport rep = pc.fiber_univariate
                               ? discriminant_from_univariate(pc)
                               : discriminant_from_critical_system(pc, rng, expected_ramification);
  if (rep.points.empty()) throw NumericalFailure("no branch points found");
  if (static_cast<long>(rep.points.size()) > expected_ramification)
    throw NumericalFailure("more branch clusters than the ramification budget allows");
  return rep;
}

// ---------------------------------------------------------------------------
// Fiber solving and loop tracking.
// ---------------------------------------------------------------------------

// All d fiber points over s, chart-normalized.
std::vector<std::vector<CD>> fiber_points(const PencilCover& pc, CD s, Rng& rng) {
  const int n = pc.cover.ambient;
  if (pc.fiber_univariate) {
    // Roots of the line-restricted polynomial; x = q(s) + mu * w.
    std::vector<PolyC> images{PolyC::variable(1, 0), PolyC::constant(1, s)};
    PolyC fs = pc.fiber_univariate->substitute(images);
    std::vector<CD> roots = roots_univariate(uni_from_poly_c(fs));
    std::vector<std::vector<CD>> out;
    for (const CD& mu : roots) {
      std::vector<CD> x(static_cast<size_t>(n) + 1);
      for (int i = 0; i <= n; ++i)
        x[static_cast<size_t>(i)] = pc.line_lift[static_cast<size_t>(i)] +
                                    s * pc.line_lift[static_cast<size_t>(i) + static_cast<size_t>(n) + 1] +
                                    mu * pc.center_point[static_cast<size_t>(i)];
      out.push_back(chart_normalize(x, pc.chart));
    }
    return out;
  }
  SquareSystem at = pc.fiber->at_parameter(s);
  HomotopyOutcome sols = solve_all_total_degree(at.equations(), rng);
  return sols.solutions;
}

namespace {

std::optional<Perm> match_fibers(const std::vector<std::vector<CD>>& end_pts,
                                 const std::vector<std::vector<CD>>& base_pts, double tol) {
  Perm perm(end_pts.size(), -1);
  std::vector<bool> taken(base_pts.size(), false);
  for (size_t i = 0; i < end_pts.size(); ++i) {
    double d1 = 1e300, d2 = 1e300;
    int j1 = -1;
    for (size_t j = 0; j < base_pts.size(); ++j) {
      double d = point_distance(end_pts[i], base_pts[j]);
      if (d < d1) {
        d2 = d1;
        d1 = d;
        j1 = static_cast<int>(j);
      } else if (d < d2) {
        d2 = d;
      }
    }
    if (j1 < 0 || d1 > tol || d2 < 10 * d1) return std::nullopt;  // separation guard
    if (taken[static_cast<size_t>(j1)]) return std::nullopt;
    taken[static_cast<size_t>(j1)] = true;
    perm[i] = j1;
  }
  return perm;
}

}  // namespace

Perm track_loop(const PencilCover& pc, const std::vector<std::vector<CD>>& base_fiber,
                CD base_s, CD branch_point, double petal_radius, const MonodromyOptions& opts,
                double* max_residual) {
  CD dir = (base_s - branch_point) / std::abs(base_s - branch_point);
  CD anchor = branch_point + petal_radius * dir;
  double phi0 = std::arg(dir);

  TrackOptions topts;
  topts.corrector_tol = opts.tol_newton;
  topts.merge_guard = 5 * opts.tol_match;

  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<std::vector<CD>> pts = base_fiber;
    double res = 0;
    bool ok = true;
    auto run_leg = [&](const std::function<CD(double)>& path, int steps) {
      if (!ok) return;
      TrackOptions leg = topts;
      leg.init_steps = steps << attempt;  // re-track at half step on retry
      TrackResult tr = track_tuple(*pc.fiber, pts, path, leg);
      if (!tr.ok) {
        if (tr.reason == "step-underflow")
          throw NumericalFailure("step underflow near a discriminant point");
        ok = false;
        return;
      }
      pts = std::move(tr.points);
      res = std::max(res, tr.max_residual);
    };
    run_leg([&](double t) { return base_s + (anchor - base_s) * t; }, 32);
    run_leg([&](double t) {
      return branch_point + petal_radius * CD(std::cos(phi0 + kTwoPi * t), std::sin(phi0 + kTwoPi * t));
    }, 64);
    run_leg([&](double t) { return anchor + (base_s - anchor) * t; }, 32);
    if (!ok) continue;
    auto perm = match_fibers(pts, base_fiber, opts.tol_match);
    if (perm) {
      if (max_residual) *max_residual = std::max(*max_residual, res);
      return *perm;
    }
  }
  throw NumericalFailure("fiber matching ambiguity after re-tracking");
}

// ---------------------------------------------------------------------------

namespace {

struct BaseChoice {
  CD s;
  std::vector<std::vector<CD>> fiber;
  double separation = 0;
};

double segment_clearance(CD base, const std::vector<CD>& pts) {
  // Smallest distance from any branch point to the segment joining the base
  // with any other branch point.
  double worst = 1e300;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      CD a = base, b = pts[i], p = pts[j];
      CD ab = b - a;
      double t = std::clamp(((p - a) * std::conj(ab)).real() / std::norm(ab), 0.0, 1.0);
      worst = std::min(worst, std::abs(p - (a + t * ab)));
    }
  return worst;
}

BaseChoice choose_basepoint(const PencilCover& pc, const std::vector<CD>& branch, Rng& rng,
                            const MonodromyOptions& opts) {
  double maxmod = 0;
  for (const CD& p : branch) maxmod = std::max(maxmod, std::abs(p));
  double radius = 3.0 * std::max(maxmod, 1.0);
  double jitter = rng.unit() * kTwoPi;
  // Rank 16 candidate angles by segment clearance, then validate fibers.
  std::vector<std::pair<double, CD>> cands;
  for (int k = 0; k < 16; ++k) {
    double th = jitter + kTwoPi * k / 16;
    CD s = radius * CD(std::cos(th), std::sin(th));
    cands.emplace_back(segment_clearance(s, branch), s);
  }
  std::sort(cands.rbegin(), cands.rend(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // Walk candidates in clearance order; the first one whose fiber is full
  // and well separated wins (clearance keeps petal segments away from the
  // other branch points).
  BaseChoice best;
  for (size_t k = 0; k < cands.size(); ++k) {
    std::vector<std::vector<CD>> fiber;
    try {
      fiber = fiber_points(pc, cands[k].second, rng);
    } catch (const std::exception&) {
      continue;
    }
    if (static_cast<long>(fiber.size()) != pc.degree) continue;
    double sep = min_pairwise(fiber);
    if (sep > 10 * opts.tol_match) {
      best.s = cands[k].second;
      best.fiber = std::move(fiber);
      best.separation = sep;
      break;
    }
    if (sep > best.separation) {
      best.s = cands[k].second;
      best.fiber = std::move(fiber);
      best.separation = sep;
    }
  }
  if (best.fiber.empty() || best.separation <= 10 * opts.tol_match)
    throw NumericalFailure("no basepoint with a well-separated full fiber");
  return best;
}

}  // namespace

MonodromyResult monodromy_group(const CoverSpec& cover, std::uint64_t seed,
                                const MonodromyOptions& opts) {
  const int expected_genus = expected_section_genus(cover);
  const long expected_ram = 2L * expected_genus - 2 + 2 * cover.degree;
  std::string last_error = "monodromy failed";
  for (int attempt = 0; attempt <= opts.max_reseeds; ++attempt) {
    Rng rng = Rng(seed).fork(static_cast<std::uint64_t>(attempt));
    try {
      MonodromyOptions local = opts;
      if (opts.line && attempt > 0) {
        // Keep the prescribed line but re-anchor its parametrization.
        CD alpha = rng.disk(1.5), beta = rng.disk(1.5);
        std::array<std::vector<CD>, 2> uv = *opts.line;
        std::array<std::vector<CD>, 2> moved = uv;
        for (int t = 0; t < 3; ++t) {
          moved[0][static_cast<size_t>(t)] = uv[0][static_cast<size_t>(t)] + alpha * uv[1][static_cast<size_t>(t)];
          moved[1][static_cast<size_t>(t)] = uv[0][static_cast<size_t>(t)] + beta * uv[1][static_cast<size_t>(t)];
        }
        local.line = moved;
      }
      PencilCover pc = build_pencil(cover, rng.next(), local);
      Rng disc_rng = rng.fork(1);
      DiscriminantReport disc = discriminant_points(pc, disc_rng, expected_ram);

      double minsep = 1e300;
      for (size_t a = 0; a + 1 < disc.points.size(); ++a)
        for (size_t b = a + 1; b < disc.points.size(); ++b)
          minsep = std::min(minsep, std::abs(disc.points[a] - disc.points[b]));
      double rho = disc.points.size() == 1 ? 0.1 * std::max(1.0, std::abs(disc.points[0]))
                                           : 0.1 * minsep;

      Rng base_rng = rng.fork(2);
      BaseChoice base = choose_basepoint(pc, disc.points, base_rng, local);

      // Petal loops in angular order as seen from the base.
      std::vector<CD> ordered = disc.points;
      std::sort(ordered.begin(), ordered.end(), [&](const CD& a, const CD& b) {
        return std::arg(a - base.s) < std::arg(b - base.s);
      });

      MonodromyResult result;
      result.branch_points = ordered;
      result.degree = pc.degree;
      result.base_s = base.s;
      result.fiber_separation = base.separation;
      result.reseeds_used = attempt;
      result.discriminant_method = disc.method;
      result.loop_permutations.resize(ordered.size());

      double max_res = 0;
      if (local.threads > 1) {
        std::vector<std::future<std::pair<Perm, double>>> futs;
        for (size_t i = 0; i < ordered.size(); ++i)
          futs.push_back(std::async(std::launch::async, [&, i] {
            double r = 0;
            Perm p = track_loop(pc, base.fiber, base.s, ordered[i], rho, local, &r);
            return std::make_pair(p, r);
          }));
        for (size_t i = 0; i < futs.size(); ++i) {
          auto [p, r] = futs[i].get();
          result.loop_permutations[i] = std::move(p);
          max_res = std::max(max_res, r);
        }
      } else {
        for (size_t i = 0; i < ordered.size(); ++i)
          result.loop_permutations[i] =
              track_loop(pc, base.fiber, base.s, ordered[i], rho, local, &max_res);
      }
      result.max_tracking_residual = max_res;

      // Sphere relation: the ordered product of the petal generators around
      // the base must be the identity (no branch point at infinity, none
      // missed).  Orientation fixes whether the angular order runs up or
      // down; accept the one that closes, reject when neither does.
      auto product_of = [&](bool ascending) {
        Perm acc = perm_identity(static_cast<int>(pc.degree));
        if (ascending)
          for (const Perm& p : result.loop_permutations) acc = perm_compose(acc, p);
        else
          for (auto it = result.loop_permutations.rbegin(); it != result.loop_permutations.rend(); ++it)
            acc = perm_compose(acc, *it);
        return acc;
      };
      for (const Perm& p : result.loop_permutations)
        if (perm_is_identity(p))
          throw NumericalFailure("identity petal: not a branch point or winding lost");
      bool closes_up = perm_is_identity(product_of(true));
      bool closes_down = perm_is_identity(product_of(false));
      if (!closes_up && !closes_down)
        throw NumericalFailure("sphere relation violated: a branch point was missed");
      if (!closes_up) {
        std::reverse(result.branch_points.begin(), result.branch_points.end());
        std::reverse(result.loop_permutations.begin(), result.loop_permutations.end());
      }

      std::vector<int> tags(result.loop_permutations.size());
      for (size_t i = 0; i < tags.size(); ++i) tags[i] = static_cast<int>(i);
      result.group = close_perm_group(static_cast<int>(pc.degree), result.loop_permutations, tags);

      std::vector<std::vector<int>> types;
      for (const Perm& p : result.loop_permutations) types.push_back(cycle_type(p));
      result.genus = genus_from_cycles(pc.degree, types);
      // A prescribed line may cut a special (even disconnected) curve; the
      // adjunction genus budget applies to generic pencil lines only.
      if (!opts.line && result.genus != expected_genus)
        throw NumericalFailure("Riemann-Hurwitz mismatch: genus " + std::to_string(result.genus) +
                               " expected " + std::to_string(expected_genus));
      result.galois = is_galois(result.group);
      return result;
    } catch (const NumericalFailure& e) {
      last_error = e.what();
    }
  }
  throw NumericalFailure(last_error + std::string(" (after reseeds)"));
}

}  // namespace k3cover
