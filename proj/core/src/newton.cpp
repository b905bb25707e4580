#include "k3cover/newton.hpp"

#include <algorithm>
#include <cmath>

#include "k3cover/errors.hpp"

namespace k3cover {

namespace {

double max_norm(const std::vector<CD>& v) {
  double m = 0;
  for (const CD& z : v) m = std::max(m, std::abs(z));
  return m;
}

double distance(const std::vector<CD>& a, const std::vector<CD>& b) {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

SquareSystem::SquareSystem(std::vector<PolyC> eqs) : eqs_(std::move(eqs)) {
  n_ = static_cast<int>(eqs_.size());
  for (const PolyC& p : eqs_)
    if (p.arity() != static_cast<unsigned>(n_))
      throw InputError("square system: #equations must equal #unknowns");
  jac_.resize(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    jac_[static_cast<size_t>(i)].reserve(static_cast<size_t>(n_));
    for (int j = 0; j < n_; ++j)
      jac_[static_cast<size_t>(i)].push_back(eqs_[static_cast<size_t>(i)].derivative(static_cast<unsigned>(j)));
  }
}

std::vector<CD> SquareSystem::eval(const std::vector<CD>& x) const {
  std::vector<CD> r(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) r[static_cast<size_t>(i)] = eqs_[static_cast<size_t>(i)].eval(x);
  return r;
}

MatC SquareSystem::jacobian(const std::vector<CD>& x) const {
  MatC j(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) j(i, k) = jac_[static_cast<size_t>(i)][static_cast<size_t>(k)].eval(x);
  return j;
}

double SquareSystem::residual_norm(const std::vector<CD>& x) const {
  return max_norm(eval(x));
}

NewtonResult newton_solve(const SquareSystem& sys, std::vector<CD> start,
                          const NewtonOptions& opts) {
  NewtonResult out;
  std::vector<CD> x = std::move(start);
  double prev = sys.residual_norm(x);
  int worse_streak = 0;
  for (int it = 0; it < opts.max_iter; ++it) {
    double scale = 1.0 + max_norm(x);
    if (prev < opts.tol * scale) {
      out.ok = true;
      out.x = std::move(x);
      out.residual = prev;
      out.iterations = it;
      return out;
    }
    std::vector<CD> f = sys.eval(x);
    std::vector<CD> dx;
    try {
      dx = lu_solve(sys.jacobian(x), f);
    } catch (const SingularMatrixError&) {
      out.reason = "singular-jacobian";
      out.x = std::move(x);
      out.residual = prev;
      return out;
    }
    for (size_t i = 0; i < x.size(); ++i) x[i] -= dx[i];
    if (max_norm(x) > opts.diverge_norm) {
      out.reason = "diverged";
      out.x = std::move(x);
      return out;
    }
    double cur = sys.residual_norm(x);
    if (opts.quadratic_guard) {
      worse_streak = cur > prev * 0.9 ? worse_streak + 1 : 0;
      if (worse_streak >= 5) {
        out.reason = "diverged";
        out.x = std::move(x);
        out.residual = cur;
        return out;
      }
    }
    prev = cur;
  }
  double scale = 1.0 + max_norm(x);
  if (prev < opts.tol * scale) {
    out.ok = true;
    out.x = std::move(x);
    out.residual = prev;
    out.iterations = opts.max_iter;
    return out;
  }
  out.reason = "max-iterations";
  out.x = std::move(x);
  out.residual = prev;
  return out;
}

std::vector<std::vector<CD>> dedup_points(const std::vector<std::vector<CD>>& pts, double tol) {
  std::vector<std::vector<CD>> out;
  for (const auto& p : pts) {
    bool seen = false;
    for (const auto& q : out)
      if (distance(p, q) < tol) { seen = true; break; }
    if (!seen) out.push_back(p);
  }
  return out;
}

std::vector<std::vector<CD>> many_start_solutions(const SquareSystem& sys, Rng& rng,
                                                  int n_starts, double start_radius,
                                                  const NewtonOptions& opts, double dedup_tol) {
  std::vector<std::vector<CD>> found;
  for (int s = 0; s < n_starts; ++s) {
    std::vector<CD> start(static_cast<size_t>(sys.size()));
    for (CD& z : start) z = rng.disk(start_radius);
    NewtonResult r = newton_solve(sys, std::move(start), opts);
    if (r.ok) found.push_back(std::move(r.x));
  }
  return dedup_points(found, dedup_tol);
}

// ---------------------------------------------------------------------------

ParamSystem::ParamSystem(std::vector<PolyC> eqs) : eqs_(std::move(eqs)) {
  n_ = static_cast<int>(eqs_.size());
  for (const PolyC& p : eqs_) {
    if (p.arity() != static_cast<unsigned>(n_) + 1)
      throw InputError("param system: arity must be #equations + 1");
    max_degree_ = std::max(max_degree_, p.degree());
    coeff_magnitude_ = std::max(coeff_magnitude_, p.magnitude());
  }
  jac_.resize(static_cast<size_t>(n_));
  ds_.reserve(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j)
      jac_[static_cast<size_t>(i)].push_back(eqs_[static_cast<size_t>(i)].derivative(static_cast<unsigned>(j)));
    ds_.push_back(eqs_[static_cast<size_t>(i)].derivative(static_cast<unsigned>(n_)));
  }
}

std::vector<CD> ParamSystem::joined(const std::vector<CD>& x, CD s) const {
  std::vector<CD> v = x;
  v.push_back(s);
  return v;
}

std::vector<CD> ParamSystem::eval(const std::vector<CD>& x, CD s) const {
  std::vector<CD> v = joined(x, s);
  std::vector<CD> r(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) r[static_cast<size_t>(i)] = eqs_[static_cast<size_t>(i)].eval(v);
  return r;
}

MatC ParamSystem::jacobian_x(const std::vector<CD>& x, CD s) const {
  std::vector<CD> v = joined(x, s);
  MatC j(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) j(i, k) = jac_[static_cast<size_t>(i)][static_cast<size_t>(k)].eval(v);
  return j;
}

std::vector<CD> ParamSystem::dparam(const std::vector<CD>& x, CD s) const {
  std::vector<CD> v = joined(x, s);
  std::vector<CD> r(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) r[static_cast<size_t>(i)] = ds_[static_cast<size_t>(i)].eval(v);
  return r;
}

double ParamSystem::residual_norm(const std::vector<CD>& x, CD s) const {
  return max_norm(eval(x, s));
}

double ParamSystem::eval_scale(const std::vector<CD>& x, CD s) const {
  double m = std::max(1.0, std::abs(s));
  for (const CD& z : x) m = std::max(m, std::abs(z));
  return coeff_magnitude_ * std::pow(m, static_cast<double>(max_degree_));
}

SquareSystem ParamSystem::at_parameter(CD s) const {
  std::vector<PolyC> frozen;
  frozen.reserve(eqs_.size());
  std::vector<PolyC> images;
  for (int j = 0; j < n_; ++j) images.push_back(PolyC::variable(static_cast<unsigned>(n_), static_cast<unsigned>(j)));
  images.push_back(PolyC::constant(static_cast<unsigned>(n_), s));
  for (const PolyC& p : eqs_) frozen.push_back(p.substitute(images));
  return SquareSystem(std::move(frozen));
}

TrackResult track_tuple(const ParamSystem& sys, std::vector<std::vector<CD>> points,
                        const std::function<CD(double)>& s_of_tau, const TrackOptions& opts) {
  TrackResult out;
  double tau = 0;
  double step = 1.0 / opts.init_steps;
  NewtonOptions nopts;
  nopts.tol = opts.corrector_tol;
  nopts.max_iter = opts.corrector_iters;
  nopts.quadratic_guard = false;
  nopts.diverge_norm = opts.diverge_norm;

  while (tau < 1.0 - 1e-15) {
    double next = std::min(1.0, tau + step);
    CD s0 = s_of_tau(tau), s1 = s_of_tau(next);
    bool all_ok = true;
    std::vector<std::vector<CD>> moved(points.size());
    double worst_res = 0;
    for (size_t p = 0; p < points.size(); ++p) {
      std::vector<CD> x = points[p];
      // Euler predictor, then Newton corrector at the new parameter value.
      try {
        std::vector<CD> fs = sys.dparam(x, s0);
        for (CD& z : fs) z *= (s1 - s0);
        std::vector<CD> dx = lu_solve(sys.jacobian_x(x, s0), fs);
        for (size_t i = 0; i < x.size(); ++i) x[i] -= dx[i];
      } catch (const SingularMatrixError&) {
        all_ok = false;
        break;
      }
      bool corrected = false;
      for (int it = 0; it < opts.corrector_iters; ++it) {
        std::vector<CD> f = sys.eval(x, s1);
        double res = max_norm(f);
        double scale = sys.eval_scale(x, s1);
        if (res < opts.corrector_tol * scale) {
          corrected = true;
          worst_res = std::max(worst_res, res / scale);  // relative residual
          break;
        }
        try {
          std::vector<CD> dx = lu_solve(sys.jacobian_x(x, s1), f);
          for (size_t i = 0; i < x.size(); ++i) x[i] -= dx[i];
        } catch (const SingularMatrixError&) {
          break;
        }
        if (max_norm(x) > opts.diverge_norm) break;
      }
      if (!corrected) {
        all_ok = false;
        break;
      }
      moved[p] = std::move(x);
    }
    if (all_ok && opts.merge_guard > 0 && moved.size() > 1) {
      double min_pair = 1e300;
      for (size_t a = 0; a + 1 < moved.size(); ++a)
        for (size_t b = a + 1; b < moved.size(); ++b)
          min_pair = std::min(min_pair, distance(moved[a], moved[b]));
      if (min_pair < opts.merge_guard) all_ok = false;
    }
    if (all_ok) {
      points = std::move(moved);
      out.max_residual = std::max(out.max_residual, worst_res);
      tau = next;
      step = std::min(step * 1.5, 1.0 / opts.init_steps);
    } else {
      step *= 0.5;
      if (step < opts.min_step) {
        out.reason = "step-underflow";
        out.points = std::move(points);
        return out;
      }
    }
  }
  out.ok = true;
  out.points = std::move(points);
  return out;
}

// ---------------------------------------------------------------------------

HomotopyOutcome solve_all_total_degree(const std::vector<PolyC>& eqs, Rng& rng,
                                       const TrackOptions& topts, double dedup_tol) {
  const int n = static_cast<int>(eqs.size());
  for (const PolyC& p : eqs)
    if (p.arity() != static_cast<unsigned>(n)) throw InputError("homotopy: system must be square");
  std::vector<int> deg(static_cast<size_t>(n));
  long bezout = 1;
  for (int i = 0; i < n; ++i) {
    deg[static_cast<size_t>(i)] = eqs[static_cast<size_t>(i)].degree();
    if (deg[static_cast<size_t>(i)] < 1) throw InputError("homotopy: constant equation");
    bezout *= deg[static_cast<size_t>(i)];
  }

  HomotopyOutcome out;
  // Start system: l_i(x)^{d_i} = r_i with random affine-linear l_i; its
  // solutions are products of linear solves over all root-of-unity choices.
  MatC lin(n, n);
  std::vector<CD> lin_const(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) lin(i, j) = rng.unit_complex() * (0.5 + rng.unit());
    lin_const[static_cast<size_t>(i)] = rng.unit_complex() * (0.5 + rng.unit());
  }
  std::vector<CD> rhs_base(static_cast<size_t>(n));
  for (CD& z : rhs_base) z = rng.unit_complex() * (0.7 + rng.unit());
  CD gamma = rng.unit_complex();

  const unsigned arity = static_cast<unsigned>(n) + 1;  // plus homotopy parameter
  std::vector<PolyC> hpolys;
  {
    // H_i = gamma*(1-T)*g_i + T*f_i, with g_i = l_i^{d_i} - r_i.
    std::vector<PolyC> xN;
    for (int j = 0; j < n; ++j) xN.push_back(PolyC::variable(arity, static_cast<unsigned>(j)));
    PolyC tpar = PolyC::variable(arity, static_cast<unsigned>(n));
    PolyC one = PolyC::constant(arity, CD(1.0));
    std::vector<PolyC> flift;
    {
      std::vector<PolyC> images = xN;  // f does not involve T
      for (const PolyC& f : eqs) flift.push_back(f.substitute(images));
    }
    for (int i = 0; i < n; ++i) {
      PolyC li = PolyC::constant(arity, lin_const[static_cast<size_t>(i)]);
      for (int j = 0; j < n; ++j) li = li + xN[static_cast<size_t>(j)] * lin(i, j);
      PolyC gi = li.pow(static_cast<unsigned>(deg[static_cast<size_t>(i)])) -
                 PolyC::constant(arity, rhs_base[static_cast<size_t>(i)]);
      hpolys.push_back((one - tpar) * gi * gamma + tpar * flift[static_cast<size_t>(i)]);
    }
  }
  ParamSystem homotopy(std::move(hpolys));

  // Enumerate start solutions.
  std::vector<int> idx(static_cast<size_t>(n), 0);
  std::vector<std::vector<CD>> landed;
  for (long path = 0; path < bezout; ++path) {
    std::vector<CD> target(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      int d = deg[static_cast<size_t>(i)];
      CD root = std::pow(rhs_base[static_cast<size_t>(i)], 1.0 / d);
      double ang = 6.283185307179586 * idx[static_cast<size_t>(i)] / d;
      target[static_cast<size_t>(i)] = root * CD(std::cos(ang), std::sin(ang)) - lin_const[static_cast<size_t>(i)];
    }
    std::vector<CD> x0 = lu_solve(lin, target);
    ++out.paths_tracked;
    TrackResult tr = track_tuple(homotopy, {x0}, [](double tau) { return CD(tau, 0.0); }, topts);
    if (tr.ok) {
      // Polish at t = 1.
      NewtonOptions polish;
      polish.tol = 1e-13;
      polish.quadratic_guard = false;
      NewtonResult nr = newton_solve(homotopy.at_parameter(CD(1.0)), tr.points[0], polish);
      if (nr.ok)
        landed.push_back(std::move(nr.x));
      else
        ++out.paths_diverged;
    } else {
      ++out.paths_diverged;
    }
    // Increment multi-index.
    for (int i = 0; i < n; ++i) {
      if (++idx[static_cast<size_t>(i)] < deg[static_cast<size_t>(i)]) break;
      idx[static_cast<size_t>(i)] = 0;
    }
  }
  out.solutions = dedup_points(landed, dedup_tol);
  out.complete = out.paths_diverged + static_cast<int>(landed.size()) == out.paths_tracked;
  return out;
}

}  // namespace k3cover
