#pragma once

#include <functional>
#include <vector>

#include "k3cover/multipoly.hpp"
#include "k3cover/rng.hpp"

namespace k3cover {

/// A square polynomial system F : C^n -> C^n with its symbolic Jacobian.
class SquareSystem {
 public:
  explicit SquareSystem(std::vector<PolyC> eqs);

  int size() const { return n_; }
  const std::vector<PolyC>& equations() const { return eqs_; }

  std::vector<CD> eval(const std::vector<CD>& x) const;
  MatC jacobian(const std::vector<CD>& x) const;
  double residual_norm(const std::vector<CD>& x) const;

 private:
  int n_;
  std::vector<PolyC> eqs_;
  std::vector<std::vector<PolyC>> jac_;
};

struct NewtonOptions {
  double tol = 1e-12;          // residual target (relative to 1 + |x|)
  int max_iter = 60;
  double diverge_norm = 1e8;
  bool quadratic_guard = true;  // demand eventual contraction, error out on divergence
};

struct NewtonResult {
  bool ok = false;
  std::vector<CD> x;
  double residual = 0;
  int iterations = 0;
  std::string reason;  // on failure: "singular-jacobian", "max-iterations", "diverged"
};

/// Newton corrector for a square system from one start point.
NewtonResult newton_solve(const SquareSystem& sys, std::vector<CD> start,
                          const NewtonOptions& opts = {});

/// Deduplicate a solution list (max-norm distance below tol merges).
std::vector<std::vector<CD>> dedup_points(const std::vector<std::vector<CD>>& pts, double tol);

/// Random-start Newton sweep; collects deduplicated verified solutions.
std::vector<std::vector<CD>> many_start_solutions(const SquareSystem& sys, Rng& rng,
                                                  int n_starts, double start_radius,
                                                  const NewtonOptions& opts = {},
                                                  double dedup_tol = 1e-7);

// ---------------------------------------------------------------------------
// Path tracking for a square-in-x system with one distinguished parameter
// (the last variable).  Shared by the monodromy loop tracker and the
// total-degree homotopy start solver.
// ---------------------------------------------------------------------------

class ParamSystem {
 public:
  /// eqs: n polynomials of arity n+1; variable n is the path parameter.
  explicit ParamSystem(std::vector<PolyC> eqs);

  int size() const { return n_; }
  const std::vector<PolyC>& equations() const { return eqs_; }
  /// Conditioning scale of an evaluation at (x, s): coefficient magnitude
  /// times |x|^maxdeg; residuals are meaningful relative to it.
  double eval_scale(const std::vector<CD>& x, CD s) const;

  std::vector<CD> eval(const std::vector<CD>& x, CD s) const;
  MatC jacobian_x(const std::vector<CD>& x, CD s) const;
  std::vector<CD> dparam(const std::vector<CD>& x, CD s) const;
  double residual_norm(const std::vector<CD>& x, CD s) const;

  /// The system at a frozen parameter value, as a square system in x.
  SquareSystem at_parameter(CD s) const;

 private:
  std::vector<CD> joined(const std::vector<CD>& x, CD s) const;
  int n_;
  int max_degree_ = 1;
  double coeff_magnitude_ = 1;
  std::vector<PolyC> eqs_;
  std::vector<std::vector<PolyC>> jac_;
  std::vector<PolyC> ds_;
};

struct TrackOptions {
  double corrector_tol = 1e-12;
  int corrector_iters = 8;
  int init_steps = 64;                   // initial subdivisions of the leg
  double min_step = 1.0 / (1 << 20);     // adaptive halving floor (fraction of leg)
  double diverge_norm = 1e8;
  double merge_guard = 0;                // >0: min pairwise distance floor while tracking
};

struct TrackResult {
  bool ok = false;
  std::vector<std::vector<CD>> points;
  double max_residual = 0;
  std::string reason;  // "step-underflow", "diverged", "merge-guard"
};

/// Track a tuple of solutions of F(x, s(tau)) = 0 along tau in [0,1],
/// lockstep with adaptive step halving (Euler predictor, Newton corrector).
TrackResult track_tuple(const ParamSystem& sys, std::vector<std::vector<CD>> points,
                        const std::function<CD(double)>& s_of_tau,
                        const TrackOptions& opts = {});

// ---------------------------------------------------------------------------
// Total-degree homotopy: all isolated solutions of a square affine system.
// ---------------------------------------------------------------------------

struct HomotopyOutcome {
  std::vector<std::vector<CD>> solutions;  // deduplicated finite endpoints
  int paths_tracked = 0;
  int paths_diverged = 0;
  bool complete = false;  // every Bezout path accounted for (landed or diverged)
};

/// Solve a square affine system by a gamma-trick total-degree homotopy from
/// a product-of-powers-of-linear-forms start system.  Deterministic given
/// the rng state.
HomotopyOutcome solve_all_total_degree(const std::vector<PolyC>& eqs, Rng& rng,
                                       const TrackOptions& topts = {},
                                       double dedup_tol = 1e-8);

}  // namespace k3cover
