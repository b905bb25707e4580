#pragma once

#include <array>
#include <optional>

#include "k3cover/geometry.hpp"
#include "k3cover/newton.hpp"
#include "k3cover/perm.hpp"
#include "k3cover/rng.hpp"

namespace k3cover {

/// The cover restricted to a generic line of the projection plane: a degree-d
/// branched cover of P^1, the object whose loops we track.
struct PencilCover {
  CoverSpec cover;
  std::array<std::vector<CD>, 2> line;  // anchor points u, v in the plane; s -> u + s v
  std::optional<std::array<std::vector<Rational>, 2>> exact_line;
  std::vector<CD> chart;                // fiber points normalized to chart . x = 1
  std::vector<CD> aux_chart;            // kernel-vector normalization for the critical system
  std::array<std::vector<CD>, 2> rank_vectors;  // the a, b of the rank conditions
  std::optional<ParamSystem> fiber;     // N+1 equations in (x0..xN, s)
  // For N = 3 the fiber is a univariate family f(mu, s) along the moving
  // line through the center.
  std::optional<PolyC> fiber_univariate;        // arity 2: (mu, s)
  std::optional<PolyQ> fiber_univariate_exact;  // when the data is exact
  std::vector<CD> center_point;                 // N = 3 only
  std::vector<CD> line_lift;                    // q(s) = lift0 + s*lift1 ... stored flat
  long degree = 0;
  std::uint64_t seed = 0;
};

struct MonodromyOptions {
  double tol_newton = 1e-12;
  double tol_match = 1e-6;
  int threads = 1;
  int max_reseeds = 3;
  /// Restrict to a prescribed line: two plane points spanning it.
  std::optional<std::array<std::vector<CD>, 2>> line;
};

/// Builds the pencil: line choice, affinization chart, square fiber system,
/// and (for N = 3) the exact univariate fiber family.  Throws InputError on
/// malformed covers.
PencilCover build_pencil(const CoverSpec& cover, std::uint64_t seed,
                         const MonodromyOptions& opts = {});

struct DiscriminantReport {
  std::vector<CD> points;
  std::vector<int> multiplicities;  // root multiplicities when known (method A)
  std::string method;               // "resultant", "coefficient-roots", "critical-newton"
};

/// Base values where the fiber degenerates.  N = 3 goes through the exact
/// resultant of the fiber polynomial; N in {4, 5} runs a many-start Newton
/// search on the ramification system (fiber equations plus a Jacobian
/// kernel-vector formulation).
DiscriminantReport discriminant_points(const PencilCover& pc, Rng& rng,
                                       long expected_ramification);

/// All degree-many fiber points over a base value, chart-normalized.  N = 3
/// reads them off the line-restricted polynomial; otherwise a total-degree
/// homotopy solves the frozen fiber system.
std::vector<std::vector<CD>> fiber_points(const PencilCover& pc, CD s, Rng& rng);

/// Track the fiber tuple around one petal loop; returns the permutation
/// matched at the basepoint.  Throws NumericalFailure on matching ambiguity
/// or step underflow.
Perm track_loop(const PencilCover& pc, const std::vector<std::vector<CD>>& base_fiber,
                CD base_s, CD branch_point, double petal_radius,
                const MonodromyOptions& opts, double* max_residual = nullptr);

struct MonodromyResult {
  std::vector<CD> branch_points;        // angular order (as seen from the base)
  std::vector<Perm> loop_permutations;  // one generator per branch point
  PermGroup group;
  GaloisVerdict galois;
  int genus = 0;
  long degree = 0;
  CD base_s;
  double max_tracking_residual = 0;  // corrector residual relative to the evaluation scale
  double fiber_separation = 0;
  int reseeds_used = 0;
  std::string discriminant_method;
};

/// Full pipeline: pencil, discriminant points, petal loops in angular order,
/// closure, sphere-relation check, genus.  Reseeds the line on failure up to
/// opts.max_reseeds, then throws NumericalFailure.
MonodromyResult monodromy_group(const CoverSpec& cover, std::uint64_t seed,
                                const MonodromyOptions& opts = {});

/// 2g - 2 = -2d + sum over branch points of (cycle length - 1); errors on a
/// non-integer genus (odd parity signals a tracking failure).
int genus_from_cycles(long degree, const std::vector<std::vector<int>>& branch_cycle_types);

/// Genus of the curve cut on the cover by a generic hyperplane (complete
/// intersection adjunction); the Riemann-Hurwitz budget for discriminant
/// searches.
int expected_section_genus(const CoverSpec& cover);

}  // namespace k3cover
