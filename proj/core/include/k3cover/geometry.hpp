#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3cover/multipoly.hpp"
#include "k3cover/rng.hpp"

namespace k3cover {

/// Linear subspace of P^N given by independent degree-1 forms.
struct LinearSubspace {
  int ambient = 0;                              // N
  std::vector<PolyC> forms;                     // codim many, arity N+1
  std::optional<std::vector<PolyQ>> exact_forms;

  int codimension() const { return static_cast<int>(forms.size()); }
  int dimension() const { return ambient - codimension(); }  // projective

  MatC coefficient_matrix() const;
  std::optional<MatQ> exact_coefficient_matrix() const;

  /// Basis of the solution set (columns span the subspace cone).
  std::vector<std::vector<CD>> spanning_basis() const;
  std::optional<std::vector<std::vector<Rational>>> exact_spanning_basis() const;

  static LinearSubspace from_forms(int ambient, std::vector<PolyC> forms);
  static LinearSubspace from_exact_forms(int ambient, std::vector<PolyQ> forms);
};

/// A projective surface (complete intersection in P^N) together with a
/// codimension-3 projection center, representing pi : S -> P^2.
struct CoverSpec {
  int ambient = 0;  // N
  std::vector<PolyC> equations;                    // k = N-2, homogeneous
  std::optional<std::vector<PolyQ>> exact_equations;
  LinearSubspace center;                           // codim 3
  long degree = 0;                                 // product of equation degrees

  bool exact() const { return exact_equations.has_value() && center.exact_forms.has_value(); }
  std::vector<int> equation_degrees() const;

  /// Validates shape, homogeneity, independence, and center-surface
  /// disjointness (numeric emptiness test with the given seed).
  static CoverSpec make(int ambient, std::vector<PolyC> equations, LinearSubspace center,
                        std::uint64_t seed = kDefaultSeed);
  static CoverSpec make_exact(int ambient, std::vector<PolyQ> equations,
                              std::vector<PolyQ> center_forms,
                              std::uint64_t seed = kDefaultSeed);
};

struct EmptinessReport {
  bool empty = false;
  std::optional<std::vector<CD>> witness;  // projective point on both loci
  std::string method;                      // "evaluate", "gcd", "root-match", "sweep"
};

/// TRUE when the common zero locus of eqs meets the subspace nowhere in
/// projective space: parametrize the subspace, substitute, and decide the
/// restricted system (exact elimination in low dimension, randomized
/// complete solve with Bezout reconciliation otherwise).  Never errors: a
/// found zero comes back as a witness.
EmptinessReport is_empty_intersection(const std::vector<PolyC>& eqs,
                                      const LinearSubspace& subspace, int trials,
                                      std::uint64_t seed,
                                      const std::vector<PolyQ>* exact_eqs = nullptr);

/// Chart-normalize a projective point so its largest entry is 1.
std::vector<CD> normalize_projective(std::vector<CD> x);

}  // namespace k3cover
