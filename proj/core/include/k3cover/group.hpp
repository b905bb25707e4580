#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3cover/geometry.hpp"
#include "k3cover/linalg.hpp"
#include "k3cover/multipoly.hpp"
#include "k3cover/rational.hpp"

namespace k3cover {

/// Finite group of projective matrices.  Elements are normalized so the
/// first nonzero entry equals 1, which makes equality entry-wise (exact
/// entries) or a 1e-10 comparison (float entries).
struct ProjGroup {
  int size = 0;                      // matrix dimension (N+1)
  std::vector<MatC> elements;        // closed under product/inverse, [0] = id
  std::vector<int> generator_indices;
  std::vector<int> element_orders;

  int order() const { return static_cast<int>(elements.size()); }
  std::vector<int> order_multiset() const;
  bool is_cyclic() const;
  bool is_abelian(double tol = 1e-10) const;
  std::string iso_label() const;

  int index_of(const MatC& m, double tol = 1e-10) const;  // -1 when absent
};

MatC normalize_projective_matrix(MatC m, double tol = 1e-12);

/// Closure of the generators; throws CheckFailure when it exceeds bound and
/// InputError on singular/ill-sized generators.
ProjGroup generate_group(const std::vector<MatC>& generators, int bound = 512);

// ---------------------------------------------------------------------------
// Action on defining ideals.
// ---------------------------------------------------------------------------

struct InvarianceWitness {
  int element = 0;
  int equation = 0;
  Expo monomial;
  CD expected;
  CD got;
  std::string describe() const;
};

struct InvarianceResult {
  bool invariant = false;
  // scalars[g][j]: act_linear(E_j, sigma_g) == mu * E_j
  std::vector<std::vector<CD>> scalars;
  std::vector<std::vector<std::optional<RootOfUnity>>> scalars_exact;
  std::optional<InvarianceWitness> witness;
};

/// For each group element, either the per-equation scalars mu_j with
/// act_linear(E_j, sigma) = mu_j E_j, or a certified coefficient-mismatch
/// witness.
InvarianceResult ideal_invariance(const ProjGroup& g, const std::vector<PolyC>& eqs,
                                  double tol = 1e-9);

// ---------------------------------------------------------------------------
// The Galois-embedding criterion for surfaces (n = 2): |G| must equal the
// degree, a 3-dimensional invariant system of forms on which every element
// acts as a scalar, and that system must be base-point free.
// ---------------------------------------------------------------------------

struct CriterionReport {
  bool cond_order = false;       // |G| = D^2 = product of equation degrees
  bool cond_scalar_system = false;  // span(L) invariant, scalar action
  bool cond_base_point_free = false;
  bool verdict = false;
  long group_order = 0;
  long expected_degree = 0;
  std::vector<CD> lambda;                            // per element
  std::vector<std::optional<RootOfUnity>> lambda_exact;
  std::optional<std::vector<CD>> base_point;         // witness when cond3 fails
  std::optional<InvarianceWitness> invariance_witness;
  std::string detail;
};

CriterionReport galois_criterion(const ProjGroup& g, const std::vector<PolyC>& eqs,
                                 const std::vector<PolyC>& l_basis,
                                 std::uint64_t seed = kDefaultSeed,
                                 const std::vector<PolyQ>* exact_eqs = nullptr);

// ---------------------------------------------------------------------------
// Decomposition along the invariant system: in a basis adapted to span(L)
// every element is block upper triangular [[lambda I, *], [0, M']]; after
// scaling lambda to 1 the complementary blocks M' form a matrix group, and
// G1 is its kernel.
// ---------------------------------------------------------------------------

struct GammaDecomposition {
  std::vector<int> kernel_indices;  // elements acting trivially on the complement
  int g1_order = 0;
  int g2_order = 0;
  bool g1_cyclic = false;
  std::string g1_label;
  std::string g2_label;
};

GammaDecomposition gamma_decomposition(const ProjGroup& g, const std::vector<PolyC>& l_basis,
                                       double tol = 1e-9);

/// FALSE exactly when the surface is a hypersurface (N = 3) and the group is
/// non-cyclic; hypersurface covers force cyclic deck groups.
bool hypersurface_cyclic_rule(int ambient, const ProjGroup& g);

// ---------------------------------------------------------------------------
// Fixed loci of diagonal elements.
// ---------------------------------------------------------------------------

struct FixedComponent {
  CD eigenvalue;
  std::vector<int> coordinates;   // indices spanning the eigen-subspace
  int subspace_dim = 0;           // projective dimension of the eigen-subspace
  int restricted_equations = 0;   // equations that survive restriction
  int expected_dim = 0;           // subspace_dim - restricted_equations
  bool nonempty = false;          // intersection with the surface
  bool curve_or_more = false;     // guaranteed dimension >= 1 on the surface
};

struct FixedLocusReport {
  std::vector<FixedComponent> components;
  bool any_nonempty = false;
  bool has_curve = false;
};

/// Fixed locus of a diagonal projective transformation on the surface:
/// union of eigenvalue-coordinate subspaces intersected with the surface.
/// Emptiness and dimension decided by degree counting plus the numeric
/// emptiness test.  Throws InputError on non-diagonal input.
FixedLocusReport fixed_locus(const MatC& sigma, const std::vector<PolyC>& eqs,
                             std::uint64_t seed = kDefaultSeed);

// ---------------------------------------------------------------------------
// The 2-form character: eps(sigma) = prod(eigenvalues) / prod(mu_j) scales
// the residue 2-form; its kernel is the symplectic part.
// ---------------------------------------------------------------------------

CD symplectic_character(const MatC& sigma_diag, const std::vector<CD>& mus);

struct CharacterTable {
  // Per element: scalar on the invariant system, per-equation scalars, and
  // the 2-form character.
  std::vector<CD> lambda;
  std::vector<std::vector<CD>> mu;
  std::vector<CD> epsilon;
  std::vector<std::optional<RootOfUnity>> epsilon_exact;
  int image_order = 0;   // |image of eps|
  int kernel_order = 0;  // symplectic subgroup order
};

CharacterTable character_table(const ProjGroup& g, const std::vector<PolyC>& eqs,
                               const std::vector<PolyC>& l_basis, double tol = 1e-9);

/// Independent numeric oracle: pull the residue 2-form back through sigma at
/// a random smooth surface point and compare scalings.  Used to validate the
/// eigenvalue/mu formula to 1e-8.
CD residue_form_scaling(const CoverSpec& cover, const MatC& sigma_diag, std::uint64_t seed);

}  // namespace k3cover
