#pragma once

#include <array>
#include <optional>
#include <string>

#include "k3cover/classify.hpp"
#include "k3cover/geometry.hpp"
#include "k3cover/group.hpp"

namespace k3cover {

/// The three classified families: quartic in P^3, (2,3) intersection in P^4,
/// (2,2,2) intersection in P^5.
enum class FamilyLabel { S4, S23, S222 };

std::string to_string(FamilyLabel l);
std::optional<FamilyLabel> parse_family_label(const std::string& s);

struct FamilySpec {
  FamilyLabel label = FamilyLabel::S4;
  int ambient = 3;
  std::vector<PolyQ> plane_forms;  // arity 3, degrees 4 | 2,3 | 2,2,2
  CoverSpec cover;                 // assembled, center X0 = X1 = X2 = 0
  std::vector<MatC> generators;    // canonical deck transformations
  ProjGroup group;
  std::vector<PolyC> invariant_system() const;  // L = (X0, X1, X2)
};

struct SingularWitness {
  std::vector<CD> point;
  std::string where;
};

/// Plane-curve smoothness: a common zero of the three partials (it lies on
/// the curve by the Euler relation).  nullopt = smooth.
std::optional<SingularWitness> plane_curve_singularity(const PolyQ& form, std::uint64_t seed);

/// Pairwise transversality and (three or more curves) triple points; either
/// defect makes the assembled complete intersection singular.
std::optional<SingularWitness> curve_configuration_defect(const std::vector<PolyQ>& forms,
                                                          std::uint64_t seed);

/// Direct many-start probe for singular points of the assembled surface
/// (Jacobian rank drop via a kernel covector); nullopt = none found.
std::optional<SingularWitness> surface_singularity_probe(const CoverSpec& cover,
                                                         std::uint64_t seed, int starts = 200);

/// Assemble and validate a family: degrees, smooth plane curves, transversal
/// configuration, base-point-free center.  Throws InputError with a witness
/// on failure.
FamilySpec build_family(FamilyLabel label, std::vector<PolyQ> plane_forms,
                        std::uint64_t seed = kDefaultSeed);

/// Random small-integer coefficient forms, redrawn on validation failure up
/// to ten times.
FamilySpec build_family_random(FamilyLabel label, std::uint64_t seed);

/// The Fermat quartic member of the S4 family.
FamilySpec fermat_family(std::uint64_t seed = kDefaultSeed);

/// The four coordinate projection centers of the Fermat quartic, each a
/// Galois point (center forms = the three complementary coordinates).
std::array<std::vector<PolyQ>, 4> fermat_galois_centers();

struct RamificationLedger {
  std::vector<BranchPair> pairs;  // (d_i, n_i) read off the family shape
  long order = 0;                 // n
  long left = 0, right = 0;       // sum (n_i - 1) n d_i / n_i  vs 3n
  bool identity_holds = false;
};

/// Branch bookkeeping: the ramification-degree identity
/// sum (n_i - 1) * (n d_i / n_i) = 3n, exact.
RamificationLedger ramification_ledger(const FamilySpec& fs);

struct TowerReport {
  std::array<int, 3> fiber_sizes{};  // full cover, first quotient, second quotient
  std::array<int, 3> expected{8, 4, 2};
  bool ok = false;
};

/// For the (2,2,2) family: verify the degree-8 cover factors through double
/// covers by counting fibers of the two intermediate quotients over a random
/// plane point.  Throws InputError on other labels.
TowerReport tower_check(const FamilySpec& fs, std::uint64_t seed);

}  // namespace k3cover
