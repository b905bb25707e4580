#pragma once

#include <optional>
#include <string>
#include <vector>

namespace k3cover {

/// One branch component: (degree of the plane branch curve, order of the
/// cyclic stabilizer along its preimage).
struct BranchPair {
  int degree = 0;  // d_i >= 1
  int order = 0;   // n_i >= 2
  bool operator==(const BranchPair&) const = default;
};

/// Combinatorial shadow of the ramification divisor: the branch pairs, with
/// the group order n = prod n_i (the stabilizers generate a direct product).
struct BranchDatum {
  std::vector<BranchPair> pairs;  // canonical order: degree desc, then order desc

  int components() const { return static_cast<int>(pairs.size()); }
  long group_order() const;
  long total_branch_degree() const;
  /// Sum d_i (1 - 1/n_i) = 3, checked exactly (times 12).
  bool satisfies_branch_identity() const;
  std::string str() const;  // e.g. "(3,3|2,2)"
  bool operator==(const BranchDatum&) const = default;
};

/// All solutions of the branch-degree identity with r <= 6 components,
/// n_i in {2,3,4} and d_i >= 2 (d_i >= 1 in the diagnostic mode that
/// re-derives the exclusion of line branch curves).  Canonically sorted:
/// component count ascending, total branch degree descending, then pairwise
/// descending-lex.
std::vector<BranchDatum> enumerate_branch_data(bool include_degree_one = false);

/// Integer solutions (chi, g) of 24 = n*chi + (n-1)(2g-2) with chi >= 3 (the
/// quotient is rational) and g >= 2; empty means the local order n cannot
/// occur.
std::vector<std::pair<int, int>> quotient_euler_solutions(int n);

/// Euler characteristic of the cover rebuilt stratum by stratum over the
/// plane: smooth branch curves of genus (d-1)(d-2)/2 meeting transversally
/// in d_i d_j points, fibers n, n/n_i, n/(n_i n_j).  Exact integers; throws
/// on malformed data.
long stratified_euler_char(const BranchDatum& bd);

/// The even-order quotient test: dropping one order-2 quotient factor leaves
/// a double plane cover branched along that component's curve, impossible at
/// odd degree.  Returns the failing component index.
std::optional<int> parity_failure(const BranchDatum& bd);

enum class ExclusionReason {
  None,
  LineBranch,          // diagnostic d_i = 1 rows
  DegreeTooSmall,      // |G| = D^2 < 4
  QuotientEuler,       // some n_i has no (chi, g) solution
  EulerChar,           // stratified chi != 24
  Parity,              // odd-degree double-cover branch
  HypersurfaceCyclic,  // quartic cover with a non-cyclic group
};

std::string reason_tag(ExclusionReason r);

struct ExclusionVerdict {
  BranchDatum datum;
  bool admissible = false;
  ExclusionReason reason = ExclusionReason::None;
  std::string group_label;    // filled for admissible rows
  std::string surface_label;  // "S(4)", "S(23)", "S(222)"
  std::string derivation;     // one-line reason
  long euler_char = 0;
};

/// Enumerate and run every exclusion in fixed priority order (line-branch
/// diagnostic, degree, quotient-euler, euler, parity, hypersurface-cyclic),
/// so each excluded datum carries exactly one reason.  Deterministic and
/// idempotent.
std::vector<ExclusionVerdict> classify_all(bool diagnostic_degree_one = false);

}  // namespace k3cover
