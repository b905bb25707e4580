#pragma once

#include <array>
#include <optional>

#include "k3cover/monodromy.hpp"
#include "k3cover/multipoly.hpp"
#include "k3cover/rng.hpp"

namespace k3cover {

/// A smooth plane quartic (the branch curve of a quartic-family cover).
/// Operations refuse singular input.
struct PlaneQuartic {
  PolyC curve;                  // arity 3, homogeneous degree 4
  std::optional<PolyQ> exact;

  static PlaneQuartic make(const PolyQ& q, std::uint64_t seed = kDefaultSeed);
  static PlaneQuartic make_complex(const PolyC& q, std::uint64_t seed = kDefaultSeed);
};

/// The numerical bookkeeping for a smooth quartic and its dual: dual degree
/// 12, flex relation a1 + 2 a2 = 24, and the node count from the genus-3
/// requirement on the dual (an ordinary cusp spends 1, a rhamphoid one 3).
struct PluckerLedger {
  int dual_degree = 12;
  int hyperflexes = 0;    // a2
  int simple_flexes = 0;  // a1 = 24 - 2 a2
  int nodes = 0;          // b = 28 - a2, the bitangent count
};

/// Errors when a2 lies outside 0..12 (a1 would go negative).
PluckerLedger plucker_ledger(int hyperflex_count);

struct BitangentRecord {
  std::array<CD, 3> line;  // coefficients, scaled so the largest entry is 1
  std::array<std::array<CD, 3>, 2> points;  // tangency points (equal for hyperflexes)
  bool hyperflex = false;
  double residual = 0;  // perfect-square defect of the restricted quartic
  bool real_line = false;
};

struct BitangentReport {
  std::vector<BitangentRecord> records;  // deterministic order (lex on coefficients)
  int bitangents = 0;   // non-degenerate
  int hyperflexes = 0;  // tangency points coincide
  PluckerLedger ledger;
  int attempts = 0;
};

/// All bitangents via the perfect-square condition in three line charts of a
/// random frame (many-start Newton, deduplicated); the count must reconcile
/// with the ledger at the measured hyperflex count or the search reseeds,
/// then errors.
BitangentReport find_bitangents(const PlaneQuartic& q, std::uint64_t seed = kDefaultSeed);

/// Independent counting oracle: the dual degree computed exactly as the
/// resultant of the quartic with a generic polar (degree 12, squarefree).
int dual_degree_oracle(const PolyQ& quartic, std::uint64_t seed = kDefaultSeed);

struct SplitReport {
  int orbit_count = 0;
  std::vector<int> orbit_sizes;
  std::vector<int> orbit_self_intersection;  // 2g - 2 per orbit component
  int cross_intersection = 0;                // remaining intersection budget
  MonodromyResult monodromy;
};

/// Monodromy of the quartic-family cover restricted over a given plane line:
/// over a bitangent the fiber splits into two orbits (two (-2)-curves
/// meeting in 4 points); over a generic line it stays transitive.
SplitReport pullback_splitting_check(const PlaneQuartic& q, const std::array<CD, 3>& line,
                                     std::uint64_t seed = kDefaultSeed);

}  // namespace k3cover
