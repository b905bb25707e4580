#pragma once

#include <complex>
#include <vector>

#include "k3cover/linalg.hpp"

namespace k3cover {

struct RootOptions {
  double tol = 1e-13;          // simultaneous-iteration stop, relative
  double cluster_tol = 1e-8;   // root-equality clustering, relative
  int max_sweeps = 600;
};

/// All complex roots with multiplicity of the polynomial with ascending
/// coefficients.  Simultaneous iteration (Weierstrass updates) from a fixed
/// deterministic start configuration, followed by cluster averaging so that
/// multiple roots come back at full accuracy.  Throws InputError on degree 0
/// or non-finite coefficients.
std::vector<CD> roots_univariate(const std::vector<CD>& coeffs, RootOptions opts = {});

/// Cluster a point multiset: groups within tol (relative to the spread) are
/// replaced by their centroid.  Returns {centroid, multiplicity} pairs in a
/// deterministic order (by real part, then imaginary).
std::vector<std::pair<CD, int>> cluster_points(const std::vector<CD>& pts, double tol);

}  // namespace k3cover
