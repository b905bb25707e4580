#include "k3cover/roots.hpp"

#include <algorithm>
#include <cmath>

#include "k3cover/errors.hpp"

namespace k3cover {

namespace {

CD eval_dense(const std::vector<CD>& p, CD x) {
  CD acc(0.0);
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

}  // namespace

std::vector<CD> roots_univariate(const std::vector<CD>& coeffs, RootOptions opts) {
  for (const CD& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InputError("non-finite coefficient");
  // Trim leading (high-degree) zeros.
  std::vector<CD> p = coeffs;
  double mag = 0;
  for (const CD& c : p) mag = std::max(mag, std::abs(c));
  if (mag == 0) throw InputError("zero polynomial has no root set");
  while (!p.empty() && std::abs(p.back()) < 1e-14 * mag) p.pop_back();
  int n = static_cast<int>(p.size()) - 1;
  if (n < 1) throw InputError("degree 0 polynomial");

  std::vector<CD> roots;
  // Exact roots at the origin come off first.
  size_t shift = 0;
  while (shift < p.size() - 1 && std::abs(p[shift]) < 1e-14 * mag) ++shift;
  for (size_t i = 0; i < shift; ++i) roots.push_back(CD(0.0));
  p.erase(p.begin(), p.begin() + static_cast<long>(shift));
  n = static_cast<int>(p.size()) - 1;
  if (n >= 1) {
    // Monic normalization and Cauchy radius for the start configuration.
    CD lead = p.back();
    for (CD& c : p) c /= lead;
    double radius = 0;
    for (int i = 0; i < n; ++i)
      radius = std::max(radius, std::pow(std::abs(p[static_cast<size_t>(i)]), 1.0 / (n - i)));
    radius = std::max(0.5, 1.2 * radius);

    std::vector<CD> z(static_cast<size_t>(n));
    const CD seed(0.4, 0.9);  // conventional non-symmetric start direction
    CD w = seed / std::abs(seed);
    CD acc = w;
    for (int i = 0; i < n; ++i) {
      double r = radius * (0.6 + 0.4 * (i + 1.0) / n);
      z[static_cast<size_t>(i)] = r * acc;
      acc *= w * CD(std::cos(0.7), std::sin(0.7));
    }

    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      double worst = 0;
      for (int i = 0; i < n; ++i) {
        CD denom(1.0);
        for (int j = 0; j < n; ++j)
          if (j != i) denom *= z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
        CD dz = eval_dense(p, z[static_cast<size_t>(i)]) / denom;
        z[static_cast<size_t>(i)] -= dz;
        worst = std::max(worst, std::abs(dz) / std::max(1.0, std::abs(z[static_cast<size_t>(i)])));
      }
      if (worst < opts.tol) break;
    }

    // Cluster averaging recovers multiple roots at full accuracy: the
    // iteration scatters an m-fold root into a symmetric m-cluster whose
    // centroid cancels the first-order error.  The merge radius sits two
    // orders above the double-root scatter (~sqrt(eps)).
    double scale = 0;
    for (const CD& r : z) scale = std::max(scale, std::abs(r));
    double merge_radius = std::max(opts.cluster_tol * 100, 1e-6) * std::max(scale, 1.0);
    auto clustered = cluster_points(z, merge_radius);
    for (const auto& [center, mult] : clustered)
      for (int i = 0; i < mult; ++i) roots.push_back(center);
  }

  std::sort(roots.begin(), roots.end(), [](const CD& a, const CD& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

std::vector<std::pair<CD, int>> cluster_points(const std::vector<CD>& pts, double tol) {
  std::vector<std::pair<CD, int>> clusters;
  std::vector<bool> used(pts.size(), false);
  // Union points transitively within tol, then average each group.
  for (size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    std::vector<size_t> group{i};
    used[i] = true;
    for (size_t g = 0; g < group.size(); ++g)
      for (size_t j = 0; j < pts.size(); ++j)
        if (!used[j] && std::abs(pts[j] - pts[group[g]]) <= tol) {
          used[j] = true;
          group.push_back(j);
        }
    CD center(0.0);
    for (size_t k : group) center += pts[k];
    center /= static_cast<double>(group.size());
    clusters.emplace_back(center, static_cast<int>(group.size()));
  }
  std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    return a.first.imag() < b.first.imag();
  });
  return clusters;
}

}  // namespace k3cover
