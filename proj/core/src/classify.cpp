#include "k3cover/classify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "k3cover/errors.hpp"

namespace k3cover {

long BranchDatum::group_order() const {
  long n = 1;
  for (const BranchPair& p : pairs) n *= p.order;
  return n;
}

long BranchDatum::total_branch_degree() const {
  long d = 0;
  for (const BranchPair& p : pairs) d += p.degree;
  return d;
}

bool BranchDatum::satisfies_branch_identity() const {
  // 12 * sum d_i (1 - 1/n_i) == 36, exact in integers.
  long acc = 0;
  for (const BranchPair& p : pairs) acc += p.degree * (12 - 12 / p.order);
  bool divisible = std::all_of(pairs.begin(), pairs.end(),
                               [](const BranchPair& p) { return 12 % p.order == 0; });
  return divisible && acc == 36;
}

std::string BranchDatum::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (i) os << "|";
    os << pairs[i].degree << "," << pairs[i].order;
  }
  os << ")";
  return os.str();
}

namespace {

// Canonical pair comparison: degree descending, then order descending.
bool pair_before(const BranchPair& a, const BranchPair& b) {
  if (a.degree != b.degree) return a.degree > b.degree;
  return a.order > b.order;
}

bool datum_before(const BranchDatum& a, const BranchDatum& b) {
  if (a.components() != b.components()) return a.components() < b.components();
  if (a.total_branch_degree() != b.total_branch_degree())
    return a.total_branch_degree() > b.total_branch_degree();
  return std::lexicographical_compare(a.pairs.begin(), a.pairs.end(), b.pairs.begin(),
                                      b.pairs.end(), pair_before);
}

void extend(std::vector<BranchDatum>& out, BranchDatum& cur, int remaining_weight, int d_min) {
  // Weight of a pair in twelfths: d * (12 - 12/n).
  if (remaining_weight == 0) {
    if (!cur.pairs.empty()) out.push_back(cur);
    return;
  }
  if (cur.components() == 6) return;
  for (int d = 8; d >= d_min; --d)
    for (int n : {4, 3, 2}) {
      BranchPair p{d, n};
      if (!cur.pairs.empty() && pair_before(p, cur.pairs.back())) continue;  // nonincreasing
      int w = d * (12 - 12 / n);
      if (w > remaining_weight) continue;
      cur.pairs.push_back(p);
      extend(out, cur, remaining_weight - w, d_min);
      cur.pairs.pop_back();
    }
}

}  // namespace

std::vector<BranchDatum> enumerate_branch_data(bool include_degree_one) {
  std::vector<BranchDatum> out;
  BranchDatum cur;
  extend(out, cur, 36, include_degree_one ? 1 : 2);
  std::sort(out.begin(), out.end(), datum_before);
  return out;
}

std::vector<std::pair<int, int>> quotient_euler_solutions(int n) {
  if (n < 2) throw InputError("local cyclic order must be >= 2");
  std::vector<std::pair<int, int>> out;
  for (int g = 2; (n - 1) * (2 * g - 2) <= 24 - 3 * n; ++g) {
    int rest = 24 - (n - 1) * (2 * g - 2);
    if (rest % n != 0) continue;
    int chi = rest / n;
    if (chi >= 3) out.emplace_back(chi, g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

long stratified_euler_char(const BranchDatum& bd) {
  const int r = bd.components();
  for (const BranchPair& p : bd.pairs) {
    if (p.degree < 1) throw InputError("branch curve degree must be >= 1");
    if (p.order < 2) throw InputError("stabilizer order must be >= 2");
  }
  const long n = bd.group_order();
  // Genus and Euler characteristic of each smooth plane branch curve.
  std::vector<long> chi_curve(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) {
    long d = bd.pairs[static_cast<size_t>(i)].degree;
    long g = (d - 1) * (d - 2) / 2;
    chi_curve[static_cast<size_t>(i)] = 2 - 2 * g;
  }
  // Pairwise transversal intersections d_i d_j.
  long chi_delta = 0, inter_total = 0;
  std::vector<long> inter(static_cast<size_t>(r), 0);
  for (int i = 0; i < r; ++i) {
    chi_delta += chi_curve[static_cast<size_t>(i)];
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      inter[static_cast<size_t>(i)] += static_cast<long>(bd.pairs[static_cast<size_t>(i)].degree) *
                                       bd.pairs[static_cast<size_t>(j)].degree;
    }
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      inter_total += static_cast<long>(bd.pairs[static_cast<size_t>(i)].degree) *
                     bd.pairs[static_cast<size_t>(j)].degree;
  chi_delta -= inter_total;  // chi of the union: crossings counted once

  long chi = n * (3 - chi_delta);
  for (int i = 0; i < r; ++i) {
    if (n % bd.pairs[static_cast<size_t>(i)].order != 0)
      throw CheckFailure("stratified Euler characteristic: divisibility failure");
    chi += (n / bd.pairs[static_cast<size_t>(i)].order) *
           (chi_curve[static_cast<size_t>(i)] - inter[static_cast<size_t>(i)]);
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      long nij = static_cast<long>(bd.pairs[static_cast<size_t>(i)].order) *
                 bd.pairs[static_cast<size_t>(j)].order;
      if (n % nij != 0) throw CheckFailure("stratified Euler characteristic: divisibility failure");
      chi += (n / nij) * (static_cast<long>(bd.pairs[static_cast<size_t>(i)].degree) *
                          bd.pairs[static_cast<size_t>(j)].degree);
    }
  return chi;
}

std::optional<int> parity_failure(const BranchDatum& bd) {
  for (int i = 0; i < bd.components(); ++i) {
    const BranchPair& p = bd.pairs[static_cast<size_t>(i)];
    if (p.order % 2 == 0 && p.degree % 2 == 1) return i;
  }
  return std::nullopt;
}

std::string reason_tag(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::None: return "";
    case ExclusionReason::LineBranch: return "EXCL_LINE_BRANCH";
    case ExclusionReason::DegreeTooSmall: return "EXCL_DEGREE_TOO_SMALL";
    case ExclusionReason::QuotientEuler: return "EXCL_QUOTIENT_EULER";
    case ExclusionReason::EulerChar: return "EXCL_EULER_CHAR";
    case ExclusionReason::Parity: return "EXCL_PARITY";
    case ExclusionReason::HypersurfaceCyclic: return "EXCL_HYPERSURFACE_CYCLIC";
  }
  return "";
}

namespace {

bool product_group_cyclic(const BranchDatum& bd) {
  // Z_{n_1} x ... x Z_{n_r} is cyclic iff the orders are pairwise coprime.
  for (size_t i = 0; i < bd.pairs.size(); ++i)
    for (size_t j = i + 1; j < bd.pairs.size(); ++j)
      if (std::gcd(bd.pairs[i].order, bd.pairs[j].order) != 1) return false;
  return true;
}

std::string product_group_label(const BranchDatum& bd) {
  long n = bd.group_order();
  if (product_group_cyclic(bd)) return "Z" + std::to_string(n);
  bool all2 = std::all_of(bd.pairs.begin(), bd.pairs.end(),
                          [](const BranchPair& p) { return p.order == 2; });
  if (all2) return "Z2^" + std::to_string(bd.components());
  std::ostringstream os;
  for (size_t i = 0; i < bd.pairs.size(); ++i) {
    if (i) os << "x";
    os << "Z" << bd.pairs[i].order;
  }
  return os.str();
}

std::string surface_label_for_degree(long n) {
  switch (n) {
    case 4: return "S(4)";
    case 6: return "S(23)";
    case 8: return "S(222)";
    default: return "-";
  }
}

}  // namespace

std::vector<ExclusionVerdict> classify_all(bool diagnostic_degree_one) {
  std::vector<ExclusionVerdict> out;
  for (const BranchDatum& bd : enumerate_branch_data(diagnostic_degree_one)) {
    ExclusionVerdict v;
    v.datum = bd;
    v.euler_char = stratified_euler_char(bd);
    const long n = bd.group_order();
    std::ostringstream why;
    bool has_line = std::any_of(bd.pairs.begin(), bd.pairs.end(),
                                [](const BranchPair& p) { return p.degree == 1; });
    if (has_line) {
      v.reason = ExclusionReason::LineBranch;
      why << "a line branch curve pulls back to n_i * C with C^2 = 1/n_i, forcing n_i = 1";
    } else if (n < 4) {
      v.reason = ExclusionReason::DegreeTooSmall;
      why << "|G| = D^2 = " << n
          << " < 4: the degree-2 polarization maps 2:1, not an embedding (reconstructed reason)";
    } else if (std::any_of(bd.pairs.begin(), bd.pairs.end(), [](const BranchPair& p) {
                 return quotient_euler_solutions(p.order).empty();
               })) {
      v.reason = ExclusionReason::QuotientEuler;
      why << "some local order admits no rational quotient with 24 = n*chi + (n-1)(2g-2)";
    } else if (v.euler_char != 24) {
      v.reason = ExclusionReason::EulerChar;
      why << "stratified Euler characteristic " << v.euler_char << " != 24";
    } else if (auto pf = parity_failure(bd)) {
      v.reason = ExclusionReason::Parity;
      why << "double cover of the plane branched along the odd-degree curve " << *pf + 1
          << " cannot exist";
    } else if (n == 4 && !product_group_cyclic(bd)) {
      v.reason = ExclusionReason::HypersurfaceCyclic;
      why << "a quartic cover in P^3 forces a cyclic group; " << product_group_label(bd)
          << " is not cyclic";
    } else {
      v.admissible = true;
      v.group_label = product_group_label(bd);
      v.surface_label = surface_label_for_degree(n);
      why << "all exclusions pass: chi = 24, group " << v.group_label << " on " << v.surface_label;
    }
    v.derivation = why.str();
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace k3cover
