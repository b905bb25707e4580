#pragma once

#include <string>
#include <vector>

namespace k3cover {

/// Permutation on d letters: p[i] is the image of i.
using Perm = std::vector<int>;

Perm perm_identity(int d);
bool perm_is_identity(const Perm& p);
/// Left-to-right composition: (a then b)(i) = b[a[i]].
Perm perm_compose(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& p);
int perm_order(const Perm& p);
/// Cycle lengths sorted descending, fixed points included.
std::vector<int> cycle_type(const Perm& p);
std::string cycle_string(const Perm& p);

/// Permutation group on d fiber labels; generators tagged by the loop that
/// produced them (index into the branch-point list).
struct PermGroup {
  int degree = 0;
  std::vector<Perm> generators;
  std::vector<int> generator_tags;
  std::vector<Perm> elements;  // closure, [0] = identity
  std::vector<int> element_orders;

  long order() const { return static_cast<long>(elements.size()); }
  bool transitive() const;
  std::vector<std::vector<int>> orbits() const;
  std::vector<int> order_multiset() const;
  bool is_cyclic() const;
  std::string iso_label() const;
  bool contains(const Perm& p) const;
};

PermGroup close_perm_group(int degree, std::vector<Perm> generators,
                           std::vector<int> tags = {});

struct GaloisVerdict {
  bool galois = false;
  std::string reason;  // "regular", "INTRANSITIVE", "order != degree", "fixed point"
};

/// A cover is Galois exactly when the monodromy acts regularly: transitive,
/// order equal to the degree, no non-identity element fixing a letter.
GaloisVerdict is_galois(const PermGroup& g);

}  // namespace k3cover
