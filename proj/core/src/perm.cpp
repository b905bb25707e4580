#include "k3cover/perm.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "k3cover/errors.hpp"

namespace k3cover {

Perm perm_identity(int d) {
  Perm p(static_cast<size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool perm_is_identity(const Perm& p) {
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = b[static_cast<size_t>(a[i])];
  return out;
}

Perm perm_inverse(const Perm& p) {
  Perm out(p.size());
  for (size_t i = 0; i < p.size(); ++i) out[static_cast<size_t>(p[i])] = static_cast<int>(i);
  return out;
}

int perm_order(const Perm& p) {
  Perm q = p;
  int ord = 1;
  while (!perm_is_identity(q)) {
    q = perm_compose(q, p);
    ++ord;
  }
  return ord;
}

std::vector<int> cycle_type(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  std::vector<int> lens;
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = static_cast<size_t>(p[j]);
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return lens;
}

std::string cycle_string(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  std::ostringstream os;
  bool any = false;
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) {
      seen[i] = true;
      continue;
    }
    os << "(";
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) os << " ";
      os << j + 1;
      first = false;
      j = static_cast<size_t>(p[j]);
    }
    os << ")";
    any = true;
  }
  if (!any) os << "id";
  return os.str();
}

PermGroup close_perm_group(int degree, std::vector<Perm> generators, std::vector<int> tags) {
  PermGroup g;
  g.degree = degree;
  g.generators = std::move(generators);
  g.generator_tags = tags.empty() ? std::vector<int>(g.generators.size(), -1) : std::move(tags);
  std::set<Perm> seen;
  g.elements.push_back(perm_identity(degree));
  seen.insert(g.elements[0]);
  for (size_t head = 0; head < g.elements.size(); ++head) {
    for (const Perm& gen : g.generators) {
      Perm prod = perm_compose(g.elements[head], gen);
      if (seen.insert(prod).second) {
        g.elements.push_back(std::move(prod));
        if (g.elements.size() > 40320)  // 8! — covers of degree > 16 are out of scope anyway
          throw CheckFailure("permutation closure too large");
      }
    }
  }
  for (const Perm& p : g.elements) g.element_orders.push_back(perm_order(p));
  return g;
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  std::vector<int> owner(static_cast<size_t>(degree), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < degree; ++s) {
    if (owner[static_cast<size_t>(s)] >= 0) continue;
    std::vector<int> orbit{s};
    owner[static_cast<size_t>(s)] = static_cast<int>(out.size());
    for (size_t h = 0; h < orbit.size(); ++h)
      for (const Perm& gen : generators) {
        int to = gen[static_cast<size_t>(orbit[h])];
        if (owner[static_cast<size_t>(to)] < 0) {
          owner[static_cast<size_t>(to)] = static_cast<int>(out.size());
          orbit.push_back(to);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

bool PermGroup::transitive() const { return orbits().size() == 1; }

std::vector<int> PermGroup::order_multiset() const {
  std::vector<int> v = element_orders;
  std::sort(v.begin(), v.end());
  return v;
}

bool PermGroup::is_cyclic() const {
  for (int o : element_orders)
    if (static_cast<long>(o) == order()) return true;
  return order() == 1;
}

bool PermGroup::contains(const Perm& p) const {
  return std::find(elements.begin(), elements.end(), p) != elements.end();
}

std::string PermGroup::iso_label() const {
  const long n = order();
  if (n == 1) return "1";
  if (is_cyclic()) return "Z" + std::to_string(n);
  auto ords = order_multiset();
  if (std::all_of(ords.begin(), ords.end(), [](int o) { return o <= 2; })) {
    int k = 0;
    while ((1L << k) < n) ++k;
    return "Z2^" + std::to_string(k);
  }
  if (n == 6) return "S3";
  if (n == 24 && degree == 4) return "S4";
  if (n == 12 && degree == 4) return "A4";
  if (n == 8 && degree == 4) return "D4";
  return "order-" + std::to_string(n) + " group";
}

GaloisVerdict is_galois(const PermGroup& g) {
  GaloisVerdict v;
  if (!g.transitive()) {
    v.reason = "INTRANSITIVE";
    return v;
  }
  if (g.order() != g.degree) {
    v.reason = "order " + std::to_string(g.order()) + " != degree " + std::to_string(g.degree);
    return v;
  }
  for (const Perm& p : g.elements) {
    if (perm_is_identity(p)) continue;
    for (size_t i = 0; i < p.size(); ++i)
      if (p[i] == static_cast<int>(i)) {
        v.reason = "non-identity element fixes a point";
        return v;
      }
  }
  v.galois = true;
  v.reason = "regular";
  return v;
}

}  // namespace k3cover
