#include "k3cover/group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "k3cover/errors.hpp"
#include "k3cover/newton.hpp"

namespace k3cover {

namespace {

double mat_distance(const MatC& a, const MatC& b) {
  double m = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

bool is_identity(const MatC& m, double tol) {
  return mat_distance(m, MatC::identity(m.rows())) < tol;
}

}  // namespace

MatC normalize_projective_matrix(MatC m, double tol) {
  double scale = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) scale = std::max(scale, std::abs(m(i, j)));
  if (scale == 0) throw InputError("zero matrix is not projective");
  CD pivot(0.0);
  for (int i = 0; i < m.rows() && pivot == CD(0.0); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > tol * scale) { pivot = m(i, j); break; }
  CD inv = CD(1.0) / pivot;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      m(i, j) *= inv;
      if (std::abs(m(i, j)) < 1e-14) m(i, j) = CD(0.0);
    }
  return m;
}

int ProjGroup::index_of(const MatC& m, double tol) const {
  MatC n = normalize_projective_matrix(m);
  for (int i = 0; i < order(); ++i)
    if (mat_distance(elements[static_cast<size_t>(i)], n) < tol) return i;
  return -1;
}

std::vector<int> ProjGroup::order_multiset() const {
  std::vector<int> v = element_orders;
  std::sort(v.begin(), v.end());
  return v;
}

bool ProjGroup::is_cyclic() const {
  for (int o : element_orders)
    if (o == order()) return true;
  return order() == 1;
}

bool ProjGroup::is_abelian(double tol) const {
  for (size_t a = 0; a < elements.size(); ++a)
    for (size_t b = a + 1; b < elements.size(); ++b) {
      MatC ab = normalize_projective_matrix(elements[a] * elements[b]);
      MatC ba = normalize_projective_matrix(elements[b] * elements[a]);
      if (mat_distance(ab, ba) > tol) return false;
    }
  return true;
}

std::string ProjGroup::iso_label() const {
  const int n = order();
  if (n == 1) return "1";
  if (is_cyclic()) return "Z" + std::to_string(n);
  auto ords = order_multiset();
  bool exp2 = std::all_of(ords.begin(), ords.end(), [](int o) { return o <= 2; });
  if (exp2) {
    int k = 0;
    while ((1 << k) < n) ++k;
    return "Z2^" + std::to_string(k);
  }
  if (n == 6) return "S3";
  std::ostringstream os;
  os << "order-" << n << " group";
  return os.str();
}

ProjGroup generate_group(const std::vector<MatC>& generators, int bound) {
  if (generators.empty()) throw InputError("no generators");
  const int n = generators[0].rows();
  ProjGroup g;
  g.size = n;
  g.elements.push_back(MatC::identity(n));
  for (const MatC& m : generators) {
    if (m.rows() != n || m.cols() != n) throw InputError("generator size mismatch");
    if (std::abs(determinant(m)) < 1e-12) throw InputError("singular generator");
    MatC nm = normalize_projective_matrix(m);
    int idx = g.index_of(nm);
    if (idx < 0) {
      g.elements.push_back(nm);
      idx = g.order() - 1;
    }
    g.generator_indices.push_back(idx);
  }
  // Breadth-first closure under products.
  for (size_t head = 0; head < g.elements.size(); ++head) {
    for (int gi : g.generator_indices) {
      MatC prod = normalize_projective_matrix(g.elements[head] * g.elements[static_cast<size_t>(gi)]);
      if (g.index_of(prod) < 0) {
        g.elements.push_back(prod);
        if (g.order() > bound)
          throw CheckFailure("group closure exceeds bound " + std::to_string(bound));
      }
    }
  }
  // Element orders (power until projective identity).
  for (const MatC& m : g.elements) {
    MatC p = m;
    int ord = 1;
    while (!is_identity(normalize_projective_matrix(p), 1e-9)) {
      p = p * m;
      ++ord;
      if (ord > bound) throw CheckFailure("element order exceeds bound");
    }
    g.element_orders.push_back(ord);
  }
  return g;
}

// ---------------------------------------------------------------------------

std::string InvarianceWitness::describe() const {
  std::ostringstream os;
  os << "element " << element << ", equation " << equation << ": coefficient of ";
  for (size_t v = 0; v < monomial.size(); ++v)
    if (monomial[v]) os << "X" << v << "^" << monomial[v];
  os << " is (" << got.real() << "," << got.imag() << "), expected (" << expected.real() << ","
     << expected.imag() << ")";
  return os.str();
}

InvarianceResult ideal_invariance(const ProjGroup& g, const std::vector<PolyC>& eqs, double tol) {
  InvarianceResult out;
  out.invariant = true;
  out.scalars.assign(static_cast<size_t>(g.order()), {});
  out.scalars_exact.assign(static_cast<size_t>(g.order()), {});
  for (int e = 0; e < g.order(); ++e) {
    for (size_t j = 0; j < eqs.size(); ++j) {
      const PolyC& p = eqs[j];
      PolyC moved = act_linear(p, g.elements[static_cast<size_t>(e)]).pruned(1e-14);
      // Fit the scalar on the leading stored term, then verify everywhere.
      if (p.is_zero()) throw InputError("zero defining equation");
      const auto& [e0, c0] = *p.terms().begin();
      CD mu = moved.coefficient(e0) / c0;
      double scale = p.magnitude();
      bool ok = true;
      InvarianceWitness w;
      // Check both supports: moved vs mu * p.
      for (const auto& [mon, c] : p.terms()) {
        CD want = mu * c;
        CD have = moved.coefficient(mon);
        if (std::abs(have - want) > tol * scale * std::max(1.0, std::abs(mu))) {
          ok = false;
          w = {e, static_cast<int>(j), mon, want, have};
          break;
        }
      }
      if (ok)
        for (const auto& [mon, c] : moved.terms())
          if (p.coefficient(mon) == CD(0.0) && std::abs(c) > tol * scale) {
            ok = false;
            w = {e, static_cast<int>(j), mon, CD(0.0), c};
            break;
          }
      if (!ok) {
        out.invariant = false;
        if (!out.witness) out.witness = w;
        out.scalars[static_cast<size_t>(e)].push_back(CD(0.0));
        out.scalars_exact[static_cast<size_t>(e)].push_back(std::nullopt);
      } else {
        out.scalars[static_cast<size_t>(e)].push_back(mu);
        out.scalars_exact[static_cast<size_t>(e)].push_back(
            RootOfUnity::fit(mu, static_cast<unsigned>(std::max(g.order(), 1)) * 4));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Rows: L-form coefficients first, then a pivoted completion to a basis.
MatC adapted_basis(const std::vector<PolyC>& l_basis, int vars) {
  const int nl = static_cast<int>(l_basis.size());
  MatC b(vars, vars);
  for (int r = 0; r < nl; ++r)
    for (int c = 0; c < vars; ++c) {
      Expo e(static_cast<size_t>(vars), 0);
      e[static_cast<size_t>(c)] = 1;
      b(r, c) = l_basis[static_cast<size_t>(r)].coefficient(e);
    }
  // Complete with unit rows keeping full rank.
  int filled = nl;
  for (int c = 0; c < vars && filled < vars; ++c) {
    MatC trial = b;
    trial(filled, c) = CD(1.0);
    MatC sub(filled + 1, vars);
    for (int i = 0; i <= filled; ++i)
      for (int j = 0; j < vars; ++j) sub(i, j) = trial(i, j);
    if (rank_of(sub) == filled + 1) {
      b = trial;
      ++filled;
    }
  }
  if (filled != vars) throw InputError("could not complete the invariant system to a basis");
  return b;
}

}  // namespace

CriterionReport galois_criterion(const ProjGroup& g, const std::vector<PolyC>& eqs,
                                 const std::vector<PolyC>& l_basis, std::uint64_t seed,
                                 const std::vector<PolyQ>* exact_eqs) {
  if (l_basis.size() != 3)
    throw InputError("the invariant system of a surface projection has dimension 3");
  const unsigned vars = l_basis[0].arity();
  for (const PolyC& f : l_basis)
    if (f.homogeneous_degree() != 1u || f.arity() != vars)
      throw InputError("invariant system entries must be linear forms");
  LinearSubspace w = LinearSubspace::from_forms(static_cast<int>(vars) - 1,
                                                std::vector<PolyC>(l_basis));  // checks independence

  CriterionReport rep;
  long deg = 1;
  for (const PolyC& e : eqs) {
    auto h = e.homogeneous_degree();
    if (!h) throw InputError("equations must be homogeneous");
    deg *= static_cast<long>(*h);
  }
  rep.expected_degree = deg;
  rep.group_order = g.order();

  // Condition 1: a group of automorphisms of the surface of order D^2.
  InvarianceResult inv = ideal_invariance(g, eqs);
  rep.invariance_witness = inv.witness;
  rep.cond_order = inv.invariant && (g.order() == deg);

  // Condition 2: every element maps span(L) to itself acting as one scalar.
  rep.cond_scalar_system = true;
  for (int e = 0; e < g.order(); ++e) {
    const MatC& sigma = g.elements[static_cast<size_t>(e)];
    CD lam(0.0);
    bool ok = true;
    for (size_t i = 0; i < l_basis.size() && ok; ++i) {
      PolyC moved = act_linear(l_basis[i], sigma).pruned(1e-14);
      // moved must equal lam * l_basis[i] with a shared lam.
      const auto& [e0, c0] = *l_basis[i].terms().begin();
      CD cand = moved.coefficient(e0) / c0;
      if (i == 0) lam = cand;
      PolyC diff = moved - l_basis[i] * lam;
      double scale = std::max(1.0, l_basis[i].magnitude()) * std::max(1.0, std::abs(lam));
      for (const auto& [mon, c] : diff.terms())
        if (std::abs(c) > 1e-9 * scale) { ok = false; break; }
    }
    if (!ok) {
      rep.cond_scalar_system = false;
      rep.lambda.push_back(CD(0.0));
      rep.lambda_exact.push_back(std::nullopt);
    } else {
      rep.lambda.push_back(lam);
      rep.lambda_exact.push_back(RootOfUnity::fit(lam, static_cast<unsigned>(g.order()) * 4));
    }
  }

  // Condition 3: the system has no base points.
  EmptinessReport base = is_empty_intersection(eqs, w, 4, seed, exact_eqs);
  rep.cond_base_point_free = base.empty;
  if (!base.empty) rep.base_point = base.witness;

  rep.verdict = rep.cond_order && rep.cond_scalar_system && rep.cond_base_point_free;
  return rep;
}

GammaDecomposition gamma_decomposition(const ProjGroup& g, const std::vector<PolyC>& l_basis,
                                       double tol) {
  const int vars = static_cast<int>(l_basis[0].arity());
  const int nl = static_cast<int>(l_basis.size());
  MatC b = adapted_basis(l_basis, vars);
  MatC binv = inverse(b);
  GammaDecomposition out;

  std::vector<MatC> complements;
  for (int e = 0; e < g.order(); ++e) {
    // Representation on coefficient rows: R = B sigma B^{-1}.
    MatC r = b * g.elements[static_cast<size_t>(e)] * binv;
    // Scalar block on the invariant system.
    CD lam = r(0, 0);
    double scale = 0;
    for (int i = 0; i < vars; ++i)
      for (int j = 0; j < vars; ++j) scale = std::max(scale, std::abs(r(i, j)));
    for (int i = 0; i < nl; ++i)
      for (int j = 0; j < vars; ++j) {
        CD want = (i == j) ? lam : CD(0.0);
        if (j < nl && std::abs(r(i, j) - want) > tol * scale)
          throw CheckFailure("gamma decomposition requires the scalar-system condition");
        if (j >= nl && std::abs(r(i, j)) > tol * scale)
          throw CheckFailure("invariant system is not invariant");
      }
    MatC mprime(vars - nl, vars - nl);
    for (int i = nl; i < vars; ++i)
      for (int j = nl; j < vars; ++j) mprime(i - nl, j - nl) = r(i, j) / lam;
    complements.push_back(mprime);
  }

  // Kernel: elements whose normalized complement block is the identity.
  std::vector<int> kernel;
  for (int e = 0; e < g.order(); ++e)
    if (mat_distance(complements[static_cast<size_t>(e)], MatC::identity(vars - nl)) < 1e-8)
      kernel.push_back(e);
  out.kernel_indices = kernel;
  out.g1_order = static_cast<int>(kernel.size());
  out.g2_order = g.order() / std::max(out.g1_order, 1);

  // G1 is cyclic: it embeds in the scalars along the invariant system.
  std::vector<int> korders;
  for (int e : kernel) korders.push_back(g.element_orders[static_cast<size_t>(e)]);
  out.g1_cyclic = korders.empty() ||
                  *std::max_element(korders.begin(), korders.end()) == out.g1_order;
  out.g1_label = out.g1_order == 1 ? "1" : (out.g1_cyclic ? "Z" + std::to_string(out.g1_order)
                                                          : "non-cyclic");
  // Label the image.  The lambda-normalized complement blocks form a linear
  // matrix group (no projective rescaling here), so collect the distinct
  // blocks and their linear orders.
  std::vector<MatC> image;
  for (const MatC& m : complements) {
    bool seen = false;
    for (const MatC& w : image)
      if (mat_distance(w, m) < 1e-8) { seen = true; break; }
    if (!seen) image.push_back(m);
  }
  std::vector<int> image_orders;
  for (const MatC& m : image) {
    MatC p = m;
    int ord = 1;
    while (!is_identity(p, 1e-8) && ord <= g.order()) {
      p = p * m;
      ++ord;
    }
    image_orders.push_back(ord);
  }
  const int g2 = static_cast<int>(image.size());
  if (g2 != out.g2_order) throw CheckFailure("gamma image order mismatch");
  if (g2 == 1) {
    out.g2_label = "1";
  } else if (std::find(image_orders.begin(), image_orders.end(), g2) != image_orders.end()) {
    out.g2_label = "Z" + std::to_string(g2);
  } else if (std::all_of(image_orders.begin(), image_orders.end(), [](int o) { return o <= 2; })) {
    int kk = 0;
    while ((1 << kk) < g2) ++kk;
    out.g2_label = "Z2^" + std::to_string(kk);
  } else {
    out.g2_label = "order-" + std::to_string(g2) + " group";
  }
  return out;
}

bool hypersurface_cyclic_rule(int ambient, const ProjGroup& g) {
  if (ambient != 3) return true;
  return g.is_cyclic();
}

// ---------------------------------------------------------------------------

FixedLocusReport fixed_locus(const MatC& sigma, const std::vector<PolyC>& eqs,
                             std::uint64_t seed) {
  const int n = sigma.rows();
  double scale = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(sigma(i, j)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && std::abs(sigma(i, j)) > 1e-10 * scale)
        throw InputError("fixed_locus expects a diagonal matrix");

  // Group coordinates by eigenvalue.
  std::vector<CD> diag(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) diag[static_cast<size_t>(i)] = sigma(i, i);
  std::vector<bool> used(static_cast<size_t>(n), false);
  FixedLocusReport rep;
  for (int i = 0; i < n; ++i) {
    if (used[static_cast<size_t>(i)]) continue;
    std::vector<int> coords{i};
    used[static_cast<size_t>(i)] = true;
    for (int j = i + 1; j < n; ++j)
      if (!used[static_cast<size_t>(j)] &&
          std::abs(diag[static_cast<size_t>(j)] - diag[static_cast<size_t>(i)]) < 1e-8 * scale) {
        coords.push_back(j);
        used[static_cast<size_t>(j)] = true;
      }

    FixedComponent comp;
    comp.eigenvalue = diag[static_cast<size_t>(i)];
    comp.coordinates = coords;
    comp.subspace_dim = static_cast<int>(coords.size()) - 1;

    // Restrict the equations: zero out the complementary coordinates.
    std::vector<PolyC> images;
    unsigned m = static_cast<unsigned>(coords.size());
    for (int v = 0; v < n; ++v) {
      auto it = std::find(coords.begin(), coords.end(), v);
      if (it == coords.end())
        images.push_back(PolyC::constant(m, CD(0.0)));
      else
        images.push_back(PolyC::variable(m, static_cast<unsigned>(it - coords.begin())));
    }
    std::vector<PolyC> restricted;
    for (const PolyC& e : eqs) {
      PolyC r = e.substitute(images).pruned(1e-14);
      if (!r.is_zero()) restricted.push_back(r);
    }
    comp.restricted_equations = static_cast<int>(restricted.size());
    comp.expected_dim = comp.subspace_dim - comp.restricted_equations;
    if (comp.expected_dim >= 0) {
      // Projective dimension theorem: c <= dim forces a nonempty
      // intersection of that dimension at least.
      comp.nonempty = true;
      comp.curve_or_more = comp.expected_dim >= 1;
    } else if (comp.subspace_dim < 0) {
      comp.nonempty = false;
    } else {
      // Overdetermined on the subspace: decide numerically.
      std::vector<PolyC> sub_forms;
      for (int v = 0; v < n; ++v) {
        if (std::find(coords.begin(), coords.end(), v) != coords.end()) continue;
        sub_forms.push_back(PolyC::variable(static_cast<unsigned>(n), static_cast<unsigned>(v)));
      }
      LinearSubspace sub = LinearSubspace::from_forms(n - 1, sub_forms);
      EmptinessReport er = is_empty_intersection(eqs, sub, 3, seed);
      comp.nonempty = !er.empty;
      comp.curve_or_more = false;
    }
    rep.components.push_back(std::move(comp));
  }
  for (const FixedComponent& c : rep.components) {
    rep.any_nonempty = rep.any_nonempty || c.nonempty;
    rep.has_curve = rep.has_curve || (c.nonempty && c.curve_or_more);
  }
  return rep;
}

// ---------------------------------------------------------------------------

CD symplectic_character(const MatC& sigma_diag, const std::vector<CD>& mus) {
  CD det(1.0);
  for (int i = 0; i < sigma_diag.rows(); ++i) det *= sigma_diag(i, i);
  CD denom(1.0);
  for (const CD& mu : mus) {
    if (mu == CD(0.0)) throw InputError("symplectic character: zero equation scalar");
    denom *= mu;
  }
  return det / denom;
}

CharacterTable character_table(const ProjGroup& g, const std::vector<PolyC>& eqs,
                               const std::vector<PolyC>& l_basis, double tol) {
  CharacterTable tab;
  InvarianceResult inv = ideal_invariance(g, eqs, tol);
  if (!inv.invariant)
    throw CheckFailure("character table needs an invariant ideal: " +
                       (inv.witness ? inv.witness->describe() : std::string()));
  tab.mu = inv.scalars;
  for (int e = 0; e < g.order(); ++e) {
    const MatC& sigma = g.elements[static_cast<size_t>(e)];
    // lambda from the first L form.
    PolyC moved = act_linear(l_basis[0], sigma).pruned(1e-14);
    const auto& [e0, c0] = *l_basis[0].terms().begin();
    tab.lambda.push_back(moved.coefficient(e0) / c0);
    CD eps = symplectic_character(sigma, inv.scalars[static_cast<size_t>(e)]);
    tab.epsilon.push_back(eps);
    tab.epsilon_exact.push_back(RootOfUnity::fit(eps, static_cast<unsigned>(g.order()) * 4));
  }
  // Image and kernel orders of eps.
  std::vector<CD> image;
  int kernel = 0;
  for (const CD& eps : tab.epsilon) {
    if (std::abs(eps - CD(1.0)) < 1e-8) ++kernel;
    bool seen = false;
    for (const CD& w : image)
      if (std::abs(w - eps) < 1e-8) { seen = true; break; }
    if (!seen) image.push_back(eps);
  }
  tab.image_order = static_cast<int>(image.size());
  tab.kernel_order = kernel;
  return tab;
}

CD residue_form_scaling(const CoverSpec& cover, const MatC& sigma, std::uint64_t seed) {
  Rng rng(seed ^ 0x2F04Dull);
  const int n = cover.ambient;            // P^N
  const int k = static_cast<int>(cover.equations.size());

  // A random smooth point on the surface: cut with two random hyperplanes.
  std::vector<CD> point;
  for (int attempt = 0; attempt < 8 && point.empty(); ++attempt) {
    std::vector<PolyC> slice = cover.equations;
    for (int h = 0; h < 2; ++h) {
      PolyC plane(static_cast<unsigned>(n) + 1);
      for (int v = 0; v <= n; ++v) {
        Expo e(static_cast<size_t>(n) + 1, 0);
        e[static_cast<size_t>(v)] = 1;
        plane.add_term(e, rng.unit_complex());
      }
      slice.push_back(plane);
    }
    PolyC chart = PolyC::constant(static_cast<unsigned>(n) + 1, CD(-1.0));
    for (int v = 0; v <= n; ++v)
      chart = chart + PolyC::variable(static_cast<unsigned>(n) + 1, static_cast<unsigned>(v)) *
                          rng.unit_complex();
    slice.push_back(chart);
    HomotopyOutcome sols = solve_all_total_degree(slice, rng);
    if (!sols.solutions.empty()) point = sols.solutions[0];
  }
  if (point.empty()) throw NumericalFailure("no smooth surface point found for the 2-form oracle");

  // Work in the affine chart X_c = 1 where |x_c| is largest.
  size_t cidx = 0;
  for (size_t i = 1; i < point.size(); ++i)
    if (std::abs(point[i]) > std::abs(point[cidx])) cidx = i;

  auto affinize = [&](const std::vector<CD>& x) {
    std::vector<CD> z;
    for (size_t i = 0; i < x.size(); ++i)
      if (i != cidx) z.push_back(x[i] / x[cidx]);
    return z;
  };

  // Affine equations e_j(z) = E_j with X_c = 1.
  std::vector<PolyC> affine_eqs;
  {
    std::vector<PolyC> images;
    unsigned m = static_cast<unsigned>(n);  // affine variables
    unsigned slot = 0;
    for (int v = 0; v <= n; ++v) {
      if (static_cast<size_t>(v) == cidx)
        images.push_back(PolyC::constant(m, CD(1.0)));
      else
        images.push_back(PolyC::variable(m, slot++));
    }
    for (const PolyC& e : cover.equations) affine_eqs.push_back(e.substitute(images));
  }

  // The affinized map z -> sigma(z) for diagonal sigma.
  std::vector<CD> dcoef;
  CD ac = sigma(static_cast<int>(cidx), static_cast<int>(cidx));
  for (int v = 0; v <= n; ++v)
    if (static_cast<size_t>(v) != cidx) dcoef.push_back(sigma(v, v) / ac);

  std::vector<CD> z = affinize(point);
  std::vector<CD> zs(z.size());
  for (size_t i = 0; i < z.size(); ++i) zs[i] = dcoef[i] * z[i];

  // Gelfand-Leray value of the residue 2-form on a tangent frame:
  // det(t1, t2, grad e_1, ..., grad e_k) / det(Gram(grad e)).
  auto form_value = [&](const std::vector<CD>& at, const std::vector<CD>& t1,
                        const std::vector<CD>& t2) {
    std::vector<std::vector<CD>> grads(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) {
      grads[static_cast<size_t>(j)].resize(z.size());
      for (size_t v = 0; v < z.size(); ++v)
        grads[static_cast<size_t>(j)][v] =
            affine_eqs[static_cast<size_t>(j)].derivative(static_cast<unsigned>(v)).eval(at);
    }
    MatC big(n, n);
    for (size_t v = 0; v < z.size(); ++v) {
      big(static_cast<int>(v), 0) = t1[v];
      big(static_cast<int>(v), 1) = t2[v];
      for (int j = 0; j < k; ++j) big(static_cast<int>(v), 2 + j) = grads[static_cast<size_t>(j)][v];
    }
    MatC gram(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        CD s(0.0);
        for (size_t v = 0; v < z.size(); ++v)
          s += grads[static_cast<size_t>(a)][v] * grads[static_cast<size_t>(b)][v];
        gram(a, b) = s;
      }
    return determinant(big) / determinant(gram);
  };

  // Tangent frame at z: nullspace of the k x n affine Jacobian.
  MatC jac(k, n);
  for (int j = 0; j < k; ++j)
    for (size_t v = 0; v < z.size(); ++v)
      jac(j, static_cast<int>(v)) =
          affine_eqs[static_cast<size_t>(j)].derivative(static_cast<unsigned>(v)).eval(z);
  auto tangents = nullspace(jac);
  if (tangents.size() != 2) throw NumericalFailure("surface point is not smooth");

  // Push the frame through the (diagonal) affinized map.
  std::vector<CD> u1(z.size()), u2(z.size());
  for (size_t v = 0; v < z.size(); ++v) {
    u1[v] = dcoef[v] * tangents[0][v];
    u2[v] = dcoef[v] * tangents[1][v];
  }
  CD below = form_value(z, tangents[0], tangents[1]);
  CD above = form_value(zs, u1, u2);
  return above / below;
}

}  // namespace k3cover
