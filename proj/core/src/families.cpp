#include "k3cover/families.hpp"

#include <algorithm>
#include <cmath>

#include "k3cover/errors.hpp"
#include "k3cover/newton.hpp"
#include "k3cover/roots.hpp"
#include "k3cover/univariate.hpp"

namespace k3cover {

std::string to_string(FamilyLabel l) {
  switch (l) {
    case FamilyLabel::S4: return "S4";
    case FamilyLabel::S23: return "S23";
    case FamilyLabel::S222: return "S222";
  }
  return "?";
}

std::optional<FamilyLabel> parse_family_label(const std::string& s) {
  std::string t;
  for (char c : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "s4" || t == "s(4)" || t == "quartic") return FamilyLabel::S4;
  if (t == "s23" || t == "s(23)") return FamilyLabel::S23;
  if (t == "s222" || t == "s(222)") return FamilyLabel::S222;
  if (t == "fermat") return FamilyLabel::S4;
  return std::nullopt;
}

std::vector<PolyC> FamilySpec::invariant_system() const {
  std::vector<PolyC> l;
  for (unsigned i = 0; i < 3; ++i)
    l.push_back(PolyC::variable(static_cast<unsigned>(ambient) + 1, i));
  return l;
}

namespace {

// All projective solutions of a small plane system via the squared-up
// homotopy; returns chart-normalized points verified against every equation.
// Retries with fresh charts until the expected count is reached (paths can
// drop through an unlucky chart), keeping the best attempt.
std::vector<std::vector<CD>> plane_solutions(const std::vector<PolyC>& eqs, Rng& rng,
                                             long expected = -1) {
  std::vector<std::vector<CD>> best;
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<PolyC> square;
    if (eqs.size() == 2) {
      square = eqs;
    } else {
      for (int r = 0; r < 2; ++r) {
        PolyC combo(3);
        for (const PolyC& e : eqs) combo = combo + e * rng.unit_complex();
        square.push_back(combo);
      }
    }
    PolyC chart = PolyC::constant(3, CD(-1.0));
    for (unsigned j = 0; j < 3; ++j) chart = chart + PolyC::variable(3, j) * rng.unit_complex();
    square.push_back(chart);
    HomotopyOutcome out = solve_all_total_degree(square, rng);
    std::vector<std::vector<CD>> verified;
    for (const auto& p : out.solutions) {
      bool all = true;
      double scale = 1.0;
      for (const CD& z : p) scale = std::max(scale, std::abs(z));
      for (const PolyC& e : eqs) {
        double m = std::max(1.0, e.magnitude()) *
                   std::pow(scale, static_cast<double>(*e.homogeneous_degree()));
        if (std::abs(e.eval(p)) > 1e-7 * m) { all = false; break; }
      }
      if (all) verified.push_back(normalize_projective(p));
    }
    verified = dedup_points(verified, 1e-7);
    if (verified.size() > best.size()) best = std::move(verified);
    if (expected >= 0 && static_cast<long>(best.size()) >= expected) break;
    if (expected < 0 && !best.empty()) break;
  }
  return best;
}

std::vector<CD> gradient_at(const PolyC& f, const std::vector<CD>& p) {
  std::vector<CD> g(3);
  for (unsigned v = 0; v < 3; ++v) g[v] = f.derivative(v).eval(p);
  return g;
}

}  // namespace

std::optional<SingularWitness> plane_curve_singularity(const PolyQ& form, std::uint64_t seed) {
  if (form.arity() != 3 || !form.homogeneous_degree())
    throw InputError("plane form must be homogeneous in X0..X2");
  if (*form.homogeneous_degree() == 1) return std::nullopt;  // lines are smooth
  Rng rng(seed ^ 0x51A6ull);

  // Exact elimination in a sheared frame: candidate singular directions are
  // the roots of res_{X2} of two partials; each candidate is completed in X2
  // and verified against all three partials.  Shearing keeps the chart and
  // the eliminated variable generic.
  for (int attempt = 0; attempt < 3; ++attempt) {
    MatQ shear = MatQ::identity(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) shear(i, j) = Rational(rng.int_in(-3, 3), rng.int_in(1, 2));
    PolyQ g = act_linear(form, shear);
    std::array<PolyQ, 3> partials{g.derivative(0), g.derivative(1), g.derivative(2)};
    std::vector<int> alive;
    for (int v = 0; v < 3; ++v)
      if (!partials[static_cast<size_t>(v)].is_zero()) alive.push_back(v);
    if (alive.size() <= 1) {
      // Two partials vanish identically: every zero of the survivor is a
      // singular point.  Find one on a generic line.
      PolyC p = to_complex_poly(partials[static_cast<size_t>(alive.empty() ? 0 : alive[0])]);
      std::vector<CD> w{CD(0), CD(1), CD(0)};
      for (unsigned v = 0; v < 3; ++v) {
        if (p.degree_in(v) < 1) continue;
        std::vector<PolyC> im(3);
        std::vector<CD> consts{rng.unit_complex(), rng.unit_complex(), rng.unit_complex()};
        for (unsigned t = 0; t < 3; ++t)
          im[t] = t == v ? PolyC::variable(1, 0) : PolyC::constant(1, consts[t]);
        PolyC res = p.substitute(im).pruned(1e-13);
        if (res.degree() < 1) continue;
        CD root = roots_univariate(uni_from_poly_c(res))[0];
        for (unsigned t = 0; t < 3; ++t) w[t] = t == v ? root : consts[t];
        break;
      }
      std::vector<CD> orig;
      {
        MatC sc(3, 3);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) sc(i, j) = to_complex(shear(i, j));
        orig = sc.apply(w);
      }
      return SingularWitness{normalize_projective(orig), "degenerate form: vanishing partials"};
    }
    const PolyQ& p0 = partials[static_cast<size_t>(alive[0])];
    const PolyQ& p1 = partials[static_cast<size_t>(alive[1])];
    if (p0.degree_in(2) < 1 || p1.degree_in(2) < 1) continue;  // reshear
    PolyQ r = resultant(p0, p1, 2);
    if (r.is_zero()) {
      // The two partials share a whole component; it meets the remaining
      // partial somewhere (plane curves always intersect).
      return SingularWitness{{}, "partials share a component"};
    }
    // r is a binary form in (X0, X1): its roots give candidate directions.
    PolyC rc = to_complex_poly(r);
    unsigned hd = *r.homogeneous_degree();
    UniC u(hd + 1, CD(0.0));
    for (const auto& [e, c] : rc.terms()) u[e[0]] = c;
    std::vector<std::array<CD, 2>> dirs;
    if (uni_degree(u) < static_cast<int>(hd)) dirs.push_back({CD(1.0), CD(0.0)});
    if (uni_degree(u) >= 1)
      for (const CD& root : roots_univariate(u)) dirs.push_back({root, CD(1.0)});
    PolyC fc = to_complex_poly(g);
    std::array<PolyC, 3> pc{fc.derivative(0), fc.derivative(1), fc.derivative(2)};
    MatC shear_c(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) shear_c(i, j) = to_complex(shear(i, j));
    for (const auto& d : dirs) {
      // Complete the direction in X2: common roots of the restricted partials.
      std::vector<PolyC> images{PolyC::constant(1, d[0]), PolyC::constant(1, d[1]),
                                PolyC::variable(1, 0)};
      PolyC q0 = pc[0].substitute(images).pruned(1e-13);
      std::vector<CD> cands;
      if (q0.degree() >= 1)
        for (const CD& z : roots_univariate(uni_from_poly_c(q0))) cands.push_back(z);
      else if (q0.is_zero())
        cands.push_back(CD(0.0));  // restricted partial vanishes; probe the axis point
      for (const CD& z : cands) {
        // Normalize before judging: spurious huge roots otherwise inflate
        // the tolerance scale into vacuity.
        std::vector<CD> pt = normalize_projective({d[0], d[1], z});
        bool all = true;
        for (const PolyC& dp : pc) {
          double m = std::max(1.0, dp.magnitude());
          if (std::abs(dp.eval(pt)) > 1e-8 * m) { all = false; break; }
        }
        if (all) {
          // g = F o shear, so the original singular point is shear * pt.
          std::vector<CD> orig = shear_c.apply(pt);
          return SingularWitness{normalize_projective(orig), "singular point of the plane curve"};
        }
      }
    }
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<SingularWitness> curve_configuration_defect(const std::vector<PolyQ>& forms,
                                                          std::uint64_t seed) {
  Rng rng(seed ^ 0xC0DEull);
  std::vector<PolyC> cf;
  for (const PolyQ& f : forms) cf.push_back(to_complex_poly(f));
  for (size_t i = 0; i < cf.size(); ++i)
    for (size_t j = i + 1; j < cf.size(); ++j) {
      long expected = static_cast<long>(*cf[i].homogeneous_degree()) *
                      static_cast<long>(*cf[j].homogeneous_degree());
      auto pts = plane_solutions({cf[i], cf[j]}, rng, expected);
      for (const auto& p : pts) {
        // Transversality: the two gradients span a rank-2 space.
        MatC m(2, 3);
        auto gi = gradient_at(cf[i], p), gj = gradient_at(cf[j], p);
        for (int c = 0; c < 3; ++c) {
          m(0, c) = gi[static_cast<size_t>(c)];
          m(1, c) = gj[static_cast<size_t>(c)];
        }
        if (rank_of(m, 1e-6) < 2)
          return SingularWitness{p, "tangency of branch curves " + std::to_string(i) + "," +
                                        std::to_string(j)};
        // Triple point: a third curve through a crossing.
        for (size_t k = 0; k < cf.size(); ++k) {
          if (k == i || k == j) continue;
          double scale = std::max(1.0, cf[k].magnitude());
          if (std::abs(cf[k].eval(p)) < 1e-7 * scale)
            return SingularWitness{p, "triple point of the branch configuration"};
        }
      }
      if (static_cast<long>(pts.size()) < expected)
        return SingularWitness{{}, "non-reduced intersection of branch curves " +
                                       std::to_string(i) + "," + std::to_string(j)};
    }
  return std::nullopt;
}

std::optional<SingularWitness> surface_singularity_probe(const CoverSpec& cover,
                                                         std::uint64_t seed, int starts) {
  Rng rng(seed ^ 0x5107ull);
  const int n = cover.ambient;
  const int k = static_cast<int>(cover.equations.size());
  const unsigned vars = static_cast<unsigned>(n + 1 + k);  // x and the kernel covector w
  std::vector<PolyC> ximg;
  for (int i = 0; i <= n; ++i) ximg.push_back(PolyC::variable(vars, static_cast<unsigned>(i)));
  // Equations, (n-1) random projections of sum_j w_j grad E_j = 0, charts.
  std::vector<PolyC> sys;
  for (const PolyC& e : cover.equations) sys.push_back(e.substitute(ximg));
  std::vector<std::vector<PolyC>> grads(static_cast<size_t>(k));
  for (int j = 0; j < k; ++j)
    for (int v = 0; v <= n; ++v)
      grads[static_cast<size_t>(j)].push_back(
          cover.equations[static_cast<size_t>(j)].derivative(static_cast<unsigned>(v)).substitute(ximg));
  for (int row = 0; row < n - 1; ++row) {
    PolyC combo(vars);
    for (int v = 0; v <= n; ++v) {
      CD c = rng.unit_complex();
      for (int j = 0; j < k; ++j)
        combo = combo + grads[static_cast<size_t>(j)][static_cast<size_t>(v)] *
                            PolyC::variable(vars, static_cast<unsigned>(n + 1 + j)) * c;
    }
    sys.push_back(combo);
  }
  for (int chart = 0; chart < 2; ++chart) {
    PolyC c = PolyC::constant(vars, CD(-1.0));
    int lo = chart == 0 ? 0 : n + 1;
    int hi = chart == 0 ? n + 1 : n + 1 + k;
    for (int v = lo; v < hi; ++v)
      c = c + PolyC::variable(vars, static_cast<unsigned>(v)) * rng.unit_complex();
    sys.push_back(c);
  }
  SquareSystem probe(sys);
  NewtonOptions nopts;
  nopts.tol = 1e-11;
  nopts.max_iter = 80;
  nopts.quadratic_guard = false;
  for (int s = 0; s < starts; ++s) {
    std::vector<CD> start(vars);
    for (CD& z : start) z = rng.disk(2.0);
    NewtonResult r = newton_solve(probe, std::move(start), nopts);
    if (!r.ok) continue;
    // Verify the full kernel condition sum_j w_j grad_v E_j = 0, not just
    // the random projections.
    std::vector<CD> x(r.x.begin(), r.x.begin() + n + 1);
    double worst = 0;
    for (int v = 0; v <= n; ++v) {
      CD acc(0.0);
      for (int j = 0; j < k; ++j)
        acc += r.x[static_cast<size_t>(n + 1 + j)] *
               cover.equations[static_cast<size_t>(j)].derivative(static_cast<unsigned>(v)).eval(x);
      worst = std::max(worst, std::abs(acc));
    }
    double xmag = 0;
    for (const CD& z : x) xmag = std::max(xmag, std::abs(z));
    if (worst < 1e-7 * std::max(1.0, xmag) && xmag < 1e3)
      return SingularWitness{normalize_projective(x), "surface singular point"};
  }
  return std::nullopt;
}

namespace {

std::vector<int> expected_degrees(FamilyLabel l) {
  switch (l) {
    case FamilyLabel::S4: return {4};
    case FamilyLabel::S23: return {2, 3};
    case FamilyLabel::S222: return {2, 2, 2};
  }
  return {};
}

const CD kE3(std::cos(2.0943951023931953), std::sin(2.0943951023931953));
const CD kE4(0.0, 1.0);

}  // namespace

FamilySpec build_family(FamilyLabel label, std::vector<PolyQ> plane_forms, std::uint64_t seed) {
  FamilySpec fs;
  fs.label = label;
  auto degs = expected_degrees(label);
  if (plane_forms.size() != degs.size())
    throw InputError("family " + to_string(label) + " needs " + std::to_string(degs.size()) +
                     " plane form(s)");
  for (size_t i = 0; i < degs.size(); ++i) {
    auto h = plane_forms[i].homogeneous_degree();
    if (plane_forms[i].arity() != 3 || !h || static_cast<int>(*h) != degs[i])
      throw InputError("plane form " + std::to_string(i) + " must be homogeneous of degree " +
                       std::to_string(degs[i]) + " in X0..X2");
  }
  // Smoothness of each plane curve, then the crossing configuration.
  for (size_t i = 0; i < plane_forms.size(); ++i)
    if (auto w = plane_curve_singularity(plane_forms[i], seed + i)) {
      std::string msg = "plane curve " + std::to_string(i) + " is singular";
      if (!w->point.empty()) {
        msg += " at (";
        for (size_t v = 0; v < w->point.size(); ++v) {
          if (v) msg += ", ";
          char buf[48];
          std::snprintf(buf, sizeof buf, "%.6g%+.6gi", w->point[v].real(), w->point[v].imag());
          msg += buf;
        }
        msg += ")";
      }
      throw InputError(msg);
    }
  if (plane_forms.size() > 1)
    if (auto w = curve_configuration_defect(plane_forms, seed))
      throw InputError("branch configuration defect: " + w->where);

  // Assemble: X_{3+j}^(a_j) + F_j = 0 in P^(2 + #forms).
  fs.ambient = 2 + static_cast<int>(plane_forms.size());
  const unsigned vars = static_cast<unsigned>(fs.ambient) + 1;
  std::vector<PolyQ> eqs;
  {
    std::vector<PolyQ> lift;
    for (unsigned v = 0; v < 3; ++v) lift.push_back(PolyQ::variable(vars, v));
    std::vector<int> powers = label == FamilyLabel::S4    ? std::vector<int>{4}
                              : label == FamilyLabel::S23 ? std::vector<int>{2, 3}
                                                          : std::vector<int>{2, 2, 2};
    for (size_t j = 0; j < plane_forms.size(); ++j) {
      PolyQ e = plane_forms[j].substitute(lift) +
                PolyQ::variable(vars, 3 + static_cast<unsigned>(j)).pow(static_cast<unsigned>(powers[j]));
      eqs.push_back(e);
    }
  }
  std::vector<PolyQ> center{PolyQ::variable(vars, 0), PolyQ::variable(vars, 1),
                            PolyQ::variable(vars, 2)};
  fs.plane_forms = std::move(plane_forms);
  fs.cover = CoverSpec::make_exact(fs.ambient, std::move(eqs), std::move(center), seed);

  // Canonical deck group.
  switch (label) {
    case FamilyLabel::S4:
      fs.generators = {MatC::diag({CD(1), CD(1), CD(1), kE4})};
      break;
    case FamilyLabel::S23:
      fs.generators = {MatC::diag({CD(1), CD(1), CD(1), CD(-1), CD(1)}),
                       MatC::diag({CD(1), CD(1), CD(1), CD(1), kE3})};
      break;
    case FamilyLabel::S222:
      for (int j = 3; j <= 5; ++j) {
        std::vector<CD> d(6, CD(1));
        d[static_cast<size_t>(j)] = CD(-1);
        fs.generators.push_back(MatC::diag(d));
      }
      break;
  }
  fs.group = generate_group(fs.generators);
  return fs;
}

FamilySpec build_family_random(FamilyLabel label, std::uint64_t seed) {
  Rng rng(seed);
  auto degs = expected_degrees(label);
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<PolyQ> forms;
    for (int d : degs) {
      PolyQ f(3);
      // Dense form of degree d with small integer coefficients.
      for (unsigned a = 0; a <= static_cast<unsigned>(d); ++a)
        for (unsigned b = 0; a + b <= static_cast<unsigned>(d); ++b) {
          unsigned c = static_cast<unsigned>(d) - a - b;
          f.add_term(Expo{a, b, c}, Rational(rng.int_in(-5, 5)));
        }
      forms.push_back(f);
    }
    try {
      return build_family(label, std::move(forms), seed + static_cast<std::uint64_t>(attempt));
    } catch (const InputError&) {
      continue;
    }
  }
  throw NumericalFailure("no smooth member found after 10 draws");
}

FamilySpec fermat_family(std::uint64_t seed) {
  return build_family(FamilyLabel::S4, {parse_poly_exact("X0^4+X1^4+X2^4", 3)}, seed);
}

std::array<std::vector<PolyQ>, 4> fermat_galois_centers() {
  std::array<std::vector<PolyQ>, 4> out;
  for (int i = 0; i < 4; ++i)
    for (int v = 0; v < 4; ++v)
      if (v != i) out[static_cast<size_t>(i)].push_back(PolyQ::variable(4, static_cast<unsigned>(v)));
  return out;
}

RamificationLedger ramification_ledger(const FamilySpec& fs) {
  RamificationLedger led;
  switch (fs.label) {
    case FamilyLabel::S4: led.pairs = {{4, 4}}; break;
    case FamilyLabel::S23: led.pairs = {{3, 3}, {2, 2}}; break;
    case FamilyLabel::S222: led.pairs = {{2, 2}, {2, 2}, {2, 2}}; break;
  }
  led.order = 1;
  for (const BranchPair& p : led.pairs) led.order *= p.order;
  led.left = 0;
  for (const BranchPair& p : led.pairs)
    led.left += static_cast<long>(p.order - 1) * (led.order * p.degree / p.order);
  led.right = 3 * led.order;
  led.identity_holds = led.left == led.right;
  if (!led.identity_holds)
    throw CheckFailure("ramification-degree identity failed (construction bug)");
  return led;
}

TowerReport tower_check(const FamilySpec& fs, std::uint64_t seed) {
  if (fs.label != FamilyLabel::S222)
    throw InputError("tower check applies to the (2,2,2) family only");
  Rng rng(seed ^ 0x70EEull);
  TowerReport rep;
  // A random rational plane point off the branch conics.
  std::vector<Rational> y(3);
  for (int attempt = 0; attempt < 20; ++attempt) {
    for (Rational& c : y) c = Rational(rng.int_in(-9, 9), rng.int_in(1, 4));
    bool off = true;
    for (const PolyQ& f : fs.plane_forms)
      if (f.eval(y) == 0) off = false;
    if (off) break;
  }
  // Fibers of the tower S -> S_(22) -> S_(2) -> P^2 over y have closed form
  // X_{3+j} = +-sqrt(-F_j(y)): 2^3, 2^2, 2 points.
  std::vector<CD> vals;
  for (const PolyQ& f : fs.plane_forms) vals.push_back(std::sqrt(-to_complex(f.eval(y))));
  auto count_distinct = [&](int keep) {
    // Points (y, s_1 v_1, ..., s_keep v_keep), signs in {+1,-1}.
    std::vector<std::vector<CD>> pts;
    for (int mask = 0; mask < (1 << keep); ++mask) {
      std::vector<CD> p{to_complex(y[0]), to_complex(y[1]), to_complex(y[2])};
      for (int j = 0; j < keep; ++j)
        p.push_back(((mask >> j) & 1) ? -vals[static_cast<size_t>(j)] : vals[static_cast<size_t>(j)]);
      pts.push_back(normalize_projective(p));
    }
    return static_cast<int>(dedup_points(pts, 1e-9).size());
  };
  rep.fiber_sizes = {count_distinct(3), count_distinct(2), count_distinct(1)};

  // Cross-check the full fiber with the generic machinery: the fiber system
  // of the assembled cover must see the same 8 points.
  {
    const unsigned vars = static_cast<unsigned>(fs.ambient) + 1;
    std::vector<CD> yc{to_complex(y[0]), to_complex(y[1]), to_complex(y[2])};
    bool agreed = false;
    for (int attempt = 0; attempt < 3 && !agreed; ++attempt) {
      std::vector<PolyC> sys;
      for (const PolyC& e : fs.cover.equations) sys.push_back(e);
      for (int r = 0; r < 2; ++r) {
        std::array<CD, 3> a{rng.unit_complex(), rng.unit_complex(), rng.unit_complex()};
        PolyC cond(vars);
        // det3(a, y, L(x)) with L = coordinates.
        std::array<CD, 3> cy{a[1] * yc[2] - a[2] * yc[1], a[2] * yc[0] - a[0] * yc[2],
                             a[0] * yc[1] - a[1] * yc[0]};
        for (unsigned t = 0; t < 3; ++t) cond = cond + PolyC::variable(vars, t) * cy[t];
        sys.push_back(cond);
      }
      PolyC chart = PolyC::constant(vars, CD(-1.0));
      for (unsigned v = 0; v < vars; ++v)
        chart = chart + PolyC::variable(vars, v) * rng.unit_complex();
      sys.push_back(chart);
      HomotopyOutcome out = solve_all_total_degree(sys, rng);
      agreed = static_cast<int>(dedup_points(out.solutions, 1e-7).size()) == rep.fiber_sizes[0];
    }
    if (!agreed)
      throw NumericalFailure("fiber cardinality mismatch between closed form and solver");
  }
  rep.ok = rep.fiber_sizes == rep.expected;
  if (!rep.ok) throw CheckFailure("tower fiber cardinalities differ from (8,4,2)");
  return rep;
}

}  // namespace k3cover
