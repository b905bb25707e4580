#include <benchmark/benchmark.h>

#include "k3cover/families.hpp"
#include "k3cover/monodromy.hpp"
#include "k3cover/roots.hpp"
#include "k3cover/univariate.hpp"

using namespace k3cover;

namespace {

void RootFinderDegree(benchmark::State& state) {
  Rng rng(5);
  std::vector<CD> p(static_cast<size_t>(state.range(0)) + 1);
  for (CD& c : p) c = CD(rng.sym(2.0), rng.sym(2.0));
  p.back() = CD(1.0);
  for (auto _ : state) {
    auto roots = roots_univariate(p);
    benchmark::DoNotOptimize(roots);
  }
}
BENCHMARK(RootFinderDegree)->Arg(4)->Arg(8)->Arg(16)->Arg(24);

void ExactResultantFermatPencil(benchmark::State& state) {
  CoverSpec cover = CoverSpec::make_exact(
      3, {parse_poly_exact("X0^4+X1^4+X2^4+X3^4", 4)},
      {parse_poly_exact("X0 + 2*X3", 4), parse_poly_exact("X1 - X3", 4),
       parse_poly_exact("X2 + X3", 4)});
  PencilCover pc = build_pencil(cover, 7, {});
  for (auto _ : state) {
    PolyQ disc = resultant(*pc.fiber_univariate_exact, pc.fiber_univariate_exact->derivative(0), 0);
    benchmark::DoNotOptimize(disc);
  }
}
BENCHMARK(ExactResultantFermatPencil);

void MonodromyFermatGaloisPoint(benchmark::State& state) {
  CoverSpec cover = CoverSpec::make_exact(3, {parse_poly_exact("X0^4+X1^4+X2^4+X3^4", 4)},
                                          {PolyQ::variable(4, 0), PolyQ::variable(4, 1),
                                           PolyQ::variable(4, 2)});
  std::uint64_t seed = 1;
  for (auto _ : state) {
    MonodromyResult res = monodromy_group(cover, seed++);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(MonodromyFermatGaloisPoint)->Unit(benchmark::kMillisecond);

void MonodromyTripleQuadric(benchmark::State& state) {
  FamilySpec fs = build_family_random(FamilyLabel::S222, 77);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    MonodromyResult res = monodromy_group(fs.cover, seed++);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(MonodromyTripleQuadric)->Unit(benchmark::kMillisecond);

void SquarefreeDecomposition(benchmark::State& state) {
  // Degree-24 discriminant-sized rational polynomial with a repeated factor.
  UniQ base{Rational(3), Rational(-2), Rational(1)};
  UniQ p{Rational(1)};
  for (int i = 0; i < 6; ++i) p = uni_mul(p, base);
  for (int i = 0; i < 12; ++i) p = uni_mul(p, UniQ{Rational(i + 1), Rational(1)});
  for (auto _ : state) {
    auto dec = uni_squarefree_decomposition(p);
    benchmark::DoNotOptimize(dec);
  }
}
BENCHMARK(SquarefreeDecomposition);

}  // namespace

BENCHMARK_MAIN();
