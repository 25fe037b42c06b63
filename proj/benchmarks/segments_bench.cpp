#include <benchmark/benchmark.h>

#include "sylvester/bodies.hpp"
#include "sylvester/segments.hpp"

namespace {

using namespace sylvester;

std::vector<Rational> grid(int interior) {
  std::vector<Rational> xs;
  for (int i = 0; i <= interior + 1; ++i) xs.emplace_back(i, interior + 1);
  return xs;
}

void BM_FamilyProbabilityDiskSlices(benchmark::State& state) {
  const int interior = static_cast<int>(state.range(0));
  std::vector<Rational> xs;
  for (int i = 0; i <= interior + 1; ++i) xs.emplace_back(2 * i - interior - 1, interior + 2);
  const ConvexBody disk = Disk{{Rational(0), Rational(0)}, Rational(1)};
  const auto family = normalize(slices(disk, xs));
  for (auto _ : state) benchmark::DoNotOptimize(family_probability_lenient(family, Rational(1, 1000000)));
}
BENCHMARK(BM_FamilyProbabilityDiskSlices)->DenseRange(1, 3);

void BM_FamilyProbabilityHexagon(benchmark::State& state) {
  const int interior = static_cast<int>(state.range(0));
  const ConvexBody hexagon = make_polygon({{Rational(0), Rational(0)}, {Rational(1, 2), Rational(-1)},
                                           {Rational(3, 2), Rational(-1)}, {Rational(2), Rational(0)},
                                           {Rational(3, 2), Rational(1)}, {Rational(1, 2), Rational(1)}});
  auto xs = grid(interior);
  for (auto& x : xs) x *= Rational(2);
  const auto family = normalize(slices(hexagon, xs));
  for (auto _ : state) benchmark::DoNotOptimize(family_probability(family));
}
BENCHMARK(BM_FamilyProbabilityHexagon)->DenseRange(1, 3);

void BM_YBoundsDisk(benchmark::State& state) {
  const ConvexBody disk = Disk{{Rational(0), Rational(0)}, Rational(1)};
  const Rational x(1, 3);
  const auto bits = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(y_bounds(disk, x, bits));
}
BENCHMARK(BM_YBoundsDisk)->Arg(64)->Arg(128)->Arg(256);

}  // namespace
