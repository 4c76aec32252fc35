// Parallel kernels against their serial references.
#include "levy/operator_lab.hpp"
#include "levy/spectral.hpp"
#include "levy/symbol.hpp"
#include "levy/zero_set.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace levy;

namespace {

LevyTriplet lattice2d() {
  return LevyTriplet::from_exact({{Rational(0), Rational(0)},
                                  RationalMatrix(2, 2),
                                  {{Rational(1), {Rational(1), Rational(0)}},
                                   {Rational(1), {Rational(1), Rational(2)}}}});
}

GridFunction noise(const TorusGrid& g) {
  std::mt19937_64                        rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Complex>                   v(g.size());
  for (auto& x : v) x = {u(rng), u(rng)};
  return GridFunction(g, std::move(v));
}

template <bool Parallel>
void symbol_grid(benchmark::State& s) {
  const TorusGrid g(2, 4.0, static_cast<std::size_t>(s.range(0)));
  const auto      psi = SymbolHandle::from_triplet(lattice2d());
  for (auto _ : s)
    benchmark::DoNotOptimize(Parallel ? eval_symbol_grid(psi, g) : serial::eval_symbol_grid(psi, g));
}

template <bool Parallel>
void generator_fourier(benchmark::State& s) {
  const TorusGrid g(2, 4.0, static_cast<std::size_t>(s.range(0)));
  const auto      psi = SymbolHandle::from_triplet(lattice2d());
  const auto      f   = noise(g);
  for (auto _ : s)
    benchmark::DoNotOptimize(Parallel ? apply_generator_fourier(f, psi) : serial::apply_generator_fourier(f, psi));
}

template <bool Parallel>
void transform(benchmark::State& s) {
  const TorusGrid g(2, 1.0, static_cast<std::size_t>(s.range(0)));
  const auto      f = noise(g);
  for (auto _ : s)
    benchmark::DoNotOptimize(Parallel ? forward_transform(g, f.values) : serial::forward_transform(g, f.values));
}

template <bool Parallel>
void zero_scan(benchmark::State& s) {
  const auto        psi = SymbolHandle::from_triplet(lattice2d());
  const ScanOptions o{10.0, 0.05, 4'000'000, 1e-12};
  for (auto _ : s) benchmark::DoNotOptimize(Parallel ? zero_scan_numeric(psi, o) : serial::zero_scan_numeric(psi, o));
}

}  // namespace

BENCHMARK(symbol_grid<true>)->Arg(64)->Arg(256);
BENCHMARK(symbol_grid<false>)->Arg(64)->Arg(256);
BENCHMARK(generator_fourier<true>)->Arg(64)->Arg(256);
BENCHMARK(generator_fourier<false>)->Arg(64)->Arg(256);
BENCHMARK(transform<true>)->Arg(32)->Arg(64);
BENCHMARK(transform<false>)->Arg(32)->Arg(64);
BENCHMARK(zero_scan<true>)->Unit(benchmark::kMillisecond);
BENCHMARK(zero_scan<false>)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
