#include <benchmark/benchmark.h>

#include "tomokit/catalog.hpp"
#include "tomokit/conservation.hpp"
#include "tomokit/evolution.hpp"
#include "tomokit/transforms.hpp"
#include "tomokit/validation.hpp"

using namespace tomokit;

namespace {

State resolve(const char* name) { return State::resolve(StateSpec::parse(name)); }

void BM_Radon(benchmark::State& st) {
  const GridSpec g = default_grid();
  const WignerGrid w = resolve("fock2").wigner_grid(g);
  for (auto _ : st) benchmark::DoNotOptimize(radon_optical(w, g));
}
BENCHMARK(BM_Radon)->Unit(benchmark::kMillisecond);

void BM_InverseRadon(benchmark::State& st) {
  const GridSpec g = default_grid();
  const OpticalTomogramGrid w = resolve("fock2").optical_grid(g);
  for (auto _ : st) benchmark::DoNotOptimize(inverse_radon_optical(w, g));
}
BENCHMARK(BM_InverseRadon)->Unit(benchmark::kMillisecond);

void BM_KlmPositivity(benchmark::State& st) {
  const SymplecticView m = resolve("coherent").symplectic();
  PositivityOptions opt;
  opt.n_sets = 20;
  for (auto _ : st) benchmark::DoNotOptimize(check_positivity(m, PositivityMode::quantum, opt));
}
BENCHMARK(BM_KlmPositivity)->Unit(benchmark::kMillisecond);

void BM_ClassProjection(benchmark::State& st) {
  const OpticalTomogramGrid w = resolve("w1").optical_grid(default_grid());
  for (auto _ : st) benchmark::DoNotOptimize(hermite_class_projection(w, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_ClassProjection)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_MoyalStep(benchmark::State& st) {
  const GridSpec g = default_grid();
  const WignerGrid w = resolve("ground").wigner_grid(g);
  const PolynomialPotential v = PolynomialPotential::parse("c2=0.5,c3=0.1");
  const double dt = moyal_dt_limit(g, v);
  for (auto _ : st) benchmark::DoNotOptimize(evolve_moyal(w, v, dt, dt));
}
BENCHMARK(BM_MoyalStep)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
