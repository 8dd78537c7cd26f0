#include <benchmark/benchmark.h>

#include "eqsing/catalog.hpp"

using namespace eqsing;

namespace {

struct Reflections {
  IntLattice form;
  std::vector<MonodromyElement> gens;
};

Reflections reflections(const char* sym, std::optional<int> k) {
  const Fixture fx = fixture(sym, k);
  const Evidence ev = analyze_action(action_from_file(fx.file), character_from_file(fx.file), {1, false});
  Reflections r{ev.isotypic.restricted(), {}};
  for (const auto& g : ev.generators) r.gens.push_back(g.element);
  return r;
}

void group_args(benchmark::internal::Benchmark* b) { b->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond); }

void BM_group_parallel(benchmark::State& state, const char* sym, std::optional<int> k) {
  const auto r = reflections(sym, k);
  const GroupOptions opt{1'000'000, state.range(0) != 0};
  for (auto _ : state) benchmark::DoNotOptimize(generate_group(r.form, r.gens, opt).order());
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}

void BM_group_reference(benchmark::State& state, const char* sym, std::optional<int> k) {
  const auto r = reflections(sym, k);
  for (auto _ : state) benchmark::DoNotOptimize(generate_group_reference(r.form, r.gens).order());
}

PolyGerm brieskorn() {
  PolyGerm f(2, 2, GroupKind::Corner);
  f.add_term(1, {8, 0, 0, 0});
  f.add_term(1, {0, 6, 0, 0});
  f.add_term(1, {0, 0, 5, 0});
  f.add_term(1, {0, 0, 0, 4});
  f.add_term(1, {2, 2, 1, 0});
  return f;
}

void BM_milnor(benchmark::State& state) {
  const PolyGerm f = brieskorn();
  const MilnorOptions opt{24, state.range(0) != 0};
  for (auto _ : state) benchmark::DoNotOptimize(milnor_number(f, opt).mu);
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}

void BM_milnor_reference(benchmark::State& state) {
  const PolyGerm f = brieskorn();
  for (auto _ : state) benchmark::DoNotOptimize(milnor_number_reference(f).mu);
}

}  // namespace

BENCHMARK_CAPTURE(BM_group_parallel, E6, "E6", std::nullopt)->Apply(group_args);
BENCHMARK_CAPTURE(BM_group_parallel, A7, "A", 7)->Apply(group_args);
BENCHMARK_CAPTURE(BM_group_reference, E6, "E6", std::nullopt)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_milnor)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_milnor_reference)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
