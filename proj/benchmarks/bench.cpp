#include <benchmark/benchmark.h>

#include <memory>

#include "realg/calculi.hpp"
#include "realg/separators.hpp"
#include "realg/tripos.hpp"

using namespace realg;

static void BM_EnumerateLattices(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_lattices_up_to(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_EnumerateLattices)->DenseRange(4, 6);

static void BM_CheckStructure(benchmark::State& st) {
  auto s = boolean_disjunctive(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(check_structure(s));
}
BENCHMARK(BM_CheckStructure)->DenseRange(1, 3);

static void BM_GenerateSeparator(benchmark::State& st) {
  auto s = std::make_shared<const Structure>(boolean_implicative(static_cast<int>(st.range(0))));
  for (auto _ : st) benchmark::DoNotOptimize(generate_separator(s, ElemSet(s->size(), {1})));
}
BENCHMARK(BM_GenerateSeparator)->DenseRange(1, 3);

static void BM_InterpretCommand(benchmark::State& st) {
  auto s = boolean_disjunctive(2);
  auto c = random_command(Polarity::Par, 7, static_cast<int>(st.range(0)), s.size());
  for (auto _ : st) benchmark::DoNotOptimize(interpret_command(s, Polarity::Par, c));
}
BENCHMARK(BM_InterpretCommand)->DenseRange(2, 4);

static void BM_TriposClauses(benchmark::State& st) {
  auto s = std::make_shared<const Structure>(boolean_implicative(1));
  FiniteTripos t(generate_separator(s, ElemSet(s->size())));
  for (auto _ : st) benchmark::DoNotOptimize(check_tripos(t, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_TriposClauses)->DenseRange(1, 2);

BENCHMARK_MAIN();
