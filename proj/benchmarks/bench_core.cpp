#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "ilab/catalog.hpp"
#include "ilab/group_spec.hpp"
#include "ilab/lie.hpp"
#include "ilab/units.hpp"

namespace {

using namespace ilab;

ContextPtr<PrimeField> context(const std::string& name) {
  const auto& e = catalog_entry(name);
  auto g = build_group_ptr(GroupSpec::parse(expand_spec(e.spec)), {.order_cap = 512});
  auto sigma = make_orientation(g, parse_kernel(*g, e.kernel));
  return AlgebraContext<PrimeField>::create(PrimeField(e.characteristic), std::move(sigma));
}

Vector<PrimeField> random_vector(const AlgebraContext<PrimeField>& ctx, std::mt19937_64& rng) {
  auto v = ctx.zero();
  for (auto& x : v) x = ctx.field().from_int(static_cast<long long>(rng() % ctx.field().characteristic()));
  return v;
}

void BM_Multiply(benchmark::State& state, const char* name) {
  auto ctx = context(name);
  std::mt19937_64 rng(1);
  auto a = random_vector(*ctx, rng);
  auto b = random_vector(*ctx, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ctx->multiply(a, b));
}
BENCHMARK_CAPTURE(BM_Multiply, q8ext_c3, "q8ext-c3");
BENCHMARK_CAPTURE(BM_Multiply, q8ext_c9, "q8ext-c9");

void BM_Invert(benchmark::State& state, const char* name) {
  auto ctx = context(name);
  std::mt19937_64 rng(2);
  auto a = random_vector(*ctx, rng);
  for (auto _ : state) benchmark::DoNotOptimize(invert(*ctx, a));
}
BENCHMARK_CAPTURE(BM_Invert, q8ext_c3, "q8ext-c3");
BENCHMARK_CAPTURE(BM_Invert, q8ext_c9, "q8ext-c9");

void BM_LowerLieSeries(benchmark::State& state, const char* name) {
  auto ctx = context(name);
  const auto gens = symmetric_generators(*ctx);
  for (auto _ : state)
    benchmark::DoNotOptimize(lower_lie_series(*ctx, std::span<const Vector<PrimeField>>(gens.plus_part), 64));
}
BENCHMARK_CAPTURE(BM_LowerLieSeries, q8ext_c3, "q8ext-c3")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_LowerLieSeries, q8ext_c9, "q8ext-c9")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_LowerLieSeries, wr3_c2, "wr3-c2")->Unit(benchmark::kMillisecond);

void BM_StrongChain(benchmark::State& state, const char* name, bool shortcut) {
  auto ctx = context(name);
  const auto gens = symmetric_generators(*ctx);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        strong_lie_series(*ctx, std::span<const Vector<PrimeField>>(gens.plus_part), 64, shortcut));
}
BENCHMARK_CAPTURE(BM_StrongChain, q8ext_c9_shortcut, "q8ext-c9", true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_StrongChain, q8ext_c9_literal, "q8ext-c9", false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_StrongChain, q8ext_c3c3_shortcut, "q8ext-c3c3", true)->Unit(benchmark::kMillisecond);

void BM_AugmentationPowers(benchmark::State& state, const char* name) {
  auto ctx = context(name);
  std::vector<Elem> all(ctx->dim());
  std::iota(all.begin(), all.end(), Elem{0});
  for (auto _ : state) benchmark::DoNotOptimize(augmentation_powers(*ctx, all, ctx->dim() + 1));
}
BENCHMARK_CAPTURE(BM_AugmentationPowers, c9, "c9");
BENCHMARK_CAPTURE(BM_AugmentationPowers, heis3, "heis3")->Unit(benchmark::kMillisecond);

void BM_SymmetricUnitEnumeration(benchmark::State& state) {
  auto ctx = context("q8");
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_symmetric_units(*ctx));
}
BENCHMARK(BM_SymmetricUnitEnumeration)->Unit(benchmark::kMillisecond);

void BM_WitnessSearch(benchmark::State& state, const char* name) {
  auto ctx = context(name);
  const auto dec = decompose_q8_structure(ctx->orientation(), ctx->field().characteristic());
  const auto gens = symmetric_generators(*ctx);
  const auto seeded = seeded_strong_series(*ctx, std::span<const Vector<PrimeField>>(gens.plus_part), 64);
  const auto strong = strong_lie_series(*ctx, std::span<const Vector<PrimeField>>(gens.plus_part), 64);
  for (auto _ : state)
    benchmark::DoNotOptimize(witness_class_bounds(*ctx, *dec.value, strong.report.index, seeded.report.index));
}
BENCHMARK_CAPTURE(BM_WitnessSearch, q8ext_c3, "q8ext-c3")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_WitnessSearch, q8ext_c9, "q8ext-c9")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
