#include "manicoh/cohomotopy.hpp"
#include "manicoh/splitting.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace manicoh;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long long> dist(-20, 20);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
  return m;
}

void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Matrix> inputs;
  for (int i = 0; i < 64; ++i) inputs.push_back(random_matrix(rng, n));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(inputs[i++ % inputs.size()]));
}
BENCHMARK(BM_SmithNormalForm)->Arg(3)->Arg(5)->Arg(8)->Arg(12);

void BM_MiddleGroups(benchmark::State& state) {
  const auto order = static_cast<long long>(state.range(0));
  const FgAbGroup a = FgAbGroup::cyclic(2).power(2) + FgAbGroup::cyclic(3);
  const FgAbGroup c = FgAbGroup::cyclic(order) + FgAbGroup::cyclic(2);
  for (auto _ : state) benchmark::DoNotOptimize(middle_groups({a, c}));
}
BENCHMARK(BM_MiddleGroups)->Arg(4)->Arg(8)->Arg(24);

void BM_SubgroupTypes(benchmark::State& state) {
  const FgAbGroup g = FgAbGroup::cyclic(state.range(0)).power(2) + FgAbGroup::cyclic(3);
  for (auto _ : state) benchmark::DoNotOptimize(subgroup_types(g));
}
BENCHMARK(BM_SubgroupTypes)->Arg(4)->Arg(8)->Arg(16);

ManifoldDescriptor sample(int n, unsigned rank) {
  const auto t = TorsionGroup::of({{3, 1}, {3, 2}, {5, 1}});
  auto d = make_descriptor(n, rank, n == 2 ? rank - rank % 2 : rank, t, true, rank / 2);
  std::mt19937_64 rng(static_cast<unsigned>(n * 100 + rank));
  for (auto& b : d.attach.blocks) {
    if (n == 2 && b.name == "y") continue;
    std::uniform_int_distribution<long long> dist(0, b.modulus.convert_to<long long>() - 1);
    for (auto& e : b.entries) e = dist(rng);
  }
  return d;
}

void BM_Normalize(benchmark::State& state) {
  const auto d = sample(static_cast<int>(state.range(0)), static_cast<unsigned>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(normalize(d.attach));
}
BENCHMARK(BM_Normalize)->ArgsProduct({{2, 3, 4}, {2, 8, 32}});

void BM_OrbitOracle(benchmark::State& state) {
  const auto d = sample(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(orbit_oracle(d.attach));
}
BENCHMARK(BM_OrbitOracle)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ComputeAll(benchmark::State& state) {
  const auto d = sample(static_cast<int>(state.range(0)), static_cast<unsigned>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_all(d));
}
BENCHMARK(BM_ComputeAll)->ArgsProduct({{2, 3, 4}, {1, 4}})->Unit(benchmark::kMicrosecond);

void BM_SuspensionSplitting(benchmark::State& state) {
  const auto d = sample(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(suspension_splitting(d));
}
BENCHMARK(BM_SuspensionSplitting)->Arg(2)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
