// Serial reference kernels against their OpenMP versions, plus the two
// matching algorithms. Threads come from the second benchmark argument.

#include <benchmark/benchmark.h>

#include <vector>

#include "vsdepth/construct.hpp"
#include "vsdepth/kernels.hpp"
#include "vsdepth/matching.hpp"
#include "vsdepth/solver.hpp"

using namespace vsdepth;

namespace {

// The c = 2 family at n = 2d+1: C(n,d) intervals of dimension d.
const std::vector<RawInterval>& intervals_for(int d) {
  static std::vector<std::vector<RawInterval>> cache(16);
  auto& v = cache[d];
  if (v.empty()) v = kernels::serial::veronese(2 * d + 1, d, 2);
  return v;
}

void BM_veronese_serial(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::veronese(3 * d + 2, d, 3));
}

void BM_veronese_omp(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  const int threads = static_cast<int>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::veronese(3 * d + 2, d, 3, threads));
}

void BM_rank_counts_serial(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  const auto& ivs = intervals_for(d);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::rank_counts(2 * d + 1, ivs));
}

void BM_rank_counts_omp(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  const auto& ivs = intervals_for(d);
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::omp::rank_counts(2 * d + 1, ivs, static_cast<int>(st.range(1))));
}

void BM_expand_and_sort_serial(benchmark::State& st) {
  const auto& ivs = intervals_for(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto members = kernels::serial::expand_members(ivs);
    benchmark::DoNotOptimize(kernels::serial::first_duplicate(members));
  }
}

void BM_expand_and_sort_omp(benchmark::State& st) {
  const auto& ivs = intervals_for(static_cast<int>(st.range(0)));
  const int threads = static_cast<int>(st.range(1));
  for (auto _ : st) {
    auto members = kernels::omp::expand_members(ivs, threads);
    benchmark::DoNotOptimize(kernels::omp::first_duplicate(members, threads));
  }
}

void BM_covered_flags_serial(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  const auto& ivs = intervals_for(d);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::covered_flags(2 * d + 1, d + 1, ivs));
}

void BM_covered_flags_omp(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  const auto& ivs = intervals_for(d);
  const int threads = static_cast<int>(st.range(1));
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::omp::covered_flags(2 * d + 1, d + 1, ivs, threads));
}

// Every t-set against every (t+1)-set of [n].
BipartiteGraph layer_graph(int n, int t) {
  std::vector<Mask> left;
  std::vector<Mask> right;
  for_each_subset_of_size(full_mask(n), t, [&](Mask m) { left.push_back(m); });
  for_each_subset_of_size(full_mask(n), t + 1, [&](Mask m) { right.push_back(m); });
  return BipartiteGraph::containment(n, std::move(left), std::move(right));
}

void BM_max_matching(benchmark::State& st) {
  const auto g = layer_graph(static_cast<int>(st.range(0)), static_cast<int>(st.range(0)) / 2 - 1);
  for (auto _ : st) benchmark::DoNotOptimize(max_matching(g).size());
}

void BM_simple_augmenting_matching(benchmark::State& st) {
  const auto g = layer_graph(static_cast<int>(st.range(0)), static_cast<int>(st.range(0)) / 2 - 1);
  for (auto _ : st) benchmark::DoNotOptimize(simple_augmenting_matching(g).size());
}

void BM_exact_sdepth(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(exact_sdepth(n, 2).value_or_bound);
}

void thread_args(benchmark::internal::Benchmark* b, std::initializer_list<int> sizes) {
  for (int s : sizes)
    for (int t : {1, 2, 4}) b->Args({s, t});
}

}  // namespace

BENCHMARK(BM_veronese_serial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_veronese_omp)->Apply([](auto* b) { thread_args(b, {4, 6}); })->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rank_counts_serial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rank_counts_omp)->Apply([](auto* b) { thread_args(b, {8, 10}); })->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_expand_and_sort_serial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_expand_and_sort_omp)->Apply([](auto* b) { thread_args(b, {8, 10}); })->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_covered_flags_serial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_covered_flags_omp)->Apply([](auto* b) { thread_args(b, {8, 10}); })->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_max_matching)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_simple_augmenting_matching)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_exact_sdepth)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
