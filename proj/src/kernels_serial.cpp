#include <algorithm>
#include <cstdlib>
#include <string>

#include "vsdepth/blocks.hpp"
#include "vsdepth/kernels.hpp"

namespace vsdepth {

int thread_count() {
  const char* env = std::getenv("VSDEPTH_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) return 1;
  return static_cast<int>(std::min<long>(v, 1024));
}

namespace kernels::serial {

std::vector<std::uint64_t> rank_counts(int n, std::span<const RawInterval> intervals) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (const RawInterval& iv : intervals) {
    const int lo = popcount(iv.bottom);
    const int dim = iv.dimension();
    for (int j = 0; j <= dim; ++j) counts[lo + j] += detail::binom_unchecked(dim, j);
  }
  return counts;
}

std::vector<Mask> expand_members(std::span<const RawInterval> intervals) {
  std::size_t total = 0;
  for (const RawInterval& iv : intervals) total += std::size_t{1} << iv.dimension();
  std::vector<Mask> out;
  out.reserve(total);
  for (const RawInterval& iv : intervals) {
    const Mask f = iv.free();
    Mask s = 0;
    do {
      out.push_back(iv.bottom | s);
      s = (s - f) & f;
    } while (s != 0);
  }
  return out;
}

std::optional<Mask> first_duplicate(std::vector<Mask>& members) {
  std::sort(members.begin(), members.end());
  const auto it = std::adjacent_find(members.begin(), members.end());
  if (it == members.end()) return std::nullopt;
  return *it;
}

std::vector<RawInterval> veronese(int n, int d, int c) {
  const std::uint64_t count = binomial(n, d);
  std::vector<RawInterval> out(count);
  Mask a = full_mask(d);
  for (std::uint64_t i = 0; i < count; ++i) {
    out[i] = RawInterval{a, f_delta_mask(n, a, c, 1)};
    if (i + 1 < count) a = next_colex(a);
  }
  return out;
}

std::vector<std::uint8_t> covered_flags(int n, int t, std::span<const RawInterval> intervals) {
  std::vector<std::uint8_t> flags(binomial(n, t), 0);
  for (const RawInterval& iv : intervals) {
    const int lo = popcount(iv.bottom);
    if (lo > t || popcount(iv.top) < t) continue;
    for_each_subset_of_size(iv.free(), t - lo,
                            [&](Mask s) { flags[colex_rank(iv.bottom | s)] = 1; });
  }
  return flags;
}

}  // namespace kernels::serial

namespace kernels::dispatch {

std::vector<std::uint64_t> rank_counts(int n, std::span<const RawInterval> intervals) {
  const int t = thread_count();
  return t > 1 ? omp::rank_counts(n, intervals, t) : serial::rank_counts(n, intervals);
}

std::vector<Mask> expand_members(std::span<const RawInterval> intervals) {
  const int t = thread_count();
  return t > 1 ? omp::expand_members(intervals, t) : serial::expand_members(intervals);
}

std::optional<Mask> first_duplicate(std::vector<Mask>& members) {
  const int t = thread_count();
  return t > 1 ? omp::first_duplicate(members, t) : serial::first_duplicate(members);
}

std::vector<RawInterval> veronese(int n, int d, int c) {
  const int t = thread_count();
  return t > 1 ? omp::veronese(n, d, c, t) : serial::veronese(n, d, c);
}

std::vector<std::uint8_t> covered_flags(int n, int t, std::span<const RawInterval> intervals) {
  const int threads = thread_count();
  return threads > 1 ? omp::covered_flags(n, t, intervals, threads)
                     : serial::covered_flags(n, t, intervals);
}

}  // namespace kernels::dispatch
}  // namespace vsdepth
