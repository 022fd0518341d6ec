#include <omp.h>

#include <atomic>
#include <parallel/algorithm>

#include "vsdepth/blocks.hpp"
#include "vsdepth/kernels.hpp"

namespace vsdepth::kernels::omp {

std::vector<std::uint64_t> rank_counts(int n, std::span<const RawInterval> intervals,
                                       int threads) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  std::uint64_t* out = counts.data();
  const std::int64_t size = static_cast<std::int64_t>(intervals.size());
#pragma omp parallel for num_threads(threads) reduction(+ : out[:n + 1]) schedule(static)
  for (std::int64_t i = 0; i < size; ++i) {
    const RawInterval& iv = intervals[i];
    const int lo = popcount(iv.bottom);
    const int dim = iv.dimension();
    for (int j = 0; j <= dim; ++j) out[lo + j] += detail::binom_unchecked(dim, j);
  }
  return counts;
}

std::vector<Mask> expand_members(std::span<const RawInterval> intervals, int threads) {
  const std::size_t size = intervals.size();
  std::vector<std::size_t> offset(size + 1, 0);
  for (std::size_t i = 0; i < size; ++i) {
    offset[i + 1] = offset[i] + (std::size_t{1} << intervals[i].dimension());
  }
  std::vector<Mask> out(offset[size]);
#pragma omp parallel for num_threads(threads) schedule(dynamic, 4096)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(size); ++i) {
    const RawInterval& iv = intervals[i];
    const Mask f = iv.free();
    std::size_t at = offset[i];
    Mask s = 0;
    do {
      out[at++] = iv.bottom | s;
      s = (s - f) & f;
    } while (s != 0);
  }
  return out;
}

std::optional<Mask> first_duplicate(std::vector<Mask>& members, int threads) {
  __gnu_parallel::sort(members.begin(), members.end(),
                       __gnu_parallel::default_parallel_tag(threads));
  const std::int64_t size = static_cast<std::int64_t>(members.size());
  std::int64_t first = size;
#pragma omp parallel for num_threads(threads) reduction(min : first) schedule(static)
  for (std::int64_t i = 1; i < size; ++i) {
    if (members[i] == members[i - 1] && i - 1 < first) first = i - 1;
  }
  if (first == size) return std::nullopt;
  return members[first];
}

std::vector<RawInterval> veronese(int n, int d, int c, int threads) {
  const std::uint64_t count = binomial(n, d);
  std::vector<RawInterval> out(count);
#pragma omp parallel num_threads(threads)
  {
    // Each thread walks a contiguous colex range, unranking once.
    const int nt = omp_get_num_threads();
    const int id = omp_get_thread_num();
    const std::uint64_t lo = count * id / nt;
    const std::uint64_t hi = count * (id + 1) / nt;
    if (lo < hi) {
      Mask a = colex_unrank(lo, d);
      for (std::uint64_t i = lo; i < hi; ++i) {
        out[i] = RawInterval{a, f_delta_mask(n, a, c, 1)};
        if (i + 1 < hi) a = next_colex(a);
      }
    }
  }
  return out;
}

std::vector<std::uint8_t> covered_flags(int n, int t, std::span<const RawInterval> intervals,
                                        int threads) {
  std::vector<std::uint8_t> flags(binomial(n, t), 0);
  const std::int64_t size = static_cast<std::int64_t>(intervals.size());
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1024)
  for (std::int64_t i = 0; i < size; ++i) {
    const RawInterval& iv = intervals[i];
    const int lo = popcount(iv.bottom);
    if (lo > t || popcount(iv.top) < t) continue;
    for_each_subset_of_size(iv.free(), t - lo, [&](Mask s) {
      std::atomic_ref<std::uint8_t>(flags[colex_rank(iv.bottom | s)])
          .store(1, std::memory_order_relaxed);
    });
  }
  return flags;
}

}  // namespace vsdepth::kernels::omp
