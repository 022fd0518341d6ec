#pragma once

// Data-parallel inner loops shared by the verifier and the constructions.
// Each kernel has a serial reference in `serial` and an OpenMP version in
// `omp` with the same contract; both must produce identical output for the
// same input. `dispatch` picks one based on thread_count().

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vsdepth/setcore.hpp"

namespace vsdepth {

/// Interval of masks; the universe lives with whoever owns the list.
struct RawInterval {
  Mask bottom = 0;
  Mask top = 0;

  Mask free() const noexcept { return top & ~bottom; }
  int dimension() const noexcept { return popcount(top & ~bottom); }
  bool contains(Mask c) const noexcept {
    return (bottom & ~c) == 0 && (c & ~top) == 0;
  }
  auto operator<=>(const RawInterval&) const = default;
};

/// Overlap test: the two subcubes meet iff A1 ∪ A2 ⊆ B1 ∩ B2.
inline constexpr bool raw_overlap(const RawInterval& x, const RawInterval& y) noexcept {
  return ((x.bottom | y.bottom) & ~(x.top & y.top)) == 0;
}

/// Worker count from VSDEPTH_THREADS (positive integer), default 1.
int thread_count();

/// Calls fn(mask) for every s-subset of `pool`, in colex order.
template <class Fn>
void for_each_subset_of_size(Mask pool, int s, Fn&& fn) {
  const int m = popcount(pool);
  if (s < 0 || s > m) return;
  if (s == 0) {
    fn(Mask{0});
    return;
  }
  int pos[64];
  int i = 0;
  for (Mask r = pool; r != 0; r &= r - 1) pos[i++] = std::countr_zero(r);
  const std::uint64_t count = detail::binom_unchecked(m, s);
  Mask comb = full_mask(s);
  for (std::uint64_t c = 0; c < count; ++c) {
    Mask out = 0;
    for (Mask r = comb; r != 0; r &= r - 1) out |= Mask{1} << pos[std::countr_zero(r)];
    fn(out);
    if (c + 1 < count) comb = next_colex(comb);
  }
}

namespace kernels {

namespace serial {

/// counts[r] = number of (interval, member) pairs with |member| = r, r = 0..n.
std::vector<std::uint64_t> rank_counts(int n, std::span<const RawInterval> intervals);

/// Every member of every interval, interval by interval, submasks ascending.
std::vector<Mask> expand_members(std::span<const RawInterval> intervals);

/// Sorts `members` and returns the smallest value occurring twice.
std::optional<Mask> first_duplicate(std::vector<Mask>& members);

/// [A, f_c(A)] for every d-set A of [n], colex order of A.
std::vector<RawInterval> veronese(int n, int d, int c);

/// flags[colex_rank(S)] = 1 for every t-set S covered by some interval.
std::vector<std::uint8_t> covered_flags(int n, int t, std::span<const RawInterval> intervals);

}  // namespace serial

namespace omp {

std::vector<std::uint64_t> rank_counts(int n, std::span<const RawInterval> intervals, int threads);
std::vector<Mask> expand_members(std::span<const RawInterval> intervals, int threads);
std::optional<Mask> first_duplicate(std::vector<Mask>& members, int threads);
std::vector<RawInterval> veronese(int n, int d, int c, int threads);
std::vector<std::uint8_t> covered_flags(int n, int t, std::span<const RawInterval> intervals,
                                        int threads);

}  // namespace omp

namespace dispatch {

std::vector<std::uint64_t> rank_counts(int n, std::span<const RawInterval> intervals);
std::vector<Mask> expand_members(std::span<const RawInterval> intervals);
std::optional<Mask> first_duplicate(std::vector<Mask>& members);
std::vector<RawInterval> veronese(int n, int d, int c);
std::vector<std::uint8_t> covered_flags(int n, int t, std::span<const RawInterval> intervals);

}  // namespace dispatch

}  // namespace kernels
}  // namespace vsdepth
