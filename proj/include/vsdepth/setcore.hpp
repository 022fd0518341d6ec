#pragma once

// Subsets of [n] = {1,...,n} packed into one machine word, plus the
// circular-block and counting helpers every other module builds on.
//
// Point i lives in bit (i-1). With that packing the colexicographic order
// on subsets coincides with unsigned integer order on the masks, which is
// why plain `<` on bits() is used as the canonical order everywhere.

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vsdepth/error.hpp"

namespace vsdepth {

using Mask = std::uint64_t;

inline constexpr int kMaxUniverse = 63;

inline constexpr Mask point_bit(int p) noexcept { return Mask{1} << (p - 1); }
inline constexpr Mask full_mask(int n) noexcept {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}
inline constexpr int popcount(Mask m) noexcept { return std::popcount(m); }

class PointSet {
 public:
  PointSet() = default;
  /// Throws UniverseOutOfRange / ElementOutOfRange.
  PointSet(int universe, Mask bits);

  static PointSet empty(int universe) { return PointSet(universe, 0); }
  static PointSet full(int universe) { return PointSet(universe, full_mask(universe)); }

  int universe() const noexcept { return universe_; }
  Mask bits() const noexcept { return bits_; }
  int size() const noexcept { return popcount(bits_); }
  bool is_empty() const noexcept { return bits_ == 0; }
  bool contains(int p) const noexcept {
    return p >= 1 && p <= universe_ && (bits_ & point_bit(p)) != 0;
  }
  std::vector<int> members() const;

  bool subset_of(const PointSet& other) const;

  PointSet operator|(const PointSet& o) const;
  PointSet operator&(const PointSet& o) const;
  PointSet operator-(const PointSet& o) const;
  PointSet complement() const { return PointSet(universe_, full_mask(universe_) & ~bits_); }

  bool operator==(const PointSet&) const = default;

  /// Colex order; only meaningful within one universe.
  friend bool colex_less(const PointSet& a, const PointSet& b) {
    return a.bits_ < b.bits_;
  }

 private:
  void require_same_universe(const PointSet& o) const;

  int universe_ = 0;
  Mask bits_ = 0;
};

PointSet make_set(int n, const std::vector<int>& elems);

/// All t-subsets of [n] in colex order.
std::vector<PointSet> sets_of_size(int n, int t);

/// Next mask with the same popcount in colex order (Gosper). Undefined on 0.
inline constexpr Mask next_colex(Mask m) noexcept {
  const Mask low = m & (~m + 1);
  const Mask ripple = m + low;
  return ripple | (((ripple ^ m) >> 2) / low);
}

/// Clockwise run from i through j inclusive, wrapping past n.
struct CircBlock {
  int universe = 0;
  int start = 0;
  int end = 0;

  int length() const noexcept {
    return end >= start ? end - start + 1 : universe - start + 1 + end;
  }
  PointSet as_set() const;
  bool operator==(const CircBlock&) const = default;
};

PointSet circ_block(int n, int i, int j);

/// Successor/predecessor of point p on the circle of size n.
inline constexpr int cw_next(int n, int p) noexcept { return p == n ? 1 : p + 1; }
inline constexpr int cw_prev(int n, int p) noexcept { return p == 1 ? n : p - 1; }

/// Rotate every point clockwise by r positions.
PointSet rotate(const PointSet& s, int r);
Mask rotate_mask(int n, Mask m, int r) noexcept;

/// Exact C(n,k); 0 when k > n. Throws UniverseOutOfRange for n outside 0..63.
std::uint64_t binomial(int n, int k);

/// Multiplication that throws Overflow instead of wrapping.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);

/// Position of a t-set among all t-sets of the universe in colex order.
std::uint64_t colex_rank(Mask m) noexcept;
/// Inverse of colex_rank for sets of size t.
Mask colex_unrank(std::uint64_t rank, int t) noexcept;

std::string format_set(Mask m);
std::string format_set(const PointSet& s);
/// Parses the `{a,b,c}` literal; members must be strictly ascending.
PointSet parse_set(int n, std::string_view text);

namespace detail {
// Row-major C(i,j) for 0 <= i,j <= 64, saturating nothing: every entry fits.
const std::uint64_t* binomial_table() noexcept;
inline std::uint64_t binom_unchecked(int n, int k) noexcept {
  return (k < 0 || k > n) ? 0 : binomial_table()[n * 65 + k];
}
}  // namespace detail

}  // namespace vsdepth
