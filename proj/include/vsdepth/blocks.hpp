#pragma once

// Block structures of a set A on the circle of [n] with respect to a
// rational density p/q >= 1, and the map f(A) = A ∪ (union of gaps).

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "vsdepth/setcore.hpp"

namespace vsdepth {

/// Exact rational p/q >= 1 in lowest terms.
class Density {
 public:
  /// Throws DensityOutOfRange when q < 1 or p < q.
  Density(long p, long q = 1);

  long num() const noexcept { return p_; }
  long den() const noexcept { return q_; }
  bool is_integer() const noexcept { return q_ == 1; }
  std::string to_string() const;

  bool operator==(const Density&) const = default;

 private:
  long p_;
  long q_;
};

/// Accepts `p/q` or the integer shorthand `c`.
Density parse_density(std::string_view text);

struct BlockStructure {
  int universe = 0;
  PointSet set;
  Density density{1};
  /// Clockwise from the block with the smallest starting point.
  std::vector<CircBlock> blocks;
  /// gaps[i] follows blocks[i]; may be empty.
  std::vector<PointSet> gaps;

  PointSet block_union() const;
  PointSet gap_union() const;
};

enum class BlockViolation {
  None,
  Malformed,   // blocks/gaps do not tile the circle clockwise
  StartNotInA, // clause (i)
  GapMeetsA,   // clause (ii)
  Length,      // clause (iii)
  Prefix,      // clause (iv)
};

const char* violation_name(BlockViolation v) noexcept;

struct BlockCheck {
  BlockViolation violation = BlockViolation::None;
  /// Index of the offending block or gap.
  std::size_t index = 0;

  bool ok() const noexcept { return violation == BlockViolation::None; }
  explicit operator bool() const noexcept { return ok(); }
};

/// The unique block structure of `a`. Requires a nonempty and
/// p*|A| <= q*(n-1); throws EmptySet / DensityOutOfRange otherwise.
BlockStructure block_structure(int n, const PointSet& a, const Density& delta);

/// Checks the tiling and clauses (i)-(iv) directly from their definitions.
BlockCheck verify_block_structure(const BlockStructure& bs);

PointSet f_delta(int n, const PointSet& a, const Density& delta);

/// Mask-level f for hot loops; same preconditions, no universe checks.
Mask f_delta_mask(int n, Mask a, long p, long q);

}  // namespace vsdepth
