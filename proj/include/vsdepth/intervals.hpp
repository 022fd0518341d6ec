#pragma once

// Intervals [A,B] of the Boolean lattice, interval-partition certificates
// for the poset of I_{n,d}, their verifier, the line-oriented certificate
// file format, and rendering as a Stanley decomposition.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsdepth/kernels.hpp"
#include "vsdepth/setcore.hpp"

namespace vsdepth {

class Interval {
 public:
  /// Throws UniverseMismatch or NotAnInterval (bottom not inside top).
  Interval(const PointSet& bottom, const PointSet& top);

  const PointSet& bottom() const noexcept { return bottom_; }
  const PointSet& top() const noexcept { return top_; }
  int universe() const noexcept { return bottom_.universe(); }
  RawInterval raw() const noexcept { return {bottom_.bits(), top_.bits()}; }

  bool operator==(const Interval&) const = default;

 private:
  PointSet bottom_;
  PointSet top_;
};

bool covers(const Interval& iv, const PointSet& c);
bool disjoint(const Interval& x, const Interval& y);

/// An interval partition of P_{I_{n,d}}: the explicit intervals plus the
/// implicit singleton [C,C] for every C with |C| >= d they leave uncovered.
/// Intervals are kept sorted by (bottom, top) in colex order.
class Certificate {
 public:
  /// Structural checks only (universe, A ⊆ B, 0 <= d <= k <= n); size
  /// constraints are the verifier's business so bad files can be diagnosed.
  Certificate(int n, int d, int k, std::vector<RawInterval> intervals);

  int universe() const noexcept { return n_; }
  int min_generator_size() const noexcept { return d_; }
  int claimed_depth() const noexcept { return k_; }
  bool trivial_completion() const noexcept { return true; }

  std::size_t size() const noexcept { return intervals_.size(); }
  std::span<const RawInterval> raw_intervals() const noexcept { return intervals_; }
  Interval interval(std::size_t i) const;
  std::vector<Interval> intervals() const;

  bool operator==(const Certificate&) const = default;

 private:
  int n_;
  int d_;
  int k_;
  std::vector<RawInterval> intervals_;
};

/// Checked constructor: throws BottomTooSmall / TopTooSmall.
Certificate new_certificate(int n, int d, int k, const std::vector<Interval>& intervals);

/// The (n, 0) certificate: the single interval [∅, [n]].
Certificate full_ring_certificate(int n);

enum class ViolationKind { Overlap, GapAtRank, TopTooSmall, BottomTooSmall };

const char* violation_tag(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  /// The offending set: common member, uncovered set, or offending bottom/top.
  Mask set = 0;
  /// Rank for GapAtRank.
  int rank = 0;
  /// Interval indices (canonical order); `second` only for Overlap.
  std::size_t first = 0;
  std::size_t second = 0;

  /// e.g. "gap-at-rank 1 {3}" or "overlap {1,2} intervals 0 and 3".
  std::string describe() const;
};

struct VerifyReport {
  bool valid = false;
  /// Set whenever the explicit intervals are disjoint and cover ranks
  /// d..k-1 exactly once; then min(k, smallest explicit top).
  std::optional<int> achieved_depth;
  std::optional<Violation> first_violation;
  /// rank_coverage[r]: members of rank r across explicit intervals, r = 0..n.
  std::vector<std::uint64_t> rank_coverage;
};

VerifyReport verify_certificate(const Certificate& cert);

/// Summand per explicit interval, e.g. "x1·K[x1,x4,x5]", then one closing
/// line counting the trivial summands per rank. Throws RefusesUnverified.
std::string render_stanley(const Certificate& cert);

/// Canonical file text; parse_certificate(to_text(c)) == c.
std::string to_text(const Certificate& cert);
Certificate parse_certificate(std::string_view text);
void write_certificate_file(const std::string& path, const Certificate& cert);
Certificate read_certificate_file(const std::string& path);

}  // namespace vsdepth
