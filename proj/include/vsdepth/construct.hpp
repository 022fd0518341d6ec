#pragma once

// Constructive interval partitions for I_{n,d}: the [A, f_c(A)] family,
// the matching-based c = 2 and c = 4 partitions, the c = 3 partition, the
// one-point-larger composition, the general lower-bound builder, and the
// closed-form bounds.

#include <optional>
#include <vector>

#include "vsdepth/intervals.hpp"
#include "vsdepth/setcore.hpp"

namespace vsdepth {

struct Bounds {
  int n = 0;
  int d = 0;
  int lower_certified = 0;
  int upper = 0;
  std::optional<int> known_exact;
  int conjectured = 0;
};

/// d + ⌊(n-d)/(d+1)⌋, which equals d + ⌊C(n,d+1)/C(n,d)⌋.
int upper_bound(int n, int d);
/// d + min(⌊(n+1)/(d+1)⌋, 4) - 1, never below d.
int certified_lower_bound(int n, int d);

Bounds bounds(int n, int d);

/// [A, f_c(A)] for every d-set A, colex order. Requires n = cd + c - 1.
std::vector<Interval> veronese_intervals(int n, int d, int c);
std::vector<RawInterval> veronese_raw(int n, int d, int c);

/// t-sets covered by no [A, f_c(A)], colex order; d+1 <= t <= d+c-1.
std::vector<PointSet> uncovered_sets(int n, int d, int c, int t);

/// Whether some superset of D (D included) lies in some [A, f_c(A)].
bool has_covered_superset(const PointSet& D, int n, int d, int c);

/// n = 2d+1, depth d+1, via a complete matching of d-sets into (d+1)-sets.
Certificate construct_c2(int d);
/// n = 3d+2, depth d+2: exactly the [A, f_3(A)] intervals.
Certificate construct_c3(int d);
/// n = 4d+3, depth d+3: [A, f_4(A)] plus a complete matching of the
/// uncovered (d+2)-sets into the uncovered (d+3)-sets.
Certificate construct_c4(int d);

/// Certificate for (n+1, d) at depth a+1 from p1 on (n, d-1) with depth
/// >= a and p2 on (n, d) with depth >= a+1: p1's intervals lifted by the
/// new point n+1, together with p2's. Throws DepthMismatch,
/// UniverseMismatch, BadParameters, RefusesUnverified.
Certificate compose_plus1(const Certificate& p1, const Certificate& p2, int a);
/// Same with the largest admissible a.
Certificate compose_plus1(const Certificate& p1, const Certificate& p2);

/// Verified certificate with depth >= certified_lower_bound(n, d).
Certificate construct_general(int n, int d);

}  // namespace vsdepth
