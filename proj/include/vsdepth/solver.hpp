#pragma once

// Exact decision procedure for sdepth(I_{n,d}) >= k and the scan that
// compares exact values with d + ⌊(n-d)/(d+1)⌋.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vsdepth/intervals.hpp"

namespace vsdepth {

struct SearchBudget {
  std::uint64_t max_nodes = 100'000'000;
  std::chrono::milliseconds wall_time{60'000};
};

enum class SolveStatus { Proved, Disproved, BudgetExhausted };

const char* status_name(SolveStatus s) noexcept;

struct SolveResult {
  SolveStatus status = SolveStatus::BudgetExhausted;
  /// certify_at_least: the k asked about. exact_sdepth: the exact value when
  /// proved, otherwise the best lower bound that was proved.
  int value_or_bound = 0;
  /// Present iff some k was proved; verifies at value_or_bound.
  std::optional<Certificate> certificate;
  std::uint64_t nodes_explored = 0;
};

/// Depth-first search for pairwise-disjoint intervals [C,B], |B| = k, that
/// cover every set of size d..k-1 exactly once. Bottoms are forced: the
/// next interval starts at the colex-least uncovered set of lowest rank.
SolveResult certify_at_least(int n, int d, int k, const SearchBudget& budget = {});

/// Runs certify_at_least downward from the counting upper bound.
SolveResult exact_sdepth(int n, int d, const SearchBudget& budget = {});

struct ScanRow {
  int n = 0;
  int d = 0;
  int conjectured = 0;
  SolveResult result;
  /// Proved value differs from the conjectured formula.
  bool discrepancy = false;
};

/// Every 1 <= d <= n <= max_n in (n, d) order. Cases are distributed over
/// `threads` workers; rows come back in the same order regardless.
std::vector<ScanRow> conjecture_scan(int max_n, const SearchBudget& budget, int threads = 1);

/// Aligned table with columns n, d, conjectured, proved, status.
std::string format_scan_table(const std::vector<ScanRow>& rows);

}  // namespace vsdepth
