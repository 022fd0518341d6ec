#pragma once

// Bipartite maximum matching (Hopcroft-Karp with a fixed scan order) and
// Hall-condition diagnostics. Graphs are built by the caller; the module
// knows nothing about ideals.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vsdepth/setcore.hpp"

namespace vsdepth {

class BipartiteGraph {
 public:
  using Vertex = std::uint32_t;

  BipartiteGraph() = default;
  /// Throws BadParameters on out-of-range or repeated neighbours.
  BipartiteGraph(int n, std::vector<Mask> left, std::vector<Mask> right,
                 const std::vector<std::vector<Vertex>>& adjacency);

  /// Edges S -> T for S ⊂ T, |T| = |S| + 1. Left and right are lists of
  /// equal-size sets; right must be in colex order. Adjacency of each left
  /// vertex follows the colex order of the right side.
  static BipartiteGraph containment(int n, std::vector<Mask> left, std::vector<Mask> right);

  int universe() const noexcept { return n_; }
  std::size_t left_size() const noexcept { return left_.size(); }
  std::size_t right_size() const noexcept { return right_.size(); }
  std::size_t edge_count() const noexcept { return targets_.size(); }
  PointSet left(std::size_t i) const { return PointSet(n_, left_.at(i)); }
  PointSet right(std::size_t j) const { return PointSet(n_, right_.at(j)); }
  Mask left_mask(std::size_t i) const noexcept { return left_[i]; }
  Mask right_mask(std::size_t j) const noexcept { return right_[j]; }

  std::span<const Vertex> neighbors(std::size_t i) const noexcept {
    return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
  }
  std::size_t degree(std::size_t i) const noexcept { return offsets_[i + 1] - offsets_[i]; }
  std::vector<std::size_t> right_degrees() const;

 private:
  int n_ = 1;
  std::vector<Mask> left_;
  std::vector<Mask> right_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
};

class Matching {
 public:
  static constexpr std::uint32_t kUnmatched = UINT32_MAX;

  Matching() = default;
  Matching(std::size_t left, std::size_t right)
      : mate_left_(left, kUnmatched), mate_right_(right, kUnmatched) {}

  std::optional<std::size_t> partner(std::size_t left) const {
    const std::uint32_t v = mate_left_.at(left);
    if (v == kUnmatched) return std::nullopt;
    return v;
  }
  std::size_t size() const noexcept { return size_; }
  bool is_complete() const noexcept { return size_ == mate_left_.size(); }
  std::span<const std::uint32_t> mates() const noexcept { return mate_left_; }

 private:
  friend Matching max_matching(const BipartiteGraph&);
  friend Matching simple_augmenting_matching(const BipartiteGraph&);

  std::vector<std::uint32_t> mate_left_;
  std::vector<std::uint32_t> mate_right_;
  std::size_t size_ = 0;
};

/// Maximum-cardinality matching; same graph, same answer.
Matching max_matching(const BipartiteGraph& g);

/// One-path-at-a-time augmenting search (Kuhn). Slower reference kept for
/// cross-checking max_matching in tests and benchmarks.
Matching simple_augmenting_matching(const BipartiteGraph& g);

/// A left set S with |N(S)| < |S|, or nullopt when V_1 can be saturated.
std::optional<std::vector<std::size_t>> hall_witness(const BipartiteGraph& g);

/// Complete matching from the left side when every left degree is t and no
/// right degree exceeds t. Throws DegreePreconditionViolated when that does
/// not hold, and MatchingFailed if the matching still comes out incomplete.
Matching complete_matching_regular(const BipartiteGraph& g, std::size_t t);

}  // namespace vsdepth
