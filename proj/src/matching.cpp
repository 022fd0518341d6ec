#include "vsdepth/matching.hpp"

#include <algorithm>
#include <string>

namespace vsdepth {

BipartiteGraph::BipartiteGraph(int n, std::vector<Mask> left, std::vector<Mask> right,
                               const std::vector<std::vector<Vertex>>& adjacency)
    : n_(n), left_(std::move(left)), right_(std::move(right)) {
  if (adjacency.size() != left_.size()) {
    throw Error(Errc::BadParameters, "adjacency list count differs from left side");
  }
  if (right_.size() >= Matching::kUnmatched || left_.size() >= Matching::kUnmatched) {
    throw Error(Errc::BadParameters, "graph side too large");
  }
  offsets_.reserve(left_.size() + 1);
  std::vector<std::uint8_t> seen(right_.size(), 0);
  for (std::size_t u = 0; u < adjacency.size(); ++u) {
    for (Vertex v : adjacency[u]) {
      if (v >= right_.size()) {
        throw Error(Errc::BadParameters, "neighbour index out of range at left " + std::to_string(u));
      }
      if (seen[v]) throw Error(Errc::BadParameters, "duplicate edge at left " + std::to_string(u));
      seen[v] = 1;
      targets_.push_back(v);
    }
    for (Vertex v : adjacency[u]) seen[v] = 0;
    offsets_.push_back(targets_.size());
  }
}

BipartiteGraph BipartiteGraph::containment(int n, std::vector<Mask> left, std::vector<Mask> right) {
  BipartiteGraph g;
  g.n_ = n;
  if (left.empty()) {
    g.left_ = std::move(left);
    g.right_ = std::move(right);
    return g;
  }
  const int t = popcount(left.front());
  for (Mask a : left) {
    if (popcount(a) != t) throw Error(Errc::BadParameters, "left sets differ in size");
  }
  for (Mask b : right) {
    if (popcount(b) != t + 1) throw Error(Errc::BadParameters, "right sets must have size t+1");
  }
  if (!std::is_sorted(right.begin(), right.end())) {
    throw Error(Errc::BadParameters, "right side must be in colex order");
  }

  // Right vertices are located by colex rank: directly when the right side
  // is every (t+1)-set, through a dense rank table otherwise.
  const std::uint64_t universe_count = binomial(n, t + 1);
  const bool complete_layer = right.size() == universe_count;
  std::vector<Vertex> index_of;
  if (!complete_layer) {
    index_of.assign(universe_count, Matching::kUnmatched);
    for (std::size_t j = 0; j < right.size(); ++j) index_of[colex_rank(right[j])] = static_cast<Vertex>(j);
  }

  g.offsets_.reserve(left.size() + 1);
  g.targets_.reserve(left.size() * static_cast<std::size_t>(n - t));
  const Mask full = full_mask(n);
  for (Mask a : left) {
    int pos[64];
    int count = 0;
    for (Mask r = a; r != 0; r &= r - 1) pos[count++] = std::countr_zero(r);
    std::uint64_t high[65];
    high[count] = 0;
    for (int i = count - 1; i >= 0; --i) high[i] = high[i + 1] + detail::binom_unchecked(pos[i], i + 2);
    std::uint64_t low = 0;
    int j = 0;
    for (int x = 0; x < n; ++x) {
      if (j < count && pos[j] == x) {
        low += detail::binom_unchecked(x, j + 1);
        ++j;
        continue;
      }
      if ((full >> x & 1) == 0) continue;
      const std::uint64_t rank = low + detail::binom_unchecked(x, j + 1) + high[j];
      const Vertex v = complete_layer ? static_cast<Vertex>(rank) : index_of[rank];
      if (v != Matching::kUnmatched) g.targets_.push_back(v);
    }
    g.offsets_.push_back(g.targets_.size());
  }
  g.left_ = std::move(left);
  g.right_ = std::move(right);
  return g;
}

std::vector<std::size_t> BipartiteGraph::right_degrees() const {
  std::vector<std::size_t> deg(right_.size(), 0);
  for (Vertex v : targets_) ++deg[v];
  return deg;
}

Matching max_matching(const BipartiteGraph& g) {
  const std::size_t nl = g.left_size();
  Matching m(nl, g.right_size());
  constexpr std::uint32_t kInf = UINT32_MAX;
  std::vector<std::uint32_t> dist(nl);
  std::vector<std::uint32_t> queue;
  queue.reserve(nl);
  std::vector<std::size_t> it(nl);
  std::vector<std::uint32_t> stack;

  for (;;) {
    // Layer the graph from all free left vertices.
    queue.clear();
    for (std::size_t u = 0; u < nl; ++u) {
      if (m.mate_left_[u] == Matching::kUnmatched) {
        dist[u] = 0;
        queue.push_back(static_cast<std::uint32_t>(u));
      } else {
        dist[u] = kInf;
      }
    }
    bool reachable_free = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t u = queue[head];
      for (auto v : g.neighbors(u)) {
        const std::uint32_t w = m.mate_right_[v];
        if (w == Matching::kUnmatched) {
          reachable_free = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    if (!reachable_free) break;

    // Vertex-layered augmenting paths, depth first, explicit stack.
    for (std::size_t u = 0; u < nl; ++u) it[u] = 0;
    for (std::size_t root = 0; root < nl; ++root) {
      if (m.mate_left_[root] != Matching::kUnmatched) continue;
      stack.assign(1, static_cast<std::uint32_t>(root));
      while (!stack.empty()) {
        const std::uint32_t u = stack.back();
        const auto adj = g.neighbors(u);
        if (it[u] == adj.size()) {
          dist[u] = kInf;
          stack.pop_back();
          if (!stack.empty()) ++it[stack.back()];
          continue;
        }
        const auto v = adj[it[u]];
        const std::uint32_t w = m.mate_right_[v];
        if (w == Matching::kUnmatched) {
          for (std::uint32_t x : stack) {
            const auto y = g.neighbors(x)[it[x]];
            m.mate_left_[x] = y;
            m.mate_right_[y] = x;
          }
          ++m.size_;
          dist[root] = kInf;
          break;
        }
        if (dist[w] != kInf && dist[w] == dist[u] + 1) {
          stack.push_back(w);
        } else {
          ++it[u];
        }
      }
    }
  }
  return m;
}

Matching simple_augmenting_matching(const BipartiteGraph& g) {
  const std::size_t nl = g.left_size();
  Matching m(nl, g.right_size());
  std::vector<std::uint32_t> visited(g.right_size(), 0);
  std::uint32_t stamp = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;
  for (std::size_t root = 0; root < nl; ++root) {
    ++stamp;
    stack.assign(1, {static_cast<std::uint32_t>(root), 0});
    while (!stack.empty()) {
      auto& [u, i] = stack.back();
      const auto adj = g.neighbors(u);
      if (i == adj.size()) {
        stack.pop_back();
        if (!stack.empty()) ++stack.back().second;
        continue;
      }
      const auto v = adj[i];
      if (visited[v] == stamp) {
        ++i;
        continue;
      }
      visited[v] = stamp;
      const std::uint32_t w = m.mate_right_[v];
      if (w == Matching::kUnmatched) {
        for (const auto& [x, k] : stack) {
          const auto y = g.neighbors(x)[k];
          m.mate_left_[x] = y;
          m.mate_right_[y] = x;
        }
        ++m.size_;
        break;
      }
      stack.emplace_back(w, 0);
    }
  }
  return m;
}

std::optional<std::vector<std::size_t>> hall_witness(const BipartiteGraph& g) {
  const Matching m = max_matching(g);
  if (m.is_complete()) return std::nullopt;
  // König: left vertices reachable from a free left vertex by alternating
  // paths. Their neighbourhood is all matched back into the same set, and
  // the free roots make it strictly smaller.
  std::vector<std::uint8_t> in_s(g.left_size(), 0);
  std::vector<std::uint8_t> seen_right(g.right_size(), 0);
  std::vector<std::size_t> queue;
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    if (!m.partner(u)) {
      in_s[u] = 1;
      queue.push_back(u);
    }
  }
  const auto mates = m.mates();
  std::vector<std::size_t> right_partner(g.right_size(), Matching::kUnmatched);
  for (std::size_t u = 0; u < mates.size(); ++u) {
    if (mates[u] != Matching::kUnmatched) right_partner[mates[u]] = u;
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto v : g.neighbors(queue[head])) {
      if (seen_right[v]) continue;
      seen_right[v] = 1;
      const std::size_t w = right_partner[v];
      if (w != Matching::kUnmatched && !in_s[w]) {
        in_s[w] = 1;
        queue.push_back(w);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

Matching complete_matching_regular(const BipartiteGraph& g, std::size_t t) {
  if (t == 0) throw Error(Errc::DegreePreconditionViolated, "degree bound t must be at least 1");
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    if (g.degree(u) != t) {
      throw Error(Errc::DegreePreconditionViolated,
                  "left vertex " + std::to_string(u) + " " + format_set(g.left_mask(u)) +
                      " has degree " + std::to_string(g.degree(u)) + ", expected " +
                      std::to_string(t));
    }
  }
  const auto deg = g.right_degrees();
  for (std::size_t v = 0; v < deg.size(); ++v) {
    if (deg[v] > t) {
      throw Error(Errc::DegreePreconditionViolated,
                  "right vertex " + std::to_string(v) + " " + format_set(g.right_mask(v)) +
                      " has degree " + std::to_string(deg[v]) + " > " + std::to_string(t));
    }
  }
  Matching m = max_matching(g);
  if (!m.is_complete()) {
    throw Error(Errc::MatchingFailed, "matching saturates " + std::to_string(m.size()) + " of " +
                                          std::to_string(g.left_size()) + " left vertices");
  }
  return m;
}

}  // namespace vsdepth
