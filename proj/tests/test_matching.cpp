#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "vsdepth/matching.hpp"

using namespace vsdepth;

namespace {

std::vector<Mask> layer(int n, int t) {
  std::vector<Mask> out;
  for (const PointSet& s : sets_of_size(n, t)) out.push_back(s.bits());
  return out;
}

void check_matching(const BipartiteGraph& g, const Matching& m) {
  std::set<std::uint32_t> used;
  std::size_t count = 0;
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    const auto v = m.partner(u);
    if (!v) continue;
    ++count;
    REQUIRE(used.insert(static_cast<std::uint32_t>(*v)).second);
    const auto adj = g.neighbors(u);
    REQUIRE(std::find(adj.begin(), adj.end(), *v) != adj.end());
  }
  REQUIRE(count == m.size());
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::Internal;
}

}  // namespace

TEST_CASE("containment graph of [3]") {
  const auto g = BipartiteGraph::containment(3, layer(3, 1), layer(3, 2));
  CHECK(g.edge_count() == 6);
  const Matching m = max_matching(g);
  CHECK(m.size() == 3);
  CHECK(m.is_complete());
  check_matching(g, m);
  CHECK_FALSE(hall_witness(g).has_value());
  CHECK(complete_matching_regular(g, 2).is_complete());
}

TEST_CASE("trivial graphs") {
  const BipartiteGraph lonely(3, {0b1}, {0b11}, {{}});
  CHECK(max_matching(lonely).size() == 0);
  const BipartiteGraph edge(3, {0b1}, {0b11}, {{0}});
  CHECK(max_matching(edge).size() == 1);
  const BipartiteGraph empty(3, {}, {0b11}, {});
  CHECK_FALSE(hall_witness(empty).has_value());
  CHECK(max_matching(empty).is_complete());
}

TEST_CASE("hall witness under pigeonhole") {
  const BipartiteGraph g(3, {0b1, 0b10}, {0b11}, {{0}, {0}});
  const auto w = hall_witness(g);
  REQUIRE(w.has_value());
  CHECK(*w == std::vector<std::size_t>{0, 1});
}

TEST_CASE("graph validation") {
  CHECK(code_of([] { BipartiteGraph(3, {0b1}, {0b11}, {{1}}); }) == Errc::BadParameters);
  CHECK(code_of([] { BipartiteGraph(3, {0b1}, {0b11}, {{0, 0}}); }) == Errc::BadParameters);
  CHECK(code_of([] { BipartiteGraph::containment(3, {0b1}, {0b110, 0b011}); }) == Errc::BadParameters);
}

TEST_CASE("complete_matching_regular") {
  const auto g5 = BipartiteGraph::containment(5, layer(5, 2), layer(5, 3));
  const Matching m = complete_matching_regular(g5, 3);
  CHECK(m.size() == 10);
  check_matching(g5, m);

  // Left degree 2 everywhere, one right vertex of degree 3.
  const BipartiteGraph bad(3, {1, 2, 4}, {3, 5, 6}, {{0, 1}, {0, 2}, {0, 1}});
  CHECK(code_of([&] { complete_matching_regular(bad, 2); }) == Errc::DegreePreconditionViolated);
  CHECK(code_of([&] { complete_matching_regular(g5, 2); }) == Errc::DegreePreconditionViolated);
  CHECK(code_of([&] { complete_matching_regular(g5, 0); }) == Errc::DegreePreconditionViolated);
}

TEST_CASE("d-sets into (d+1)-sets of [2d+1], d <= 6") {
  for (int d = 1; d <= 6; ++d) {
    const int n = 2 * d + 1;
    const auto g = BipartiteGraph::containment(n, layer(n, d), layer(n, d + 1));
    const Matching m = complete_matching_regular(g, d + 1);
    REQUIRE(m.is_complete());
    check_matching(g, m);
  }
}

TEST_CASE("containment adjacency is the set-by-set relation") {
  for (int n = 1; n <= 8; ++n) {
    for (int t = 0; t < n; ++t) {
      // Keep a random half of the right side to exercise the sparse index.
      std::mt19937_64 rng(n * 31 + t);
      std::vector<Mask> right;
      for (Mask m : layer(n, t + 1))
        if (rng() % 2) right.push_back(m);
      const auto left = layer(n, t);
      const auto g = BipartiteGraph::containment(n, left, right);
      for (std::size_t u = 0; u < left.size(); ++u) {
        std::vector<std::uint32_t> expect;
        for (std::size_t v = 0; v < right.size(); ++v)
          if ((left[u] & ~right[v]) == 0) expect.push_back(static_cast<std::uint32_t>(v));
        const auto adj = g.neighbors(u);
        REQUIRE(std::vector<std::uint32_t>(adj.begin(), adj.end()) == expect);
      }
    }
  }
}

TEST_CASE("matching size against exhaustive search, random graphs") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1500; ++trial) {
    const int nl = static_cast<int>(rng() % 13);
    const int nr = static_cast<int>(rng() % 13);
    const int density = 1 + static_cast<int>(rng() % 5);
    std::vector<std::vector<std::uint32_t>> adj(nl);
    std::vector<std::vector<int>> oadj(nl);
    for (int u = 0; u < nl; ++u)
      for (int v = 0; v < nr; ++v)
        if (static_cast<int>(rng() % 10) < density) {
          adj[u].push_back(v);
          oadj[u].push_back(v);
        }
    const BipartiteGraph g(1, std::vector<Mask>(nl, 0), std::vector<Mask>(nr, 0), adj);
    const int best = oracle::max_matching_size(nl, nr, oadj);
    const Matching hk = max_matching(g);
    const Matching kuhn = simple_augmenting_matching(g);
    REQUIRE(static_cast<int>(hk.size()) == best);
    REQUIRE(static_cast<int>(kuhn.size()) == best);
    check_matching(g, hk);
    check_matching(g, kuhn);
    // Deterministic: same graph, same pairs.
    const Matching again = max_matching(g);
    REQUIRE(std::equal(hk.mates().begin(), hk.mates().end(), again.mates().begin()));

    const auto w = hall_witness(g);
    REQUIRE(w.has_value() == !hk.is_complete());
    if (w) {
      std::set<std::uint32_t> nbrs;
      for (std::size_t u : *w) nbrs.insert(g.neighbors(u).begin(), g.neighbors(u).end());
      REQUIRE(nbrs.size() < w->size());
    }
  }
}
