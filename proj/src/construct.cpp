#include "vsdepth/construct.hpp"

#include <algorithm>
#include <map>

#include "vsdepth/blocks.hpp"
#include "vsdepth/kernels.hpp"
#include "vsdepth/matching.hpp"

namespace vsdepth {

namespace {

// Largest family the constructions will materialise in memory.
constexpr std::uint64_t kMaxSets = std::uint64_t{1} << 26;

void require_base(int n, int d, int c) {
  if (c < 2 || d < 1 || n != c * d + c - 1 || n > kMaxUniverse) {
    throw Error(Errc::BadParameters, "need c >= 2, d >= 1 and n = cd+c-1 <= 63; got n=" +
                                         std::to_string(n) + " d=" + std::to_string(d) +
                                         " c=" + std::to_string(c));
  }
}

void require_materializable(std::uint64_t count, const char* what) {
  if (count > kMaxSets) {
    throw Error(Errc::BadParameters, std::string(what) + " has " + std::to_string(count) +
                                         " members, beyond the materialisation limit");
  }
}

std::vector<Mask> layer(int n, int t) {
  const std::uint64_t count = binomial(n, t);
  require_materializable(count, "layer");
  std::vector<Mask> out(count);
  Mask m = full_mask(t);
  for (std::uint64_t i = 0; i < count; ++i) {
    out[i] = m;
    if (i + 1 < count) m = next_colex(m);
  }
  return out;
}

std::vector<Mask> uncovered_layer(int n, int t, std::span<const RawInterval> family) {
  const auto flags = kernels::dispatch::covered_flags(n, t, family);
  std::vector<Mask> out;
  Mask m = full_mask(t);
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (!flags[i]) out.push_back(m);
    if (i + 1 < flags.size()) m = next_colex(m);
  }
  return out;
}

Certificate checked(Certificate cert, const char* what) {
  const VerifyReport report = verify_certificate(cert);
  if (!report.valid || report.achieved_depth != cert.claimed_depth()) {
    throw Error(Errc::Internal,
                std::string(what) + " produced an invalid certificate: " +
                    (report.first_violation ? report.first_violation->describe() : "depth"));
  }
  return cert;
}

}  // namespace

int upper_bound(int n, int d) { return d + (n - d) / (d + 1); }

int certified_lower_bound(int n, int d) {
  const int c = std::min((n + 1) / (d + 1), 4);
  return std::max(d, d + c - 1);
}

Bounds bounds(int n, int d) {
  if (d < 1 || d > n || n > kMaxUniverse) {
    throw Error(Errc::BadParameters, "bounds need 1 <= d <= n <= 63");
  }
  Bounds b;
  b.n = n;
  b.d = d;
  b.upper = upper_bound(n, d);
  b.conjectured = b.upper;
  b.lower_certified = certified_lower_bound(n, d);
  const bool main_range = n < 5 * d + 4;
  const bool generator_degree = d >= (n + 1) / 2;
  if (main_range || generator_degree || d == 1) b.known_exact = b.upper;
  return b;
}

std::vector<RawInterval> veronese_raw(int n, int d, int c) {
  require_base(n, d, c);
  require_materializable(binomial(n, d), "d-set layer");
  return kernels::dispatch::veronese(n, d, c);
}

std::vector<Interval> veronese_intervals(int n, int d, int c) {
  const auto raw = veronese_raw(n, d, c);
  std::vector<Interval> out;
  out.reserve(raw.size());
  for (const RawInterval& iv : raw) out.emplace_back(PointSet(n, iv.bottom), PointSet(n, iv.top));
  return out;
}

std::vector<PointSet> uncovered_sets(int n, int d, int c, int t) {
  require_base(n, d, c);
  if (t < d + 1 || t > d + c - 1) {
    throw Error(Errc::BadParameters, "t must lie in d+1..d+c-1");
  }
  require_materializable(binomial(n, t), "t-set layer");
  const auto family = veronese_raw(n, d, c);
  std::vector<PointSet> out;
  for (Mask m : uncovered_layer(n, t, family)) out.emplace_back(n, m);
  return out;
}

bool has_covered_superset(const PointSet& D, int n, int d, int c) {
  require_base(n, d, c);
  if (D.universe() != n) throw Error(Errc::UniverseMismatch, "set universe differs from n");
  if (D.size() < d + 1) throw Error(Errc::BadParameters, "D must have at least d+1 points");
  // Some S ⊇ D lies in [A, f(A)] iff A ∪ D ⊆ f(A), i.e. iff D ⊆ f(A).
  const Mask dm = D.bits();
  const std::uint64_t count = binomial(n, d);
  require_materializable(count, "d-set layer");
  Mask a = full_mask(d);
  for (std::uint64_t i = 0; i < count; ++i) {
    if ((dm & ~f_delta_mask(n, a, c, 1)) == 0) return true;
    if (i + 1 < count) a = next_colex(a);
  }
  return false;
}

Certificate construct_c2(int d) {
  const int n = 2 * d + 1;
  require_base(n, d, 2);
  auto left = layer(n, d);
  auto right = layer(n, d + 1);
  const auto g = BipartiteGraph::containment(n, std::move(left), std::move(right));
  const Matching m = complete_matching_regular(g, static_cast<std::size_t>(d + 1));
  std::vector<RawInterval> intervals(g.left_size());
  const auto mates = m.mates();
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    intervals[u] = RawInterval{g.left_mask(u), g.right_mask(mates[u])};
  }
  return checked(Certificate(n, d, d + 1, std::move(intervals)), "construct_c2");
}

Certificate construct_c3(int d) {
  const int n = 3 * d + 2;
  return checked(Certificate(n, d, d + 2, veronese_raw(n, d, 3)), "construct_c3");
}

Certificate construct_c4(int d) {
  const int n = 4 * d + 3;
  auto family = veronese_raw(n, d, 4);
  require_materializable(binomial(n, d + 3), "(d+3)-set layer");
  auto v1 = uncovered_layer(n, d + 2, family);
  auto v2 = uncovered_layer(n, d + 3, family);
  const auto g = BipartiteGraph::containment(n, std::move(v1), std::move(v2));
  // Every superset of an uncovered set is uncovered, so each member of V_1
  // keeps all n-(d+2) of its one-point extensions; no member of V_2 has more
  // than d+3 <= n-(d+2) subsets.
  const Matching m = complete_matching_regular(g, static_cast<std::size_t>(n - (d + 2)));
  const auto mates = m.mates();
  family.reserve(family.size() + g.left_size());
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    family.push_back(RawInterval{g.left_mask(u), g.right_mask(mates[u])});
  }
  return checked(Certificate(n, d, d + 3, std::move(family)), "construct_c4");
}

namespace {

Certificate lift_and_union(const Certificate& p1, const Certificate& p2, int a) {
  const int n = p1.universe();
  const Mask extra = point_bit(n + 1);
  std::vector<RawInterval> out;
  out.reserve(p1.size() + p2.size());
  for (const RawInterval& iv : p1.raw_intervals()) {
    out.push_back(RawInterval{iv.bottom | extra, iv.top | extra});
  }
  out.insert(out.end(), p2.raw_intervals().begin(), p2.raw_intervals().end());
  // p1's trivial sets have size >= a and p2's >= a+1; lifted, both sit at
  // or above the new depth, so the implicit completion stays sound. The
  // verifier is the guard for that argument.
  return checked(Certificate(n + 1, p2.min_generator_size(), a + 1, std::move(out)),
                 "compose_plus1");
}

void require_composable(const Certificate& p1, const Certificate& p2) {
  if (p1.universe() != p2.universe()) {
    throw Error(Errc::UniverseMismatch, "compose_plus1 inputs live on different universes");
  }
  if (p1.min_generator_size() + 1 != p2.min_generator_size()) {
    throw Error(Errc::BadParameters, "compose_plus1 needs p1 on (n, d-1) and p2 on (n, d)");
  }
  if (p1.universe() + 1 > kMaxUniverse) {
    throw Error(Errc::UniverseOutOfRange, "composed universe exceeds 63");
  }
}

int verified_depth(const Certificate& cert) {
  const VerifyReport r = verify_certificate(cert);
  if (!r.valid) {
    throw Error(Errc::RefusesUnverified,
                "compose_plus1 input does not verify: " + r.first_violation->describe());
  }
  return *r.achieved_depth;
}

}  // namespace

Certificate compose_plus1(const Certificate& p1, const Certificate& p2, int a) {
  require_composable(p1, p2);
  const int depth1 = verified_depth(p1);
  const int depth2 = verified_depth(p2);
  if (depth1 < a || depth2 < a + 1) {
    throw Error(Errc::DepthMismatch, "need depths >= " + std::to_string(a) + " and >= " +
                                         std::to_string(a + 1) + ", have " +
                                         std::to_string(depth1) + " and " +
                                         std::to_string(depth2));
  }
  if (a + 1 < p2.min_generator_size()) {
    throw Error(Errc::DepthMismatch, "target depth below the generator degree");
  }
  return lift_and_union(p1, p2, a);
}

Certificate compose_plus1(const Certificate& p1, const Certificate& p2) {
  require_composable(p1, p2);
  const int a = std::min(verified_depth(p1), verified_depth(p2) - 1);
  return lift_and_union(p1, p2, a);
}

namespace {

// Double induction on n and d. With c = min(⌊(n+1)/(d+1)⌋, 4):
// n = cd+c-1 is a base construction; for larger n, (n-1, d) still admits c
// and (n-1, d-1) admits at least c, so composing them reaches d+c-1.
class GeneralBuilder {
 public:
  const Certificate& build(int n, int d) {
    const auto key = std::make_pair(n, d);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Certificate cert = make(n, d);
    return memo_.emplace(key, std::move(cert)).first->second;
  }

 private:
  Certificate make(int n, int d) {
    if (d == 0) return full_ring_certificate(n);
    const int c = std::min((n + 1) / (d + 1), 4);
    if (c <= 1) return Certificate(n, d, d, {});
    if (n == c * d + c - 1) {
      switch (c) {
        case 2: return construct_c2(d);
        case 3: return construct_c3(d);
        default: return construct_c4(d);
      }
    }
    const Certificate& p1 = build(n - 1, d - 1);
    const Certificate& p2 = build(n - 1, d);
    return lift_and_union(p1, p2, d + c - 2);
  }

  std::map<std::pair<int, int>, Certificate> memo_;
};

}  // namespace

Certificate construct_general(int n, int d) {
  if (d < 1 || d > n || n > kMaxUniverse) {
    throw Error(Errc::BadParameters, "construct_general needs 1 <= d <= n <= 63");
  }
  GeneralBuilder builder;
  return builder.build(n, d);
}

}  // namespace vsdepth
