#include "vsdepth/blocks.hpp"

#include <array>
#include <charconv>
#include <numeric>

namespace vsdepth {

Density::Density(long p, long q) {
  if (q < 1 || p < q) {
    throw Error(Errc::DensityOutOfRange,
                "density " + std::to_string(p) + "/" + std::to_string(q) + " is below 1");
  }
  const long g = std::gcd(p, q);
  p_ = p / g;
  q_ = q / g;
}

std::string Density::to_string() const {
  return std::to_string(p_) + "/" + std::to_string(q_);
}

Density parse_density(std::string_view text) {
  auto number = [&](std::string_view tok) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw Error(Errc::Parse, "bad density '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Density(number(text), 1);
  return Density(number(text.substr(0, slash)), number(text.substr(slash + 1)));
}

const char* violation_name(BlockViolation v) noexcept {
  switch (v) {
    case BlockViolation::None: return "none";
    case BlockViolation::Malformed: return "malformed";
    case BlockViolation::StartNotInA: return "start-not-in-set";
    case BlockViolation::GapMeetsA: return "gap-meets-set";
    case BlockViolation::Length: return "block-length";
    case BlockViolation::Prefix: return "prefix-density";
  }
  return "unknown";
}

PointSet BlockStructure::block_union() const {
  Mask m = 0;
  for (const auto& b : blocks) m |= b.as_set().bits();
  return PointSet(universe, m);
}

PointSet BlockStructure::gap_union() const {
  Mask m = 0;
  for (const auto& g : gaps) m |= g.bits();
  return PointSet(universe, m);
}

namespace {

struct Step {
  int block_len = 0;
  int gap_len = 0;
  int next_start = 0;
};

// A block that starts at b is forced: it is the shortest clockwise prefix
// that cannot be extended under clause (iv), i.e. the first prefix P with
// q*(|P|+1) > p*|P ∩ A|. Every shorter prefix satisfies (iv) and P itself
// satisfies (iii). The gap then runs to the next member of A.
Step step_from(int n, Mask a, long p, long q, int b) {
  Step s;
  long hits = 0;
  int pos = b;
  for (int len = 1; len <= n; ++len) {
    if (a & point_bit(pos)) ++hits;
    if (q * (len + 1) > p * hits) {
      s.block_len = len;
      break;
    }
    pos = cw_next(n, pos);
  }
  pos = cw_next(n, pos);
  while ((a & point_bit(pos)) == 0) {
    ++s.gap_len;
    pos = cw_next(n, pos);
  }
  s.next_start = pos;
  return s;
}

struct RawStructure {
  int count = 0;
  std::array<int, kMaxUniverse> starts{};
  std::array<Step, kMaxUniverse> steps{};
};

// Each candidate start determines its successor start, so the block starts
// of a structure form a cycle of this successor map that winds around the
// circle exactly once. Chase cycles until that one is found; existence and
// uniqueness of the structure guarantee it.
RawStructure raw_structure(int n, Mask a, long p, long q) {
  std::array<std::uint8_t, kMaxUniverse + 1> state{};
  std::array<Step, kMaxUniverse + 1> step{};
  std::array<int, kMaxUniverse> path{};
  for (Mask rest = a; rest != 0; rest &= rest - 1) {
    const int origin = std::countr_zero(rest) + 1;
    if (state[origin] != 0) continue;
    int len = 0;
    int x = origin;
    while (state[x] == 0) {
      state[x] = 1;
      step[x] = step_from(n, a, p, q, x);
      path[len++] = x;
      x = step[x].next_start;
    }
    if (state[x] == 1) {
      int first = 0;
      while (path[first] != x) ++first;
      long total = 0;
      for (int i = first; i < len; ++i) total += step[path[i]].block_len + step[path[i]].gap_len;
      if (total == n) {
        RawStructure out;
        int lo = first;
        for (int i = first; i < len; ++i) {
          if (path[i] < path[lo]) lo = i;
        }
        const int cycle_len = len - first;
        for (int k = 0; k < cycle_len; ++k) {
          const int start = path[first + (lo - first + k) % cycle_len];
          out.starts[out.count] = start;
          out.steps[out.count] = step[start];
          ++out.count;
        }
        return out;
      }
    }
    for (int i = 0; i < len; ++i) state[path[i]] = 2;
  }
  throw Error(Errc::Internal, "no block structure found for " + format_set(a));
}

void check_preconditions(int n, Mask a, long p, long q) {
  if (a == 0) throw Error(Errc::EmptySet, "block structure of the empty set");
  if (p * popcount(a) > q * (n - 1)) {
    throw Error(Errc::DensityOutOfRange,
                "density " + std::to_string(p) + "/" + std::to_string(q) + " exceeds (n-1)/|A|");
  }
}

Mask run_mask(int n, int start, int len) {
  Mask m = 0;
  for (int i = 0, pos = start; i < len; ++i, pos = cw_next(n, pos)) m |= point_bit(pos);
  return m;
}

}  // namespace

BlockStructure block_structure(int n, const PointSet& a, const Density& delta) {
  if (a.universe() != n) throw Error(Errc::UniverseMismatch, "set universe differs from n");
  check_preconditions(n, a.bits(), delta.num(), delta.den());
  const RawStructure raw = raw_structure(n, a.bits(), delta.num(), delta.den());
  BlockStructure bs{n, a, delta, {}, {}};
  for (int i = 0; i < raw.count; ++i) {
    const Step& s = raw.steps[i];
    int end = raw.starts[i];
    for (int k = 1; k < s.block_len; ++k) end = cw_next(n, end);
    bs.blocks.push_back(CircBlock{n, raw.starts[i], end});
    bs.gaps.emplace_back(n, run_mask(n, cw_next(n, end), s.gap_len));
  }
  return bs;
}

BlockCheck verify_block_structure(const BlockStructure& bs) {
  const int n = bs.universe;
  const Mask a = bs.set.bits();
  const long p = bs.density.num();
  const long q = bs.density.den();
  const std::size_t k = bs.blocks.size();
  if (k == 0 || bs.gaps.size() != k || bs.set.universe() != n) {
    return {BlockViolation::Malformed, 0};
  }

  // Tiling: walk clockwise from b_1 and demand each block and gap be the
  // next contiguous run, returning to b_1 after exactly n points.
  int pos = bs.blocks[0].start;
  int walked = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const CircBlock& b = bs.blocks[i];
    if (b.universe != n || b.start < 1 || b.start > n || b.end < 1 || b.end > n) {
      return {BlockViolation::Malformed, i};
    }
    if (b.start != pos) return {BlockViolation::Malformed, i};
    walked += b.length();
    pos = b.end;
    pos = cw_next(n, pos);
    const Mask g = bs.gaps[i].bits();
    if (bs.gaps[i].universe() != n) return {BlockViolation::Malformed, i};
    const int glen = popcount(g);
    if (g != run_mask(n, pos, glen)) return {BlockViolation::Malformed, i};
    walked += glen;
    for (int s = 0; s < glen; ++s) pos = cw_next(n, pos);
  }
  if (walked != n || pos != bs.blocks[0].start) return {BlockViolation::Malformed, 0};

  for (std::size_t i = 0; i < k; ++i) {
    if ((a & point_bit(bs.blocks[i].start)) == 0) return {BlockViolation::StartNotInA, i};
  }
  for (std::size_t i = 0; i < k; ++i) {
    if ((a & bs.gaps[i].bits()) != 0) return {BlockViolation::GapMeetsA, i};
  }
  for (std::size_t i = 0; i < k; ++i) {
    const Mask b = bs.blocks[i].as_set().bits();
    const long len = popcount(b);
    const long hits = popcount(b & a);
    if (!(q * len <= p * hits && q * len > p * hits - q)) return {BlockViolation::Length, i};
  }
  for (std::size_t i = 0; i < k; ++i) {
    const CircBlock& b = bs.blocks[i];
    long hits = 0;
    int y = b.start;
    for (int len = 1; len < b.length(); ++len, y = cw_next(n, y)) {
      if (a & point_bit(y)) ++hits;
      if (q * (len + 1) > p * hits) return {BlockViolation::Prefix, i};
    }
  }
  return {};
}

Mask f_delta_mask(int n, Mask a, long p, long q) {
  check_preconditions(n, a, p, q);
  const RawStructure raw = raw_structure(n, a, p, q);
  Mask gaps = 0;
  for (int i = 0; i < raw.count; ++i) {
    const Step& s = raw.steps[i];
    int after = raw.starts[i];
    for (int k = 0; k < s.block_len; ++k) after = cw_next(n, after);
    gaps |= run_mask(n, after, s.gap_len);
  }
  return a | gaps;
}

PointSet f_delta(int n, const PointSet& a, const Density& delta) {
  if (a.universe() != n) throw Error(Errc::UniverseMismatch, "set universe differs from n");
  return PointSet(n, f_delta_mask(n, a.bits(), delta.num(), delta.den()));
}

}  // namespace vsdepth
