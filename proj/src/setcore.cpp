#include "vsdepth/setcore.hpp"

#include <algorithm>
#include <array>
#include <charconv>

namespace vsdepth {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::ElementOutOfRange: return "ElementOutOfRange";
    case Errc::UniverseOutOfRange: return "UniverseOutOfRange";
    case Errc::UniverseMismatch: return "UniverseMismatch";
    case Errc::SizeOutOfRange: return "SizeOutOfRange";
    case Errc::Overflow: return "Overflow";
    case Errc::NotAnInterval: return "NotAnInterval";
    case Errc::EmptySet: return "EmptySet";
    case Errc::DensityOutOfRange: return "DensityOutOfRange";
    case Errc::BadParameters: return "BadParameters";
    case Errc::BottomTooSmall: return "BottomTooSmall";
    case Errc::TopTooSmall: return "TopTooSmall";
    case Errc::DepthMismatch: return "DepthMismatch";
    case Errc::MatchingFailed: return "MatchingFailed";
    case Errc::DegreePreconditionViolated: return "DegreePreconditionViolated";
    case Errc::RefusesUnverified: return "RefusesUnverified";
    case Errc::Parse: return "Parse";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

void check_universe(int n) {
  if (n < 1 || n > kMaxUniverse) {
    throw Error(Errc::UniverseOutOfRange,
                "universe size " + std::to_string(n) + " outside 1.." +
                    std::to_string(kMaxUniverse));
  }
}

struct BinomialTable {
  std::array<std::uint64_t, 65 * 65> v{};
  BinomialTable() {
    for (int i = 0; i <= 64; ++i) {
      v[i * 65] = 1;
      for (int j = 1; j <= i; ++j) {
        v[i * 65 + j] = v[(i - 1) * 65 + j - 1] + (j <= i - 1 ? v[(i - 1) * 65 + j] : 0);
      }
    }
  }
};

}  // namespace

namespace detail {
const std::uint64_t* binomial_table() noexcept {
  static const BinomialTable table;
  return table.v.data();
}
}  // namespace detail

PointSet::PointSet(int universe, Mask bits) : universe_(universe), bits_(bits) {
  check_universe(universe);
  if ((bits & ~full_mask(universe)) != 0) {
    throw Error(Errc::ElementOutOfRange,
                "set member outside 1.." + std::to_string(universe));
  }
}

std::vector<int> PointSet::members() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (Mask m = bits_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

void PointSet::require_same_universe(const PointSet& o) const {
  if (o.universe_ != universe_) {
    throw Error(Errc::UniverseMismatch,
                "universe " + std::to_string(universe_) + " vs " +
                    std::to_string(o.universe_));
  }
}

bool PointSet::subset_of(const PointSet& o) const {
  require_same_universe(o);
  return (bits_ & ~o.bits_) == 0;
}

PointSet PointSet::operator|(const PointSet& o) const {
  require_same_universe(o);
  return PointSet(universe_, bits_ | o.bits_);
}

PointSet PointSet::operator&(const PointSet& o) const {
  require_same_universe(o);
  return PointSet(universe_, bits_ & o.bits_);
}

PointSet PointSet::operator-(const PointSet& o) const {
  require_same_universe(o);
  return PointSet(universe_, bits_ & ~o.bits_);
}

PointSet make_set(int n, const std::vector<int>& elems) {
  check_universe(n);
  Mask bits = 0;
  for (int e : elems) {
    if (e < 1 || e > n) {
      throw Error(Errc::ElementOutOfRange,
                  "element " + std::to_string(e) + " outside 1.." + std::to_string(n));
    }
    bits |= point_bit(e);
  }
  return PointSet(n, bits);
}

std::vector<PointSet> sets_of_size(int n, int t) {
  check_universe(n);
  if (t < 0 || t > n) {
    throw Error(Errc::SizeOutOfRange,
                "set size " + std::to_string(t) + " outside 0.." + std::to_string(n));
  }
  const std::uint64_t count = binomial(n, t);
  std::vector<PointSet> out;
  out.reserve(count);
  Mask m = full_mask(t);
  for (std::uint64_t i = 0; i < count; ++i) {
    out.emplace_back(n, m);
    if (i + 1 < count) m = next_colex(m);
  }
  return out;
}

PointSet CircBlock::as_set() const { return circ_block(universe, start, end); }

PointSet circ_block(int n, int i, int j) {
  check_universe(n);
  if (i < 1 || i > n || j < 1 || j > n) {
    throw Error(Errc::ElementOutOfRange, "block endpoint outside 1.." + std::to_string(n));
  }
  Mask bits = 0;
  for (int p = i;; p = cw_next(n, p)) {
    bits |= point_bit(p);
    if (p == j) break;
  }
  return PointSet(n, bits);
}

Mask rotate_mask(int n, Mask m, int r) noexcept {
  r %= n;
  if (r < 0) r += n;
  if (r == 0) return m;
  const Mask full = full_mask(n);
  return ((m << r) | (m >> (n - r))) & full;
}

PointSet rotate(const PointSet& s, int r) {
  return PointSet(s.universe(), rotate_mask(s.universe(), s.bits(), r));
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > kMaxUniverse) {
    throw Error(Errc::UniverseOutOfRange, "binomial n=" + std::to_string(n) + " outside 0..63");
  }
  if (k < 0 || k > n) return 0;
  // Pascal recurrence along one row with checked addition; every value for
  // n <= 63 fits in 64 bits, so the checks document rather than trigger.
  std::uint64_t row[kMaxUniverse + 1] = {1};
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) row[j] = checked_add(row[j], row[j - 1]);
  }
  return row[k];
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(Errc::Overflow, "64-bit multiplication overflow");
  }
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(Errc::Overflow, "64-bit addition overflow");
  }
  return out;
}

std::uint64_t colex_rank(Mask m) noexcept {
  std::uint64_t rank = 0;
  int i = 1;
  for (; m != 0; m &= m - 1, ++i) rank += detail::binom_unchecked(std::countr_zero(m), i);
  return rank;
}

Mask colex_unrank(std::uint64_t rank, int t) noexcept {
  Mask m = 0;
  int pos = 63;
  for (int i = t; i >= 1; --i) {
    while (detail::binom_unchecked(pos, i) > rank) --pos;
    m |= Mask{1} << pos;
    rank -= detail::binom_unchecked(pos, i);
    --pos;
  }
  return m;
}

std::string format_set(Mask m) {
  std::string out = "{";
  bool first = true;
  for (; m != 0; m &= m - 1) {
    if (!first) out += ',';
    out += std::to_string(std::countr_zero(m) + 1);
    first = false;
  }
  out += '}';
  return out;
}

std::string format_set(const PointSet& s) { return format_set(s.bits()); }

PointSet parse_set(int n, std::string_view text) {
  auto fail = [&](const std::string& why) -> PointSet {
    throw Error(Errc::Parse, "bad set literal '" + std::string(text) + "': " + why);
  };
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') return fail("expected {...}");
  std::string_view body = text.substr(1, text.size() - 2);
  Mask bits = 0;
  int last = 0;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const std::string_view tok = body.substr(0, comma);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
      return fail("non-integer member");
    }
    if (v <= last) return fail("members must be strictly ascending");
    if (v > n) {
      throw Error(Errc::ElementOutOfRange,
                  "element " + std::to_string(v) + " outside 1.." + std::to_string(n));
    }
    bits |= point_bit(v);
    last = v;
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
    if (body.empty()) return fail("trailing comma");
  }
  return PointSet(n, bits);
}

}  // namespace vsdepth
