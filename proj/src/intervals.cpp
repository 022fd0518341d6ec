#include "vsdepth/intervals.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace vsdepth {

Interval::Interval(const PointSet& bottom, const PointSet& top) : bottom_(bottom), top_(top) {
  if (!bottom.subset_of(top)) {
    throw Error(Errc::NotAnInterval,
                "bottom " + format_set(bottom) + " not inside top " + format_set(top));
  }
}

bool covers(const Interval& iv, const PointSet& c) {
  return iv.bottom().subset_of(c) && c.subset_of(iv.top());
}

bool disjoint(const Interval& x, const Interval& y) {
  if (x.universe() != y.universe()) {
    throw Error(Errc::UniverseMismatch, "intervals over different universes");
  }
  return !raw_overlap(x.raw(), y.raw());
}

Certificate::Certificate(int n, int d, int k, std::vector<RawInterval> intervals)
    : n_(n), d_(d), k_(k), intervals_(std::move(intervals)) {
  if (n < 1 || n > kMaxUniverse) {
    throw Error(Errc::UniverseOutOfRange, "certificate universe " + std::to_string(n));
  }
  if (d < 0 || d > n || k < d || k > n) {
    throw Error(Errc::BadParameters, "certificate needs 0 <= d <= k <= n, got n=" +
                                         std::to_string(n) + " d=" + std::to_string(d) +
                                         " k=" + std::to_string(k));
  }
  const Mask full = full_mask(n);
  for (const RawInterval& iv : intervals_) {
    if ((iv.top & ~full) != 0) {
      throw Error(Errc::ElementOutOfRange, "interval top outside 1.." + std::to_string(n));
    }
    if ((iv.bottom & ~iv.top) != 0) {
      throw Error(Errc::NotAnInterval,
                  "bottom " + format_set(iv.bottom) + " not inside top " + format_set(iv.top));
    }
  }
  std::sort(intervals_.begin(), intervals_.end());
}

Interval Certificate::interval(std::size_t i) const {
  const RawInterval& iv = intervals_.at(i);
  return Interval(PointSet(n_, iv.bottom), PointSet(n_, iv.top));
}

std::vector<Interval> Certificate::intervals() const {
  std::vector<Interval> out;
  out.reserve(intervals_.size());
  for (std::size_t i = 0; i < intervals_.size(); ++i) out.push_back(interval(i));
  return out;
}

Certificate new_certificate(int n, int d, int k, const std::vector<Interval>& intervals) {
  std::vector<RawInterval> raw;
  raw.reserve(intervals.size());
  for (const Interval& iv : intervals) {
    if (iv.universe() != n) throw Error(Errc::UniverseMismatch, "interval universe differs from n");
    if (iv.bottom().size() < d) {
      throw Error(Errc::BottomTooSmall, "bottom " + format_set(iv.bottom()) + " has fewer than " +
                                            std::to_string(d) + " points");
    }
    if (iv.top().size() < k) {
      throw Error(Errc::TopTooSmall, "top " + format_set(iv.top()) + " has fewer than " +
                                         std::to_string(k) + " points");
    }
    raw.push_back(iv.raw());
  }
  return Certificate(n, d, k, std::move(raw));
}

Certificate full_ring_certificate(int n) {
  return Certificate(n, 0, n, {RawInterval{0, full_mask(n)}});
}

const char* violation_tag(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::Overlap: return "overlap";
    case ViolationKind::GapAtRank: return "gap-at-rank";
    case ViolationKind::TopTooSmall: return "top-too-small";
    case ViolationKind::BottomTooSmall: return "bottom-too-small";
  }
  return "unknown";
}

std::string Violation::describe() const {
  std::ostringstream out;
  out << violation_tag(kind);
  switch (kind) {
    case ViolationKind::Overlap:
      out << ' ' << format_set(set) << " intervals " << first << " and " << second;
      break;
    case ViolationKind::GapAtRank:
      out << ' ' << rank << ' ' << format_set(set);
      break;
    case ViolationKind::TopTooSmall:
    case ViolationKind::BottomTooSmall:
      out << ' ' << format_set(set) << " interval " << first;
      break;
  }
  return out.str();
}

namespace {

// Intervals up to this dimension are checked by expanding their members;
// larger ones by the pairwise algebraic test against every other interval.
constexpr int kExpandDimension = 16;

struct CoverageIndex {
  std::vector<Mask> small_members;  // sorted
  std::vector<std::size_t> big;

  bool covered(std::span<const RawInterval> intervals, Mask c) const {
    if (std::binary_search(small_members.begin(), small_members.end(), c)) return true;
    return std::any_of(big.begin(), big.end(),
                       [&](std::size_t i) { return intervals[i].contains(c); });
  }
};

std::pair<std::size_t, std::size_t> holders_of(std::span<const RawInterval> intervals, Mask c) {
  std::size_t found[2] = {0, 0};
  int hits = 0;
  for (std::size_t i = 0; i < intervals.size() && hits < 2; ++i) {
    if (intervals[i].contains(c)) found[hits++] = i;
  }
  return {found[0], found[1]};
}

}  // namespace

VerifyReport verify_certificate(const Certificate& cert) {
  const int n = cert.universe();
  const int d = cert.min_generator_size();
  const int k = cert.claimed_depth();
  const auto intervals = cert.raw_intervals();

  VerifyReport report;
  report.rank_coverage = kernels::dispatch::rank_counts(n, intervals);

  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (popcount(intervals[i].bottom) < d) {
      report.first_violation = Violation{ViolationKind::BottomTooSmall, intervals[i].bottom, 0, i, 0};
      return report;
    }
  }

  // Disjointness. Any two overlapping intervals share the member A1 ∪ A2,
  // so a repeated member among the expanded small intervals or a positive
  // algebraic test against a big interval catches every overlap.
  CoverageIndex index;
  std::vector<RawInterval> small;
  small.reserve(intervals.size());
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (intervals[i].dimension() <= kExpandDimension) {
      small.push_back(intervals[i]);
    } else {
      index.big.push_back(i);
    }
  }
  index.small_members = kernels::dispatch::expand_members(small);
  small.clear();
  small.shrink_to_fit();
  if (const auto dup = kernels::dispatch::first_duplicate(index.small_members)) {
    const auto [a, b] = holders_of(intervals, *dup);
    report.first_violation = Violation{ViolationKind::Overlap, *dup, 0, a, b};
    return report;
  }
  for (std::size_t i : index.big) {
    for (std::size_t j = 0; j < intervals.size(); ++j) {
      if (j == i) continue;
      const bool j_big = intervals[j].dimension() > kExpandDimension;
      if (j_big && j < i) continue;
      if (raw_overlap(intervals[i], intervals[j])) {
        const Mask witness = intervals[i].bottom | intervals[j].bottom;
        report.first_violation =
            Violation{ViolationKind::Overlap, witness, 0, std::min(i, j), std::max(i, j)};
        return report;
      }
    }
  }

  // Exact coverage of ranks d..k-1. With disjointness established, a rank
  // is covered exactly once iff its member count equals C(n,r).
  for (int r = d; r < k; ++r) {
    if (report.rank_coverage[r] == binomial(n, r)) continue;
    const std::uint64_t total = binomial(n, r);
    Mask c = full_mask(r);
    for (std::uint64_t i = 0; i < total; ++i) {
      if (!index.covered(intervals, c)) {
        report.first_violation = Violation{ViolationKind::GapAtRank, c, r, 0, 0};
        return report;
      }
      if (i + 1 < total) c = next_colex(c);
    }
    throw Error(Errc::Internal, "rank count mismatch without an uncovered set");
  }

  int achieved = k;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const int top = popcount(intervals[i].top);
    if (top < achieved) achieved = top;
    if (top < k && !report.first_violation) {
      report.first_violation = Violation{ViolationKind::TopTooSmall, intervals[i].top, 0, i, 0};
    }
  }
  report.achieved_depth = achieved;
  report.valid = !report.first_violation.has_value();
  return report;
}

namespace {

std::string monomial(Mask m) {
  if (m == 0) return "1";
  std::string out;
  for (; m != 0; m &= m - 1) out += "x" + std::to_string(std::countr_zero(m) + 1);
  return out;
}

std::string variables(Mask m) {
  std::string out = "K[";
  bool first = true;
  for (; m != 0; m &= m - 1) {
    if (!first) out += ',';
    out += "x" + std::to_string(std::countr_zero(m) + 1);
    first = false;
  }
  return out + "]";
}

}  // namespace

std::string render_stanley(const Certificate& cert) {
  const VerifyReport report = verify_certificate(cert);
  if (!report.valid) {
    throw Error(Errc::RefusesUnverified,
                "certificate does not verify: " + report.first_violation->describe());
  }
  std::string out;
  for (const RawInterval& iv : cert.raw_intervals()) {
    out += monomial(iv.bottom) + "·" + variables(iv.top) + "\n";
  }
  const int n = cert.universe();
  std::string trivial;
  for (int r = cert.min_generator_size(); r <= n; ++r) {
    const std::uint64_t missing = binomial(n, r) - report.rank_coverage[r];
    if (missing == 0) continue;
    if (!trivial.empty()) trivial += ", ";
    trivial += std::to_string(missing) + " at rank " + std::to_string(r);
  }
  out += "trivial summands x^C·K[x_j : j in C] for uncovered C: ";
  out += trivial.empty() ? std::string("none") : trivial;
  out += "\n";
  return out;
}

std::string to_text(const Certificate& cert) {
  std::string out = "VSDEPTH-CERT v1\n";
  out += "n=" + std::to_string(cert.universe()) + " d=" +
         std::to_string(cert.min_generator_size()) + " k=" +
         std::to_string(cert.claimed_depth()) + "\n";
  for (const RawInterval& iv : cert.raw_intervals()) {
    out += "interval " + format_set(iv.bottom) + " " + format_set(iv.top) + "\n";
  }
  out += "trivial-completion\n";
  return out;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& why) {
  throw Error(Errc::Parse, "certificate line " + std::to_string(line) + ": " + why);
}

int parse_field(std::string_view tok, std::string_view key, std::size_t line) {
  if (tok.substr(0, key.size()) != key) parse_fail(line, "expected " + std::string(key));
  tok.remove_prefix(key.size());
  int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
    parse_fail(line, "bad number after " + std::string(key));
  }
  return v;
}

}  // namespace

Certificate parse_certificate(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  if (lines.size() < 3) parse_fail(lines.size(), "truncated certificate");
  if (lines[0] != "VSDEPTH-CERT v1") parse_fail(1, "missing VSDEPTH-CERT v1 header");

  std::string_view header = lines[1];
  const auto s1 = header.find(' ');
  const auto s2 = header.find(' ', s1 == std::string_view::npos ? s1 : s1 + 1);
  if (s1 == std::string_view::npos || s2 == std::string_view::npos) {
    parse_fail(2, "expected n=<N> d=<D> k=<K>");
  }
  const int n = parse_field(header.substr(0, s1), "n=", 2);
  const int d = parse_field(header.substr(s1 + 1, s2 - s1 - 1), "d=", 2);
  const int k = parse_field(header.substr(s2 + 1), "k=", 2);
  if (n < 1 || n > kMaxUniverse) parse_fail(2, "n out of range");

  std::vector<RawInterval> intervals;
  std::size_t i = 2;
  for (; i < lines.size() && lines[i].substr(0, 9) == "interval "; ++i) {
    std::string_view rest = lines[i].substr(9);
    const auto sp = rest.find(' ');
    if (sp == std::string_view::npos) parse_fail(i + 1, "expected two sets");
    try {
      const PointSet bottom = parse_set(n, rest.substr(0, sp));
      const PointSet top = parse_set(n, rest.substr(sp + 1));
      intervals.push_back(RawInterval{bottom.bits(), top.bits()});
    } catch (const Error& e) {
      parse_fail(i + 1, e.what());
    }
  }
  if (i >= lines.size() || lines[i] != "trivial-completion") {
    parse_fail(i + 1, "expected trivial-completion");
  }
  if (i + 1 != lines.size()) parse_fail(i + 2, "content after trivial-completion");
  return Certificate(n, d, k, std::move(intervals));
}

void write_certificate_file(const std::string& path, const Certificate& cert) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Parse, "cannot open " + path + " for writing");
  out << to_text(cert);
  if (!out) throw Error(Errc::Parse, "write to " + path + " failed");
}

Certificate read_certificate_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Parse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_certificate(buf.str());
}

}  // namespace vsdepth
