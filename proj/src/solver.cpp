#include "vsdepth/solver.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <exception>
#include <iomanip>
#include <sstream>

#include "vsdepth/construct.hpp"
#include "vsdepth/matching.hpp"

namespace vsdepth {

const char* status_name(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::Proved: return "proved";
    case SolveStatus::Disproved: return "disproved";
    case SolveStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "unknown";
}

namespace {

struct OutOfBudget {};

// Search state. covered_[r - d] flags, by colex rank, the sets of rank r
// already inside a chosen interval; the rank-k layer records used tops.
//
// Two reductions keep the search small, both complete:
//  * Tops have exactly k points. An interval [C,B] with |B| > k and |C| < k
//    splits as [C, B-x] ⊔ [C+x, B] for x in B-C; repeating until every
//    piece has top size k or bottom size >= k (those pieces are dropped to
//    the trivial completion) turns any solution into one of this form.
//  * The interval holding the colex-least uncovered set C of lowest rank
//    has bottom exactly C: a smaller bottom would be an uncovered set of
//    lower rank.
class IntervalSearch {
 public:
  IntervalSearch(int n, int d, int k, const SearchBudget& budget)
      : n_(n), d_(d), k_(k), budget_(budget),
        deadline_(std::chrono::steady_clock::now() + budget.wall_time) {
    for (int r = d; r <= k; ++r) {
      covered_.emplace_back(binomial(n, r), 0);
      uncovered_.push_back(binomial(n, r));
    }
  }

  SolveResult run() {
    SolveResult result;
    result.value_or_bound = k_;
    try {
      if (search()) {
        result.status = SolveStatus::Proved;
        Certificate cert(n_, d_, k_, chosen_);
        const VerifyReport report = verify_certificate(cert);
        if (!report.valid || *report.achieved_depth < k_) {
          throw Error(Errc::Internal, "solver produced a certificate that does not verify");
        }
        result.certificate = std::move(cert);
      } else {
        result.status = SolveStatus::Disproved;
      }
    } catch (const OutOfBudget&) {
      result.status = SolveStatus::BudgetExhausted;
    }
    result.nodes_explored = nodes_;
    return result;
  }

 private:
  bool is_covered(int r, Mask m) const { return covered_[r - d_][colex_rank(m)] != 0; }

  void set_covered(int r, Mask m, std::uint8_t v) {
    covered_[r - d_][colex_rank(m)] = v;
    if (v) {
      --uncovered_[r - d_];
    } else {
      ++uncovered_[r - d_];
    }
  }

  void tick() {
    ++nodes_;
    if (nodes_ > budget_.max_nodes) throw OutOfBudget{};
    if ((nodes_ & 255) == 0 && std::chrono::steady_clock::now() > deadline_) throw OutOfBudget{};
  }

  // Each uncovered set of the lowest open rank r0 must be the bottom of a
  // new interval, and such an interval holds C(k-r0, j) sets of rank r0+j,
  // all currently uncovered, and uses one unused top.
  bool counts_feasible(int r0) const {
    const std::uint64_t need = uncovered_[r0 - d_];
    if (need > uncovered_[k_ - d_]) return false;
    for (int j = 1; r0 + j < k_; ++j) {
      if (need * detail::binom_unchecked(k_ - r0, j) > uncovered_[r0 + j - d_]) return false;
    }
    return true;
  }

  std::vector<Mask> uncovered_at(int r) const {
    std::vector<Mask> out;
    const auto& flags = covered_[r - d_];
    Mask m = full_mask(r);
    for (std::size_t i = 0; i < flags.size(); ++i) {
      if (!flags[i]) out.push_back(m);
      if (i + 1 < flags.size()) m = next_colex(m);
    }
    return out;
  }

  // Only [S, S+x] intervals remain: a bipartite matching into unused tops.
  bool finish_by_matching() {
    auto left = uncovered_at(k_ - 1);
    auto right = uncovered_at(k_);
    const auto g = BipartiteGraph::containment(n_, std::move(left), std::move(right));
    const Matching m = max_matching(g);
    if (!m.is_complete()) return false;
    const auto mates = m.mates();
    for (std::size_t u = 0; u < g.left_size(); ++u) {
      chosen_.push_back(RawInterval{g.left_mask(u), g.right_mask(mates[u])});
    }
    return true;
  }

  Mask first_uncovered(int r) const {
    const auto& flags = covered_[r - d_];
    const auto it = std::find(flags.begin(), flags.end(), std::uint8_t{0});
    return colex_unrank(static_cast<std::uint64_t>(it - flags.begin()), r);
  }

  bool fits(Mask bottom, Mask extra) const {
    if (is_covered(k_, bottom | extra)) return false;
    // Proper subsets Y of `extra`, Y nonempty; the bottom itself is open.
    for (Mask y = (extra - 1) & extra; y != 0; y = (y - 1) & extra) {
      if (is_covered(popcount(bottom | y), bottom | y)) return false;
    }
    return true;
  }

  void mark(Mask bottom, Mask extra, std::uint8_t v) {
    Mask y = extra;
    for (;;) {
      set_covered(popcount(bottom | y), bottom | y, v);
      if (y == 0) break;
      y = (y - 1) & extra;
    }
  }

  // One open node: the forced bottom and a cursor over the colex-ordered
  // choices of k - |bottom| extra points from the rest of [n].
  struct Frame {
    Mask bottom = 0;
    std::array<std::uint8_t, 64> pool{};  // positions of the free points
    Mask comb = 0;                        // next choice, over pool indices
    std::uint64_t remaining = 0;
    Mask applied = 0;                     // extra points of the live child
  };

  Frame open_frame(int r0) const {
    Frame f;
    f.bottom = first_uncovered(r0);
    const Mask free = full_mask(n_) & ~f.bottom;
    int m = 0;
    for (Mask r = free; r != 0; r &= r - 1) f.pool[m++] = static_cast<std::uint8_t>(std::countr_zero(r));
    f.comb = full_mask(k_ - r0);
    f.remaining = detail::binom_unchecked(m, k_ - r0);
    return f;
  }

  static Mask deposit(const Frame& f) {
    Mask out = 0;
    for (Mask r = f.comb; r != 0; r &= r - 1) out |= Mask{1} << f.pool[std::countr_zero(r)];
    return out;
  }

  // Iterative so the depth (one level per chosen interval, tens of
  // thousands for n around 20) is not bounded by the call stack.
  bool search() {
    std::vector<Frame> frames;
    bool descend = true;
    for (;;) {
      if (descend) {
        tick();
        int r0 = d_;
        while (r0 < k_ && uncovered_[r0 - d_] == 0) ++r0;
        if (r0 == k_) return true;
        bool dead = !counts_feasible(r0);
        if (!dead && r0 == k_ - 1) {
          if (finish_by_matching()) return true;
          dead = true;
        }
        if (!dead) frames.push_back(open_frame(r0));
      }
      if (frames.empty()) return false;
      Frame& f = frames.back();
      if (f.applied != 0) {
        chosen_.pop_back();
        mark(f.bottom, f.applied, 0);
        f.applied = 0;
      }
      descend = false;
      while (f.remaining > 0) {
        const Mask extra = deposit(f);
        if (--f.remaining > 0) f.comb = next_colex(f.comb);
        if (fits(f.bottom, extra)) {
          mark(f.bottom, extra, 1);
          chosen_.push_back(RawInterval{f.bottom, f.bottom | extra});
          f.applied = extra;
          descend = true;
          break;
        }
      }
      if (!descend) frames.pop_back();
    }
  }

  int n_;
  int d_;
  int k_;
  SearchBudget budget_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<std::vector<std::uint8_t>> covered_;
  std::vector<std::uint64_t> uncovered_;
  std::vector<RawInterval> chosen_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SolveResult certify_at_least(int n, int d, int k, const SearchBudget& budget) {
  if (n < 1 || n > kMaxUniverse || d < 1 || d > n || k < d || k > n) {
    throw Error(Errc::BadParameters, "certify_at_least needs 1 <= d <= k <= n <= 63");
  }
  IntervalSearch search(n, d, k, budget);
  return search.run();
}

SolveResult exact_sdepth(int n, int d, const SearchBudget& budget) {
  if (n < 1 || n > kMaxUniverse || d < 1 || d > n) {
    throw Error(Errc::BadParameters, "exact_sdepth needs 1 <= d <= n <= 63");
  }
  SolveResult out;
  bool ceiling_known = true;  // every k above the current one is refuted
  for (int k = upper_bound(n, d); k >= d; --k) {
    SolveResult r = certify_at_least(n, d, k, budget);
    out.nodes_explored += r.nodes_explored;
    if (r.status == SolveStatus::Proved) {
      out.status = ceiling_known ? SolveStatus::Proved : SolveStatus::BudgetExhausted;
      out.value_or_bound = k;
      out.certificate = std::move(r.certificate);
      return out;
    }
    if (r.status == SolveStatus::BudgetExhausted) ceiling_known = false;
  }
  throw Error(Errc::Internal, "no depth proved, not even the generator degree");
}

std::vector<ScanRow> conjecture_scan(int max_n, const SearchBudget& budget, int threads) {
  if (max_n < 1 || max_n > kMaxUniverse) {
    throw Error(Errc::BadParameters, "scan needs 1 <= max_n <= 63");
  }
  std::vector<ScanRow> rows;
  for (int n = 1; n <= max_n; ++n) {
    for (int d = 1; d <= n; ++d) rows.push_back(ScanRow{n, d, upper_bound(n, d), {}, false});
  }
  std::exception_ptr failure;
  const std::int64_t count = static_cast<std::int64_t>(rows.size());
  // Largest cases last in the list; dynamic scheduling keeps workers busy.
#pragma omp parallel for num_threads(std::max(1, threads)) schedule(dynamic, 1)
  for (std::int64_t i = count - 1; i >= 0; --i) {
    try {
      ScanRow& row = rows[i];
      row.result = exact_sdepth(row.n, row.d, budget);
      row.discrepancy = row.result.status == SolveStatus::Proved &&
                        row.result.value_or_bound != row.conjectured;
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string format_scan_table(const std::vector<ScanRow>& rows) {
  std::ostringstream out;
  out << std::setw(3) << "n" << std::setw(4) << "d" << std::setw(13) << "conjectured"
      << std::setw(8) << "proved" << "  status\n";
  int discrepancies = 0;
  for (const ScanRow& row : rows) {
    std::string proved = std::to_string(row.result.value_or_bound);
    if (row.result.status != SolveStatus::Proved) proved = ">=" + proved;
    out << std::setw(3) << row.n << std::setw(4) << row.d << std::setw(13) << row.conjectured
        << std::setw(8) << proved << "  " << status_name(row.result.status)
        << (row.discrepancy ? " DISCREPANCY" : "") << "\n";
    discrepancies += row.discrepancy ? 1 : 0;
  }
  out << "discrepancies: " << discrepancies << "\n";
  return out.str();
}

}  // namespace vsdepth
