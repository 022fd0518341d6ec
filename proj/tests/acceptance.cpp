// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
// `acceptance --extended` (or VSDEPTH_ACCEPT_N10=1) adds the n = 10 exact
// values to criterion 4.

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "vsdepth/blocks.hpp"
#include "vsdepth/construct.hpp"
#include "vsdepth/solver.hpp"

using namespace vsdepth;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_secs,
               const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double took = seconds_since(start);
  if (out.pass && limit_secs > 0 && took >= limit_secs) {
    out.fail("took " + std::to_string(took) + " s, limit " + std::to_string(limit_secs) + " s");
  }
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (out.pass ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << took << " s)";
  if (!out.detail.empty()) line << ": " << out.detail;
  std::cout << line.str() << std::endl;
  if (!out.pass) ++failures;
}

// Depth reported by the verifier, or -1.
int verified_depth(const Certificate& c) {
  const VerifyReport r = verify_certificate(c);
  return r.valid ? *r.achieved_depth : -1;
}

std::string nd(int n, int d) { return "(n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")"; }

}  // namespace

int main(int argc, char** argv) {
  bool extended = std::getenv("VSDEPTH_ACCEPT_N10") != nullptr;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--extended") == 0) extended = true;

  criterion(1, "c=2 construction, d = 1..12, depth exactly d+1, < 10 s", 10.0, [](Outcome& o) {
    for (int d = 1; d <= 12; ++d) {
      const int depth = verified_depth(construct_c2(d));
      if (depth != d + 1) o.fail("d=" + std::to_string(d) + " depth " + std::to_string(depth));
    }
  });

  criterion(2, "c=3 construction, d = 1..8, depth exactly d+2, each (d+1)-set covered once, < 60 s",
            60.0, [](Outcome& o) {
              for (int d = 1; d <= 8; ++d) {
                const int n = 3 * d + 2;
                const Certificate c = construct_c3(d);
                const int depth = verified_depth(c);
                if (depth != d + 2) o.fail("d=" + std::to_string(d) + " depth " + std::to_string(depth));
                // Count holders of every (d+1)-set directly, interval by interval.
                std::vector<std::uint8_t> hits(binomial(n, d + 1), 0);
                for (const RawInterval& iv : c.raw_intervals()) {
                  const Mask free = iv.top & ~iv.bottom;
                  for (Mask f = free; f != 0; f &= f - 1) {
                    const Mask s = iv.bottom | (f & (~f + 1));
                    if (hits[colex_rank(s)] < 255) ++hits[colex_rank(s)];
                  }
                }
                for (std::size_t i = 0; i < hits.size(); ++i) {
                  if (hits[i] != 1) {
                    o.fail("d=" + std::to_string(d) + " set " + format_set(colex_unrank(i, d + 1)) +
                           " covered " + std::to_string(hits[i]) + " times");
                    break;
                  }
                }
              }
            });

  criterion(3, "c=4 construction, d = 1..6, depth exactly d+3, complete matching, < 120 s", 120.0,
            [](Outcome& o) {
              for (int d = 1; d <= 6; ++d) {
                const int n = 4 * d + 3;
                // construct_c4 throws MatchingFailed on an incomplete matching;
                // the interval count confirms every uncovered (d+2)-set was matched.
                const Certificate c = construct_c4(d);
                const std::size_t expect = binomial(n, d) + uncovered_sets(n, d, 4, d + 2).size();
                if (c.size() != expect) o.fail("d=" + std::to_string(d) + " interval count");
                const int depth = verified_depth(c);
                if (depth != d + 3) o.fail("d=" + std::to_string(d) + " depth " + std::to_string(depth));
              }
            });

  criterion(4,
            std::string("exact sdepth = d + floor((n-d)/(d+1)) for all 1 <= d <= n <= ") +
                (extended ? "10" : "9") + ", 60 s per case, no budget exhaustion",
            0.0, [extended](Outcome& o) {
              const int max_n = extended ? 10 : 9;
              SearchBudget budget;
              budget.wall_time = std::chrono::seconds(60);
              for (int n = 1; n <= max_n; ++n)
                for (int d = 1; d <= n; ++d) {
                  const auto start = Clock::now();
                  const SolveResult r = exact_sdepth(n, d, budget);
                  const double took = seconds_since(start);
                  const int expect = d + (n - d) / (d + 1);
                  if (r.status != SolveStatus::Proved) o.fail(nd(n, d) + " " + status_name(r.status));
                  if (r.value_or_bound != expect)
                    o.fail(nd(n, d) + " value " + std::to_string(r.value_or_bound));
                  if (took >= 60.0) o.fail(nd(n, d) + " took " + std::to_string(took) + " s");
                  if (!r.certificate || verified_depth(*r.certificate) < expect)
                    o.fail(nd(n, d) + " certificate does not verify");
                }
            });

  criterion(5, "bounds: (11,3) exact 5; (24,4) 7/8/unknown; (4,2) exact 2; (n,1) exact ceil(n/2), n <= 20",
            0.0, [](Outcome& o) {
              if (bounds(11, 3).known_exact != 5) o.fail("(11,3)");
              const Bounds b = bounds(24, 4);
              if (b.lower_certified != 7 || b.upper != 8 || b.known_exact.has_value()) o.fail("(24,4)");
              if (bounds(4, 2).known_exact != 2) o.fail("(4,2)");
              for (int n = 1; n <= 20; ++n) {
                if (bounds(n, 1).known_exact != (n + 1) / 2) o.fail(nd(n, 1));
              }
            });

  criterion(6, "(c-1) C(n,d) = C(n,d+1) for n = cd+c-1 <= 63", 0.0, [](Outcome& o) {
    int checked = 0;
    for (int c = 2; c <= 32; ++c)
      for (int d = 1; c * d + c - 1 <= 63; ++d) {
        const int n = c * d + c - 1;
        const unsigned __int128 lhs = static_cast<unsigned __int128>(c - 1) * binomial(n, d);
        if (lhs != binomial(n, d + 1) || binomial(n, d + 1) != oracle::pascal(n, d + 1))
          o.fail("c=" + std::to_string(c) + " d=" + std::to_string(d));
        ++checked;
      }
    if (checked == 0) o.fail("no cases");
  });

  criterion(7, "block structure unique and equal to brute force, n <= 9, q in {1,2,3}, < 5 min",
            300.0, [](Outcome& o) {
              long cases = 0;
              for (int n = 2; n <= 9; ++n)
                for (Mask a = 1; a <= full_mask(n); ++a) {
                  const long m = popcount(a);
                  for (long q = 1; q <= 3; ++q)
                    for (long p = q; p * m <= q * (n - 1); ++p) {
                      ++cases;
                      const auto brute = oracle::all_block_structures(n, a, p, q);
                      if (brute.size() != 1) {
                        o.fail("n=" + std::to_string(n) + " A=" + format_set(a) + " found " +
                               std::to_string(brute.size()) + " structures");
                        continue;
                      }
                      const BlockStructure bs = block_structure(n, PointSet(n, a), Density(p, q));
                      oracle::Blocks got;
                      for (const CircBlock& b : bs.blocks) got.blocks.emplace_back(b.start, b.end);
                      for (const PointSet& g : bs.gaps) got.gaps.push_back(g.bits());
                      if (!(got == brute.front()))
                        o.fail("n=" + std::to_string(n) + " A=" + format_set(a) + " differs");
                    }
                }
              if (o.pass) o.detail = std::to_string(cases) + " cases";
            });

  criterion(8, "f_c intervals pairwise disjoint; uncovered sets have no covered superset, c in {2,3,4}, d <= 5",
            0.0, [](Outcome& o) {
              for (int c = 2; c <= 4; ++c)
                for (int d = 1; d <= 5; ++d) {
                  const int n = c * d + c - 1;
                  const auto raw = veronese_raw(n, d, c);
                  for (std::size_t i = 0; i < raw.size(); ++i)
                    for (std::size_t j = i + 1; j < raw.size(); ++j)
                      if (raw_overlap(raw[i], raw[j]))
                        o.fail("c=" + std::to_string(c) + " d=" + std::to_string(d) + " " +
                               format_set(raw[i].bottom) + " meets " + format_set(raw[j].bottom));
                  for (int t = d + 1; t <= d + c - 1; ++t) {
                    // A superset of D lies in [A, f(A)] iff D ⊆ f(A): mark every
                    // t-subset of every top, then look up each uncovered set.
                    std::vector<std::uint8_t> under_top(binomial(n, t), 0);
                    for (const RawInterval& iv : raw)
                      for_each_subset_of_size(iv.top, t, [&](Mask s) { under_top[colex_rank(s)] = 1; });
                    for (const PointSet& u : uncovered_sets(n, d, c, t)) {
                      bool bad = under_top[colex_rank(u.bits())] != 0;
                      if (n <= 19) bad = bad || has_covered_superset(u, n, d, c);
                      if (bad)
                        o.fail("c=" + std::to_string(c) + " d=" + std::to_string(d) + " " +
                               format_set(u) + " has a covered superset");
                    }
                  }
                }
            });

  criterion(9, "construct_general verifies at depth >= d + min(floor((n+1)/(d+1)), 4) - 1, n <= 14",
            0.0, [](Outcome& o) {
              for (int n = 1; n <= 14; ++n)
                for (int d = 1; d <= n; ++d) {
                  const int want = d + std::min((n + 1) / (d + 1), 4) - 1;
                  const int got = verified_depth(construct_general(n, d));
                  if (got < std::max(want, d)) o.fail(nd(n, d) + " depth " + std::to_string(got));
                }
            });

  criterion(10, "solver proves d+c-1 at every base case n = cd+c-1 <= 11, c <= 4", 0.0,
            [](Outcome& o) {
              for (int c = 2; c <= 4; ++c)
                for (int d = 1; c * d + c - 1 <= 11; ++d) {
                  const int n = c * d + c - 1;
                  const SolveResult r = certify_at_least(n, d, d + c - 1);
                  if (r.status != SolveStatus::Proved) o.fail(nd(n, d) + " " + status_name(r.status));
                  else if (verified_depth(*r.certificate) < d + c - 1)
                    o.fail(nd(n, d) + " certificate does not verify");
                }
            });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
