#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vsdepth/blocks.hpp"

using namespace vsdepth;

namespace {

std::string show_blocks(const BlockStructure& bs) {
  std::string out;
  for (const CircBlock& b : bs.blocks) out += format_set(b.as_set()) + ";";
  out += "|";
  for (const PointSet& g : bs.gaps) out += format_set(g) + ";";
  return out;
}

oracle::Blocks as_oracle(const BlockStructure& bs) {
  oracle::Blocks out;
  for (const CircBlock& b : bs.blocks) out.blocks.emplace_back(b.start, b.end);
  for (const PointSet& g : bs.gaps) out.gaps.push_back(g.bits());
  return out;
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

TEST_CASE("density") {
  CHECK(Density(6, 4).num() == 3);
  CHECK(Density(6, 4).den() == 2);
  CHECK(Density(3).to_string() == "3/1");
  CHECK(parse_density("5/2") == Density(5, 2));
  CHECK(parse_density("4") == Density(4, 1));
  CHECK(code_of([] { Density(1, 2); }) == Errc::DensityOutOfRange);
  CHECK(code_of([] { Density(3, 0); }) == Errc::DensityOutOfRange);
  CHECK(code_of([] { parse_density("x/2"); }) == Errc::Parse);
}

TEST_CASE("block_structure examples") {
  const auto bs = block_structure(8, make_set(8, {1, 5}), Density(3));
  CHECK(show_blocks(bs) == "{1,2,3};{5,6,7};|{4};{8};");

  const auto merged = block_structure(8, make_set(8, {1, 2}), Density(3));
  CHECK(show_blocks(merged) == "{1,2,3,4,5,6};|{7,8};");

  const auto rational = block_structure(6, make_set(6, {1, 3}), Density(5, 2));
  CHECK(show_blocks(rational) == "{1,2};{3,4};|{};{5,6};");

  const auto wrap = block_structure(8, make_set(8, {2, 7}), Density(3));
  REQUIRE(wrap.blocks.size() == 2);
  CHECK(wrap.blocks[0] == CircBlock{8, 2, 4});
  CHECK(wrap.blocks[1] == CircBlock{8, 7, 1});
  CHECK(format_set(wrap.gaps[0]) == "{5,6}");
  CHECK(wrap.gaps[1].is_empty());

  const auto empty_gap = block_structure(8, make_set(8, {1, 4}), Density(3));
  CHECK(verify_block_structure(empty_gap).ok());
}

TEST_CASE("first block need not start at min(A)") {
  // 8 is the only start: {8,1,2,...} swallows 2 before reaching 6.
  const auto bs = block_structure(8, make_set(8, {2, 8}), Density(3));
  REQUIRE(bs.blocks.size() == 1);
  CHECK(bs.blocks[0] == CircBlock{8, 8, 5});
  CHECK(format_set(bs.gaps[0]) == "{6,7}");
}

TEST_CASE("block_structure errors") {
  CHECK(code_of([] { block_structure(8, PointSet::empty(8), Density(3)); }) == Errc::EmptySet);
  CHECK(code_of([] { block_structure(8, make_set(8, {1, 2, 3}), Density(3)); }) ==
        Errc::DensityOutOfRange);
  CHECK(code_of([] { block_structure(8, make_set(7, {1}), Density(3)); }) == Errc::UniverseMismatch);
  // Boundary density (n-1)/|A| is accepted.
  CHECK(verify_block_structure(block_structure(7, make_set(7, {1, 4}), Density(3))).ok());
}

TEST_CASE("verify_block_structure flags broken structures") {
  BlockStructure too_long{8, make_set(8, {1, 5}), Density(3),
                          {CircBlock{8, 1, 4}, CircBlock{8, 5, 7}},
                          {PointSet::empty(8), make_set(8, {8})}};
  const BlockCheck c1 = verify_block_structure(too_long);
  CHECK(c1.violation == BlockViolation::Length);
  CHECK(c1.index == 0);

  BlockStructure bad_start{8, make_set(8, {1, 2}), Density(3),
                           {CircBlock{8, 1, 3}, CircBlock{8, 4, 6}},
                           {PointSet::empty(8), make_set(8, {7, 8})}};
  const BlockCheck c2 = verify_block_structure(bad_start);
  CHECK(c2.violation == BlockViolation::StartNotInA);
  CHECK(c2.index == 1);

  BlockStructure overlapping{8, make_set(8, {1, 5}), Density(3),
                             {CircBlock{8, 1, 3}, CircBlock{8, 3, 7}},
                             {PointSet::empty(8), make_set(8, {8})}};
  CHECK(verify_block_structure(overlapping).violation == BlockViolation::Malformed);

  BlockStructure gap_in_a{8, make_set(8, {1, 4, 5}), Density(3),
                          {CircBlock{8, 1, 3}, CircBlock{8, 5, 7}},
                          {make_set(8, {4}), make_set(8, {8})}};
  CHECK(verify_block_structure(gap_in_a).violation == BlockViolation::GapMeetsA);
  CHECK(std::string(violation_name(BlockViolation::Prefix)) != "");
}

TEST_CASE("f_delta examples") {
  CHECK(format_set(f_delta(5, make_set(5, {1}), Density(3))) == "{1,4,5}");
  CHECK(format_set(f_delta(8, make_set(8, {2, 7}), Density(3))) == "{2,5,6,7}");
  CHECK(format_set(f_delta(7, make_set(7, {1}), Density(4))) == "{1,5,6,7}");
}

TEST_CASE("unique structure equals brute force, n <= 7") {
  // The full n <= 9 sweep runs in the acceptance binary.
  for (int n = 2; n <= 7; ++n) {
    for (Mask a = 1; a <= full_mask(n); ++a) {
      const long m = popcount(a);
      for (long q = 1; q <= 3; ++q) {
        for (long p = q; p * m <= q * (n - 1); ++p) {
          const auto brute = oracle::all_block_structures(n, a, p, q);
          REQUIRE(brute.size() == 1);
          const auto bs = block_structure(n, PointSet(n, a), Density(p, q));
          REQUIRE(as_oracle(bs) == brute.front());
          REQUIRE(verify_block_structure(bs).ok());
          REQUIRE(f_delta_mask(n, a, p, q) == (a | bs.gap_union().bits()));
        }
      }
    }
  }
}

TEST_CASE("right size |f_c(A)| = d+c-1 and f(A) ⊇ A, gaps outside blocks") {
  for (int c = 2; c <= 4; ++c) {
    for (int d = 1; d <= 5; ++d) {
      const int n = c * d + c - 1;
      for (const PointSet& a : sets_of_size(n, d)) {
        const auto bs = block_structure(n, a, Density(c));
        const PointSet f = f_delta(n, a, Density(c));
        REQUIRE(f.size() == d + c - 1);
        REQUIRE(bs.block_union().size() == c * d);
        REQUIRE(a.subset_of(f));
        REQUIRE(((f - a) & bs.block_union()).is_empty());
      }
    }
  }
}

TEST_CASE("rotation equivariance") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 30);
    Mask a = rng() & full_mask(n);
    if (a == 0) a = 1;
    const long m = popcount(a);
    if (m > n - 1) continue;
    const long q = 1 + static_cast<long>(rng() % 3);
    const long pmax = q * (n - 1) / m;
    if (pmax < q) continue;
    const long p = q + static_cast<long>(rng() % (pmax - q + 1));
    const int r = static_cast<int>(rng() % n);
    const PointSet s(n, a);
    const auto base = block_structure(n, s, Density(p, q));
    const auto turned = block_structure(n, rotate(s, r), Density(p, q));
    REQUIRE(rotate(base.block_union(), r) == turned.block_union());
    REQUIRE(rotate(base.gap_union(), r) == turned.gap_union());
    REQUIRE(rotate(f_delta(n, s, Density(p, q)), r) == f_delta(n, rotate(s, r), Density(p, q)));
    REQUIRE(base.blocks.size() == turned.blocks.size());
  }
}
