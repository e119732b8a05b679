#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "transframe/transframe.hpp"

using namespace transframe;

namespace {

std::size_t choose2(std::size_t m) { return m * (m - 1) / 2; }

}  // namespace

TEST(MakeH, Examples) {
  Frame h0 = make_H(0);
  EXPECT_EQ(h0.names(), (std::vector<std::string>{"a", "b{0,1}", "c0", "c1"}));
  EXPECT_EQ(h0.edge_count(), 5u);
  EXPECT_TRUE(h0.sees(0, 1) && h0.sees(0, 2) && h0.sees(0, 3));
  EXPECT_TRUE(h0.sees(1, 2) && h0.sees(1, 3));
  EXPECT_EQ(make_H(1).size(), 7u);
  EXPECT_EQ(make_H(2).size(), 11u);
  for (std::size_t n = 0; n <= 4; ++n) {
    Frame h = make_H(n);
    EXPECT_EQ(h.size(), 1 + choose2(n + 2) + n + 2);
    EXPECT_EQ(rank_of_frame(h), 3u);
    for (PointIndex w = 0; w < h.size(); ++w) EXPECT_FALSE(h.reflexive(w));
    // b{i,j} sees exactly c_i and c_j.
    for (std::size_t i = 0; i < n + 2; ++i)
      for (std::size_t j = i + 1; j < n + 2; ++j) {
        PointIndex b = h.index_of(h_pair_name(i, j));
        EXPECT_EQ(h.names_of(h.successors(b)),
                  (std::vector<std::string>{"c" + std::to_string(i), "c" + std::to_string(j)}));
      }
  }
  EXPECT_THROW(make_H(20), Error);
}

TEST(VerifyH, FormulaLevelUpToTwo) {
  for (std::size_t n = 0; n <= 2; ++n) {
    auto r = verify_H_properties(n, true);
    EXPECT_TRUE(r.strict_partial_order);
    EXPECT_EQ(r.rank, 3u);
    EXPECT_TRUE(r.b3_valid) << n;
    EXPECT_TRUE(r.wid2_plus_valid) << n;
    EXPECT_FALSE(r.wid1_plus_valid) << n;
    auto s = verify_H_properties(n, false);
    EXPECT_EQ(s.b3_valid, r.b3_valid);
    EXPECT_EQ(s.wid2_plus_valid, r.wid2_plus_valid);
    EXPECT_EQ(s.wid1_plus_valid, r.wid1_plus_valid);
  }
}

TEST(VerifyH, IrreflexiveAntichainMatchesOracle) {
  for (std::size_t n = 0; n <= 2; ++n) {
    Frame h = make_H(n);
    EXPECT_EQ(verify_H_properties(n, false).irreflexive_antichain,
              oracle::max_antichain(h, true, oracle::all_points(h)));
  }
  // Mixed antichains: k of the c's plus every b avoiding them gives
  // C(n+2-k, 2) + k, never more than max(|B_n|, |C_n|).
  for (std::size_t n = 0; n <= 4; ++n)
    EXPECT_EQ(verify_H_properties(n, false).irreflexive_antichain, std::max(choose2(n + 2), n + 2));
}

TEST(VerifyH, Examples) {
  // n = 2: the four c's form an irreflexive antichain, so Wid_3* fails.
  Frame h2 = make_H(2);
  EXPECT_FALSE(irr_antichain_everywhere(h2, 3));
  EXPECT_FALSE(frame_valid(h2, mk_Wid_bullet(3)).valid);
  // n = 1: Wid_1+ fails at a through a b whose subframe has width 2.
  Frame h1 = make_H(1);
  auto v = check_weak_width_at_most(h1, h1.index_of("a"), 1);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.successor);
  EXPECT_EQ(h1.name(*v.successor).front(), 'b');
  EXPECT_EQ(v.witness.size(), 2u);
}

TEST(GenerateCorpus, Examples) {
  CorpusSpec one;
  one.max_points = 1;
  one.count = 2;
  one.seed = 7;
  auto frames = generate_corpus(one);
  ASSERT_EQ(frames.size(), 2u);
  for (const auto& f : frames) EXPECT_EQ(f.size(), 1u);

  CorpusSpec flat;
  flat.rank_bound = 1;
  flat.count = 30;
  flat.rooted = false;
  for (const auto& f : generate_corpus(flat)) {
    EXPECT_EQ(rank_of_frame(f), 1u);
    Skeleton sk(f);
    for (ClusterIndex c = 0; c < sk.size(); ++c) EXPECT_TRUE(sk.above(c).empty());
  }

  CorpusSpec ww;
  ww.require_weak_width_1 = true;
  ww.rank_bound = 2;
  ww.max_points = 6;
  ww.count = 40;
  for (const auto& f : generate_corpus(ww)) {
    ASSERT_TRUE(is_rooted(f));
    EXPECT_TRUE(check_weak_width_at_most(f, least_root(f), 1).holds);
    EXPECT_LE(rank_of_frame(f), 2u);
    EXPECT_LE(f.size(), 6u);
  }
}

TEST(GenerateCorpus, DeterministicPerSeed) {
  CorpusSpec s;
  s.max_points = 7;
  s.count = 25;
  s.seed = 99;
  auto a = generate_corpus(s), b = generate_corpus(s);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k], b[k]);
  s.seed = 100;
  auto c = generate_corpus(s);
  bool differs = false;
  for (std::size_t k = 0; k < a.size(); ++k) differs = differs || !(a[k] == c[k]);
  EXPECT_TRUE(differs);
}

TEST(GenerateCorpus, CoversBothClusterKinds) {
  CorpusSpec s;
  s.max_points = 8;
  s.count = 100;
  std::size_t degenerate = 0, nondegenerate = 0;
  for (const auto& f : generate_corpus(s)) {
    Skeleton sk(f);
    degenerate += sk.degenerate_count();
    nondegenerate += sk.size() - sk.degenerate_count();
    for (PointIndex a = 0; a < f.size(); ++a)
      for (PointIndex b = 0; b < f.size(); ++b)
        for (PointIndex c = 0; c < f.size(); ++c)
          if (f.sees(a, b) && f.sees(b, c)) {
            ASSERT_TRUE(f.sees(a, c));
          }
  }
  EXPECT_GT(degenerate, 0u);
  EXPECT_GT(nondegenerate, 0u);
}

TEST(GenerateCorpus, RejectionBudget) {
  CorpusSpec s;
  s.max_points = 1;
  s.rank_bound = 1;
  s.require_wid_bullet = 1;
  s.count = 1;
  s.attempts_per_frame = 1000;
  EXPECT_EQ(generate_corpus(s).size(), 1u);
  // A single point meets every constraint, so only an empty attempt budget
  // can run out.
  s.attempts_per_frame = 0;
  try {
    generate_corpus(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RejectionBudgetExceeded);
  }
}

TEST(GenerateCorpus, ConstraintsReplay) {
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t k = 1; k <= 3; ++k) {
      CorpusSpec s;
      s.max_points = 8;
      s.rank_bound = m;
      s.require_weak_width_1 = true;
      s.require_wid_bullet = k;
      s.count = 30;
      s.seed = m * 10 + k;
      for (const auto& f : generate_corpus(s)) {
        ASSERT_LE(rank_of_frame(f), m);
        ASSERT_TRUE(weak_width_everywhere(f, 1));
        ASSERT_TRUE(irr_antichain_everywhere(f, k));
        ASSERT_LE(Skeleton(f).degenerate_count(), m * k);
      }
    }
}

// Catalogue sizes. The reference counts come from the Python oracles in
// tests/oracles (brute force over all relations for up to four points, and
// a point-by-point extension with canonical forms for five).
TEST(EnumerateFrames, FrozenCounts) {
  const std::size_t all[] = {0, 2, 8, 39, 242, 1895};
  const std::size_t rooted[] = {0, 2, 5, 19, 89, 534};
  std::size_t total = 0, total_rooted = 0;
  auto cat = enumerate_frames(5);
  for (std::size_t n = 1; n <= 5; ++n) {
    std::size_t c = 0, r = 0;
    for (const auto& f : cat)
      if (f.size() == n) {
        ++c;
        r += is_rooted(f);
      }
    EXPECT_EQ(c, all[n]) << n;
    EXPECT_EQ(r, rooted[n]) << n;
    total += c;
    total_rooted += r;
  }
  EXPECT_EQ(total, 2186u);
  EXPECT_EQ(total_rooted, 649u);
  EXPECT_EQ(enumerate_frames(1).size(), 2u);
  EXPECT_EQ(enumerate_frames(4, true).size(), 115u);
}

TEST(EnumerateFrames, PairwiseNonIsomorphicUpToFour) {
  auto cat = enumerate_frames(4);
  for (std::size_t i = 0; i < cat.size(); ++i)
    for (std::size_t j = i + 1; j < cat.size(); ++j)
      if (cat[i].size() == cat[j].size()) {
        ASSERT_FALSE(oracle::isomorphic(cat[i], cat[j]));
      }
}

TEST(EnumerateFrames, Limits) { EXPECT_THROW(enumerate_frames(6), Error); }
