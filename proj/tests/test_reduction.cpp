#include <gtest/gtest.h>

#include <random>

#include "oracles/oracles.hpp"
#include "transframe/transframe.hpp"

using namespace transframe;

namespace {

Frame irr_point() { return Frame::build({"w"}, {}, false); }
Frame refl_point() { return Frame::build({"w"}, {{"w", "w"}}, false); }
Frame cycle2() { return Frame::build({"w", "u"}, {{"w", "u"}, {"u", "w"}}, true); }
Frame chain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(names[i], names[i + 1]);
  return Frame::build(names, edges, true);
}
Frame fork_frame() { return Frame::build({"r", "u", "v"}, {{"r", "u"}, {"r", "v"}}, false); }

std::vector<PointIndex> identity(const Frame& f) {
  std::vector<PointIndex> m(f.size());
  for (PointIndex w = 0; w < f.size(); ++w) m[w] = w;
  return m;
}

// Dead ends go to dead ends and rank never grows along a reduction.
void expect_rank_facts(const ReductionMap& m) {
  auto rs = point_ranks(m.source);
  auto rt_ = point_ranks(m.target);
  for (PointIndex w = 0; w < m.source.size(); ++w) {
    ASSERT_EQ(m.source.dead_end(w), m.target.dead_end(m.map[w]));
    ASSERT_GE(rs[w], rt_[m.map[w]]);
  }
}

}  // namespace

TEST(IsReduction, Examples) {
  Frame h = make_H(1);
  EXPECT_TRUE(is_reduction({h, h, identity(h)}).ok());
  EXPECT_TRUE(is_reduction({cycle2(), refl_point(), {0, 0}}).ok());
  auto bad = is_reduction({chain(2), irr_point(), {0, 0}});
  EXPECT_EQ(bad.violation, ReductionCheck::Violation::Forth);
  EXPECT_EQ(bad.first, 0u);
  EXPECT_EQ(bad.second, 1u);
}

TEST(IsReduction, ReportsEachViolation) {
  using V = ReductionCheck::Violation;
  EXPECT_EQ(is_reduction({chain(2), chain(2), {0}}).violation, V::NotTotal);
  EXPECT_EQ(is_reduction({chain(2), chain(2), {0, 7}}).violation, V::NotTotal);
  auto ns = is_reduction({chain(2), chain(2), {0, 0}});
  EXPECT_EQ(ns.violation, V::NotSurjective);
  EXPECT_EQ(ns.first, 1u);
  // r sees u and v, both sent to the top of the 2-chain; the target's root
  // must then come from r, and the back condition needs nothing more.
  EXPECT_TRUE(is_reduction({fork_frame(), chain(2), {0, 1, 1}}).ok());
  // The reflexive point onto an irreflexive one breaks forth.
  EXPECT_EQ(is_reduction({refl_point(), irr_point(), {0}}).violation, V::Forth);
  // chain(3) onto chain(2) by x0,x1 -> 0 breaks forth at (x0, x1).
  EXPECT_EQ(is_reduction({chain(3), chain(2), {0, 0, 1}}).violation, V::Forth);
  // A reflexive root seeing an irreflexive point, sent onto a 2-cluster:
  // forth fails on the irreflexive edge.
  Frame src = Frame::build({"r", "s"}, {{"r", "r"}, {"r", "s"}, {"s", "s"}}, false);
  EXPECT_TRUE(is_reduction({src, refl_point(), {0, 0}}).ok());
  // Back: a 2-chain mapped onto a 2-cluster breaks forth first, so use a
  // reflexive 2-chain onto two mutually seeing points.
  Frame rc = Frame::build({"a", "b"}, {{"a", "a"}, {"a", "b"}, {"b", "b"}}, false);
  auto back = is_reduction({rc, cycle2(), {0, 1}});
  EXPECT_EQ(back.violation, V::Back);
  EXPECT_EQ(back.first, 1u);
  EXPECT_EQ(back.second, 0u);
}

TEST(FindReduction, Examples) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(find_reduction(make_H(n), make_H(k)).verdict, Verdict::No);
  for (const Frame& f : {make_H(1), fork_frame(), cycle2(), chain(4)}) {
    auto r = find_reduction(f, f);
    ASSERT_EQ(r.verdict, Verdict::Yes);
    EXPECT_TRUE(is_reduction(*r.reduction).ok());
  }
  auto fc = find_reduction(fork_frame(), chain(2));
  EXPECT_EQ(fc.verdict == Verdict::Yes, oracle::count_reductions(fork_frame(), chain(2)) > 0);
  EXPECT_EQ(fc.verdict, Verdict::Yes);
}

TEST(FindReduction, BudgetIsAThirdVerdict) {
  auto r = find_reduction(make_H(2), make_H(1), 3);
  EXPECT_EQ(r.verdict, Verdict::Budget);
  EXPECT_FALSE(r.reduction);
}

TEST(FindReduction, AgreesWithExhaustiveEnumeration) {
  std::mt19937_64 rng(2718);
  int yes = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 5;
    Frame s = oracle::random_frame(rng, n, 15 + static_cast<unsigned>(rng() % 40));
    Frame t = oracle::random_frame(rng, 1 + rng() % n, 15 + static_cast<unsigned>(rng() % 40));
    auto r = find_reduction(s, t);
    bool exists = oracle::count_reductions(s, t) > 0;
    ASSERT_NE(r.verdict, Verdict::Budget);
    ASSERT_EQ(r.verdict == Verdict::Yes, exists);
    if (r.reduction) {
      ASSERT_TRUE(oracle::is_reduction(s, t, r.reduction->map));
      ASSERT_TRUE(is_reduction(*r.reduction).ok());
      expect_rank_facts(*r.reduction);
      ++yes;
    }
  }
  EXPECT_GT(yes, 10);
}

TEST(IsReduction, AgreesWithDefinition) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    Frame s = oracle::random_frame(rng, 1 + rng() % 5, 30);
    Frame t = oracle::random_frame(rng, 1 + rng() % 3, 30);
    std::vector<PointIndex> m(s.size());
    for (auto& x : m) x = rng() % t.size();
    ASSERT_EQ(is_reduction({s, t, m}).ok(), oracle::is_reduction(s, t, m));
  }
}

TEST(Reductions, Compose) {
  std::mt19937_64 rng(77);
  int composed = 0;
  for (int trial = 0; trial < 400 && composed < 40; ++trial) {
    Frame f = oracle::random_frame(rng, 2 + rng() % 4, 35);
    Frame g = oracle::random_frame(rng, 1 + rng() % f.size(), 35);
    auto fg = find_reduction(f, g);
    if (fg.verdict != Verdict::Yes) continue;
    Frame h = oracle::random_frame(rng, 1 + rng() % g.size(), 35);
    auto gh = find_reduction(g, h);
    if (gh.verdict != Verdict::Yes) continue;
    std::vector<PointIndex> m(f.size());
    for (PointIndex w = 0; w < f.size(); ++w) m[w] = gh.reduction->map[fg.reduction->map[w]];
    ASSERT_TRUE(is_reduction({f, h, m}).ok());
    ++composed;
  }
  EXPECT_GT(composed, 5);
}

TEST(ReducibilityMatrix, Examples) {
  auto hm = reducibility_matrix({make_H(0), make_H(1)});
  EXPECT_EQ(hm[0][1].verdict, Verdict::No);
  EXPECT_EQ(hm[1][0].verdict, Verdict::No);
  auto ff = reducibility_matrix({fork_frame(), fork_frame()});
  EXPECT_EQ(ff[0][1].verdict, Verdict::Yes);
  EXPECT_EQ(ff[1][0].verdict, Verdict::Yes);
  EXPECT_EQ(ff[0][1].witness->generator, "r");
  auto cc = reducibility_matrix({chain(2), chain(3)}, kDefaultSearchBudget, 2);
  EXPECT_EQ(cc[0][1].verdict, Verdict::Yes);
  EXPECT_EQ(cc[1][0].verdict, Verdict::No);
  EXPECT_THROW(reducibility_matrix({}), Error);
}

TEST(AuditSequence, Examples) {
  auto h = audit_sequence({make_H(0), make_H(1), make_H(2)}, AuditMode::Full);
  EXPECT_EQ(h.verdict, AuditVerdict::Pass);
  EXPECT_TRUE(h.inconclusive.empty());
  auto same = audit_sequence({fork_frame(), fork_frame()}, AuditMode::Full);
  ASSERT_EQ(same.verdict, AuditVerdict::Fail);
  ASSERT_TRUE(same.witness);
  EXPECT_EQ(same.witness->i, 0u);
  EXPECT_EQ(same.witness->j, 1u);
  // The witness replays: it reduces the generated subframe onto frame i.
  const auto& w = *same.witness;
  EXPECT_TRUE(is_reduction(w.reduction).ok());
  EXPECT_EQ(w.reduction.source, generated_subframe(fork_frame(), fork_frame().index_of(w.generator)));
  EXPECT_EQ(w.reduction.target, fork_frame());
  EXPECT_EQ(audit_sequence({chain(3), chain(2)}, AuditMode::Backward).verdict, AuditVerdict::Pass);
  EXPECT_EQ(audit_sequence({chain(2), chain(3)}, AuditMode::Backward).verdict, AuditVerdict::Fail);
}

TEST(AuditSequence, BudgetMakesItUnknown) {
  auto a = audit_sequence({make_H(1), make_H(2)}, AuditMode::Full, 1);
  EXPECT_EQ(a.verdict, AuditVerdict::Unknown);
  EXPECT_FALSE(a.inconclusive.empty());
}

TEST(Crosscheck, Examples) {
  auto one = crosscheck_frame_formula(irr_point(), irr_point(), 0);
  EXPECT_TRUE(one.satisfiable);
  EXPECT_TRUE(one.reducible);
  Frame h = make_H(0);
  auto mid = crosscheck_frame_formula(chain(2), h, h.index_of("a"));
  EXPECT_EQ(mid.satisfiable, mid.reducible);
  EXPECT_EQ(mid.satisfiable, oracle::satisfiable_at(h, h.index_of("a"), frame_formula(canonical_spec(chain(2)))));
  auto small = crosscheck_frame_formula(h, chain(2), 0);
  EXPECT_FALSE(small.satisfiable);
  EXPECT_FALSE(small.reducible);
  EXPECT_FALSE(oracle::satisfiable_at(chain(2), 0, frame_formula(canonical_spec(h))));
}

TEST(Crosscheck, AgreesOnSmallCatalog) {
  auto cat = enumerate_frames(3, true);
  for (const Frame& f : cat)
    for (const Frame& g : cat)
      for (PointIndex u = 0; u < g.size(); ++u) {
        auto c = crosscheck_frame_formula(f, g, u);
        ASSERT_EQ(c.satisfiable, c.reducible);
        if (c.valuation) {
          ASSERT_TRUE(satisfies(g, *c.valuation, u, frame_formula(canonical_spec(f))));
        }
      }
}
