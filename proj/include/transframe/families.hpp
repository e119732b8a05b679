#ifndef TRANSFRAME_FAMILIES_HPP
#define TRANSFRAME_FAMILIES_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "transframe/conditions.hpp"
#include "transframe/formula.hpp"
#include "transframe/frame.hpp"
#include "transframe/semantics.hpp"
#include "transframe/skeleton.hpp"

namespace transframe {

// ---------------------------------------------------------------------------
// The frames H_n: a root `a`, the points c0..c{n+1}, and one point b{i,j} for
// every two-element subset {i, j} of them. `a` sees every other point and
// b{i,j} sees exactly c{i} and c{j}. All points are irreflexive.

inline std::string h_pair_name(std::size_t i, std::size_t j) {
  return "b{" + std::to_string(i) + "," + std::to_string(j) + "}";
}

inline Frame make_H(std::size_t n) {
  const std::size_t m = n + 2;
  std::vector<std::string> names{"a"};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) names.push_back(h_pair_name(i, j));
  for (std::size_t k = 0; k < m; ++k) names.push_back("c" + std::to_string(k));
  if (names.size() > PointSet::kCapacity)
    throw Error(ErrorCode::TooManyPoints, "H_" + std::to_string(n) + " has " + std::to_string(names.size()) + " points");
  std::vector<Edge> edges;
  for (std::size_t k = 1; k < names.size(); ++k) edges.emplace_back("a", names[k]);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      edges.emplace_back(h_pair_name(i, j), "c" + std::to_string(i));
      edges.emplace_back(h_pair_name(i, j), "c" + std::to_string(j));
    }
  return Frame::build(names, edges, false);
}

/// Facts about H_n, each computed by the library's own deciders. Formula
/// verdicts come from valuation search when `formula_level` is set and from
/// the structural frame conditions otherwise.
struct HReport {
  std::size_t n = 0;
  std::size_t points = 0;
  std::size_t rank = 0;
  bool strict_partial_order = false;
  bool formula_level = false;
  bool b3_valid = false;
  bool wid2_plus_valid = false;
  bool wid1_plus_valid = false;
  std::size_t irreflexive_antichain = 0;
  std::uint64_t work = 0;
};

inline HReport verify_H_properties(std::size_t n, bool formula_level, ValidityOptions opts = {}) {
  Frame h = make_H(n);
  HReport r;
  r.n = n;
  r.points = h.size();
  r.rank = rank_of_frame(h);
  r.strict_partial_order = true;
  for (PointIndex w = 0; w < h.size(); ++w)
    if (h.reflexive(w)) r.strict_partial_order = false;
  r.formula_level = formula_level;
  if (formula_level) {
    auto valid = [&](const Formula& phi) {
      auto res = frame_valid(h, phi, opts);
      r.work += res.work;
      return res.valid;
    };
    r.b3_valid = valid(mk_B(3));
    r.wid2_plus_valid = valid(mk_Wid_plus(2));
    r.wid1_plus_valid = valid(mk_Wid_plus(1));
  } else {
    r.b3_valid = check_rank_at_most(h, 3).holds;
    r.wid2_plus_valid = weak_width_everywhere(h, 2);
    r.wid1_plus_valid = weak_width_everywhere(h, 1);
  }
  r.irreflexive_antichain = max_antichain(h, true).size();
  return r;
}

// ---------------------------------------------------------------------------
// Random corpora.

struct CorpusSpec {
  std::size_t max_points = 6;
  std::optional<std::size_t> rank_bound;
  bool require_weak_width_1 = false;
  std::optional<std::size_t> require_wid_bullet;
  std::uint64_t seed = 0;
  std::size_t count = 10;
  bool rooted = true;
  std::size_t attempts_per_frame = 2000;
};

struct CorpusReport {
  std::vector<Frame> frames;
  std::uint64_t attempts = 0;
};

namespace detail {

// Raw modulo keeps the stream identical across standard libraries, unlike
// the std distributions.
class CorpusRng {
 public:
  explicit CorpusRng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  bool percent(std::size_t p) { return below(100) < p; }

 private:
  std::mt19937_64 gen_;
};

// A random skeleton on `nodes` clusters, closed transitively. Edges only go
// from lower to higher node numbers, so the result is acyclic. Half of the
// samples use independent edges, the other half a forest in which every node
// points to at most one higher node (inverted trees, which is what the
// weak-width constraint asks for).
inline std::vector<PointSet> random_order(CorpusRng& rng, std::size_t nodes, bool rooted) {
  std::vector<PointSet> up(nodes);
  const bool forest = rng.percent(50);
  const std::size_t density = 15 + rng.below(60);
  for (std::size_t i = rooted ? 1 : 0; i < nodes; ++i) {
    if (forest) {
      std::size_t choices = nodes - i - 1;
      if (choices > 0 && !rng.percent(25)) up[i].insert(i + 1 + rng.below(choices));
    } else {
      for (std::size_t j = i + 1; j < nodes; ++j)
        if (rng.percent(density)) up[i].insert(j);
    }
  }
  for (std::size_t i = nodes; i-- > 0;) {
    PointSet closed = up[i];
    up[i].for_each([&](std::size_t j) { closed |= up[j]; });
    up[i] = closed;
  }
  if (rooted && nodes > 0)
    for (std::size_t j = 1; j < nodes; ++j) up[0].insert(j);
  return up;
}

inline Frame random_frame(CorpusRng& rng, std::size_t max_points, bool rooted) {
  const std::size_t nodes = 1 + rng.below(max_points);
  auto up = random_order(rng, nodes, rooted);
  // Each node becomes a cluster: an irreflexive point, a reflexive point, or
  // a larger cluster when points remain.
  std::vector<std::size_t> size(nodes, 1);
  std::vector<bool> reflexive(nodes, false);
  std::size_t spare = max_points - nodes;
  for (std::size_t i = 0; i < nodes; ++i) {
    std::size_t roll = rng.below(10);
    if (roll < 4) continue;
    reflexive[i] = true;
    if (roll >= 8 && spare > 0) {
      std::size_t extra = 1 + rng.below(std::min<std::size_t>(spare, 2));
      size[i] += extra;
      spare -= extra;
    }
  }
  std::vector<std::size_t> first(nodes + 1, 0);
  for (std::size_t i = 0; i < nodes; ++i) first[i + 1] = first[i] + size[i];
  const std::size_t total = first[nodes];
  std::vector<std::string> names(total);
  for (std::size_t k = 0; k < total; ++k) names[k] = "w" + std::to_string(k);
  std::vector<PointSet> succ(total);
  for (std::size_t i = 0; i < nodes; ++i) {
    PointSet targets;
    if (reflexive[i])
      for (std::size_t k = first[i]; k < first[i + 1]; ++k) targets.insert(k);
    up[i].for_each([&](std::size_t j) {
      for (std::size_t k = first[j]; k < first[j + 1]; ++k) targets.insert(k);
    });
    for (std::size_t k = first[i]; k < first[i + 1]; ++k) succ[k] = targets;
  }
  return Frame::from_relation(std::move(names), std::move(succ));
}

inline bool meets(const CorpusSpec& spec, const Frame& f) {
  if (spec.rooted && !is_rooted(f)) return false;
  if (spec.rank_bound && rank_of_frame(f) > *spec.rank_bound) return false;
  if (spec.require_weak_width_1 && !weak_width_everywhere(f, 1)) return false;
  if (spec.require_wid_bullet && !irr_antichain_everywhere(f, *spec.require_wid_bullet)) return false;
  return true;
}

}  // namespace detail

/// Rejection sampling: random frames are drawn until `count` of them meet
/// every constraint. Deterministic in the seed.
inline CorpusReport generate_corpus_report(const CorpusSpec& spec) {
  if (spec.max_points == 0 || spec.max_points > PointSet::kCapacity)
    throw Error(ErrorCode::InvalidInput, "max_points must be between 1 and 128");
  if (spec.rank_bound && *spec.rank_bound == 0) throw Error(ErrorCode::InvalidIndex, "rank bound must be at least 1");
  if (spec.require_wid_bullet && *spec.require_wid_bullet == 0)
    throw Error(ErrorCode::InvalidIndex, "irreflexive antichain bound must be at least 1");
  detail::CorpusRng rng(spec.seed);
  CorpusReport out;
  const std::uint64_t limit = static_cast<std::uint64_t>(spec.attempts_per_frame) * std::max<std::size_t>(spec.count, 1);
  while (out.frames.size() < spec.count) {
    if (out.attempts == limit)
      throw Error(ErrorCode::RejectionBudgetExceeded, "accepted " + std::to_string(out.frames.size()) + " of " +
                                                          std::to_string(spec.count) + " frames in " +
                                                          std::to_string(limit) + " attempts");
    ++out.attempts;
    Frame f = detail::random_frame(rng, spec.max_points, spec.rooted);
    if (detail::meets(spec, f)) out.frames.push_back(std::move(f));
  }
  return out;
}

inline std::vector<Frame> generate_corpus(const CorpusSpec& spec) { return generate_corpus_report(spec).frames; }

// ---------------------------------------------------------------------------
// Exhaustive catalogue of small transitive frames up to isomorphism.

namespace detail {

using RelationCode = std::uint32_t;  // bit i*n+j set iff R(i, j); n <= 5

inline RelationCode relation_code(const std::vector<PointSet>& succ, const std::vector<std::size_t>& perm) {
  const std::size_t n = succ.size();
  RelationCode c = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (succ[perm[i]].contains(perm[j])) c |= RelationCode{1} << (i * n + j);
  return c;
}

inline RelationCode canonical_code(const std::vector<PointSet>& succ) {
  std::vector<std::size_t> perm(succ.size());
  std::iota(perm.begin(), perm.end(), 0);
  RelationCode best = relation_code(succ, perm);
  while (std::next_permutation(perm.begin(), perm.end())) best = std::min(best, relation_code(succ, perm));
  return best;
}

inline std::vector<PointSet> decode(RelationCode c, std::size_t n) {
  std::vector<PointSet> succ(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (c >> (i * n + j) & 1) succ[i].insert(j);
  return succ;
}

inline bool transitive(const std::vector<PointSet>& succ) {
  for (std::size_t i = 0; i < succ.size(); ++i) {
    bool ok = true;
    succ[i].for_each([&](std::size_t j) { ok = ok && succ[j].subset_of(succ[i]); });
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

/// One frame per isomorphism class of transitive frames with 1..max_points
/// points, ordered by size and then by canonical code. Points are named
/// w0, w1, ... Each class on n points restricts to some class on n-1 points,
/// so classes are grown one point at a time from the previous representatives.
inline std::vector<Frame> enumerate_frames(std::size_t max_points, bool rooted_only = false) {
  if (max_points > 5) throw Error(ErrorCode::InvalidInput, "catalogue is limited to 5 points");
  std::vector<Frame> out;
  std::vector<std::vector<PointSet>> previous{{}};
  for (std::size_t n = 1; n <= max_points; ++n) {
    std::set<detail::RelationCode> codes;
    const std::size_t old = n - 1;
    for (const auto& base : previous) {
      // New point `old`: choose what it sees, what sees it, and a loop.
      for (std::uint32_t out_bits = 0; out_bits < (1u << old); ++out_bits)
        for (std::uint32_t in_bits = 0; in_bits < (1u << old); ++in_bits)
          for (int loop = 0; loop < 2; ++loop) {
            std::vector<PointSet> succ = base;
            succ.emplace_back();
            for (std::size_t i = 0; i < old; ++i) {
              if (out_bits >> i & 1) succ[old].insert(i);
              if (in_bits >> i & 1) succ[i].insert(old);
            }
            if (loop) succ[old].insert(old);
            if (detail::transitive(succ)) codes.insert(detail::canonical_code(succ));
          }
    }
    previous.clear();
    for (auto c : codes) {
      auto succ = detail::decode(c, n);
      previous.push_back(succ);
      std::vector<std::string> names(n);
      for (std::size_t k = 0; k < n; ++k) names[k] = "w" + std::to_string(k);
      Frame f = Frame::from_relation(std::move(names), std::move(succ));
      if (!rooted_only || is_rooted(f)) out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace transframe

#endif  // TRANSFRAME_FAMILIES_HPP
