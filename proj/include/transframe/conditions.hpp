#ifndef TRANSFRAME_CONDITIONS_HPP
#define TRANSFRAME_CONDITIONS_HPP

#include <optional>
#include <vector>

#include "transframe/frame.hpp"
#include "transframe/skeleton.hpp"

namespace transframe {

/// A set of pairwise incomparable points. When irreflexive_only is set, every
/// member is irreflexive.
struct AntichainWitness {
  PointSet points;
  bool irreflexive_only = false;

  std::size_t size() const { return points.size(); }
};

namespace detail {

// Maximum clique in the incomparability graph restricted to `candidates`.
// Depth-first in increasing point order, smaller points first, so the first
// set reaching a new best size is the lexicographically least of that size.
class AntichainSearch {
 public:
  AntichainSearch(const Frame& f, const PointSet& candidates) {
    candidates.for_each([&](PointIndex i) { order_.push_back(i); });
    compatible_.resize(f.size());
    for (PointIndex a : order_)
      for (PointIndex b : order_)
        if (a != b && f.incomparable(a, b)) compatible_[a].insert(b);
  }

  PointSet run() {
    PointSet all;
    for (PointIndex i : order_) all.insert(i);
    extend(PointSet{}, all);
    return best_;
  }

 private:
  void extend(const PointSet& chosen, const PointSet& open) {
    std::size_t have = chosen.size();
    if (have > best_size_) {
      best_size_ = have;
      best_ = chosen;
    }
    if (have + open.size() <= best_size_) return;
    PointSet rest = open;
    while (!rest.empty()) {
      if (have + rest.size() <= best_size_) return;
      PointIndex v = rest.first();
      rest.erase(v);
      PointSet next = chosen;
      next.insert(v);
      extend(next, rest & compatible_[v]);
    }
  }

  std::vector<PointIndex> order_;
  std::vector<PointSet> compatible_;
  PointSet best_;
  std::size_t best_size_ = 0;
};

inline PointSet irreflexive_points(const Frame& f) {
  PointSet out;
  for (PointIndex w = 0; w < f.size(); ++w)
    if (!f.reflexive(w)) out.insert(w);
  return out;
}

inline void require_index(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidIndex, "bound must be at least 1");
}

}  // namespace detail

/// Maximum-cardinality antichain among `within` (default: all points);
/// lexicographically least among those of maximum size.
inline AntichainWitness max_antichain(const Frame& f, bool irreflexive_only,
                                      std::optional<PointSet> within = std::nullopt) {
  PointSet candidates = within ? checked_subset(f, *within) : f.all();
  if (irreflexive_only) candidates &= detail::irreflexive_points(f);
  return AntichainWitness{detail::AntichainSearch(f, candidates).run(), irreflexive_only};
}

/// Outcome of a frame-condition decider. On failure `witness` holds the
/// certificate: an R⃗-chain for rank, an antichain for the width conditions.
/// For weak width `successor` names the proper successor u whose generated
/// subframe is too wide.
struct ConditionVerdict {
  bool holds = true;
  std::vector<PointIndex> witness;
  std::optional<PointIndex> successor;
};

/// A longest chain of proper successors, starting at a point of maximal rank.
inline std::vector<PointIndex> longest_chain(const Frame& f) {
  std::vector<PointIndex> chain;
  if (f.size() == 0) return chain;
  Skeleton sk(f);
  ClusterIndex c = 0;
  for (ClusterIndex d = 1; d < sk.size(); ++d)
    if (sk.height(d) > sk.height(c)) c = d;
  while (true) {
    chain.push_back(sk.cluster(c).members.first());
    std::optional<ClusterIndex> next;
    sk.above(c).for_each([&](ClusterIndex d) {
      if (!next && sk.height(d) + 1 == sk.height(c)) next = d;
    });
    if (!next) break;
    c = *next;
  }
  return chain;
}

inline ConditionVerdict check_rank_at_most(const Frame& f, std::size_t n) {
  detail::require_index(n);
  ConditionVerdict v;
  auto chain = longest_chain(f);
  if (chain.size() > n) {
    v.holds = false;
    v.witness = std::move(chain);
  }
  return v;
}

/// Width of a rooted frame. Unrooted input is refused.
inline ConditionVerdict check_width_at_most(const Frame& f, std::size_t n) {
  detail::require_index(n);
  if (!is_rooted(f)) throw Error(ErrorCode::NotRooted, "width check needs a rooted frame");
  ConditionVerdict v;
  auto a = max_antichain(f, false);
  if (a.size() > n) {
    v.holds = false;
    v.witness = a.points.members();
  }
  return v;
}

/// For each proper successor u of w, F|_u has width at most n.
inline ConditionVerdict check_weak_width_at_most(const Frame& f, PointIndex w, std::size_t n) {
  detail::require_index(n);
  if (w >= f.size()) throw Error(ErrorCode::UnknownPoint, "index " + std::to_string(w));
  ConditionVerdict v;
  for (PointIndex u = 0; u < f.size(); ++u) {
    if (!f.sees_properly(w, u)) continue;
    PointSet gen = PointSet::single(u) | f.successors(u);
    auto a = max_antichain(f, false, gen);
    if (a.size() > n) {
      v.holds = false;
      v.successor = u;
      v.witness = a.points.members();
      return v;
    }
  }
  return v;
}

/// Every irreflexive antichain in F|_w has at most n points.
inline ConditionVerdict check_irr_antichain_at_most(const Frame& f, PointIndex w, std::size_t n) {
  detail::require_index(n);
  if (w >= f.size()) throw Error(ErrorCode::UnknownPoint, "index " + std::to_string(w));
  ConditionVerdict v;
  auto a = max_antichain(f, true, PointSet::single(w) | f.successors(w));
  if (a.size() > n) {
    v.holds = false;
    v.witness = a.points.members();
  }
  return v;
}

/// Weak width at every point (equivalently: validity of the weak-width
/// formula on the whole frame).
inline bool weak_width_everywhere(const Frame& f, std::size_t n) {
  for (PointIndex w = 0; w < f.size(); ++w)
    if (!check_weak_width_at_most(f, w, n).holds) return false;
  return true;
}

inline bool irr_antichain_everywhere(const Frame& f, std::size_t n) {
  for (PointIndex w = 0; w < f.size(); ++w)
    if (!check_irr_antichain_at_most(f, w, n).holds) return false;
  return true;
}

}  // namespace transframe

#endif  // TRANSFRAME_CONDITIONS_HPP
