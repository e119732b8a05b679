#ifndef TRANSFRAME_SKELETON_HPP
#define TRANSFRAME_SKELETON_HPP

#include <algorithm>
#include <vector>

#include "transframe/frame.hpp"

namespace transframe {

using ClusterIndex = std::size_t;

/// An equivalence class of mutual visibility. Degenerate iff it is a single
/// irreflexive point.
struct Cluster {
  PointSet members;
  bool degenerate = false;

  std::size_t size() const { return members.size(); }
};

/// The quotient of a frame by its clusters. Clusters are numbered by their
/// least member, so the numbering follows the frame's point order. The stored
/// order is strict: above[c] holds the clusters d != c that c sees.
class Skeleton {
 public:
  explicit Skeleton(const Frame& f) : cluster_of_(f.size()) {
    PointSet assigned;
    for (PointIndex w = 0; w < f.size(); ++w) {
      if (assigned.contains(w)) continue;
      Cluster c;
      c.members = PointSet::single(w);
      // w ~ u iff w = u or (Rwu and Ruw).
      c.members |= f.successors(w) & f.predecessors(w);
      c.degenerate = c.members.size() == 1 && !f.reflexive(w);
      c.members.for_each([&](PointIndex u) { cluster_of_[u] = clusters_.size(); });
      assigned |= c.members;
      clusters_.push_back(c);
    }
    above_.resize(clusters_.size());
    below_.resize(clusters_.size());
    for (ClusterIndex c = 0; c < clusters_.size(); ++c) {
      PointIndex rep = clusters_[c].members.first();
      f.successors(rep).for_each([&](PointIndex u) {
        ClusterIndex d = cluster_of_[u];
        if (d != c) {
          above_[c].insert(d);
          below_[d].insert(c);
        }
      });
    }
    // Longest chains, counted in clusters; memoised over the DAG.
    height_.assign(clusters_.size(), 0);
    for (ClusterIndex c = 0; c < clusters_.size(); ++c) height_of(c);
  }

  std::size_t size() const { return clusters_.size(); }
  const Cluster& cluster(ClusterIndex c) const { return clusters_.at(c); }
  const std::vector<Cluster>& clusters() const { return clusters_; }
  ClusterIndex cluster_of(PointIndex w) const { return cluster_of_.at(w); }

  /// Clusters strictly above c (seen by c, distinct from c).
  const PointSet& above(ClusterIndex c) const { return above_.at(c); }
  /// Clusters strictly below c (seeing c, distinct from c).
  const PointSet& below(ClusterIndex c) const { return below_.at(c); }
  bool precedes(ClusterIndex c, ClusterIndex d) const { return above_.at(c).contains(d); }

  /// Length of the longest strict chain starting at c, counted in clusters.
  std::size_t height(ClusterIndex c) const { return height_.at(c); }

  /// Clusters seeing nothing outside themselves.
  std::vector<ClusterIndex> final_clusters() const {
    std::vector<ClusterIndex> out;
    for (ClusterIndex c = 0; c < size(); ++c)
      if (above_[c].empty()) out.push_back(c);
    return out;
  }

  /// Clusters seen by no other cluster.
  std::vector<ClusterIndex> initial_clusters() const {
    std::vector<ClusterIndex> out;
    for (ClusterIndex c = 0; c < size(); ++c)
      if (below_[c].empty()) out.push_back(c);
    return out;
  }

  std::size_t degenerate_count() const {
    return static_cast<std::size_t>(
        std::count_if(clusters_.begin(), clusters_.end(), [](const Cluster& c) { return c.degenerate; }));
  }

 private:
  std::size_t height_of(ClusterIndex c) {
    if (height_[c] != 0) return height_[c];
    std::size_t best = 0;
    above_[c].for_each([&](ClusterIndex d) { best = std::max(best, height_of(d)); });
    return height_[c] = best + 1;
  }

  std::vector<Cluster> clusters_;
  std::vector<ClusterIndex> cluster_of_;
  std::vector<PointSet> above_;
  std::vector<PointSet> below_;
  std::vector<std::size_t> height_;
};

inline Skeleton clusters(const Frame& f) { return Skeleton(f); }

/// Length of the longest chain of proper successors starting at w, counted
/// in points. Always at least 1.
inline std::size_t rank_of_point(const Frame& f, PointIndex w) {
  if (w >= f.size()) throw Error(ErrorCode::UnknownPoint, "index " + std::to_string(w));
  Skeleton sk(f);
  return sk.height(sk.cluster_of(w));
}

inline std::size_t rank_of_point(const Frame& f, std::string_view w) { return rank_of_point(f, f.index_of(w)); }

inline std::vector<std::size_t> point_ranks(const Frame& f) {
  Skeleton sk(f);
  std::vector<std::size_t> out(f.size());
  for (PointIndex w = 0; w < f.size(); ++w) out[w] = sk.height(sk.cluster_of(w));
  return out;
}

/// Maximum point rank; 0 for the empty frame.
inline std::size_t rank_of_frame(const Frame& f) {
  std::size_t best = 0;
  for (auto r : point_ranks(f)) best = std::max(best, r);
  return best;
}

}  // namespace transframe

#endif  // TRANSFRAME_SKELETON_HPP
