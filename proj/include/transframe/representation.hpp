#ifndef TRANSFRAME_REPRESENTATION_HPP
#define TRANSFRAME_REPRESENTATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "transframe/frame.hpp"
#include "transframe/omega_tree.hpp"
#include "transframe/skeleton.hpp"

namespace transframe {

namespace detail {

inline std::string cluster_label(const Frame& f, const Cluster& c) {
  return "{" + [&] {
    std::string s;
    for (const auto& n : f.names_of(c.members)) s += (s.empty() ? "" : ",") + n;
    return s;
  }() + "}";
}

inline std::size_t tree_label(const Cluster& c) { return c.degenerate ? 0 : c.size(); }

}  // namespace detail

/// The inverted skeleton as a labelled tree: nodes are clusters, the final
/// cluster is the root and each cluster hangs below its nearest strict
/// successor. Nondegenerate clusters are labelled by their size, degenerate
/// ones by 0. The skeleton must have one final cluster and every cluster's
/// strict successors must form a chain.
inline OmegaTree rt(const Frame& f) {
  if (f.size() == 0) throw Error(ErrorCode::InvalidInput, "empty frame");
  Skeleton sk(f);
  auto finals = sk.final_clusters();
  if (finals.size() != 1) {
    std::string msg = "expected one final cluster, found";
    for (auto c : finals) msg += " " + detail::cluster_label(f, sk.cluster(c));
    throw Error(ErrorCode::SkeletonNotTree, msg);
  }
  std::vector<std::optional<std::size_t>> parent(sk.size());
  std::vector<std::size_t> labels(sk.size());
  for (ClusterIndex c = 0; c < sk.size(); ++c) {
    labels[c] = detail::tree_label(sk.cluster(c));
    const PointSet& up = sk.above(c);
    up.for_each([&](ClusterIndex d) {
      up.for_each([&](ClusterIndex e) {
        if (d < e && !sk.precedes(d, e) && !sk.precedes(e, d))
          throw Error(ErrorCode::SkeletonNotTree,
                      "cluster " + detail::cluster_label(f, sk.cluster(c)) + " sees incomparable clusters " +
                          detail::cluster_label(f, sk.cluster(d)) + " and " +
                          detail::cluster_label(f, sk.cluster(e)));
      });
      if (!parent[c] || sk.height(d) > sk.height(*parent[c])) parent[c] = d;
    });
  }
  return OmegaTree::from_parents(parent, labels);
}

/// The weakly connected components of the frame restricted to the strict
/// upset of its initial cluster, each in point order. Every component must
/// pass the tree check of rt.
inline std::vector<Frame> decompose_upset(const Frame& f) {
  if (!is_rooted(f)) throw Error(ErrorCode::NotRooted, "decomposition needs a rooted frame");
  Skeleton sk(f);
  const PointSet initial = sk.cluster(sk.cluster_of(least_root(f))).members;
  PointSet rest = upset(f, initial) - initial;
  std::vector<Frame> out;
  while (!rest.empty()) {
    PointSet comp = PointSet::single(rest.first());
    for (PointSet grown = comp;; comp = grown) {
      comp.for_each([&](PointIndex w) { grown |= (f.successors(w) | f.predecessors(w)) & rest; });
      if (grown == comp) break;
    }
    rest -= comp;
    Frame part = restrict_to(f, comp);
    try {
      (void)rt(part);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SkeletonNotTree) throw;
      throw Error(ErrorCode::WeakWidthViolation, std::string("upset component is not a tree: ") + e.what());
    }
    out.push_back(std::move(part));
  }
  return out;
}

/// Standard representation tree: the initial cluster with its label as root,
/// and rt of each upset component as children.
inline OmegaTree srt(const Frame& f) {
  auto parts = decompose_upset(f);
  Skeleton sk(f);
  OmegaTree t = OmegaTree::leaf(detail::tree_label(sk.cluster(sk.cluster_of(least_root(f)))));
  for (const auto& part : parts) t.graft(t.root(), rt(part));
  return t;
}

}  // namespace transframe

#endif  // TRANSFRAME_REPRESENTATION_HPP
