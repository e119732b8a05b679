#ifndef TRANSFRAME_FRAME_HPP
#define TRANSFRAME_FRAME_HPP

#include <memory>
#include <optional>
#include <tuple>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "transframe/error.hpp"
#include "transframe/point_set.hpp"

namespace transframe {

using Edge = std::pair<std::string, std::string>;

/// A finite frame <W, R> with R transitive. Immutable: copies share the
/// underlying storage, so a Frame can be passed around and across threads
/// freely. The point order given at construction is the order used for all
/// deterministic tie-breaking.
class Frame {
 public:
  /// Builds a frame from named points and edges. With auto_close the relation
  /// is the transitive closure of the edges; otherwise the edges must already
  /// be transitive and a violating triple is reported.
  static Frame build(const std::vector<std::string>& points, const std::vector<Edge>& edges,
                     bool auto_close) {
    if (points.size() > PointSet::kCapacity)
      throw Error(ErrorCode::TooManyPoints, std::to_string(points.size()) + " points, capacity is " +
                                                std::to_string(PointSet::kCapacity));
    std::unordered_map<std::string, PointIndex> index;
    for (PointIndex i = 0; i < points.size(); ++i) {
      if (!index.emplace(points[i], i).second) throw Error(ErrorCode::DuplicatePoint, points[i]);
    }
    std::vector<PointSet> succ(points.size());
    for (const auto& [from, to] : edges) {
      auto a = index.find(from);
      auto b = index.find(to);
      if (a == index.end() || b == index.end())
        throw Error(ErrorCode::DanglingEdge, "(" + from + "," + to + ")");
      succ[a->second].insert(b->second);
    }
    if (auto_close) {
      close_transitively(succ);
    } else if (auto bad = find_intransitive(succ)) {
      auto [a, b, c] = *bad;
      throw NonTransitiveError(points[a], points[b], points[c]);
    }
    return Frame(points, std::move(succ));
  }

  /// Internal constructor path for derived frames whose relation is already
  /// known to be transitive (restrictions, unions, generators).
  static Frame from_relation(std::vector<std::string> points, std::vector<PointSet> succ) {
    if (points.size() > PointSet::kCapacity)
      throw Error(ErrorCode::TooManyPoints, std::to_string(points.size()) + " points");
    if (auto bad = find_intransitive(succ)) {
      auto [a, b, c] = *bad;
      throw NonTransitiveError(points[a], points[b], points[c]);
    }
    return Frame(std::move(points), std::move(succ));
  }

  std::size_t size() const { return data_->names.size(); }
  const std::string& name(PointIndex i) const { return data_->names.at(i); }
  const std::vector<std::string>& names() const { return data_->names; }

  std::optional<PointIndex> find(std::string_view name) const {
    auto it = data_->index.find(std::string(name));
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  PointIndex index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw Error(ErrorCode::UnknownPoint, std::string(name));
  }

  PointSet set_of(const std::vector<std::string>& names) const {
    PointSet s;
    for (const auto& n : names) s.insert(index_of(n));
    return s;
  }

  std::vector<std::string> names_of(const PointSet& s) const {
    std::vector<std::string> out;
    s.for_each([&](PointIndex i) { out.push_back(name(i)); });
    return out;
  }

  PointSet all() const { return PointSet::first_n(size()); }

  bool sees(PointIndex a, PointIndex b) const { return data_->succ[a].contains(b); }
  const PointSet& successors(PointIndex i) const { return data_->succ[i]; }
  const PointSet& predecessors(PointIndex i) const { return data_->pred[i]; }
  bool reflexive(PointIndex i) const { return sees(i, i); }
  bool dead_end(PointIndex i) const { return data_->succ[i].empty(); }

  /// Proper successor: a sees b but b does not see a.
  bool sees_properly(PointIndex a, PointIndex b) const { return sees(a, b) && !sees(b, a); }
  bool incomparable(PointIndex a, PointIndex b) const { return !sees(a, b) && !sees(b, a); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (PointIndex a = 0; a < size(); ++a)
      data_->succ[a].for_each([&](PointIndex b) { out.emplace_back(name(a), name(b)); });
    return out;
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& s : data_->succ) n += s.size();
    return n;
  }

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.data_->names == b.data_->names && a.data_->succ == b.data_->succ;
  }

 private:
  struct Data {
    std::vector<std::string> names;
    std::unordered_map<std::string, PointIndex> index;
    std::vector<PointSet> succ;
    std::vector<PointSet> pred;
  };

  Frame(std::vector<std::string> names, std::vector<PointSet> succ) {
    auto d = std::make_shared<Data>();
    d->pred.resize(names.size());
    for (PointIndex a = 0; a < names.size(); ++a) {
      d->index.emplace(names[a], a);
      succ[a].for_each([&](PointIndex b) { d->pred[b].insert(a); });
    }
    d->names = std::move(names);
    d->succ = std::move(succ);
    data_ = std::move(d);
  }

  static void close_transitively(std::vector<PointSet>& succ) {
    // Warshall over bit rows.
    for (PointIndex k = 0; k < succ.size(); ++k)
      for (PointIndex i = 0; i < succ.size(); ++i)
        if (succ[i].contains(k)) succ[i] |= succ[k];
  }

  static std::optional<std::tuple<PointIndex, PointIndex, PointIndex>> find_intransitive(
      const std::vector<PointSet>& succ) {
    for (PointIndex a = 0; a < succ.size(); ++a) {
      std::optional<std::tuple<PointIndex, PointIndex, PointIndex>> bad;
      succ[a].for_each([&](PointIndex b) {
        if (bad) return;
        PointSet missing = succ[b] - succ[a];
        if (!missing.empty()) bad = std::make_tuple(a, b, missing.first());
      });
      if (bad) return bad;
    }
    return std::nullopt;
  }

  std::shared_ptr<const Data> data_;
};

inline PointSet checked_subset(const Frame& f, const PointSet& x) {
  if (!x.subset_of(f.all())) throw Error(ErrorCode::UnknownPoint, "point index out of range");
  return x;
}

/// X↑ : everything seen from some member of X.
inline PointSet upset(const Frame& f, const PointSet& x) {
  PointSet out;
  checked_subset(f, x).for_each([&](PointIndex i) { out |= f.successors(i); });
  return out;
}

/// X↓ : everything that sees some member of X.
inline PointSet downset(const Frame& f, const PointSet& x) {
  PointSet out;
  checked_subset(f, x).for_each([&](PointIndex i) { out |= f.predecessors(i); });
  return out;
}

inline PointSet upset_strict(const Frame& f, const PointSet& x) { return upset(f, x) - x; }
inline PointSet downset_strict(const Frame& f, const PointSet& x) { return downset(f, x) - x; }

/// F restricted to X (X must be nonempty). Point order is inherited.
inline Frame restrict_to(const Frame& f, const PointSet& x) {
  if (x.empty()) throw Error(ErrorCode::EmptyGenerator, "restriction to an empty set");
  checked_subset(f, x);
  std::vector<PointIndex> keep = x.members();
  std::vector<std::string> names;
  std::vector<PointIndex> position(f.size(), 0);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    names.push_back(f.name(keep[k]));
    position[keep[k]] = k;
  }
  std::vector<PointSet> succ(keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k)
    (f.successors(keep[k]) & x).for_each([&](PointIndex b) { succ[k].insert(position[b]); });
  return Frame::from_relation(std::move(names), std::move(succ));
}

/// F|_X : the subframe generated by X, i.e. F restricted to X ∪ X↑.
inline Frame generated_subframe(const Frame& f, const PointSet& x) {
  if (x.empty()) throw Error(ErrorCode::EmptyGenerator, "generated subframe of an empty set");
  checked_subset(f, x);
  return restrict_to(f, x | upset(f, x));
}

inline Frame generated_subframe(const Frame& f, PointIndex w) {
  return generated_subframe(f, PointSet::single(w));
}

/// Points w with W ⊆ {w} ∪ w↑, in point order. Empty means unrooted.
inline std::vector<PointIndex> roots(const Frame& f) {
  std::vector<PointIndex> out;
  const PointSet all = f.all();
  for (PointIndex w = 0; w < f.size(); ++w)
    if ((all - f.successors(w) - PointSet::single(w)).empty()) out.push_back(w);
  return out;
}

inline bool is_rooted(const Frame& f) { return !roots(f).empty(); }

/// Least root in point order; throws NotRooted.
inline PointIndex least_root(const Frame& f) {
  auto r = roots(f);
  if (r.empty()) throw Error(ErrorCode::NotRooted, "frame has no root");
  return r.front();
}

/// Disjoint union; point names are tagged "<source index>:<name>".
inline Frame disjoint_union(const std::vector<Frame>& frames) {
  if (frames.empty()) throw Error(ErrorCode::InvalidInput, "disjoint union of no frames");
  std::vector<std::string> names;
  std::vector<PointSet> succ;
  std::size_t offset = 0;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const Frame& f = frames[k];
    if (offset + f.size() > PointSet::kCapacity)
      throw Error(ErrorCode::TooManyPoints, "disjoint union too large");
    for (PointIndex a = 0; a < f.size(); ++a) {
      names.push_back(std::to_string(k) + ":" + f.name(a));
      PointSet row;
      f.successors(a).for_each([&](PointIndex b) { row.insert(offset + b); });
      succ.push_back(row);
    }
    offset += f.size();
  }
  return Frame::from_relation(std::move(names), std::move(succ));
}

}  // namespace transframe

#endif  // TRANSFRAME_FRAME_HPP
