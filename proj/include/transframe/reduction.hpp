#ifndef TRANSFRAME_REDUCTION_HPP
#define TRANSFRAME_REDUCTION_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "transframe/frame.hpp"
#include "transframe/frame_formula.hpp"
#include "transframe/semantics.hpp"
#include "transframe/skeleton.hpp"

namespace transframe {

/// A total map from source points to target points, claimed to be a
/// reduction: onto, forth (Rwu => R'f(w)f(u)) and back
/// (R'f(w)v => some u with Rwu and f(u) = v).
struct ReductionMap {
  Frame source;
  Frame target;
  std::vector<PointIndex> map;
};

struct ReductionCheck {
  enum class Violation { None, NotTotal, NotSurjective, Forth, Back };

  Violation violation = Violation::None;
  // NotSurjective: first = uncovered target point.
  // Forth: (first, second) source pair whose image pair is unrelated.
  // Back: first = source point, second = target point it fails to reach.
  PointIndex first = 0;
  PointIndex second = 0;

  bool ok() const { return violation == Violation::None; }
};

inline const char* to_string(ReductionCheck::Violation v) {
  switch (v) {
    case ReductionCheck::Violation::None: return "none";
    case ReductionCheck::Violation::NotTotal: return "not-total";
    case ReductionCheck::Violation::NotSurjective: return "not-surjective";
    case ReductionCheck::Violation::Forth: return "forth";
    case ReductionCheck::Violation::Back: return "back";
  }
  return "?";
}

/// Checks surjectivity, then forth, then back, reporting the first violation
/// in point order.
inline ReductionCheck is_reduction(const ReductionMap& m) {
  using V = ReductionCheck::Violation;
  const Frame& s = m.source;
  const Frame& t = m.target;
  if (m.map.size() != s.size()) return {V::NotTotal, 0, 0};
  for (auto v : m.map)
    if (v >= t.size()) return {V::NotTotal, 0, 0};
  PointSet covered;
  for (auto v : m.map) covered.insert(v);
  if (covered != t.all()) return {V::NotSurjective, (t.all() - covered).first(), 0};
  for (PointIndex w = 0; w < s.size(); ++w) {
    std::optional<PointIndex> bad;
    s.successors(w).for_each([&](PointIndex u) {
      if (!bad && !t.sees(m.map[w], m.map[u])) bad = u;
    });
    if (bad) return {V::Forth, w, *bad};
  }
  for (PointIndex w = 0; w < s.size(); ++w) {
    PointSet image;
    s.successors(w).for_each([&](PointIndex u) { image.insert(m.map[u]); });
    PointSet missing = t.successors(m.map[w]) - image;
    if (!missing.empty()) return {V::Back, w, missing.first()};
  }
  return {};
}

/// Three-way verdict of a bounded search. Budget is never folded into No.
enum class Verdict { Yes, No, Budget };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Budget: return "budget";
  }
  return "?";
}

struct ReductionSearch {
  Verdict verdict = Verdict::No;
  std::optional<ReductionMap> reduction;
  std::uint64_t expansions = 0;
};

inline constexpr std::uint64_t kDefaultSearchBudget = 100'000'000;

namespace detail {

// Backtracking over source points ordered by increasing rank with each
// cluster contiguous. Every strict successor of a point is then assigned
// before the point itself, so the back condition can be checked as soon as
// a cluster is complete, and a necessary part of it (targets outside the
// image cluster) as soon as the point is placed.
class ReductionSearcher {
 public:
  ReductionSearcher(const Frame& source, const Frame& target, std::uint64_t budget)
      : src_(source),
        tgt_(target),
        budget_(budget),
        src_sk_(source),
        tgt_sk_(target),
        map_(source.size(), 0),
        covered_(target.size(), 0) {
    src_rank_ = point_ranks(source);
    tgt_rank_ = point_ranks(target);
    for (PointIndex w = 0; w < source.size(); ++w) order_.push_back(w);
    std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) {
      if (src_rank_[a] != src_rank_[b]) return src_rank_[a] < src_rank_[b];
      return src_sk_.cluster_of(a) < src_sk_.cluster_of(b);
    });
    for (PointIndex w = 0; w < source.size(); ++w) {
      const PointSet& cl = src_sk_.cluster(src_sk_.cluster_of(w)).members;
      strict_succ_.push_back(source.successors(w) - cl);
    }
    for (PointIndex v = 0; v < target.size(); ++v) {
      const PointSet& cl = tgt_sk_.cluster(tgt_sk_.cluster_of(v)).members;
      tgt_outside_.push_back(target.successors(v) - cl);
    }
  }

  ReductionSearch run() {
    ReductionSearch out;
    if (src_.size() < tgt_.size() || tgt_.size() == 0 || src_.size() == 0) {
      out.verdict = Verdict::No;
      return out;
    }
    try {
      if (place(0)) {
        out.verdict = Verdict::Yes;
        out.reduction = ReductionMap{src_, tgt_, map_};
      } else {
        out.verdict = Verdict::No;
      }
    } catch (const Exhausted&) {
      out.verdict = Verdict::Budget;
    }
    out.expansions = expansions_;
    return out;
  }

 private:
  struct Exhausted {};

  bool place(std::size_t k) {
    if (k == order_.size()) return uncovered_ == 0;
    const PointIndex w = order_[k];
    const bool closes_cluster =
        k + 1 == order_.size() || src_sk_.cluster_of(order_[k + 1]) != src_sk_.cluster_of(w);
    for (PointIndex v = 0; v < tgt_.size(); ++v) {
      if (!compatible(w, v)) continue;
      if (++expansions_ > budget_) throw Exhausted{};
      map_[w] = v;
      assigned_.insert(w);
      if (covered_[v]++ == 0) --uncovered_;
      bool ok = uncovered_ <= order_.size() - k - 1;
      if (ok && closes_cluster) ok = back_holds_for_cluster(w);
      if (ok && place(k + 1)) return true;
      if (--covered_[v] == 0) ++uncovered_;
      assigned_.erase(w);
    }
    return false;
  }

  bool compatible(PointIndex w, PointIndex v) const {
    if (tgt_rank_[v] > src_rank_[w]) return false;
    if (src_.dead_end(w) != tgt_.dead_end(v)) return false;
    if (src_.reflexive(w) && !tgt_.reflexive(v)) return false;
    bool ok = true;
    (src_.successors(w) & assigned_).for_each([&](PointIndex x) {
      if (ok && !tgt_.sees(v, map_[x])) ok = false;
    });
    if (!ok) return false;
    (src_.predecessors(w) & assigned_).for_each([&](PointIndex x) {
      if (ok && !tgt_.sees(map_[x], v)) ok = false;
    });
    if (!ok) return false;
    // Cluster mates land in one target cluster, so everything v sees outside
    // its own cluster must come from w's strict successors (all placed).
    PointSet image;
    strict_succ_[w].for_each([&](PointIndex x) { image.insert(map_[x]); });
    return tgt_outside_[v].subset_of(image);
  }

  bool back_holds_for_cluster(PointIndex w) const {
    bool ok = true;
    src_sk_.cluster(src_sk_.cluster_of(w)).members.for_each([&](PointIndex m) {
      if (!ok) return;
      PointSet image;
      src_.successors(m).for_each([&](PointIndex x) { image.insert(map_[x]); });
      ok = tgt_.successors(map_[m]).subset_of(image);
    });
    return ok;
  }

  const Frame& src_;
  const Frame& tgt_;
  std::uint64_t budget_;
  Skeleton src_sk_, tgt_sk_;
  std::vector<std::size_t> src_rank_, tgt_rank_;
  std::vector<PointIndex> order_;
  std::vector<PointSet> strict_succ_, tgt_outside_;
  std::vector<PointIndex> map_;
  PointSet assigned_;
  std::vector<std::size_t> covered_;
  std::size_t uncovered_ = covered_.size();
  std::uint64_t expansions_ = 0;
};

}  // namespace detail

/// Searches for a reduction of source onto target. Deterministic: the first
/// reduction in the search order is returned.
inline ReductionSearch find_reduction(const Frame& source, const Frame& target,
                                      std::uint64_t budget = kDefaultSearchBudget) {
  return detail::ReductionSearcher(source, target, budget).run();
}

/// A reduction of a point-generated subframe of some frame onto another.
struct ReductionWitness {
  std::size_t i = 0;  // index of the target frame
  std::size_t j = 0;  // index of the frame whose subframe reduces
  std::string generator;
  ReductionMap reduction;
};

struct ReducibilityEntry {
  Verdict verdict = Verdict::No;
  std::optional<ReductionWitness> witness;
  std::uint64_t expansions = 0;
};

/// Whether some point-generated subframe of `from` reduces onto `onto`.
/// Generators are tried one per cluster (cluster mates generate the same
/// subframe), in point order.
inline ReducibilityEntry generated_reducibility(const Frame& from, const Frame& onto,
                                                std::uint64_t budget = kDefaultSearchBudget) {
  ReducibilityEntry e;
  Skeleton sk(from);
  bool inconclusive = false;
  for (ClusterIndex c = 0; c < sk.size(); ++c) {
    PointIndex u = sk.cluster(c).members.first();
    Frame sub = generated_subframe(from, u);
    if (sub.size() < onto.size()) continue;
    auto r = find_reduction(sub, onto, budget);
    e.expansions += r.expansions;
    if (r.verdict == Verdict::Yes) {
      e.verdict = Verdict::Yes;
      e.witness = ReductionWitness{0, 0, from.name(u), std::move(*r.reduction)};
      return e;
    }
    if (r.verdict == Verdict::Budget) inconclusive = true;
  }
  e.verdict = inconclusive ? Verdict::Budget : Verdict::No;
  return e;
}

namespace detail {
// Evaluates fn(k) for k in [0, n) on up to `jobs` threads; results keep order.
template <typename Fn>
auto parallel_map(std::size_t n, std::size_t jobs, Fn fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out(n);
  if (jobs <= 1 || n <= 1) {
    for (std::size_t k = 0; k < n; ++k) out[k] = fn(k);
    return out;
  }
  std::vector<std::future<void>> workers;
  std::atomic<std::size_t> next{0};
  for (std::size_t t = 0; t < std::min(jobs, n); ++t)
    workers.push_back(std::async(std::launch::async, [&] {
      for (std::size_t k = next++; k < n; k = next++) out[k] = fn(k);
    }));
  for (auto& w : workers) w.get();
  return out;
}
}  // namespace detail

/// Entry (i, j): whether some point-generated subframe of frames[j] is
/// reducible to frames[i].
inline std::vector<std::vector<ReducibilityEntry>> reducibility_matrix(
    const std::vector<Frame>& frames, std::uint64_t budget = kDefaultSearchBudget, std::size_t jobs = 1) {
  if (frames.empty()) throw Error(ErrorCode::InvalidInput, "empty frame list");
  const std::size_t n = frames.size();
  auto flat = detail::parallel_map(n * n, jobs, [&](std::size_t k) {
    std::size_t i = k / n, j = k % n;
    auto e = generated_reducibility(frames[j], frames[i], budget);
    if (e.witness) {
      e.witness->i = i;
      e.witness->j = j;
    }
    return e;
  });
  std::vector<std::vector<ReducibilityEntry>> out(n);
  for (std::size_t k = 0; k < n * n; ++k) out[k / n].push_back(std::move(flat[k]));
  return out;
}

enum class AuditMode { Backward, Full };
enum class AuditVerdict { Pass, Fail, Unknown };

inline const char* to_string(AuditMode m) { return m == AuditMode::Backward ? "backward" : "full"; }
inline const char* to_string(AuditVerdict v) {
  switch (v) {
    case AuditVerdict::Pass: return "pass";
    case AuditVerdict::Fail: return "fail";
    case AuditVerdict::Unknown: return "unknown";
  }
  return "?";
}

struct SequenceAudit {
  std::vector<Frame> frames;
  AuditMode mode = AuditMode::Full;
  AuditVerdict verdict = AuditVerdict::Pass;
  std::optional<ReductionWitness> witness;
  std::vector<std::pair<std::size_t, std::size_t>> inconclusive;  // (i, j) budget entries
  std::uint64_t expansions = 0;
};

/// Checks that no point-generated subframe of frames[j] reduces to frames[i]
/// for i < j (backward) or i != j (full). Only the finite prefix given is
/// certified. The witness, if any, is the first failing pair in (i, j) order.
inline SequenceAudit audit_sequence(const std::vector<Frame>& frames, AuditMode mode,
                                    std::uint64_t budget = kDefaultSearchBudget, std::size_t jobs = 1) {
  if (frames.empty()) throw Error(ErrorCode::InvalidInput, "empty frame list");
  SequenceAudit audit;
  audit.frames = frames;
  audit.mode = mode;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < frames.size(); ++i)
    for (std::size_t j = 0; j < frames.size(); ++j)
      if (mode == AuditMode::Full ? i != j : i < j) pairs.emplace_back(i, j);
  auto entries = detail::parallel_map(pairs.size(), jobs, [&](std::size_t k) {
    auto [i, j] = pairs[k];
    return generated_reducibility(frames[j], frames[i], budget);
  });
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    audit.expansions += entries[k].expansions;
    if (entries[k].verdict == Verdict::Yes && !audit.witness) {
      audit.witness = std::move(entries[k].witness);
      audit.witness->i = pairs[k].first;
      audit.witness->j = pairs[k].second;
    } else if (entries[k].verdict == Verdict::Budget) {
      audit.inconclusive.push_back(pairs[k]);
    }
  }
  if (audit.witness) audit.verdict = AuditVerdict::Fail;
  else if (!audit.inconclusive.empty()) audit.verdict = AuditVerdict::Unknown;
  return audit;
}

/// Both sides of the frame-formula duality at (G, u), computed independently:
/// satisfiability of F's frame formula at u by valuation search, and
/// reducibility of G|_u onto F by reduction search.
struct FrameFormulaCrosscheck {
  bool satisfiable = false;
  bool reducible = false;
  std::optional<Valuation> valuation;
  std::optional<ReductionMap> reduction;
};

inline FrameFormulaCrosscheck crosscheck_frame_formula(const Frame& f, const Frame& g, PointIndex u,
                                                       ValidityOptions opts = {},
                                                       std::uint64_t search_budget = kDefaultSearchBudget) {
  FrameFormulaCrosscheck out;
  Formula phi = frame_formula(canonical_spec(f));
  out.valuation = satisfiable_at(g, u, phi, opts);
  out.satisfiable = out.valuation.has_value();
  auto r = find_reduction(generated_subframe(g, u), f, search_budget);
  if (r.verdict == Verdict::Budget)
    throw BudgetExceededError("reduction search", r.expansions, search_budget);
  out.reducible = r.verdict == Verdict::Yes;
  out.reduction = std::move(r.reduction);
  return out;
}

}  // namespace transframe

#endif  // TRANSFRAME_REDUCTION_HPP
