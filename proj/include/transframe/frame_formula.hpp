#ifndef TRANSFRAME_FRAME_FORMULA_HPP
#define TRANSFRAME_FRAME_FORMULA_HPP

#include <algorithm>
#include <vector>

#include "transframe/formula.hpp"
#include "transframe/frame.hpp"
#include "transframe/semantics.hpp"

namespace transframe {

/// A rooted frame together with an enumeration <w_0, ..., w_n> of its
/// points starting at a root. Variable p_i stands for w_i.
struct FrameFormulaSpec {
  Frame frame;
  std::vector<PointIndex> ordering;
};

/// Least root first, then the remaining points in point order.
inline std::vector<PointIndex> canonical_ordering(const Frame& f) {
  PointIndex r = least_root(f);
  std::vector<PointIndex> out{r};
  for (PointIndex w = 0; w < f.size(); ++w)
    if (w != r) out.push_back(w);
  return out;
}

inline FrameFormulaSpec canonical_spec(const Frame& f) { return {f, canonical_ordering(f)}; }

/// The Jankov-Fine formula of the frame w.r.t. the ordering: p_0, the box of
/// the disjunction of all p_i, mutual exclusion of distinct p_i, and for each
/// ordered pair (i, j) either p_i -> <>p_j or p_i -> ~<>p_j depending on
/// whether w_i sees w_j; every conjunct except p_0 also appears boxed. The
/// result is one flat conjunction.
inline Formula frame_formula(const FrameFormulaSpec& spec) {
  const Frame& f = spec.frame;
  const auto& ord = spec.ordering;
  if (ord.size() != f.size()) throw Error(ErrorCode::OrderingMismatch, "ordering must list every point once");
  PointSet seen;
  for (auto w : ord) {
    if (w >= f.size() || seen.contains(w))
      throw Error(ErrorCode::OrderingMismatch, "ordering must list every point once");
    seen.insert(w);
  }
  auto rs = roots(f);
  if (ord.empty() || std::find(rs.begin(), rs.end(), ord.front()) == rs.end())
    throw Error(ErrorCode::NotRooted, "ordering must start at a root");

  const std::size_t n = ord.size();
  std::vector<Formula> parts;
  auto both = [&](Formula g) {
    parts.push_back(g);
    parts.push_back(box(std::move(g)));
  };
  parts.push_back(p(0));
  std::vector<Formula> any;
  for (std::size_t i = 0; i < n; ++i) any.push_back(p(i));
  parts.push_back(box(disj(std::move(any))));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) both(implies(p(i), neg(p(j))));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (f.sees(ord[i], ord[j])) both(implies(p(i), dia(p(j))));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!f.sees(ord[i], ord[j])) both(implies(p(i), neg(dia(p(j)))));
  return conj(std::move(parts));
}

/// The canonical valuation p_i = {w_i}.
inline Valuation canonical_valuation(const FrameFormulaSpec& spec) {
  Valuation v;
  for (std::size_t i = 0; i < spec.ordering.size(); ++i)
    v.assign("p" + std::to_string(i), {spec.frame.name(spec.ordering[i])});
  return v;
}

}  // namespace transframe

#endif  // TRANSFRAME_FRAME_FORMULA_HPP
