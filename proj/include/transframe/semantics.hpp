#ifndef TRANSFRAME_SEMANTICS_HPP
#define TRANSFRAME_SEMANTICS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "transframe/formula.hpp"
#include "transframe/frame.hpp"
#include "transframe/skeleton.hpp"

namespace transframe {

/// Assignment of point sets to variables, by point name. Variables that are
/// not assigned denote the empty set.
class Valuation {
 public:
  Valuation() = default;
  Valuation(std::initializer_list<std::pair<const std::string, std::set<std::string>>> init)
      : assignment_(init) {}

  void assign(const std::string& variable, std::set<std::string> points) {
    assignment_[variable] = std::move(points);
  }
  void add(const std::string& variable, const std::string& point) { assignment_[variable].insert(point); }

  const std::set<std::string>& at(const std::string& variable) const {
    static const std::set<std::string> kEmpty;
    auto it = assignment_.find(variable);
    return it == assignment_.end() ? kEmpty : it->second;
  }

  const std::map<std::string, std::set<std::string>>& entries() const { return assignment_; }

  /// Resolves the named points against a frame; unknown points are an error.
  PointSet resolve(const Frame& f, const std::string& variable) const {
    PointSet s;
    for (const auto& name : at(variable)) s.insert(f.index_of(name));
    return s;
  }

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  std::map<std::string, std::set<std::string>> assignment_;
};

namespace detail {

// Formula flattened into an array of nodes with variables numbered in
// natural order; evaluation works on whole point sets at once.
struct CompiledFormula {
  struct Node {
    Formula::Kind kind;
    std::size_t var = 0;
    std::vector<std::size_t> args;
  };
  std::vector<Node> nodes;  // root is the last node
  std::vector<std::string> vars;

  explicit CompiledFormula(const Formula& f) : vars(variables(f)) { compile(f); }

  std::size_t root() const { return nodes.size() - 1; }

 private:
  std::size_t compile(const Formula& f) {
    Node n{f.kind, 0, {}};
    for (const auto& a : f.args) n.args.push_back(compile(a));
    if (f.kind == Formula::Kind::Var)
      n.var = static_cast<std::size_t>(
          std::find(vars.begin(), vars.end(), f.name) - vars.begin());
    nodes.push_back(std::move(n));
    return nodes.size() - 1;
  }
};

// Two-valued evaluation of every point at once. And/Or short-circuit once
// the running set is empty/full, which does not change the result.
class Evaluator {
 public:
  Evaluator(const Frame& f, const CompiledFormula& c) : frame_(f), code_(c), all_(f.all()) {}

  PointSet eval(const std::vector<PointSet>& vals) const { return eval(code_.root(), vals); }

 private:
  PointSet eval(std::size_t i, const std::vector<PointSet>& vals) const {
    using K = Formula::Kind;
    const auto& n = code_.nodes[i];
    switch (n.kind) {
      case K::Var: return vals[n.var];
      case K::Bottom: return PointSet{};
      case K::Not: return all_ - eval(n.args[0], vals);
      case K::And: {
        PointSet acc = all_;
        for (auto a : n.args) {
          acc &= eval(a, vals);
          if (acc.empty()) break;
        }
        return acc;
      }
      case K::Or: {
        PointSet acc;
        for (auto a : n.args) {
          acc |= eval(a, vals);
          if (acc == all_) break;
        }
        return acc;
      }
      case K::Implies: {
        PointSet lhs = eval(n.args[0], vals);
        if (lhs.empty()) return all_;
        return (all_ - lhs) | eval(n.args[1], vals);
      }
      case K::Box: {
        PointSet s = eval(n.args[0], vals);
        PointSet out;
        for (PointIndex w = 0; w < frame_.size(); ++w)
          if (frame_.successors(w).subset_of(s)) out.insert(w);
        return out;
      }
      case K::Diamond: {
        PointSet s = eval(n.args[0], vals);
        PointSet out;
        for (PointIndex w = 0; w < frame_.size(); ++w)
          if (frame_.successors(w).intersects(s)) out.insert(w);
        return out;
      }
    }
    return PointSet{};
  }

  const Frame& frame_;
  const CompiledFormula& code_;
  PointSet all_;
};

// Kleene three-valued evaluation under a partial valuation: `yes` are the
// points where the value is already true for every completion, `no` where
// it is already false.
class PartialEvaluator {
 public:
  struct Value {
    PointSet yes, no;
  };

  PartialEvaluator(const Frame& f, const CompiledFormula& c) : frame_(f), code_(c), all_(f.all()) {}

  Value eval(const std::vector<PointSet>& yes, const std::vector<PointSet>& no) const {
    return eval(code_.root(), yes, no);
  }

 private:
  Value eval(std::size_t i, const std::vector<PointSet>& yes, const std::vector<PointSet>& no) const {
    using K = Formula::Kind;
    const auto& n = code_.nodes[i];
    switch (n.kind) {
      case K::Var: return {yes[n.var], no[n.var]};
      case K::Bottom: return {PointSet{}, all_};
      case K::Not: {
        Value v = eval(n.args[0], yes, no);
        return {v.no, v.yes};
      }
      case K::And: {
        Value acc{all_, PointSet{}};
        for (auto a : n.args) {
          Value v = eval(a, yes, no);
          acc.yes &= v.yes;
          acc.no |= v.no;
          if (acc.no == all_) break;
        }
        return acc;
      }
      case K::Or: {
        Value acc{PointSet{}, all_};
        for (auto a : n.args) {
          Value v = eval(a, yes, no);
          acc.yes |= v.yes;
          acc.no &= v.no;
          if (acc.yes == all_) break;
        }
        return acc;
      }
      case K::Implies: {
        Value l = eval(n.args[0], yes, no);
        Value r = eval(n.args[1], yes, no);
        return {l.no | r.yes, l.yes & r.no};
      }
      case K::Box: {
        Value v = eval(n.args[0], yes, no);
        Value out;
        for (PointIndex w = 0; w < frame_.size(); ++w) {
          const PointSet& s = frame_.successors(w);
          if (s.subset_of(v.yes)) out.yes.insert(w);
          if (s.intersects(v.no)) out.no.insert(w);
        }
        return out;
      }
      case K::Diamond: {
        Value v = eval(n.args[0], yes, no);
        Value out;
        for (PointIndex w = 0; w < frame_.size(); ++w) {
          const PointSet& s = frame_.successors(w);
          if (s.intersects(v.yes)) out.yes.insert(w);
          if (s.subset_of(v.no)) out.no.insert(w);
        }
        return out;
      }
    }
    return {};
  }

  const Frame& frame_;
  const CompiledFormula& code_;
  PointSet all_;
};

}  // namespace detail

/// Truth of phi at w under V. Points named in V must belong to F.
inline bool satisfies(const Frame& f, const Valuation& v, PointIndex w, const Formula& phi) {
  if (w >= f.size()) throw Error(ErrorCode::UnknownPoint, "index " + std::to_string(w));
  detail::CompiledFormula code(phi);
  std::vector<PointSet> vals;
  for (const auto& name : code.vars) vals.push_back(v.resolve(f, name));
  for (const auto& [name, _] : v.entries()) v.resolve(f, name);
  return detail::Evaluator(f, code).eval(vals).contains(w);
}

inline bool satisfies(const Frame& f, const Valuation& v, std::string_view w, const Formula& phi) {
  return satisfies(f, v, f.index_of(w), phi);
}

/// Points of F where phi holds under V.
inline PointSet truth_set(const Frame& f, const Valuation& v, const Formula& phi) {
  detail::CompiledFormula code(phi);
  std::vector<PointSet> vals;
  for (const auto& name : code.vars) vals.push_back(v.resolve(f, name));
  return detail::Evaluator(f, code).eval(vals);
}

/// Valuation search strategy.
///  - Exhaustive: plain enumeration of all 2^(points*vars) valuations; the
///    budget bounds that count.
///  - Pruned: depth-first search over the same bit order with three-valued
///    evaluation, cutting a branch once the verdict is decided for every
///    completion; the budget bounds visited search nodes.
///  - Auto: Exhaustive when it fits the budget, Pruned otherwise.
/// All three return the same verdict and the same (first) countermodel.
enum class Engine { Auto, Exhaustive, Pruned };

struct ValidityOptions {
  std::uint64_t budget = std::uint64_t{1} << 24;
  Engine engine = Engine::Auto;
};

struct Countermodel {
  Valuation valuation;
  PointIndex point = 0;
  std::string point_name;
};

struct ValidityResult {
  bool valid = true;
  std::optional<Countermodel> countermodel;
  std::uint64_t work = 0;  // valuations enumerated or search nodes visited
  Engine engine = Engine::Exhaustive;
  std::uint64_t bits = 0;  // points * variables
};

namespace detail {

// Valuation bit order shared by both engines. Bit k (k = 0 most significant)
// is the pair order[k] = (point, variable); points are taken by increasing
// rank, then point order, variables in natural order inside a point. The
// first countermodel is the one with the least bit string.
struct BitOrder {
  std::vector<std::pair<PointIndex, std::size_t>> pairs;

  BitOrder(const Frame& f, std::size_t nvars) {
    auto ranks = point_ranks(f);
    std::vector<PointIndex> pts(f.size());
    for (PointIndex i = 0; i < f.size(); ++i) pts[i] = i;
    std::stable_sort(pts.begin(), pts.end(), [&](auto a, auto b) { return ranks[a] < ranks[b]; });
    for (auto w : pts)
      for (std::size_t v = 0; v < nvars; ++v) pairs.emplace_back(w, v);
  }
};

class ValidityCheck {
 public:
  ValidityCheck(const Frame& f, const Formula& phi, PointSet targets, ValidityOptions opts)
      : frame_(f), code_(phi), targets_(targets), opts_(opts), order_(f, code_.vars.size()) {}

  ValidityResult run() {
    const std::uint64_t bits = order_.pairs.size();
    bool fits = bits < 63 && (std::uint64_t{1} << bits) <= opts_.budget;
    Engine engine = opts_.engine;
    if (engine == Engine::Auto) engine = fits ? Engine::Exhaustive : Engine::Pruned;
    if (engine == Engine::Exhaustive && !fits)
      throw BudgetExceededError("valuation enumeration",
                                bits < 63 ? (std::uint64_t{1} << bits) : UINT64_MAX, opts_.budget);
    ValidityResult r = engine == Engine::Exhaustive ? exhaustive() : pruned();
    r.engine = engine;
    r.bits = bits;
    return r;
  }

 private:
  ValidityResult exhaustive() {
    ValidityResult r;
    const std::size_t bits = order_.pairs.size();
    std::vector<PointSet> vals(code_.vars.size());
    Evaluator ev(frame_, code_);
    const std::uint64_t total = std::uint64_t{1} << bits;
    for (std::uint64_t c = 0; c < total; ++c) {
      if (c) {
        // c-1 -> c flips the trailing bits; bit j of the counter is pair bits-1-j.
        std::uint64_t flips = c ^ (c - 1);
        for (std::size_t j = 0; flips >> j; ++j) {
          auto [w, v] = order_.pairs[bits - 1 - j];
          if (vals[v].contains(w)) vals[v].erase(w);
          else vals[v].insert(w);
        }
      }
      ++r.work;
      PointSet truth = ev.eval(vals);
      if (!targets_.subset_of(truth)) {
        r.valid = false;
        r.countermodel = make_countermodel(vals, (targets_ - truth).first());
        return r;
      }
    }
    return r;
  }

  ValidityResult pruned() {
    ValidityResult r;
    std::vector<PointSet> yes(code_.vars.size()), no(code_.vars.size());
    // All variable bits of every point start undecided.
    PartialEvaluator pe(frame_, code_);
    std::uint64_t nodes = 0;
    std::optional<std::vector<PointSet>> found;
    search(0, yes, no, pe, nodes, found);
    r.work = nodes;
    if (found) {
      r.valid = false;
      Evaluator ev(frame_, code_);
      PointSet truth = ev.eval(*found);
      r.countermodel = make_countermodel(*found, (targets_ - truth).first());
    }
    return r;
  }

  // Returns true when the search is finished (countermodel found).
  bool search(std::size_t k, std::vector<PointSet>& yes, std::vector<PointSet>& no,
              const PartialEvaluator& pe, std::uint64_t& nodes,
              std::optional<std::vector<PointSet>>& found) {
    if (++nodes > opts_.budget)
      throw BudgetExceededError("pruned valuation search", nodes, opts_.budget);
    auto v = pe.eval(yes, no);
    if (targets_.subset_of(v.yes)) return false;
    if (targets_.intersects(v.no) || k == order_.pairs.size()) {
      // Decided false somewhere (or fully assigned and not all true): the
      // all-zero completion is the least countermodel below this node.
      found = yes;
      return true;
    }
    auto [w, var] = order_.pairs[k];
    no[var].insert(w);
    if (search(k + 1, yes, no, pe, nodes, found)) return true;
    no[var].erase(w);
    yes[var].insert(w);
    if (search(k + 1, yes, no, pe, nodes, found)) return true;
    yes[var].erase(w);
    return false;
  }

  Countermodel make_countermodel(const std::vector<PointSet>& vals, PointIndex w) const {
    Countermodel cm;
    for (std::size_t v = 0; v < code_.vars.size(); ++v) {
      std::set<std::string> pts;
      vals[v].for_each([&](PointIndex i) { pts.insert(frame_.name(i)); });
      cm.valuation.assign(code_.vars[v], std::move(pts));
    }
    cm.point = w;
    cm.point_name = frame_.name(w);
    return cm;
  }

  const Frame& frame_;
  CompiledFormula code_;
  PointSet targets_;
  ValidityOptions opts_;
  BitOrder order_;
};

}  // namespace detail

/// F ⊨ phi, by search over all valuations of phi's variables.
inline ValidityResult frame_valid(const Frame& f, const Formula& phi, ValidityOptions opts = {}) {
  return detail::ValidityCheck(f, phi, f.all(), opts).run();
}

/// F, w ⊨ phi. Only F|_w matters for truth at w, so valuations range over
/// the generated subframe; the reported point indices refer to F.
inline ValidityResult point_valid(const Frame& f, PointIndex w, const Formula& phi, ValidityOptions opts = {}) {
  if (w >= f.size()) throw Error(ErrorCode::UnknownPoint, "index " + std::to_string(w));
  Frame sub = generated_subframe(f, w);
  auto r = detail::ValidityCheck(sub, phi, PointSet::single(sub.index_of(f.name(w))), opts).run();
  if (r.countermodel) r.countermodel->point = f.index_of(r.countermodel->point_name);
  return r;
}

/// A valuation making phi true at w, if any.
inline std::optional<Valuation> satisfiable_at(const Frame& f, PointIndex w, const Formula& phi,
                                               ValidityOptions opts = {}) {
  auto r = point_valid(f, w, neg(phi), opts);
  if (r.valid) return std::nullopt;
  return r.countermodel->valuation;
}

}  // namespace transframe

#endif  // TRANSFRAME_SEMANTICS_HPP
