// Brute-force reference implementations used by the test suites. They work
// from plain adjacency matrices and the textbook definitions, and share no
// code with the library beyond the Frame accessors and the formula AST.
#ifndef TRANSFRAME_TESTS_ORACLES_HPP
#define TRANSFRAME_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "transframe/formula.hpp"
#include "transframe/frame.hpp"

namespace oracle {

using transframe::Formula;
using transframe::Frame;

using Matrix = std::vector<std::vector<bool>>;
using Assignment = std::map<std::string, std::vector<bool>>;  // variable -> truth per point

inline Matrix matrix(const Frame& f) {
  Matrix m(f.size(), std::vector<bool>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j) m[i][j] = f.sees(i, j);
  return m;
}

/// Direct recursive Kripke semantics.
inline bool eval(const Matrix& r, const Assignment& v, std::size_t w, const Formula& phi) {
  using K = Formula::Kind;
  switch (phi.kind) {
    case K::Var: {
      auto it = v.find(phi.name);
      return it != v.end() && it->second[w];
    }
    case K::Bottom: return false;
    case K::Not: return !eval(r, v, w, phi.args[0]);
    case K::And:
      for (const auto& a : phi.args)
        if (!eval(r, v, w, a)) return false;
      return true;
    case K::Or:
      for (const auto& a : phi.args)
        if (eval(r, v, w, a)) return true;
      return false;
    case K::Implies: return !eval(r, v, w, phi.args[0]) || eval(r, v, w, phi.args[1]);
    case K::Box:
      for (std::size_t u = 0; u < r.size(); ++u)
        if (r[w][u] && !eval(r, v, u, phi.args[0])) return false;
      return true;
    case K::Diamond:
      for (std::size_t u = 0; u < r.size(); ++u)
        if (r[w][u] && eval(r, v, u, phi.args[0])) return true;
      return false;
  }
  return false;
}

/// Calls fn(assignment) for every valuation of `vars` over n points; stops
/// when fn returns false. Returns false iff stopped early.
inline bool for_each_assignment(std::size_t n, const std::vector<std::string>& vars,
                                const std::function<bool(const Assignment&)>& fn) {
  const std::size_t bits = n * vars.size();
  Assignment a;
  for (const auto& x : vars) a[x] = std::vector<bool>(n, false);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    std::size_t b = 0;
    for (const auto& x : vars)
      for (std::size_t w = 0; w < n; ++w, ++b) a[x][w] = (code >> b) & 1;
    if (!fn(a)) return false;
  }
  return true;
}

/// Truth at every point in `points` under every valuation.
inline bool valid_at(const Frame& f, const std::vector<std::size_t>& points, const Formula& phi) {
  Matrix r = matrix(f);
  return for_each_assignment(f.size(), transframe::variables(phi), [&](const Assignment& a) {
    for (auto w : points)
      if (!eval(r, a, w, phi)) return false;
    return true;
  });
}

inline bool frame_valid(const Frame& f, const Formula& phi) {
  std::vector<std::size_t> all(f.size());
  std::iota(all.begin(), all.end(), 0);
  return valid_at(f, all, phi);
}

inline bool satisfiable_at(const Frame& f, std::size_t w, const Formula& phi) {
  Matrix r = matrix(f);
  return !for_each_assignment(f.size(), transframe::variables(phi),
                              [&](const Assignment& a) { return !eval(r, a, w, phi); });
}

/// Largest set of pairwise incomparable points (optionally irreflexive only)
/// among `candidates`, by subset enumeration.
inline std::size_t max_antichain(const Frame& f, bool irreflexive_only, std::vector<std::size_t> candidates) {
  if (irreflexive_only)
    candidates.erase(std::remove_if(candidates.begin(), candidates.end(), [&](auto w) { return f.sees(w, w); }),
                     candidates.end());
  const std::size_t n = candidates.size();
  std::size_t best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    std::size_t size = static_cast<std::size_t>(__builtin_popcountll(s));
    if (size <= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((s >> i & 1) && (s >> j & 1)) {
          auto a = candidates[i], b = candidates[j];
          if (f.sees(a, b) || f.sees(b, a)) ok = false;
        }
    if (ok) best = size;
  }
  return best;
}

inline std::vector<std::size_t> all_points(const Frame& f) {
  std::vector<std::size_t> v(f.size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

inline std::vector<std::size_t> generated(const Frame& f, std::size_t w) {
  std::vector<std::size_t> v{w};
  for (std::size_t u = 0; u < f.size(); ++u)
    if (u != w && f.sees(w, u)) v.push_back(u);
  std::sort(v.begin(), v.end());
  return v;
}

inline bool properly_sees(const Frame& f, std::size_t a, std::size_t b) { return f.sees(a, b) && !f.sees(b, a); }

/// Number of points in the longest chain w0, w1, ... with each w_{i+1} a
/// proper successor of w_i.
inline std::size_t rank(const Frame& f) {
  std::vector<std::size_t> memo(f.size(), 0);
  std::function<std::size_t(std::size_t)> from = [&](std::size_t w) -> std::size_t {
    if (memo[w]) return memo[w];
    std::size_t best = 0;
    for (std::size_t u = 0; u < f.size(); ++u)
      if (properly_sees(f, w, u)) best = std::max(best, from(u));
    return memo[w] = best + 1;
  };
  std::size_t best = 0;
  for (std::size_t w = 0; w < f.size(); ++w) best = std::max(best, from(w));
  return best;
}

inline bool is_root(const Frame& f, std::size_t w) {
  for (std::size_t u = 0; u < f.size(); ++u)
    if (u != w && !f.sees(w, u)) return false;
  return true;
}

/// Surjective, forth and back, straight from the definition.
inline bool is_reduction(const Frame& s, const Frame& t, const std::vector<std::size_t>& f) {
  std::vector<bool> hit(t.size(), false);
  for (auto v : f) hit[v] = true;
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      if (s.sees(a, b) && !t.sees(f[a], f[b])) return false;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t v = 0; v < t.size(); ++v) {
      if (!t.sees(f[a], v)) continue;
      bool found = false;
      for (std::size_t b = 0; b < s.size() && !found; ++b) found = s.sees(a, b) && f[b] == v;
      if (!found) return false;
    }
  return true;
}

/// Every map from s to t, checked against the definition. Returns the number
/// of reductions found (stopping at `limit`).
inline std::size_t count_reductions(const Frame& s, const Frame& t, std::size_t limit = 1) {
  if (t.size() == 0 || s.size() == 0) return 0;
  std::vector<std::size_t> f(s.size(), 0);
  std::size_t found = 0;
  while (true) {
    if (is_reduction(s, t, f) && ++found >= limit) return found;
    std::size_t k = 0;
    while (k < f.size() && ++f[k] == t.size()) f[k++] = 0;
    if (k == f.size()) return found;
  }
}

/// Isomorphism by trying every bijection.
inline bool isomorphic(const Frame& a, const Frame& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i)
      for (std::size_t j = 0; j < a.size() && ok; ++j) ok = a.sees(i, j) == b.sees(p[i], p[j]);
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

/// A random transitive frame: random relation, then closed.
inline Frame random_frame(std::mt19937_64& rng, std::size_t n, unsigned density_percent) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  std::vector<transframe::Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rng() % 100 < density_percent) edges.emplace_back(names[i], names[j]);
  return Frame::build(names, edges, true);
}

/// A random formula over p0..p{vars-1} with the given number of connectives.
inline Formula random_formula(std::mt19937_64& rng, std::size_t vars, std::size_t depth) {
  using namespace transframe;
  if (depth == 0) {
    if (rng() % 8 == 0) return bottom();
    return var("p" + std::to_string(rng() % vars));
  }
  switch (rng() % 6) {
    case 0: return neg(random_formula(rng, vars, depth - 1));
    case 1: return Formula{Formula::Kind::And, {}, {random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth / 2)}};
    case 2: return Formula{Formula::Kind::Or, {}, {random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth / 2)}};
    case 3: return implies(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth / 2));
    case 4: return box(random_formula(rng, vars, depth - 1));
    default: return dia(random_formula(rng, vars, depth - 1));
  }
}

}  // namespace oracle

#endif  // TRANSFRAME_TESTS_ORACLES_HPP
