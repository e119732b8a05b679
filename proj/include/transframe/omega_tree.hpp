#ifndef TRANSFRAME_OMEGA_TREE_HPP
#define TRANSFRAME_OMEGA_TREE_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "transframe/error.hpp"

namespace transframe {

/// m ≼ n: both zero, or 0 < m <= n. Zero is incomparable to every positive.
inline bool nat_leq(std::size_t m, std::size_t n) { return (m == 0 && n == 0) || (m > 0 && m <= n); }

/// s ⊴ t: equal length and cmp holds position by position.
template <typename T, typename Cmp>
bool seq_pointwise(Cmp cmp, const std::vector<T>& s, const std::vector<T>& t) {
  if (s.size() != t.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!cmp(s[i], t[i])) return false;
  return true;
}

/// t ≪ s: both empty, or t is at least as long as the nonempty s, the last
/// element of s relates to the last element of t, and s embeds pointwise into
/// some subsequence of t of its own length.
///
/// The subsequence test is greedy: matching each element of s to the earliest
/// admissible position of t never rules out a later match.
template <typename T, typename Cmp>
bool seq_embed(Cmp cmp, const std::vector<T>& t, const std::vector<T>& s) {
  if (s.empty() || t.empty()) return s.empty() && t.empty();
  if (t.size() < s.size()) return false;
  if (!cmp(s.back(), t.back())) return false;
  std::size_t j = 0;
  for (const auto& x : s) {
    while (j < t.size() && !cmp(x, t[j])) ++j;
    if (j == t.size()) return false;
    ++j;
  }
  return true;
}

/// A finite tree whose nodes carry natural-number labels. Nodes are
/// addressed by index; index 0 is always the root.
class OmegaTree {
 public:
  using Node = std::size_t;

  OmegaTree() : labels_{0}, parents_{std::nullopt}, children_(1) {}

  static OmegaTree leaf(std::size_t label) {
    OmegaTree t;
    t.labels_[0] = label;
    return t;
  }

  static OmegaTree make(std::size_t label, const std::vector<OmegaTree>& children) {
    OmegaTree t = leaf(label);
    for (const auto& c : children) t.graft(0, c);
    return t;
  }

  /// Builds a tree from a parent array. Exactly one node may lack a parent,
  /// and following parents from any node must reach it. Node numbering of the
  /// result is preorder from that root; children keep increasing index order.
  static OmegaTree from_parents(const std::vector<std::optional<std::size_t>>& parent,
                                const std::vector<std::size_t>& labels) {
    const std::size_t n = parent.size();
    if (n == 0 || labels.size() != n) throw Error(ErrorCode::InvalidTree, "parent and label arrays must match and be nonempty");
    std::optional<std::size_t> root;
    std::vector<std::vector<std::size_t>> kids(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!parent[i]) {
        if (root) throw Error(ErrorCode::InvalidTree, "more than one root");
        root = i;
      } else {
        if (*parent[i] >= n) throw Error(ErrorCode::InvalidTree, "parent index out of range");
        kids[*parent[i]].push_back(i);
      }
    }
    if (!root) throw Error(ErrorCode::InvalidTree, "no root");
    OmegaTree t = leaf(labels[*root]);
    std::size_t reached = 1;
    std::vector<std::pair<std::size_t, Node>> stack{{*root, 0}};
    while (!stack.empty()) {
      auto [src, dst] = stack.back();
      stack.pop_back();
      for (auto it = kids[src].begin(); it != kids[src].end(); ++it) {
        Node c = t.add_child(dst, labels[*it]);
        stack.emplace_back(*it, c);
        ++reached;
      }
    }
    if (reached != n) throw Error(ErrorCode::InvalidTree, "parent links contain a cycle");
    t.renumber_preorder();
    return t;
  }

  std::size_t size() const { return labels_.size(); }
  Node root() const { return 0; }
  std::size_t label(Node v) const { return labels_.at(v); }
  std::optional<Node> parent(Node v) const { return parents_.at(v); }
  const std::vector<Node>& children(Node v) const { return children_.at(v); }

  /// The root sits on level 1.
  std::size_t level(Node v) const {
    std::size_t l = 1;
    for (auto p = parents_.at(v); p; p = parents_[*p]) ++l;
    return l;
  }

  std::size_t height() const {
    std::size_t h = 0;
    for (Node v = 0; v < size(); ++v) h = std::max(h, level(v));
    return h;
  }

  std::size_t zero_count() const {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), std::size_t{0}));
  }

  OmegaTree subtree(Node v) const {
    OmegaTree t = leaf(label(v));
    for (Node c : children(v)) t.graft(0, subtree(c));
    return t;
  }

  /// Attaches a copy of `sub` below node v and returns the new child.
  Node graft(Node v, const OmegaTree& sub) {
    Node top = add_child(v, sub.label(0));
    for (Node c : sub.children(0)) graft(top, sub.subtree(c));
    return top;
  }

  std::vector<std::size_t> labels() const { return labels_; }

 private:
  Node add_child(Node v, std::size_t label) {
    Node c = labels_.size();
    labels_.push_back(label);
    parents_.push_back(v);
    children_.emplace_back();
    children_[v].push_back(c);
    return c;
  }

  void renumber_preorder() { *this = subtree(0); }

  std::vector<std::size_t> labels_;
  std::vector<std::optional<Node>> parents_;
  std::vector<std::vector<Node>> children_;
};

namespace detail {

// Canonical text of every subtree and the standard child order of every node.
// Children with label 0 come first, sorted by text; positive children follow,
// sorted by (label, text), except that the least of them moves to the end.
struct CanonicalForm {
  std::vector<std::string> text;
  std::vector<std::vector<OmegaTree::Node>> order;

  explicit CanonicalForm(const OmegaTree& t) : text(t.size()), order(t.size()) { visit(t, t.root()); }

 private:
  void visit(const OmegaTree& t, OmegaTree::Node v) {
    std::vector<OmegaTree::Node> zero, pos;
    for (auto c : t.children(v)) {
      visit(t, c);
      (t.label(c) == 0 ? zero : pos).push_back(c);
    }
    auto by_key = [&](auto a, auto b) {
      if (t.label(a) != t.label(b)) return t.label(a) < t.label(b);
      return text[a] < text[b];
    };
    std::sort(zero.begin(), zero.end(), by_key);
    std::sort(pos.begin(), pos.end(), by_key);
    if (!pos.empty()) std::rotate(pos.begin(), pos.begin() + 1, pos.end());
    order[v] = zero;
    order[v].insert(order[v].end(), pos.begin(), pos.end());
    std::string s = std::to_string(t.label(v));
    if (!order[v].empty()) {
      s += '(';
      for (std::size_t k = 0; k < order[v].size(); ++k) {
        if (k) s += ',';
        s += text[order[v][k]];
      }
      s += ')';
    }
    text[v] = std::move(s);
  }
};

}  // namespace detail

/// Bracket text `label(child,...)` with children in standard order. Equal
/// text means isomorphic labelled trees.
inline std::string to_string(const OmegaTree& t) { return detail::CanonicalForm(t).text[t.root()]; }

/// Parses bracket text. Children keep the order written.
inline OmegaTree parse_tree(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) -> OmegaTree {
    throw Error(ErrorCode::InvalidTree, what + " at column " + std::to_string(pos + 1));
  };
  auto parse_node = [&](auto&& self) -> OmegaTree {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) return fail("expected a label");
    OmegaTree t = OmegaTree::leaf(std::stoull(std::string(text.substr(start, pos - start))));
    skip();
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      while (true) {
        t.graft(0, self(self));
        skip();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == ')') {
          ++pos;
          break;
        }
        return fail("expected ',' or ')'");
      }
    }
    return t;
  };
  OmegaTree t = parse_node(parse_node);
  skip();
  if (pos != text.size()) fail("trailing input");
  return t;
}

/// Standard representation triple: the root label, the label-0 children and
/// the positive children, the last of which has least root label.
struct StdTriple {
  std::size_t root_label = 0;
  std::vector<OmegaTree> zero_children;
  std::vector<OmegaTree> pos_children;

  friend bool operator==(const StdTriple& a, const StdTriple& b) {
    auto same = [](const std::vector<OmegaTree>& x, const std::vector<OmegaTree>& y) {
      if (x.size() != y.size()) return false;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (to_string(x[i]) != to_string(y[i])) return false;
      return true;
    };
    return a.root_label == b.root_label && same(a.zero_children, b.zero_children) &&
           same(a.pos_children, b.pos_children);
  }
};

inline StdTriple std_triple(const OmegaTree& t) {
  detail::CanonicalForm cf(t);
  StdTriple out;
  out.root_label = t.label(t.root());
  for (auto c : cf.order[t.root()])
    (t.label(c) == 0 ? out.zero_children : out.pos_children).push_back(t.subtree(c));
  return out;
}

inline OmegaTree reassemble(const StdTriple& s) {
  OmegaTree t = OmegaTree::leaf(s.root_label);
  for (const auto& c : s.zero_children) t.graft(0, c);
  for (const auto& c : s.pos_children) t.graft(0, c);
  return t;
}

/// Height bound m and zero-node bound n: heit(t) <= m and fewer than n
/// label-0 nodes.
struct TreeClass {
  std::size_t m = 1;
  std::size_t n = 1;

  bool contains(const OmegaTree& t) const { return t.height() <= m && t.zero_count() < n; }
};

namespace detail {

class TreeEmbedding {
 public:
  TreeEmbedding(const OmegaTree& a, const OmegaTree& b)
      : a_(a), b_(b), ca_(a), cb_(b), memo_(a.size() * b.size(), kUnknown) {}

  bool run() { return embeds(a_.root(), b_.root()); }

 private:
  static constexpr std::int8_t kUnknown = -1;

  bool embeds(OmegaTree::Node x, OmegaTree::Node y) {
    auto& slot = memo_[x * b_.size() + y];
    if (slot == kUnknown) slot = decide(x, y) ? 1 : 0;
    return slot == 1;
  }

  bool decide(OmegaTree::Node x, OmegaTree::Node y) {
    if (!nat_leq(a_.label(x), b_.label(y))) return false;
    if (a_.children(x).empty()) return b_.children(y).empty();
    std::vector<OmegaTree::Node> zx, px, zy, py;
    for (auto c : ca_.order[x]) (a_.label(c) == 0 ? zx : px).push_back(c);
    for (auto c : cb_.order[y]) (b_.label(c) == 0 ? zy : py).push_back(c);
    if (zx.size() != zy.size()) return false;
    if (!perfect_matching(zx, zy)) return false;
    return seq_embed([&](auto u, auto v) { return embeds(u, v); }, py, px);
  }

  // Kuhn's augmenting paths on the bipartite "embeds into" graph.
  bool perfect_matching(const std::vector<OmegaTree::Node>& xs, const std::vector<OmegaTree::Node>& ys) {
    const std::size_t n = xs.size();
    std::vector<std::vector<char>> ok(n, std::vector<char>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ok[i][j] = embeds(xs[i], ys[j]);
    std::vector<std::optional<std::size_t>> owner(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<char> seen(n, 0);
      auto augment = [&](auto&& self, std::size_t u) -> bool {
        for (std::size_t j = 0; j < n; ++j) {
          if (!ok[u][j] || seen[j]) continue;
          seen[j] = 1;
          if (!owner[j] || self(self, *owner[j])) {
            owner[j] = u;
            return true;
          }
        }
        return false;
      };
      if (!augment(augment, i)) return false;
    }
    return true;
  }

  const OmegaTree& a_;
  const OmegaTree& b_;
  CanonicalForm ca_, cb_;
  std::vector<std::int8_t> memo_;
};

}  // namespace detail

/// t ⊑ t'. Label-0 children are matched by some bijection; positive
/// children follow the sequence embedding with last child to last child.
inline bool tree_embed(const OmegaTree& t, const OmegaTree& u) { return detail::TreeEmbedding(t, u).run(); }

}  // namespace transframe

#endif  // TRANSFRAME_OMEGA_TREE_HPP
