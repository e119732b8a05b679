#ifndef TRANSFRAME_FORMULA_HPP
#define TRANSFRAME_FORMULA_HPP

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "transframe/error.hpp"

namespace transframe {

/// Modal formula AST. And/Or are n-ary (at least two operands when built
/// through conj/disj); Diamond is a primitive node rather than ~[]~.
struct Formula {
  enum class Kind { Var, Bottom, Not, And, Or, Implies, Box, Diamond };

  Kind kind = Kind::Bottom;
  std::string name;  // Var only
  std::vector<Formula> args;

  friend bool operator==(const Formula&, const Formula&) = default;
};

inline Formula var(std::string name) { return Formula{Formula::Kind::Var, std::move(name), {}}; }
inline Formula bottom() { return Formula{Formula::Kind::Bottom, {}, {}}; }
inline Formula neg(Formula f) { return Formula{Formula::Kind::Not, {}, {std::move(f)}}; }
inline Formula top() { return neg(bottom()); }
inline Formula box(Formula f) { return Formula{Formula::Kind::Box, {}, {std::move(f)}}; }
inline Formula dia(Formula f) { return Formula{Formula::Kind::Diamond, {}, {std::move(f)}}; }
inline Formula implies(Formula a, Formula b) {
  return Formula{Formula::Kind::Implies, {}, {std::move(a), std::move(b)}};
}

/// n-ary conjunction; a single operand is returned as is, none gives ~false.
inline Formula conj(std::vector<Formula> fs) {
  if (fs.empty()) return top();
  if (fs.size() == 1) return std::move(fs.front());
  return Formula{Formula::Kind::And, {}, std::move(fs)};
}

/// n-ary disjunction; a single operand is returned as is, none gives false.
inline Formula disj(std::vector<Formula> fs) {
  if (fs.empty()) return bottom();
  if (fs.size() == 1) return std::move(fs.front());
  return Formula{Formula::Kind::Or, {}, std::move(fs)};
}

/// Orders variable names as prefix, then numeric suffix: p2 < p10 < q.
inline bool natural_less(std::string_view a, std::string_view b) {
  auto split = [](std::string_view s) {
    std::size_t k = s.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(s[k - 1]))) --k;
    return std::pair{s.substr(0, k), s.substr(k)};
  };
  auto [pa, na] = split(a);
  auto [pb, nb] = split(b);
  if (pa != pb) return pa < pb;
  if (na.size() != nb.size()) return na.size() < nb.size();
  return na < nb;
}

namespace detail {
inline void collect_vars(const Formula& f, std::vector<std::string>& out) {
  if (f.kind == Formula::Kind::Var) out.push_back(f.name);
  for (const auto& a : f.args) collect_vars(a, out);
}
}  // namespace detail

/// Distinct variables of f in natural order.
inline std::vector<std::string> variables(const Formula& f) {
  std::vector<std::string> out;
  detail::collect_vars(f, out);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return natural_less(a, b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::size_t formula_size(const Formula& f) {
  std::size_t n = 1;
  for (const auto& a : f.args) n += formula_size(a);
  return n;
}

// ---------------------------------------------------------------------------
// Printing. Concrete syntax: ~ & | -> [] <> false, parentheses only where the
// tree would otherwise re-parse differently (nested same-operator chains keep
// their parentheses so parse(print(f)) == f).

namespace detail {

inline int precedence(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    case Formula::Kind::Not:
    case Formula::Kind::Box:
    case Formula::Kind::Diamond: return 4;
    default: return 5;
  }
}

inline void print_to(const Formula& f, std::string& out);

inline void print_operand(const Formula& f, int min_level, std::string& out) {
  if (precedence(f) < min_level) {
    out += '(';
    print_to(f, out);
    out += ')';
  } else {
    print_to(f, out);
  }
}

inline void print_to(const Formula& f, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Var: out += f.name; return;
    case K::Bottom: out += "false"; return;
    case K::Not: out += '~'; print_operand(f.args[0], 4, out); return;
    case K::Box: out += "[]"; print_operand(f.args[0], 4, out); return;
    case K::Diamond: out += "<>"; print_operand(f.args[0], 4, out); return;
    case K::And:
    case K::Or: {
      const char* sep = f.kind == K::And ? " & " : " | ";
      int level = precedence(f) + 1;
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) out += sep;
        print_operand(f.args[i], level, out);
      }
      return;
    }
    case K::Implies:
      print_operand(f.args[0], 2, out);
      out += " -> ";
      print_operand(f.args[1], 1, out);
      return;
  }
}

}  // namespace detail

inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print_to(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing. Precedence: ~ [] <> (and box/dia) bind tightest, then &, |, and ->
// (right associative). Unparenthesised chains of & or | become one n-ary node.

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = implication();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  Formula implication() {
    Formula lhs = disjunction();
    if (accept("->")) return implies(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (accept("|")) parts.push_back(conjunction());
    return parts.size() == 1 ? std::move(parts.front()) : Formula{Formula::Kind::Or, {}, std::move(parts)};
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (accept("&")) parts.push_back(unary());
    return parts.size() == 1 ? std::move(parts.front()) : Formula{Formula::Kind::And, {}, std::move(parts)};
  }

  Formula unary() {
    if (accept("~")) return neg(unary());
    if (accept("[]") || accept_word("box")) return box(unary());
    if (accept("<>") || accept_word("dia")) return dia(unary());
    return atom();
  }

  Formula atom() {
    skip_space();
    if (accept("(")) {
      Formula f = implication();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    if (pos_ >= text_.size()) fail("unexpected end of input");
    std::string word = identifier();
    if (word.empty()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    if (word == "false" || word == "bot") return bottom();
    if (word == "true" || word == "top") return top();
    if (word == "box" || word == "dia") fail("operator '" + word + "' needs an operand");
    return var(std::move(word));
  }

  std::string identifier() {
    std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  bool accept_word(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) return false;
    std::size_t end = pos_ + word.size();
    if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
      return false;
    pos_ = end;
    return true;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) {
    skip_space();
    throw SyntaxError(pos_ + 1, what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text) { return detail::Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Formula families.

inline Formula p(std::size_t i) { return var("p" + std::to_string(i)); }

namespace detail {
inline void require_family_index(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidIndex, "family index must be at least 1");
}

// Disjunction over ordered pairs i != j of <>(p_i & (p_j | <>p_j)), i major.
inline Formula comparable_pair(std::size_t n) {
  std::vector<Formula> out;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j)
      if (i != j) out.push_back(dia(conj({p(i), disj({p(j), dia(p(j))})})));
  return disj(std::move(out));
}
}  // namespace detail

/// Depth formulas: B_1 = <>[]p1 -> p1, B_{i+1} = <>([]p_{i+1} & ~B_i) -> p_{i+1}.
inline Formula mk_B(std::size_t n) {
  detail::require_family_index(n);
  Formula f = implies(dia(box(p(1))), p(1));
  for (std::size_t i = 2; i <= n; ++i) f = implies(dia(conj({box(p(i)), neg(std::move(f))})), p(i));
  return f;
}

/// Width formulas over p_0..p_n.
inline Formula mk_Wid(std::size_t n) {
  detail::require_family_index(n);
  std::vector<Formula> seen;
  for (std::size_t i = 0; i <= n; ++i) seen.push_back(dia(p(i)));
  return implies(conj(std::move(seen)), detail::comparable_pair(n));
}

/// Weak width formulas over p_0..p_n and q.
inline Formula mk_Wid_plus(std::size_t n) {
  detail::require_family_index(n);
  std::vector<Formula> seen;
  for (std::size_t i = 0; i <= n; ++i) seen.push_back(dia(p(i)));
  Formula ante = conj({var("q"), dia(conj({box(neg(var("q"))), conj(std::move(seen))}))});
  return implies(std::move(ante), detail::comparable_pair(n));
}

/// Irreflexive-antichain formulas over p_0..p_n.
inline Formula mk_Wid_bullet(std::size_t n) {
  detail::require_family_index(n);
  std::vector<Formula> seen;
  for (std::size_t i = 0; i <= n; ++i) seen.push_back(dia(conj({p(i), box(neg(p(i)))})));
  return implies(conj(std::move(seen)), detail::comparable_pair(n));
}

}  // namespace transframe

#endif  // TRANSFRAME_FORMULA_HPP
