#pragma once

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "patsel/errors.hpp"

namespace patsel {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Untyped lambda term: named free variables, schematic (rule) variables,
// de Bruijn indices for bound variables, application and abstraction.
// Abstraction hints carry no meaning; alpha_eq ignores them.
// Wildcard and Hole only ever occur inside patterns; parsing keeps them
// out of goal terms and rules.
class Term {
 public:
  struct Free {
    std::string name;
  };
  struct Schematic {
    std::string name;
  };
  struct Bound {
    std::size_t index;
  };
  struct App {
    TermPtr fun;
    TermPtr arg;
  };
  struct Abs {
    std::string hint;
    TermPtr body;
  };
  struct Wildcard {};
  struct Hole {};

  using Node = std::variant<Free, Schematic, Bound, App, Abs, Wildcard, Hole>;

  explicit Term(Node node) : node_(std::move(node)) {}
  const Node& node() const { return node_; }

 private:
  Node node_;
};

TermPtr free_var(std::string name);
TermPtr schematic(std::string name);
TermPtr bound(std::size_t index);
TermPtr app(TermPtr fun, TermPtr arg);
TermPtr abs(std::string hint, TermPtr body);
TermPtr wildcard();
TermPtr hole();

template <class... Rest>
TermPtr app(TermPtr fun, TermPtr a, TermPtr b, Rest... rest) {
  return app(app(std::move(fun), std::move(a)), std::move(b),
             std::move(rest)...);
}

// Subterm address: a word over {l, r, a}. l/r descend into the function/
// argument of an application, a descends under an abstraction.
class Position {
 public:
  Position() = default;
  explicit Position(std::string_view word) : word_(word) {
    for (char c : word_)
      if (c != 'l' && c != 'r' && c != 'a')
        throw PositionError("invalid position letter '" + std::string(1, c) +
                            "'");
  }

  bool empty() const { return word_.empty(); }
  std::size_t size() const { return word_.size(); }
  char operator[](std::size_t i) const { return word_[i]; }
  const std::string& word() const { return word_; }

  // Number of abstractions traversed from the root to this position.
  std::size_t a_depth() const;

  Position operator+(const Position& q) const;
  Position operator+(char step) const;

  bool is_prefix_of(const Position& q) const;
  bool is_strict_prefix_of(const Position& q) const {
    return size() < q.size() && is_prefix_of(q);
  }

  friend auto operator<=>(const Position&, const Position&) = default;

 private:
  std::string word_;
};

// Pre-order enumeration of all positions of t; the empty word comes first,
// an application lists all l-prefixed positions before the r-prefixed ones.
std::vector<Position> positions(const TermPtr& t);

// Subterm of t at p. Bound indices are not shifted; the result may contain
// loose bounds. Throws PositionError when p does not address a subterm.
TermPtr subterm(const TermPtr& t, const Position& p);

// Like subterm, but null instead of throwing.
TermPtr try_subterm(const TermPtr& t, const Position& p);

// Structural equality ignoring abstraction hints.
bool alpha_eq(const TermPtr& s, const TermPtr& t);

// Minimal number of enclosing abstractions needed to close t: the maximal
// missing-abstraction index over all loose bound occurrences, 0 if none.
// An occurrence Bound(k) at local binder depth d refers to missing
// abstraction k - d + 1 when k >= d.
std::size_t loose_depth(const TermPtr& t);

// Replaces loose bounds by free variables, keyed by missing-abstraction
// index (1 = innermost missing). Occurrences without an entry are kept.
TermPtr subst_loose_by_index(const TermPtr& t,
                             const std::map<std::size_t, std::string>& names);

// subst_loose(t, [v1..vn]) maps missing abstraction 1 to vn, 2 to v(n-1),
// ..., n to v1; indices above n are kept. Extra names bind nothing.
TermPtr subst_loose(const TermPtr& t, const std::vector<std::string>& names);

// Body of an abstraction with its binder replaced by the free variable
// `name`; deeper indices shift down by one. Throws PositionError when t is
// not an abstraction, NameClashError when name already occurs free in t.
TermPtr open_abs(const TermPtr& t, const std::string& name);

// Inverse of open_abs: abstracts every occurrence of Free(name) in t,
// shifting loose indices up by one.
TermPtr close_abs(const TermPtr& t, const std::string& name,
                  const std::string& hint);

std::set<std::string> free_vars(const TermPtr& t);
std::set<std::string> schematic_vars(const TermPtr& t);

bool contains_schematic(const TermPtr& t);
bool contains_pattern_symbol(const TermPtr& t);

}  // namespace patsel
