#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "patsel/term.hpp"

namespace patsel {

// Surface syntax.
//
//   term  ::= identifiers; `?name` schematic; `_` wildcard; `□` / `[]` hole;
//             application by juxtaposition (left-assoc, binds tightest);
//             `%x y. t` abstraction (`\` and `λ` also accepted);
//             `!!x y. t` sugar for all (%x. all (%y. t));
//             `[t1, t2]` sugar for Cons t1 (Cons t2 Nil);
//             infix: ==> (25, right, constant `imp`), == (40), = (50),
//             <= (50), + (65, left), * (70, left); `(+)` etc. are the bare
//             operator constants; parentheses.
//
// Pattern symbols are accepted only with allow_pattern, `?name` only with
// allow_schematic. Named binders become de Bruijn indices; the name is kept
// as the abstraction hint.
struct ParseOptions {
  bool allow_pattern = false;
  bool allow_schematic = false;
};

TermPtr parse_term(std::string_view text, ParseOptions opts = {});

// Canonical single-line form; inverse of parse_term up to alpha-equivalence
// on closed terms. Loose bounds print as L1, L2, ... by missing-abstraction
// index; binder hints are freshened with numeric suffixes when they clash
// with an enclosing binder or a free variable of their body.
std::string print_term(const TermPtr& t);

// Raw view: no infix/list/!!/==> sugar, bound variables shown as B0, B1, ...
std::string print_term_debruijn(const TermPtr& t);

// Like print_term, with every position in `marks` wrapped in ⟨...⟩
// (<< >> when ascii). Sugar that would hide a marked node falls back to
// plain application form, so every mark wraps a printed region.
std::string print_term_marked(const TermPtr& t,
                              const std::vector<Position>& marks, bool ascii);

struct PatternAtom {
  enum class Kind { Term, Concl, Asm, Prop };
  Kind kind = Kind::Prop;
  TermPtr term;  // set when kind == Term
};

struct PatternUnit {
  enum class Kind { In, At, For };
  Kind kind = Kind::In;
  PatternAtom atom;                // when kind != For
  std::vector<std::string> names;  // when kind == For
};

struct PatternExpr {
  std::vector<PatternUnit> units;
};

bool operator==(const PatternAtom& a, const PatternAtom& b);
bool operator==(const PatternUnit& a, const PatternUnit& b);
bool operator==(const PatternExpr& a, const PatternExpr& b);

// `(in <atom> | at <atom> | for <names>)+` with atoms `"term"`, concl, asm,
// prop. Quoted term atoms are parsed with allow_pattern and no schematics.
PatternExpr parse_pattern_expr(std::string_view text);

std::string print_pattern_expr(const PatternExpr& pe);

// Named schematic equation. Both sides may contain schematics; schematics
// occurring only in the right-hand side must be supplied via `where`.
struct Rule {
  std::string name;
  TermPtr lhs;
  TermPtr rhs;
};

// Line-oriented rule files: `name : <term> == <term>`, `#` comments, blank
// lines ignored. The top-level == splits the sides; premise-shaped rules
// (==> at the root) are rejected.
std::vector<Rule> parse_rules(std::string_view text);

}  // namespace patsel
