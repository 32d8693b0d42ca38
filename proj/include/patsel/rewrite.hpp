#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "patsel/select.hpp"
#include "patsel/syntax.hpp"
#include "patsel/term.hpp"

namespace patsel {

// Schematic name -> closed term (no loose bounds relative to the match
// root, no schematics).
using Substitution = std::map<std::string, TermPtr>;

// Output certificate of a conversion: lhs is always alpha-equal to the term
// the conversion was applied to.
struct Equation {
  TermPtr lhs;
  TermPtr rhs;
};

struct RewriteReport {
  Position pos;
  std::string rule_name;
  Substitution subst;
  // Every name a binder was opened with along pos, keyed by a-depth;
  // user-supplied names where the selection had them, invented ones
  // elsewhere.
  std::map<std::size_t, std::string> binder_names;
};

// First-order matching: extends seed so that the instantiated lhs is
// alpha-equal to t. Non-linear schematics need alpha-equal occurrences; a
// schematic may not capture variables bound inside the matched region.
std::optional<Substitution> fo_match(const TermPtr& lhs, const TermPtr& t,
                                     Substitution seed);

TermPtr subst_schematics(const TermPtr& t, const Substitution& subst);

Rule instantiate_rule(const Rule& rule, const Substitution& subst);

// A conversion takes a term and either produces an equation whose lhs is
// that term, or reports why it does not apply. `subst` carries the match of
// the innermost rewrite; `opened` the names used for binders opened on the
// way.
struct ConvResult {
  std::optional<Equation> eq;
  enum class Fail { none, mismatch, uninstantiated } fail = Fail::none;
  Substitution subst;
  std::map<std::size_t, std::string> opened;
};

using Conv = std::function<ConvResult(const TermPtr&)>;

// Rewrites a term at its root with the rule, seeded with explicit
// instantiations. Fails with `uninstantiated` when the result would still
// contain schematics.
Conv conv_rewrite(Rule rule, Substitution seed);

// Compiles a position into a conversion: l/r descend into an application,
// a opens the abstraction (with names[k] for the k-th 'a' when present,
// otherwise a fresh hint-derived name) and rebuilds it afterwards.
// Invented names additionally avoid `extra_avoid` (rule constants,
// where-value frees); user names raise NameClashError when they would
// capture. `user_clash` holds names a user binder may not collide with.
Conv conv_path(Position path, std::map<std::size_t, std::string> names,
               Conv inner, std::set<std::string> extra_avoid = {},
               std::set<std::string> user_clash = {});

using WhereBinding = std::pair<std::string, std::string>;  // ?name, term text

// Parses the `where` instantiations. Identifiers naming opened binders of
// the selection denote exactly those opened free variables; anything else
// is an ordinary free. Throws WhereError on unknown schematics, duplicates
// or parse errors.
Substitution resolve_where(const std::vector<WhereBinding>& bindings,
                           const Selection& sel, const TermPtr& root,
                           const Rule& rule);

enum class RewriteMode { first, all };

struct RewriteOutcome {
  TermPtr result;
  std::vector<RewriteReport> reports;
};

// Single-step rewriting driver: evaluate the pattern, then apply the
// (possibly reversed) rule via a path-compiled conversion. mode::first
// rewrites the first selection where the rule applies; mode::all attempts
// every selection, deepest first, on the evolving term.
RewriteOutcome patsubst(const TermPtr& root, const PatternExpr& pe,
                        const Rule& rule,
                        const std::vector<WhereBinding>& where_bindings,
                        bool symmetric, RewriteMode mode);

}  // namespace patsel
