#pragma once

#include <map>
#include <string>
#include <vector>

#include "patsel/syntax.hpp"
#include "patsel/term.hpp"

namespace patsel {

// One selected subterm: its position in the root term, the subterm itself
// (with bound variables named so far replaced by free variables), and the
// names assigned to binders opened along the way. `names` is keyed by
// a-depth: key k names the binder entered at the (k+1)-th 'a' of pos. The
// key is stable under further descent, which is what lets the rewrite
// engine reuse the user's identifiers later.
struct Selection {
  TermPtr term;
  Position pos;
  std::map<std::size_t, std::string> names;
};

// Ordered, deduplicated by (pos, names); order is insertion order, and all
// combinators enumerate in pre-order, so "first selection" means
// leftmost-outermost. `notes` collects diagnostics for selections dropped
// because a binder name would clash.
struct SelectionSet {
  TermPtr root;
  std::vector<Selection> items;
  std::vector<std::string> notes;

  void push(Selection sel);
};

SelectionSet initial_selection(TermPtr root);

// Structural match modulo alpha; wildcards and holes match any term,
// including terms with loose bounds.
bool matches(const TermPtr& t, const TermPtr& pattern);

// Keep the selections whose term matches the pattern.
SelectionSet sem_term(const TermPtr& pattern, SelectionSet s);

// Every subterm of every selection, in pre-order; includes the selection
// itself.
SelectionSet sem_in(SelectionSet s);

// Descend each selection to q; selections without a subterm at q are
// dropped.
SelectionSet sem_pos(const Position& q, SelectionSet s);

// Replace the innermost not-yet-named loose bounds by the given free
// variables (leftmost name goes to the outermost of the affected binders).
// Selections with fewer unnamed enclosing binders than names are dropped;
// name clashes with the root's frees or with earlier names drop the
// selection with a note.
SelectionSet sem_bind(const std::vector<std::string>& names, SelectionSet s);

// Position of the unique hole of a pattern; throws PatternError when the
// pattern has no or several holes.
Position pos_hole(const TermPtr& pattern);

// Hints of the binders strictly above q, outermost first.
std::vector<std::string> binds_to(const TermPtr& pattern, const Position& q);

// Match against the pattern, descend to its hole and name the binders
// passed on the way after the pattern's own binders. Without a hole this is
// just sem_term.
SelectionSet sem_match(const TermPtr& pattern, SelectionSet s);

// A goal !!x1..xm. P1 ==> ... ==> Pn ==> Q decomposed into binder hints,
// premises and conclusion. Premises and conclusion may contain loose bounds
// referring to the stripped binders. A term without that shape has no
// binders, no premises and is its own conclusion.
struct GoalParts {
  std::vector<std::string> binders;
  std::vector<TermPtr> premises;
  TermPtr conclusion;
};
GoalParts strip_goal(const TermPtr& t);

SelectionSet sem_concl(SelectionSet s);
SelectionSet sem_asm(SelectionSet s);

// Strip the leading !!-binders and name the k innermost ones (the last
// name goes to the innermost binder); outer binders stay loose. Selections
// with fewer binders than names are dropped.
SelectionSet sem_for(const std::vector<std::string>& names, SelectionSet s);

// Interpret a unit sequence right-to-left (the rightmost unit applies
// first), without the implicit `in concl` step.
SelectionSet eval_units(const std::vector<PatternUnit>& units, SelectionSet s);

// Full pattern evaluation on a root term: appends `in concl` when the
// pattern ends with a term atom, then runs eval_units on the initial
// singleton selection.
SelectionSet eval_pattern(const PatternExpr& pe, TermPtr root);

}  // namespace patsel
