#pragma once

// Independent re-implementations used as test oracles. These deliberately
// avoid the library's conversion/selection code paths: plain walkers over
// the term structure.

#include <map>
#include <string>

#include "patsel/rewrite.hpp"
#include "patsel/select.hpp"
#include "patsel/term.hpp"

namespace oracle {

using namespace patsel;

inline std::size_t node_count(const TermPtr& t) {
  return std::visit(
      Overloaded{
          [](const Term::App& a) {
            return 1 + node_count(a.fun) + node_count(a.arg);
          },
          [](const Term::Abs& a) { return 1 + node_count(a.body); },
          [](const auto&) -> std::size_t { return 1; },
      },
      t->node());
}

inline TermPtr walk_to(const TermPtr& t, const std::string& word,
                       std::size_t i = 0) {
  if (i == word.size()) return t;
  if (word[i] == 'a') {
    const auto* a = std::get_if<Term::Abs>(&t->node());
    return a ? walk_to(a->body, word, i + 1) : nullptr;
  }
  const auto* a = std::get_if<Term::App>(&t->node());
  if (!a) return nullptr;
  return walk_to(word[i] == 'l' ? a->fun : a->arg, word, i + 1);
}

// Replace loose bound occurrences by frees, keyed by missing-abstraction
// index (occurrence Bound(k) at local depth d refers to k - d + 1).
inline TermPtr name_loose(const TermPtr& t,
                          const std::map<std::size_t, std::string>& by_missing,
                          std::size_t d = 0) {
  return std::visit(
      Overloaded{
          [&](const Term::Bound& b) -> TermPtr {
            if (b.index >= d) {
              auto it = by_missing.find(b.index - d + 1);
              if (it != by_missing.end()) return free_var(it->second);
            }
            return t;
          },
          [&](const Term::App& a) -> TermPtr {
            return app(name_loose(a.fun, by_missing, d),
                       name_loose(a.arg, by_missing, d));
          },
          [&](const Term::Abs& a) -> TermPtr {
            return abs(a.hint, name_loose(a.body, by_missing, d + 1));
          },
          [&](const auto&) -> TermPtr { return t; },
      },
      t->node());
}

// What a selection's term must be: the subterm at its position with the
// named missing abstractions replaced by the recorded frees.
inline TermPtr rederive_selection(const TermPtr& root, const Selection& sel) {
  TermPtr sub = walk_to(root, sel.pos.word());
  if (!sub) return nullptr;
  const std::size_t depth = sel.pos.a_depth();
  std::map<std::size_t, std::string> by_missing;
  for (const auto& [k, v] : sel.names) by_missing[depth - k] = v;
  return name_loose(sub, by_missing);
}

inline TermPtr replace_at(const TermPtr& t, const std::string& word,
                          const TermPtr& repl, std::size_t i = 0) {
  if (i == word.size()) return repl;
  if (word[i] == 'a') {
    const auto& a = std::get<Term::Abs>(t->node());
    return abs(a.hint, replace_at(a.body, word, repl, i + 1));
  }
  const auto& a = std::get<Term::App>(t->node());
  if (word[i] == 'l') return app(replace_at(a.fun, word, repl, i + 1), a.arg);
  return app(a.fun, replace_at(a.arg, word, repl, i + 1));
}

inline TermPtr subst_schematic_walk(const TermPtr& t, const Substitution& s) {
  return std::visit(
      Overloaded{
          [&](const Term::Schematic& v) -> TermPtr {
            auto it = s.find(v.name);
            return it != s.end() ? it->second : t;
          },
          [&](const Term::App& a) -> TermPtr {
            return app(subst_schematic_walk(a.fun, s),
                       subst_schematic_walk(a.arg, s));
          },
          [&](const Term::Abs& a) -> TermPtr {
            return abs(a.hint, subst_schematic_walk(a.body, s));
          },
          [&](const auto&) -> TermPtr { return t; },
      },
      t->node());
}

// Opened frees back to de Bruijn indices: the binder entered at the
// (k+1)-th 'a' of a position with a_depth D is index d + D - 1 - k at local
// depth d below the rewrite site.
inline TermPtr bind_opened(const TermPtr& t,
                           const std::map<std::size_t, std::string>& opened,
                           std::size_t total_depth, std::size_t d = 0) {
  return std::visit(
      Overloaded{
          [&](const Term::Free& f) -> TermPtr {
            for (const auto& [k, v] : opened)
              if (v == f.name) return bound(d + total_depth - 1 - k);
            return t;
          },
          [&](const Term::App& a) -> TermPtr {
            return app(bind_opened(a.fun, opened, total_depth, d),
                       bind_opened(a.arg, opened, total_depth, d));
          },
          [&](const Term::Abs& a) -> TermPtr {
            return abs(a.hint, bind_opened(a.body, opened, total_depth, d + 1));
          },
          [&](const auto&) -> TermPtr { return t; },
      },
      t->node());
}

// The de Bruijn splice: instantiate the (oriented) rule's rhs, map opened
// frees back to indices, replace the subterm. Must agree with the engine.
inline TermPtr splice(const TermPtr& root, const Rule& oriented,
                      const RewriteReport& rep) {
  TermPtr rhs = subst_schematic_walk(oriented.rhs, rep.subst);
  rhs = bind_opened(rhs, rep.binder_names, rep.pos.a_depth());
  return replace_at(root, rep.pos.word(), rhs);
}

}  // namespace oracle
