#include "patsel/select.hpp"

#include <algorithm>

#include "patsel/errors.hpp"

namespace patsel {

namespace {

void check_distinct(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j])
        throw PatternError("duplicate binder name '" + names[i] + "'");
}

// The name a clash note reports against: root frees or earlier binds.
const std::string* find_clash(const std::vector<std::string>& names,
                              const std::set<std::string>& root_frees,
                              const std::map<std::size_t, std::string>& taken) {
  for (const auto& n : names) {
    if (root_frees.count(n)) return &n;
    for (const auto& [k, v] : taken)
      if (v == n) return &n;
  }
  return nullptr;
}

Position repeat_ra(std::size_t m) {
  std::string w;
  for (std::size_t i = 0; i < m; ++i) w += "ra";
  return Position(w);
}

}  // namespace

void SelectionSet::push(Selection sel) {
  for (const auto& it : items)
    if (it.pos == sel.pos && it.names == sel.names) return;
  items.push_back(std::move(sel));
}

SelectionSet initial_selection(TermPtr root) {
  SelectionSet s;
  s.root = root;
  s.items.push_back(Selection{std::move(root), Position(), {}});
  return s;
}

bool matches(const TermPtr& t, const TermPtr& pattern) {
  return std::visit(
      Overloaded{
          [](const Term::Wildcard&) { return true; },
          [](const Term::Hole&) { return true; },
          [&](const Term::Free& p) {
            const auto* f = std::get_if<Term::Free>(&t->node());
            return f && f->name == p.name;
          },
          [&](const Term::Schematic& p) {
            const auto* v = std::get_if<Term::Schematic>(&t->node());
            return v && v->name == p.name;
          },
          [&](const Term::Bound& p) {
            const auto* b = std::get_if<Term::Bound>(&t->node());
            return b && b->index == p.index;
          },
          [&](const Term::App& p) {
            const auto* a = std::get_if<Term::App>(&t->node());
            return a && matches(a->fun, p.fun) && matches(a->arg, p.arg);
          },
          [&](const Term::Abs& p) {
            const auto* a = std::get_if<Term::Abs>(&t->node());
            return a && matches(a->body, p.body);
          },
      },
      pattern->node());
}

SelectionSet sem_term(const TermPtr& pattern, SelectionSet s) {
  SelectionSet out;
  out.root = s.root;
  out.notes = std::move(s.notes);
  for (auto& sel : s.items)
    if (matches(sel.term, pattern)) out.push(std::move(sel));
  return out;
}

SelectionSet sem_in(SelectionSet s) {
  SelectionSet out;
  out.root = s.root;
  out.notes = std::move(s.notes);
  for (const auto& sel : s.items)
    for (const auto& q : positions(sel.term))
      out.push(Selection{subterm(sel.term, q), sel.pos + q, sel.names});
  return out;
}

SelectionSet sem_pos(const Position& q, SelectionSet s) {
  SelectionSet out;
  out.root = s.root;
  out.notes = std::move(s.notes);
  for (const auto& sel : s.items)
    if (TermPtr sub = try_subterm(sel.term, q))
      out.push(Selection{sub, sel.pos + q, sel.names});
  return out;
}

SelectionSet sem_bind(const std::vector<std::string>& names, SelectionSet s) {
  check_distinct(names);
  if (names.empty()) return s;
  const std::set<std::string> root_frees = free_vars(s.root);
  SelectionSet out;
  out.root = s.root;
  out.notes = std::move(s.notes);
  for (const auto& sel : s.items) {
    const std::size_t depth = sel.pos.a_depth();
    std::vector<std::size_t> unnamed;
    for (std::size_t k = 0; k < depth; ++k)
      if (!sel.names.count(k)) unnamed.push_back(k);
    if (names.size() > unnamed.size()) continue;  // not enough binders
    if (const std::string* clash = find_clash(names, root_frees, sel.names)) {
      out.notes.push_back("binder name '" + *clash +
                          "' clashes with an existing variable; selection at "
                          "'" +
                          sel.pos.word() + "' dropped");
      continue;
    }
    // Assign names left-to-right to the innermost unnamed binders; key k
    // corresponds to missing abstraction depth - k.
    Selection next = sel;
    std::map<std::size_t, std::string> by_index;
    const std::size_t start = unnamed.size() - names.size();
    for (std::size_t i = 0; i < names.size(); ++i) {
      const std::size_t key = unnamed[start + i];
      next.names[key] = names[i];
      by_index[depth - key] = names[i];
    }
    next.term = subst_loose_by_index(next.term, by_index);
    out.push(std::move(next));
  }
  return out;
}

Position pos_hole(const TermPtr& pattern) {
  std::vector<Position> found;
  for (const auto& p : positions(pattern))
    if (std::holds_alternative<Term::Hole>(subterm(pattern, p)->node()))
      found.push_back(p);
  if (found.empty()) throw PatternError("pattern has no hole");
  if (found.size() > 1) throw PatternError("pattern has more than one hole");
  return found.front();
}

std::vector<std::string> binds_to(const TermPtr& pattern, const Position& q) {
  std::vector<std::string> out;
  TermPtr cur = pattern;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 'a') {
      const auto* a = std::get_if<Term::Abs>(&cur->node());
      if (!a)
        throw PositionError("position '" + q.word() +
                            "' does not address a subterm");
      out.push_back(a->hint);
      cur = a->body;
    } else {
      cur = subterm(cur, Position(std::string(1, q[i])));
    }
  }
  return out;
}

SelectionSet sem_match(const TermPtr& pattern, SelectionSet s) {
  bool has_hole = false;
  for (const auto& p : positions(pattern))
    if (std::holds_alternative<Term::Hole>(subterm(pattern, p)->node())) {
      if (has_hole) throw PatternError("pattern has more than one hole");
      has_hole = true;
    }
  if (!has_hole) return sem_term(pattern, std::move(s));
  const Position ph = pos_hole(pattern);
  return sem_bind(binds_to(pattern, ph),
                  sem_pos(ph, sem_term(pattern, std::move(s))));
}

GoalParts strip_goal(const TermPtr& t) {
  GoalParts parts;
  TermPtr cur = t;
  for (;;) {
    const auto* a = std::get_if<Term::App>(&cur->node());
    if (!a) break;
    const auto* head = std::get_if<Term::Free>(&a->fun->node());
    if (!head || head->name != "all") break;
    const auto* body = std::get_if<Term::Abs>(&a->arg->node());
    if (!body) break;
    parts.binders.push_back(body->hint);
    cur = body->body;
  }
  for (;;) {
    const auto* outer = std::get_if<Term::App>(&cur->node());
    if (!outer) break;
    const auto* inner = std::get_if<Term::App>(&outer->fun->node());
    if (!inner) break;
    const auto* head = std::get_if<Term::Free>(&inner->fun->node());
    if (!head || head->name != "imp") break;
    parts.premises.push_back(inner->arg);
    cur = outer->arg;
  }
  parts.conclusion = cur;
  return parts;
}

SelectionSet sem_concl(SelectionSet s) {
  SelectionSet out;
  out.root = s.root;
  out.notes = std::move(s.notes);
  for (const auto& sel : s.items) {
    GoalParts parts = strip_goal(sel.term);
    Position p = sel.pos + repeat_ra(parts.binders.size());
    for (std::size_t i = 0; i < parts.premises.size(); ++i) p = p + 'r';
    out.push(Selection{parts.conclusion, p, sel.names});
  }
  return out;
}

SelectionSet sem_asm(SelectionSet s) {
  SelectionSet out;
  out.root = s.root;
  out.notes = std::move(s.notes);
  for (const auto& sel : s.items) {
    GoalParts parts = strip_goal(sel.term);
    Position base = sel.pos + repeat_ra(parts.binders.size());
    for (std::size_t i = 0; i < parts.premises.size(); ++i) {
      out.push(Selection{parts.premises[i], base + Position("lr"), sel.names});
      base = base + 'r';
    }
  }
  return out;
}

SelectionSet sem_for(const std::vector<std::string>& names, SelectionSet s) {
  check_distinct(names);
  const std::set<std::string> root_frees = free_vars(s.root);
  SelectionSet out;
  out.root = s.root;
  out.notes = std::move(s.notes);
  for (const auto& sel : s.items) {
    // Strip only the leading !!-binders; premises stay in the term.
    std::size_t m = 0;
    TermPtr body = sel.term;
    for (;;) {
      const auto* a = std::get_if<Term::App>(&body->node());
      if (!a) break;
      const auto* head = std::get_if<Term::Free>(&a->fun->node());
      if (!head || head->name != "all") break;
      const auto* ab = std::get_if<Term::Abs>(&a->arg->node());
      if (!ab) break;
      body = ab->body;
      ++m;
    }
    const std::size_t k = names.size();
    if (k > m) continue;
    if (const std::string* clash = find_clash(names, root_frees, sel.names)) {
      out.notes.push_back("binder name '" + *clash +
                          "' clashes with an existing variable; selection at "
                          "'" +
                          sel.pos.word() + "' dropped");
      continue;
    }
    Selection next;
    next.pos = sel.pos + repeat_ra(m);
    next.names = sel.names;
    const std::size_t d0 = sel.pos.a_depth();
    std::map<std::size_t, std::string> by_index;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t key = d0 + m - k + j;
      next.names[key] = names[j];
      by_index[k - j] = names[j];  // last name binds the innermost binder
    }
    next.term = subst_loose_by_index(body, by_index);
    out.push(std::move(next));
  }
  return out;
}

namespace {

SelectionSet apply_atom(const PatternAtom& atom, SelectionSet s) {
  switch (atom.kind) {
    case PatternAtom::Kind::Term:
      return sem_match(atom.term, std::move(s));
    case PatternAtom::Kind::Concl:
      return sem_concl(std::move(s));
    case PatternAtom::Kind::Asm:
      return sem_asm(std::move(s));
    case PatternAtom::Kind::Prop:
      return s;
  }
  return s;
}

}  // namespace

SelectionSet eval_units(const std::vector<PatternUnit>& units,
                        SelectionSet s) {
  for (auto it = units.rbegin(); it != units.rend(); ++it) {
    switch (it->kind) {
      case PatternUnit::Kind::In:
        s = sem_in(apply_atom(it->atom, std::move(s)));
        break;
      case PatternUnit::Kind::At:
        s = apply_atom(it->atom, std::move(s));
        break;
      case PatternUnit::Kind::For:
        s = sem_for(it->names, std::move(s));
        break;
    }
  }
  return s;
}

SelectionSet eval_pattern(const PatternExpr& pe, TermPtr root) {
  if (contains_schematic(root) || contains_pattern_symbol(root))
    throw Error("selection root must not contain schematics or pattern symbols");
  std::vector<PatternUnit> units = pe.units;
  if (!units.empty() && units.back().kind != PatternUnit::Kind::For &&
      units.back().atom.kind == PatternAtom::Kind::Term) {
    PatternUnit concl;
    concl.kind = PatternUnit::Kind::In;
    concl.atom.kind = PatternAtom::Kind::Concl;
    units.push_back(std::move(concl));
  }
  return eval_units(units, initial_selection(std::move(root)));
}

}  // namespace patsel
