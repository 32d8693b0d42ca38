#include "patsel/rewrite.hpp"

#include <algorithm>
#include <cassert>

#include "patsel/errors.hpp"

namespace patsel {

namespace {

bool match_at(const TermPtr& lhs, const TermPtr& t, std::size_t depth,
              Substitution& subst) {
  return std::visit(
      Overloaded{
          [&](const Term::Schematic& v) {
            // Binding a term with variables loose relative to the binders
            // passed during matching would need higher-order matching.
            if (loose_depth(t) > 0) return false;
            auto it = subst.find(v.name);
            if (it != subst.end()) return alpha_eq(it->second, t);
            subst.emplace(v.name, t);
            return true;
          },
          [&](const Term::Free& f) {
            const auto* g = std::get_if<Term::Free>(&t->node());
            return g && g->name == f.name;
          },
          [&](const Term::Bound& b) {
            const auto* c = std::get_if<Term::Bound>(&t->node());
            return c && c->index == b.index;
          },
          [&](const Term::App& a) {
            const auto* b = std::get_if<Term::App>(&t->node());
            return b && match_at(a.fun, b->fun, depth, subst) &&
                   match_at(a.arg, b->arg, depth, subst);
          },
          [&](const Term::Abs& a) {
            const auto* b = std::get_if<Term::Abs>(&t->node());
            return b && match_at(a.body, b->body, depth + 1, subst);
          },
          [](const Term::Wildcard&) { return false; },
          [](const Term::Hole&) { return false; },
      },
      lhs->node());
}

std::string fresh_name(const std::string& hint,
                       const std::set<std::string>& avoid) {
  std::string base = hint.empty() ? "x" : hint;
  if (!avoid.count(base)) return base;
  for (std::size_t k = 1;; ++k) {
    std::string cand = base + std::to_string(k);
    if (!avoid.count(cand)) return cand;
  }
}

Equation checked_equation(const TermPtr& input, TermPtr rhs) {
  Equation eq{input, std::move(rhs)};
  assert(alpha_eq(eq.lhs, input));
  return eq;
}

struct PathConv {
  Position path;
  std::map<std::size_t, std::string> names;
  Conv inner;
  std::set<std::string> extra_avoid;
  std::set<std::string> user_clash;

  ConvResult operator()(const TermPtr& root) const {
    std::set<std::string> avoid = free_vars(root);
    avoid.insert(extra_avoid.begin(), extra_avoid.end());
    for (const auto& [k, v] : names) avoid.insert(v);
    std::map<std::size_t, std::string> opened;
    ConvResult r = go(root, 0, 0, avoid, opened);
    r.opened = std::move(opened);
    return r;
  }

  ConvResult go(const TermPtr& t, std::size_t i, std::size_t adepth,
                std::set<std::string>& avoid,
                std::map<std::size_t, std::string>& opened) const {
    if (i == path.size()) {
      ConvResult r = inner(t);
      assert(!r.eq || alpha_eq(r.eq->lhs, t));
      return r;
    }
    switch (path[i]) {
      case 'l': {
        const auto* a = std::get_if<Term::App>(&t->node());
        if (!a) throw PositionError("conversion path leaves the term");
        ConvResult r = go(a->fun, i + 1, adepth, avoid, opened);
        if (r.eq) r.eq = checked_equation(t, app(r.eq->rhs, a->arg));
        return r;
      }
      case 'r': {
        const auto* a = std::get_if<Term::App>(&t->node());
        if (!a) throw PositionError("conversion path leaves the term");
        ConvResult r = go(a->arg, i + 1, adepth, avoid, opened);
        if (r.eq) r.eq = checked_equation(t, app(a->fun, r.eq->rhs));
        return r;
      }
      case 'a': {
        const auto* a = std::get_if<Term::Abs>(&t->node());
        if (!a) throw PositionError("conversion path leaves the term");
        std::string name;
        if (auto it = names.find(adepth); it != names.end()) {
          name = it->second;
          if (free_vars(t).count(name))
            throw NameClashError("binder name '" + name +
                                 "' is already free in the rewritten term");
          for (const auto& [k, v] : opened)
            if (v == name)
              throw NameClashError("binder name '" + name +
                                   "' was already used for an outer binder");
          if (user_clash.count(name))
            throw NameClashError("binder name '" + name +
                                 "' collides with a constant of the rule");
        } else {
          name = fresh_name(a->hint, avoid);
        }
        avoid.insert(name);
        opened[adepth] = name;
        TermPtr body = open_abs(t, name);
        ConvResult r = go(body, i + 1, adepth + 1, avoid, opened);
        if (r.eq)
          r.eq = checked_equation(t, close_abs(r.eq->rhs, name, a->hint));
        return r;
      }
    }
    throw PositionError("invalid position letter");
  }
};

}  // namespace

std::optional<Substitution> fo_match(const TermPtr& lhs, const TermPtr& t,
                                     Substitution seed) {
  if (match_at(lhs, t, 0, seed)) return seed;
  return std::nullopt;
}

TermPtr subst_schematics(const TermPtr& t, const Substitution& subst) {
  return std::visit(
      Overloaded{
          [&](const Term::Schematic& v) -> TermPtr {
            auto it = subst.find(v.name);
            return it != subst.end() ? it->second : t;
          },
          [&](const Term::App& a) -> TermPtr {
            return app(subst_schematics(a.fun, subst),
                       subst_schematics(a.arg, subst));
          },
          [&](const Term::Abs& a) -> TermPtr {
            return abs(a.hint, subst_schematics(a.body, subst));
          },
          [&](const auto&) -> TermPtr { return t; },
      },
      t->node());
}

Rule instantiate_rule(const Rule& rule, const Substitution& subst) {
  return Rule{rule.name, subst_schematics(rule.lhs, subst),
              subst_schematics(rule.rhs, subst)};
}

Conv conv_rewrite(Rule rule, Substitution seed) {
  return [rule = std::move(rule),
          seed = std::move(seed)](const TermPtr& t) -> ConvResult {
    ConvResult r;
    auto subst = fo_match(rule.lhs, t, seed);
    if (!subst) {
      r.fail = ConvResult::Fail::mismatch;
      return r;
    }
    TermPtr rhs = subst_schematics(rule.rhs, *subst);
    r.subst = std::move(*subst);
    if (contains_schematic(rhs)) {
      r.fail = ConvResult::Fail::uninstantiated;
      return r;
    }
    r.eq = checked_equation(t, std::move(rhs));
    return r;
  };
}

Conv conv_path(Position path, std::map<std::size_t, std::string> names,
               Conv inner, std::set<std::string> extra_avoid,
               std::set<std::string> user_clash) {
  return PathConv{std::move(path), std::move(names), std::move(inner),
                  std::move(extra_avoid), std::move(user_clash)};
}

Substitution resolve_where(const std::vector<WhereBinding>& bindings,
                           const Selection& sel, const TermPtr& root,
                           const Rule& rule) {
  (void)sel;
  (void)root;
  std::set<std::string> known = schematic_vars(rule.lhs);
  std::set<std::string> rhs_vars = schematic_vars(rule.rhs);
  known.insert(rhs_vars.begin(), rhs_vars.end());
  Substitution subst;
  for (const auto& [name, text] : bindings) {
    if (!known.count(name))
      throw WhereError("rule '" + rule.name + "' has no schematic '?" + name +
                       "'");
    if (subst.count(name))
      throw WhereError("duplicate binding for '?" + name + "'");
    TermPtr value;
    try {
      value = parse_term(text);
    } catch (const SyntaxError& e) {
      throw WhereError("cannot parse binding for '?" + name +
                       "': " + e.what());
    }
    subst.emplace(name, std::move(value));
  }
  return subst;
}

RewriteOutcome patsubst(const TermPtr& root, const PatternExpr& pe,
                        const Rule& rule,
                        const std::vector<WhereBinding>& where_bindings,
                        bool symmetric, RewriteMode mode) {
  const Rule oriented =
      symmetric ? Rule{rule.name, rule.rhs, rule.lhs} : rule;
  SelectionSet sels = eval_pattern(pe, root);
  if (sels.items.empty())
    throw EmptySelectionError("the pattern selected no subterm");

  // Where-values parse independently of the selection: opened binders are
  // ordinary free variables here.
  const Substitution seed =
      resolve_where(where_bindings, sels.items.front(), root, oriented);

  std::set<std::string> rule_frees = free_vars(oriented.lhs);
  {
    std::set<std::string> rhs_frees = free_vars(oriented.rhs);
    rule_frees.insert(rhs_frees.begin(), rhs_frees.end());
  }
  std::set<std::string> avoid = rule_frees;
  for (const auto& [name, value] : seed) {
    std::set<std::string> vf = free_vars(value);
    avoid.insert(vf.begin(), vf.end());
  }

  bool saw_uninstantiated = false;
  auto attempt = [&](const Selection& sel,
                     const TermPtr& current) -> std::optional<RewriteOutcome> {
    Conv conv = conv_path(sel.pos, sel.names,
                          conv_rewrite(oriented, seed), avoid, rule_frees);
    ConvResult r = conv(current);
    if (!r.eq) {
      if (r.fail == ConvResult::Fail::uninstantiated) saw_uninstantiated = true;
      return std::nullopt;
    }
    RewriteReport report{sel.pos, rule.name, std::move(r.subst),
                         std::move(r.opened)};
    return RewriteOutcome{r.eq->rhs, {std::move(report)}};
  };

  if (mode == RewriteMode::first) {
    for (const auto& sel : sels.items)
      if (auto hit = attempt(sel, root)) return std::move(*hit);
  } else {
    std::vector<std::size_t> order(sels.items.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return sels.items[a].pos.size() > sels.items[b].pos.size();
    });
    TermPtr current = root;
    std::vector<RewriteReport> reports;
    std::vector<Position> rewritten;
    for (std::size_t idx : order) {
      const Selection& sel = sels.items[idx];
      bool inside = std::any_of(
          rewritten.begin(), rewritten.end(),
          [&](const Position& p) { return p.is_strict_prefix_of(sel.pos); });
      if (inside) continue;
      if (auto hit = attempt(sel, current)) {
        current = hit->result;
        rewritten.push_back(sel.pos);
        reports.push_back(std::move(hit->reports.front()));
      }
    }
    if (!reports.empty()) return RewriteOutcome{current, std::move(reports)};
  }

  if (saw_uninstantiated)
    throw NoApplicableError(
        "a schematic variable of the rule stayed uninstantiated; use a "
        "'where' binding");
  throw NoApplicableError("the rule '" + rule.name +
                          "' applies at none of the " +
                          std::to_string(sels.items.size()) +
                          " selected subterm(s)");
}

}  // namespace patsel
