#include "patsel/term.hpp"

#include <algorithm>

namespace patsel {

TermPtr free_var(std::string name) {
  return std::make_shared<const Term>(Term::Node{Term::Free{std::move(name)}});
}

TermPtr schematic(std::string name) {
  return std::make_shared<const Term>(
      Term::Node{Term::Schematic{std::move(name)}});
}

TermPtr bound(std::size_t index) {
  return std::make_shared<const Term>(Term::Node{Term::Bound{index}});
}

TermPtr app(TermPtr fun, TermPtr arg) {
  return std::make_shared<const Term>(
      Term::Node{Term::App{std::move(fun), std::move(arg)}});
}

TermPtr abs(std::string hint, TermPtr body) {
  return std::make_shared<const Term>(
      Term::Node{Term::Abs{std::move(hint), std::move(body)}});
}

TermPtr wildcard() {
  return std::make_shared<const Term>(Term::Node{Term::Wildcard{}});
}

TermPtr hole() {
  return std::make_shared<const Term>(Term::Node{Term::Hole{}});
}

std::size_t Position::a_depth() const {
  return static_cast<std::size_t>(std::count(word_.begin(), word_.end(), 'a'));
}

Position Position::operator+(const Position& q) const {
  Position r;
  r.word_ = word_ + q.word_;
  return r;
}

Position Position::operator+(char step) const {
  Position r;
  r.word_ = word_ + step;
  return r;
}

bool Position::is_prefix_of(const Position& q) const {
  return q.word_.compare(0, word_.size(), word_) == 0;
}

namespace {

void collect_positions(const TermPtr& t, std::string& prefix,
                       std::vector<Position>& out) {
  out.push_back(Position(prefix));
  std::visit(Overloaded{
                 [&](const Term::App& a) {
                   prefix.push_back('l');
                   collect_positions(a.fun, prefix, out);
                   prefix.back() = 'r';
                   collect_positions(a.arg, prefix, out);
                   prefix.pop_back();
                 },
                 [&](const Term::Abs& a) {
                   prefix.push_back('a');
                   collect_positions(a.body, prefix, out);
                   prefix.pop_back();
                 },
                 [](const auto&) {},
             },
             t->node());
}

}  // namespace

std::vector<Position> positions(const TermPtr& t) {
  std::vector<Position> out;
  std::string prefix;
  collect_positions(t, prefix, out);
  return out;
}

TermPtr try_subterm(const TermPtr& t, const Position& p) {
  TermPtr cur = t;
  for (std::size_t i = 0; i < p.size(); ++i) {
    switch (p[i]) {
      case 'l':
        if (const auto* a = std::get_if<Term::App>(&cur->node()))
          cur = a->fun;
        else
          return nullptr;
        break;
      case 'r':
        if (const auto* a = std::get_if<Term::App>(&cur->node()))
          cur = a->arg;
        else
          return nullptr;
        break;
      case 'a':
        if (const auto* a = std::get_if<Term::Abs>(&cur->node()))
          cur = a->body;
        else
          return nullptr;
        break;
    }
  }
  return cur;
}

TermPtr subterm(const TermPtr& t, const Position& p) {
  if (TermPtr s = try_subterm(t, p)) return s;
  throw PositionError("position '" + p.word() +
                      "' does not address a subterm");
}

bool alpha_eq(const TermPtr& s, const TermPtr& t) {
  if (s.get() == t.get()) return true;
  if (s->node().index() != t->node().index()) return false;
  return std::visit(
      Overloaded{
          [&](const Term::Free& a) {
            return a.name == std::get<Term::Free>(t->node()).name;
          },
          [&](const Term::Schematic& a) {
            return a.name == std::get<Term::Schematic>(t->node()).name;
          },
          [&](const Term::Bound& a) {
            return a.index == std::get<Term::Bound>(t->node()).index;
          },
          [&](const Term::App& a) {
            const auto& b = std::get<Term::App>(t->node());
            return alpha_eq(a.fun, b.fun) && alpha_eq(a.arg, b.arg);
          },
          [&](const Term::Abs& a) {
            return alpha_eq(a.body, std::get<Term::Abs>(t->node()).body);
          },
          [](const Term::Wildcard&) { return true; },
          [](const Term::Hole&) { return true; },
      },
      s->node());
}

namespace {

std::size_t loose_depth_at(const TermPtr& t, std::size_t depth) {
  return std::visit(
      Overloaded{
          [&](const Term::Bound& b) -> std::size_t {
            return b.index >= depth ? b.index - depth + 1 : 0;
          },
          [&](const Term::App& a) {
            return std::max(loose_depth_at(a.fun, depth),
                            loose_depth_at(a.arg, depth));
          },
          [&](const Term::Abs& a) {
            return loose_depth_at(a.body, depth + 1);
          },
          [](const auto&) -> std::size_t { return 0; },
      },
      t->node());
}

TermPtr subst_loose_at(const TermPtr& t,
                       const std::map<std::size_t, std::string>& names,
                       std::size_t depth) {
  return std::visit(
      Overloaded{
          [&](const Term::Bound& b) -> TermPtr {
            if (b.index >= depth) {
              auto it = names.find(b.index - depth + 1);
              if (it != names.end()) return free_var(it->second);
            }
            return t;
          },
          [&](const Term::App& a) -> TermPtr {
            return app(subst_loose_at(a.fun, names, depth),
                       subst_loose_at(a.arg, names, depth));
          },
          [&](const Term::Abs& a) -> TermPtr {
            return abs(a.hint, subst_loose_at(a.body, names, depth + 1));
          },
          [&](const auto&) -> TermPtr { return t; },
      },
      t->node());
}

TermPtr open_at(const TermPtr& t, const std::string& name, std::size_t depth) {
  return std::visit(
      Overloaded{
          [&](const Term::Bound& b) -> TermPtr {
            if (b.index == depth) return free_var(name);
            if (b.index > depth) return bound(b.index - 1);
            return t;
          },
          [&](const Term::App& a) -> TermPtr {
            return app(open_at(a.fun, name, depth),
                       open_at(a.arg, name, depth));
          },
          [&](const Term::Abs& a) -> TermPtr {
            return abs(a.hint, open_at(a.body, name, depth + 1));
          },
          [&](const auto&) -> TermPtr { return t; },
      },
      t->node());
}

TermPtr close_at(const TermPtr& t, const std::string& name,
                 std::size_t depth) {
  return std::visit(
      Overloaded{
          [&](const Term::Free& f) -> TermPtr {
            return f.name == name ? bound(depth) : t;
          },
          [&](const Term::Bound& b) -> TermPtr {
            return b.index >= depth ? bound(b.index + 1) : t;
          },
          [&](const Term::App& a) -> TermPtr {
            return app(close_at(a.fun, name, depth),
                       close_at(a.arg, name, depth));
          },
          [&](const Term::Abs& a) -> TermPtr {
            return abs(a.hint, close_at(a.body, name, depth + 1));
          },
          [&](const auto&) -> TermPtr { return t; },
      },
      t->node());
}

template <class F>
void walk(const TermPtr& t, const F& f) {
  f(t);
  std::visit(Overloaded{
                 [&](const Term::App& a) {
                   walk(a.fun, f);
                   walk(a.arg, f);
                 },
                 [&](const Term::Abs& a) { walk(a.body, f); },
                 [](const auto&) {},
             },
             t->node());
}

}  // namespace

std::size_t loose_depth(const TermPtr& t) { return loose_depth_at(t, 0); }

TermPtr subst_loose_by_index(const TermPtr& t,
                             const std::map<std::size_t, std::string>& names) {
  if (names.empty()) return t;
  return subst_loose_at(t, names, 0);
}

TermPtr subst_loose(const TermPtr& t, const std::vector<std::string>& names) {
  std::map<std::size_t, std::string> by_index;
  const std::size_t n = names.size();
  for (std::size_t i = 1; i <= n; ++i) by_index[i] = names[n - i];
  return subst_loose_by_index(t, by_index);
}

TermPtr open_abs(const TermPtr& t, const std::string& name) {
  const auto* a = std::get_if<Term::Abs>(&t->node());
  if (!a) throw PositionError("open_abs: term is not an abstraction");
  if (free_vars(t).count(name))
    throw NameClashError("cannot open binder as '" + name +
                         "': the name already occurs free");
  return open_at(a->body, name, 0);
}

TermPtr close_abs(const TermPtr& t, const std::string& name,
                  const std::string& hint) {
  return abs(hint, close_at(t, name, 0));
}

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> out;
  walk(t, [&](const TermPtr& s) {
    if (const auto* f = std::get_if<Term::Free>(&s->node()))
      out.insert(f->name);
  });
  return out;
}

std::set<std::string> schematic_vars(const TermPtr& t) {
  std::set<std::string> out;
  walk(t, [&](const TermPtr& s) {
    if (const auto* v = std::get_if<Term::Schematic>(&s->node()))
      out.insert(v->name);
  });
  return out;
}

bool contains_schematic(const TermPtr& t) {
  bool found = false;
  walk(t, [&](const TermPtr& s) {
    if (std::holds_alternative<Term::Schematic>(s->node())) found = true;
  });
  return found;
}

bool contains_pattern_symbol(const TermPtr& t) {
  bool found = false;
  walk(t, [&](const TermPtr& s) {
    if (std::holds_alternative<Term::Wildcard>(s->node()) ||
        std::holds_alternative<Term::Hole>(s->node()))
      found = true;
  });
  return found;
}

}  // namespace patsel
