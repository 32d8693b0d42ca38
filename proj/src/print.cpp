#include <algorithm>
#include <cctype>
#include <optional>
#include <string>

#include "patsel/syntax.hpp"

namespace patsel {

namespace {

struct InfixInfo {
  const char* symbol;
  int prec;
  enum Assoc { Left, Right, None } assoc;
};

// Keyed by the constant the operator stands for.
const InfixInfo* infix_by_constant(const std::string& name) {
  static const std::pair<const char*, InfixInfo> table[] = {
      {"imp", {"==>", 25, InfixInfo::Right}},
      {"==", {"==", 40, InfixInfo::None}},
      {"=", {"=", 50, InfixInfo::None}},
      {"<=", {"<=", 50, InfixInfo::None}},
      {"+", {"+", 65, InfixInfo::Left}},
      {"*", {"*", 70, InfixInfo::Left}},
  };
  for (const auto& [c, info] : table)
    if (name == c) return &info;
  return nullptr;
}

bool symbolic_name(const std::string& name) {
  return name == "==" || name == "=" || name == "<=" || name == "+" ||
         name == "*";
}

constexpr int kBinderPrec = 5;
constexpr int kListElemPrec = 6;
constexpr int kAppPrec = 90;

const Term::App* as_app(const TermPtr& t) {
  return std::get_if<Term::App>(&t->node());
}
const Term::Abs* as_abs(const TermPtr& t) {
  return std::get_if<Term::Abs>(&t->node());
}
const Term::Free* as_free(const TermPtr& t) {
  return std::get_if<Term::Free>(&t->node());
}

// App(App(Free c, x), y) with c an infix constant.
struct InfixView {
  const InfixInfo* info;
  TermPtr lhs, rhs;
};
std::optional<InfixView> as_infix(const TermPtr& t) {
  const auto* outer = as_app(t);
  if (!outer) return std::nullopt;
  const auto* inner = as_app(outer->fun);
  if (!inner) return std::nullopt;
  const auto* head = as_free(inner->fun);
  if (!head) return std::nullopt;
  const InfixInfo* info = infix_by_constant(head->name);
  if (!info) return std::nullopt;
  return InfixView{info, inner->arg, outer->arg};
}

// App(Free all, Abs(hint, body)).
struct AllView {
  std::string hint;
  TermPtr body;
};
std::optional<AllView> as_all(const TermPtr& t) {
  const auto* a = as_app(t);
  if (!a) return std::nullopt;
  const auto* head = as_free(a->fun);
  if (!head || head->name != "all") return std::nullopt;
  const auto* b = as_abs(a->arg);
  if (!b) return std::nullopt;
  return AllView{b->hint, b->body};
}

struct ConsView {
  TermPtr elem, rest;
};
std::optional<ConsView> as_cons(const TermPtr& t) {
  const auto* outer = as_app(t);
  if (!outer) return std::nullopt;
  const auto* inner = as_app(outer->fun);
  if (!inner) return std::nullopt;
  const auto* head = as_free(inner->fun);
  if (!head || head->name != "Cons") return std::nullopt;
  return ConsView{inner->arg, outer->arg};
}
bool is_nil(const TermPtr& t) {
  const auto* f = as_free(t);
  return f && f->name == "Nil";
}

struct Printer {
  bool sugar = true;
  bool debruijn = false;
  const std::vector<std::string>* marks = nullptr;  // position words
  std::string open_mark, close_mark;

  std::string out;
  std::vector<std::string> scope;  // printed binder names, outermost first

  std::size_t marks_at(const std::string& pos) const {
    if (!marks) return 0;
    return static_cast<std::size_t>(
        std::count(marks->begin(), marks->end(), pos));
  }
  bool marked(const std::string& pos) const { return marks_at(pos) > 0; }
  bool marked(const std::string& pos, const char* suffix) const {
    return marked(pos + suffix);
  }

  // Picks the printed name for a binder: the hint, or hint + smallest
  // numeric suffix avoiding enclosing binders and the body's free variables.
  std::string binder_name(const std::string& hint, const TermPtr& body) {
    std::string base = hint.empty() ? "x" : hint;
    if (debruijn) return base;
    std::set<std::string> avoid = free_vars(body);
    avoid.insert(scope.begin(), scope.end());
    if (!avoid.count(base)) return base;
    for (std::size_t k = 1;; ++k) {
      std::string cand = base + std::to_string(k);
      if (!avoid.count(cand)) return cand;
    }
  }

  void emit(const TermPtr& t, int min_prec, std::string& pos) {
    std::size_t nmarks = marks_at(pos);

    // Decide the syntactic form; sugar is suppressed when a mark sits on a
    // node the sugared layout would not render as a contiguous region.
    enum class Form { Atom, Infix, List, AllChain, Lambda, Appl };
    Form form = Form::Appl;
    std::optional<InfixView> iv;
    std::optional<AllView> av;
    if (!std::holds_alternative<Term::App>(t->node()) &&
        !std::holds_alternative<Term::Abs>(t->node())) {
      form = Form::Atom;
    } else if (as_abs(t)) {
      form = Form::Lambda;
    } else if (sugar) {
      if ((av = as_all(t)) && !marked(pos, "l") && !marked(pos, "r")) {
        form = Form::AllChain;
      } else if (as_cons(t) && list_sugar_ok(t, pos)) {
        form = Form::List;
      } else if ((iv = as_infix(t)) && !marked(pos, "l") &&
                 !marked(pos, "ll")) {
        form = Form::Infix;
      }
    }

    int prec = 1000;
    bool atomic = false;
    switch (form) {
      case Form::Atom:
      case Form::List:
        atomic = true;
        break;
      case Form::Infix:
        prec = iv->info->prec;
        break;
      case Form::AllChain:
      case Form::Lambda:
        prec = kBinderPrec;
        break;
      case Form::Appl:
        prec = kAppPrec;
        break;
    }

    bool paren = prec < min_prec;
    bool extra = nmarks > 0 && !paren && !atomic;
    if (paren || extra) out += "(";
    for (std::size_t i = 0; i < nmarks; ++i) out += open_mark;

    switch (form) {
      case Form::Atom:
        emit_atom(t);
        break;
      case Form::Infix: {
        int lp = iv->info->assoc == InfixInfo::Left ? iv->info->prec
                                                    : iv->info->prec + 1;
        int rp = iv->info->assoc == InfixInfo::Right ? iv->info->prec
                                                     : iv->info->prec + 1;
        pos += "lr";
        emit(iv->lhs, lp, pos);
        pos.resize(pos.size() - 2);
        out += " ";
        out += iv->info->symbol;
        out += " ";
        pos += "r";
        emit(iv->rhs, rp, pos);
        pos.pop_back();
        break;
      }
      case Form::List:
        emit_list(t, pos);
        break;
      case Form::AllChain:
        emit_all_chain(*av, pos);
        break;
      case Form::Lambda:
        emit_lambda_chain(t, pos);
        break;
      case Form::Appl: {
        const auto* a = as_app(t);
        pos += "l";
        emit(a->fun, kAppPrec, pos);
        pos.back() = 'r';
        out += " ";
        emit(a->arg, kAppPrec + 1, pos);
        pos.pop_back();
        break;
      }
    }

    for (std::size_t i = 0; i < nmarks; ++i) out += close_mark;
    if (paren || extra) out += ")";
  }

  void emit_atom(const TermPtr& t) {
    std::visit(Overloaded{
                   [&](const Term::Free& f) {
                     if (symbolic_name(f.name))
                       out += "(" + f.name + ")";
                     else
                       out += f.name;
                   },
                   [&](const Term::Schematic& s) { out += "?" + s.name; },
                   [&](const Term::Bound& b) {
                     if (debruijn) {
                       out += "B" + std::to_string(b.index);
                     } else if (b.index < scope.size()) {
                       out += scope[scope.size() - 1 - b.index];
                     } else {
                       out += "L" + std::to_string(b.index - scope.size() + 1);
                     }
                   },
                   [&](const Term::Wildcard&) { out += "_"; },
                   [&](const Term::Hole&) { out += "\xe2\x96\xa1"; },
                   [&](const auto&) {},
               },
               t->node());
  }

  // A list chain prints as [e1, e2, ...] only when no mark falls on its
  // spine (inner links, partial applications, Cons heads, terminal Nil).
  bool list_sugar_ok(const TermPtr& t, const std::string& pos) const {
    TermPtr cur = t;
    std::string rel = pos;
    bool first = true;
    for (;;) {
      auto cv = as_cons(cur);
      if (!cv) return is_nil(cur) && (first || !marked(rel));
      if (!first && marked(rel)) return false;
      if (marked(rel, "l") || marked(rel, "ll")) return false;
      cur = cv->rest;
      rel += "r";
      first = false;
    }
  }

  void emit_list(const TermPtr& t, std::string& pos) {
    out += "[";
    TermPtr cur = t;
    std::size_t links = 0;
    bool first = true;
    while (auto cv = as_cons(cur)) {
      if (!first) out += ", ";
      pos += "lr";
      emit(cv->elem, kListElemPrec, pos);
      pos.resize(pos.size() - 2);
      cur = cv->rest;
      pos += "r";
      ++links;
      first = false;
    }
    pos.resize(pos.size() - links);
    out += "]";
  }

  void emit_all_chain(const AllView& head, std::string& pos) {
    out += "!!";
    AllView cur = head;
    std::size_t depth = 0;
    std::size_t pushed = 0;
    for (;;) {
      std::string name = binder_name(cur.hint, cur.body);
      out += name;
      scope.push_back(name);
      ++pushed;
      auto next = as_all(cur.body);
      if (next && !marked(pos + "ra") && !marked(pos + "ral") &&
          !marked(pos + "rar")) {
        out += " ";
        cur = *next;
        pos += "ra";
        depth += 2;
        continue;
      }
      out += ". ";
      pos += "ra";
      emit(cur.body, 0, pos);
      pos.resize(pos.size() - depth - 2);
      break;
    }
    scope.resize(scope.size() - pushed);
  }

  void emit_lambda_chain(const TermPtr& t, std::string& pos) {
    out += "%";
    TermPtr cur = t;
    std::size_t depth = 0;
    std::size_t pushed = 0;
    for (;;) {
      const auto* a = as_abs(cur);
      std::string name = binder_name(a->hint, a->body);
      out += name;
      scope.push_back(name);
      ++pushed;
      if (as_abs(a->body) && !marked(pos + "a")) {
        out += " ";
        cur = a->body;
        pos += "a";
        ++depth;
        continue;
      }
      out += ". ";
      pos += "a";
      emit(a->body, 0, pos);
      pos.resize(pos.size() - depth - 1);
      break;
    }
    scope.resize(scope.size() - pushed);
  }
};

std::string run_printer(Printer p, const TermPtr& t) {
  std::string pos;
  p.emit(t, 0, pos);
  return std::move(p.out);
}

}  // namespace

std::string print_term(const TermPtr& t) { return run_printer(Printer{}, t); }

std::string print_term_debruijn(const TermPtr& t) {
  Printer p;
  p.sugar = false;
  p.debruijn = true;
  return run_printer(std::move(p), t);
}

std::string print_term_marked(const TermPtr& t,
                              const std::vector<Position>& marks, bool ascii) {
  Printer p;
  std::vector<std::string> mark_words;
  mark_words.reserve(marks.size());
  for (const auto& m : marks) mark_words.push_back(m.word());
  p.marks = &mark_words;
  p.open_mark = ascii ? "<<" : "\xe2\x9f\xa8";
  p.close_mark = ascii ? ">>" : "\xe2\x9f\xa9";
  std::string pos;
  p.emit(t, 0, pos);
  return std::move(p.out);
}

std::string print_pattern_expr(const PatternExpr& pe) {
  std::string out;
  for (const auto& u : pe.units) {
    if (!out.empty()) out += " ";
    switch (u.kind) {
      case PatternUnit::Kind::For:
        out += "for";
        for (const auto& n : u.names) out += " " + n;
        break;
      case PatternUnit::Kind::In:
      case PatternUnit::Kind::At:
        out += u.kind == PatternUnit::Kind::In ? "in" : "at";
        switch (u.atom.kind) {
          case PatternAtom::Kind::Term:
            out += " \"" + print_term(u.atom.term) + "\"";
            break;
          case PatternAtom::Kind::Concl:
            out += " concl";
            break;
          case PatternAtom::Kind::Asm:
            out += " asm";
            break;
          case PatternAtom::Kind::Prop:
            out += " prop";
            break;
        }
        break;
    }
  }
  return out;
}

}  // namespace patsel
