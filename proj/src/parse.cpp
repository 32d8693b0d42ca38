#include <algorithm>
#include <cctype>
#include <optional>

#include "patsel/errors.hpp"
#include "patsel/syntax.hpp"

namespace patsel {

namespace {

enum class TokKind {
  Ident,
  Schematic,
  LParen,
  RParen,
  LBrack,
  RBrack,
  Comma,
  Dot,
  Lambda,
  MetaAll,
  Wild,
  HoleSym,
  Infix,
  End,
};

struct Token {
  TokKind kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

struct InfixOp {
  const char* symbol;
  const char* constant;  // the free constant the operator stands for
  int prec;
  enum Assoc { Left, Right, None } assoc;
};

// Ordered longest-first so the lexer can use maximal munch.
constexpr InfixOp kInfixTable[] = {
    {"==>", "imp", 25, InfixOp::Right}, {"==", "==", 40, InfixOp::None},
    {"<=", "<=", 50, InfixOp::None},    {"=", "=", 50, InfixOp::None},
    {"+", "+", 65, InfixOp::Left},      {"*", "*", 70, InfixOp::Left},
};

const InfixOp* infix_by_symbol(std::string_view sym) {
  for (const auto& op : kInfixTable)
    if (sym == op.symbol) return &op;
  return nullptr;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : s_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t = next();
      out.push_back(t);
      if (t.kind == TokKind::End) return out;
    }
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;

  [[noreturn]] void fail(const std::string& msg) {
    throw SyntaxError(msg, line_, col_);
  }

  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      char c = s_[i_++];
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
        ++col_;  // count code points, not UTF-8 continuation bytes
      }
    }
  }

  void skip_space() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') advance(1);
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance(1);
      } else {
        return;
      }
    }
  }

  bool lookahead(std::string_view lit) const {
    return s_.compare(i_, lit.size(), lit) == 0;
  }

  Token make(TokKind k, std::string text, std::size_t n) {
    Token t{k, std::move(text), line_, col_};
    advance(n);
    return t;
  }

  Token next() {
    if (i_ >= s_.size()) return Token{TokKind::End, "", line_, col_};
    char c = s_[i_];
    if (lookahead("==>")) return make(TokKind::Infix, "==>", 3);
    if (lookahead("==")) return make(TokKind::Infix, "==", 2);
    if (lookahead("<=")) return make(TokKind::Infix, "<=", 2);
    if (lookahead("!!")) return make(TokKind::MetaAll, "!!", 2);
    if (lookahead("\xe2\x96\xa1")) return make(TokKind::HoleSym, "\xe2\x96\xa1", 3);
    if (lookahead("\xce\xbb")) return make(TokKind::Lambda, "\xce\xbb", 2);
    switch (c) {
      case '=': return make(TokKind::Infix, "=", 1);
      case '+': return make(TokKind::Infix, "+", 1);
      case '*': return make(TokKind::Infix, "*", 1);
      case '(': return make(TokKind::LParen, "(", 1);
      case ')': return make(TokKind::RParen, ")", 1);
      case '[': return make(TokKind::LBrack, "[", 1);
      case ']': return make(TokKind::RBrack, "]", 1);
      case ',': return make(TokKind::Comma, ",", 1);
      case '.': return make(TokKind::Dot, ".", 1);
      case '%': return make(TokKind::Lambda, "%", 1);
      case '\\': return make(TokKind::Lambda, "\\", 1);
      default: break;
    }
    if (c == '_') {
      if (i_ + 1 < s_.size() && ident_char(s_[i_ + 1]))
        fail("identifiers may not start with '_'");
      return make(TokKind::Wild, "_", 1);
    }
    if (c == '?') {
      std::size_t j = i_ + 1;
      if (j >= s_.size() || !ident_start(s_[j]))
        fail("'?' must be followed by an identifier");
      while (j < s_.size() && ident_char(s_[j])) ++j;
      return make(TokKind::Schematic, std::string(s_.substr(i_ + 1, j - i_ - 1)),
                  j - i_);
    }
    if (ident_start(c) || digit(c)) {
      std::size_t j = i_;
      if (digit(c)) {
        while (j < s_.size() && digit(s_[j])) ++j;
      } else {
        while (j < s_.size() && ident_char(s_[j])) ++j;
      }
      return make(TokKind::Ident, std::string(s_.substr(i_, j - i_)), j - i_);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }
};

class TermParser {
 public:
  TermParser(std::vector<Token> toks, ParseOptions opts)
      : toks_(std::move(toks)), opts_(opts) {}

  TermPtr run() {
    TermPtr t = expr(0);
    expect_end();
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  ParseOptions opts_;
  std::vector<std::string> binders_;  // innermost scope at the back
  std::size_t holes_ = 0;

  const Token& peek(std::size_t k = 0) const {
    std::size_t j = i_ + k;
    return j < toks_.size() ? toks_[j] : toks_.back();
  }
  Token take() { return toks_[std::min(i_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw SyntaxError(msg, t.line, t.col);
  }

  void expect_end() {
    if (peek().kind != TokKind::End)
      fail(peek(), "unexpected '" + peek().text + "'");
  }

  bool starts_atom(const Token& t) const {
    switch (t.kind) {
      case TokKind::Ident:
      case TokKind::Schematic:
      case TokKind::Wild:
      case TokKind::HoleSym:
      case TokKind::LParen:
      case TokKind::LBrack:
        return true;
      default:
        return false;
    }
  }

  TermPtr expr(int min_prec) {
    if (peek().kind == TokKind::Lambda || peek().kind == TokKind::MetaAll)
      return binder_expr();
    TermPtr lhs = application();
    for (;;) {
      if (peek().kind != TokKind::Infix) return lhs;
      const InfixOp* op = infix_by_symbol(peek().text);
      if (op->prec < min_prec) return lhs;
      Token optok = take();
      int next_min = op->assoc == InfixOp::Right ? op->prec : op->prec + 1;
      TermPtr rhs = expr(next_min);
      lhs = app(free_var(op->constant), lhs, rhs);
      if (op->assoc == InfixOp::None && peek().kind == TokKind::Infix) {
        const InfixOp* nxt = infix_by_symbol(peek().text);
        if (nxt->prec == op->prec)
          fail(peek(), "operator '" + std::string(op->symbol) +
                           "' is non-associative");
      }
      (void)optok;
    }
  }

  TermPtr binder_expr() {
    Token head = take();
    std::vector<std::string> names;
    while (peek().kind == TokKind::Ident) names.push_back(take().text);
    if (names.empty()) fail(peek(), "expected binder name");
    if (peek().kind != TokKind::Dot)
      fail(peek(), "expected '.' after binder names");
    take();
    for (const auto& n : names) binders_.push_back(n);
    TermPtr body = expr(0);
    binders_.resize(binders_.size() - names.size());
    for (auto it = names.rbegin(); it != names.rend(); ++it) {
      body = abs(*it, body);
      if (head.kind == TokKind::MetaAll) body = app(free_var("all"), body);
    }
    return body;
  }

  TermPtr application() {
    TermPtr t = atom();
    while (starts_atom(peek())) t = app(t, atom());
    return t;
  }

  TermPtr mk_hole(const Token& at) {
    if (!opts_.allow_pattern)
      fail(at, "pattern symbols are not allowed here");
    if (++holes_ > 1) fail(at, "pattern contains more than one hole");
    return hole();
  }

  TermPtr atom() {
    Token t = take();
    switch (t.kind) {
      case TokKind::Ident: {
        for (std::size_t k = binders_.size(); k-- > 0;)
          if (binders_[k] == t.text) return bound(binders_.size() - 1 - k);
        return free_var(t.text);
      }
      case TokKind::Schematic:
        if (!opts_.allow_schematic)
          fail(t, "schematic variables are not allowed here");
        return schematic(t.text);
      case TokKind::Wild:
        if (!opts_.allow_pattern)
          fail(t, "pattern symbols are not allowed here");
        return wildcard();
      case TokKind::HoleSym:
        return mk_hole(t);
      case TokKind::LParen: {
        // (+), (==>) etc. denote the bare operator constant
        if (peek().kind == TokKind::Infix && peek(1).kind == TokKind::RParen) {
          const InfixOp* op = infix_by_symbol(take().text);
          take();
          return free_var(op->constant);
        }
        TermPtr inner = expr(0);
        if (peek().kind != TokKind::RParen) fail(peek(), "expected ')'");
        take();
        return inner;
      }
      case TokKind::LBrack: {
        if (peek().kind == TokKind::RBrack) {  // [] is the ASCII hole
          take();
          return mk_hole(t);
        }
        std::vector<TermPtr> elems;
        elems.push_back(expr(0));
        while (peek().kind == TokKind::Comma) {
          take();
          elems.push_back(expr(0));
        }
        if (peek().kind != TokKind::RBrack) fail(peek(), "expected ']'");
        take();
        TermPtr list = free_var("Nil");
        for (auto it = elems.rbegin(); it != elems.rend(); ++it)
          list = app(free_var("Cons"), *it, list);
        return list;
      }
      default:
        fail(t, "unexpected '" + (t.kind == TokKind::End ? "end of input" : t.text) + "'");
    }
  }
};

bool is_keyword(std::string_view w) {
  return w == "in" || w == "at" || w == "for" || w == "concl" || w == "asm" ||
         w == "prop";
}

// Tokens of the pattern-expression language: bare words and quoted strings.
struct PatTok {
  bool quoted;
  std::string text;
  std::size_t line, col;
};

std::vector<PatTok> lex_pattern(std::string_view s) {
  std::vector<PatTok> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto adv = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      adv(c);
      ++i;
      continue;
    }
    if (c == '"') {
      std::size_t l = line, co = col;
      adv(c);
      ++i;
      std::string text;
      while (i < s.size() && s[i] != '"') {
        text.push_back(s[i]);
        adv(s[i]);
        ++i;
      }
      if (i >= s.size()) throw SyntaxError("unterminated quote", l, co);
      adv('"');
      ++i;
      out.push_back(PatTok{true, std::move(text), l, co});
      continue;
    }
    if (ident_start(c) || digit(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back(PatTok{false, std::string(s.substr(i, j - i)), line, col});
      col += j - i;
      i = j;
      continue;
    }
    throw SyntaxError("unexpected character '" + std::string(1, c) + "'", line,
                      col);
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool valid_identifier(std::string_view s) {
  if (s.empty() || !ident_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), ident_char);
}

}  // namespace

TermPtr parse_term(std::string_view text, ParseOptions opts) {
  return TermParser(Lexer(text).run(), opts).run();
}

PatternExpr parse_pattern_expr(std::string_view text) {
  std::vector<PatTok> toks = lex_pattern(text);
  PatternExpr pe;
  std::size_t i = 0;
  while (i < toks.size()) {
    const PatTok& kw = toks[i];
    if (kw.quoted || (kw.text != "in" && kw.text != "at" && kw.text != "for"))
      throw SyntaxError("expected 'in', 'at' or 'for', got '" + kw.text + "'",
                        kw.line, kw.col);
    ++i;
    PatternUnit unit;
    if (kw.text == "for") {
      unit.kind = PatternUnit::Kind::For;
      while (i < toks.size() && !toks[i].quoted && !is_keyword(toks[i].text))
        unit.names.push_back(toks[i++].text);
      if (unit.names.empty())
        throw SyntaxError("'for' needs at least one name", kw.line, kw.col);
    } else {
      unit.kind = kw.text == "in" ? PatternUnit::Kind::In : PatternUnit::Kind::At;
      if (i >= toks.size())
        throw SyntaxError("expected an atom after '" + kw.text + "'", kw.line,
                          kw.col);
      const PatTok& a = toks[i++];
      if (a.quoted) {
        unit.atom.kind = PatternAtom::Kind::Term;
        unit.atom.term =
            parse_term(a.text, ParseOptions{/*allow_pattern=*/true,
                                            /*allow_schematic=*/false});
      } else if (a.text == "concl") {
        unit.atom.kind = PatternAtom::Kind::Concl;
      } else if (a.text == "asm") {
        unit.atom.kind = PatternAtom::Kind::Asm;
      } else if (a.text == "prop") {
        unit.atom.kind = PatternAtom::Kind::Prop;
      } else {
        throw SyntaxError("expected a quoted term, concl, asm or prop", a.line,
                          a.col);
      }
    }
    pe.units.push_back(std::move(unit));
  }
  if (pe.units.empty()) throw SyntaxError("empty pattern", 1, 1);
  return pe;
}

bool operator==(const PatternAtom& a, const PatternAtom& b) {
  if (a.kind != b.kind) return false;
  if (a.kind != PatternAtom::Kind::Term) return true;
  return alpha_eq(a.term, b.term);
}

bool operator==(const PatternUnit& a, const PatternUnit& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == PatternUnit::Kind::For) return a.names == b.names;
  return a.atom == b.atom;
}

bool operator==(const PatternExpr& a, const PatternExpr& b) {
  return a.units == b.units;
}

std::vector<Rule> parse_rules(std::string_view text) {
  std::vector<Rule> rules;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;
    std::string_view line = raw;
    if (std::size_t h = line.find('#'); h != std::string_view::npos)
      line = line.substr(0, h);
    std::string body = trim(line);
    if (body.empty()) continue;
    std::size_t colon = body.find(':');
    if (colon == std::string::npos)
      throw SyntaxError("expected 'name : lhs == rhs'", lineno, 1);
    std::string name = trim(body.substr(0, colon));
    if (!valid_identifier(name))
      throw SyntaxError("invalid rule name '" + name + "'", lineno, 1);
    for (const auto& r : rules)
      if (r.name == name) throw RuleError("duplicate rule name '" + name + "'");
    TermPtr eq;
    try {
      eq = parse_term(body.substr(colon + 1),
                      ParseOptions{/*allow_pattern=*/false,
                                   /*allow_schematic=*/true});
    } catch (const SyntaxError& e) {
      throw SyntaxError(std::string("in rule '") + name + "': " + e.what(),
                        lineno, 1);
    }
    const auto* outer = std::get_if<Term::App>(&eq->node());
    const Term::App* inner =
        outer ? std::get_if<Term::App>(&outer->fun->node()) : nullptr;
    const Term::Free* head =
        inner ? std::get_if<Term::Free>(&inner->fun->node()) : nullptr;
    if (head && head->name == "imp")
      throw RuleError("rule '" + name +
                      "': conditional rules (premises before ==) are not "
                      "supported");
    if (!head || head->name != "==")
      throw RuleError("rule '" + name + "' must be an equation 'lhs == rhs'");
    TermPtr lhs = inner->arg, rhs = outer->arg;
    if (loose_depth(lhs) != 0 || loose_depth(rhs) != 0)
      throw RuleError("rule '" + name + "' contains loose bound variables");
    rules.push_back(Rule{std::move(name), std::move(lhs), std::move(rhs)});
  }
  return rules;
}

}  // namespace patsel
