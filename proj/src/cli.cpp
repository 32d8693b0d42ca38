#include "patsel/cli.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "patsel/errors.hpp"
#include "patsel/rewrite.hpp"
#include "patsel/select.hpp"
#include "patsel/syntax.hpp"
#include "patsel/term.hpp"

namespace patsel {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string show_position(const Position& p, bool ascii) {
  if (p.empty()) return ascii ? "e" : "\xce\xb5";
  return p.word();
}

// "?name = term" (the leading '?' is optional).
WhereBinding parse_where_binding(const std::string& text) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  if (i < text.size() && text[i] == '?') ++i;
  std::size_t start = i;
  while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                             text[i] == '_' || text[i] == '\''))
    ++i;
  std::string name = text.substr(start, i - start);
  skip_ws();
  if (name.empty() || i >= text.size() || text[i] != '=')
    throw WhereError("expected '?name = term', got '" + text + "'");
  ++i;
  std::string value = text.substr(i);
  if (value.find_first_not_of(" \t") == std::string::npos)
    throw WhereError("missing term in where-binding '" + text + "'");
  return {std::move(name), std::move(value)};
}

std::string describe_report(const RewriteReport& r, bool symmetric,
                            bool ascii) {
  std::string line = "applied " + r.rule_name;
  if (symmetric) line += "[symmetric]";
  line += " at " + show_position(r.pos, ascii);
  if (!r.subst.empty()) {
    line += ":";
    bool first = true;
    for (const auto& [name, value] : r.subst) {
      line += first ? " " : ", ";
      line += "?" + name + " := " + print_term(value);
      first = false;
    }
  }
  if (!r.binder_names.empty()) {
    line += "; binders:";
    for (const auto& [depth, name] : r.binder_names)
      line += " " + std::to_string(depth) + "=" + name;
  }
  return line;
}

int run_show(const CliConfig& cfg, CliResult& res) {
  TermPtr t = parse_term(read_file(cfg.term_path));
  res.out += print_term(t) + "\n";
  if (cfg.debruijn) res.out += print_term_debruijn(t) + "\n";
  return 0;
}

int run_select(const CliConfig& cfg, CliResult& res) {
  TermPtr root = parse_term(read_file(cfg.term_path));
  PatternExpr pe = parse_pattern_expr(cfg.pattern);
  SelectionSet sels = eval_pattern(pe, root);
  for (const auto& note : sels.notes) res.err += note + "\n";
  std::vector<Position> marks;
  marks.reserve(sels.items.size());
  for (const auto& sel : sels.items) marks.push_back(sel.pos);
  res.out += print_term_marked(root, marks, cfg.ascii) + "\n";
  std::string line = std::to_string(sels.items.size()) + " selection" +
                     (sels.items.size() == 1 ? "" : "s");
  if (!sels.items.empty()) {
    line += ":";
    for (const auto& m : marks) line += " " + show_position(m, cfg.ascii);
  }
  res.out += line + "\n";
  return 0;
}

int run_rewrite(const CliConfig& cfg, CliResult& res) {
  TermPtr root = parse_term(read_file(cfg.term_path));
  PatternExpr pe = parse_pattern_expr(cfg.pattern);
  std::vector<Rule> rules = parse_rules(read_file(cfg.rules_path));
  const Rule* rule = nullptr;
  for (const auto& r : rules)
    if (r.name == cfg.rule_name) rule = &r;
  if (!rule)
    throw Error("rules file '" + cfg.rules_path + "' has no rule '" +
                cfg.rule_name + "'");
  std::vector<WhereBinding> where;
  where.reserve(cfg.where_bindings.size());
  for (const auto& b : cfg.where_bindings)
    where.push_back(parse_where_binding(b));
  RewriteOutcome outcome =
      patsubst(root, pe, *rule, where, cfg.symmetric,
               cfg.all ? RewriteMode::all : RewriteMode::first);
  res.out += print_term(outcome.result) + "\n";
  for (const auto& report : outcome.reports)
    res.out += describe_report(report, cfg.symmetric, cfg.ascii) + "\n";
  return 0;
}

}  // namespace

CliResult run_command(const CliConfig& cfg) {
  CliResult res;
  try {
    switch (cfg.command) {
      case CliConfig::Command::show:
        res.exit_code = run_show(cfg, res);
        break;
      case CliConfig::Command::select:
        res.exit_code = run_select(cfg, res);
        break;
      case CliConfig::Command::rewrite:
        res.exit_code = run_rewrite(cfg, res);
        break;
    }
  } catch (const EmptySelectionError& e) {
    res.err += std::string("error: ") + e.what() + "\n";
    res.exit_code = 2;
  } catch (const NoApplicableError& e) {
    res.err += std::string("error: ") + e.what() + "\n";
    res.exit_code = 3;
  } catch (const NameClashError& e) {
    res.err += std::string("error: ") + e.what() + "\n";
    res.exit_code = 4;
  } catch (const WhereError& e) {
    res.err += std::string("error: ") + e.what() + "\n";
    res.exit_code = 4;
  } catch (const Error& e) {
    res.err += std::string("error: ") + e.what() + "\n";
    res.exit_code = 1;
  }
  return res;
}

}  // namespace patsel
