#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "patsel/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"patsel - pattern-based subterm selection and single-step "
               "rewriting for lambda terms"};
  app.require_subcommand(1);

  patsel::CliConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("term-file", cfg.term_path, "file containing one term")
        ->required();
    sub->add_flag("--ascii", cfg.ascii, "ASCII markers and positions");
  };

  CLI::App* show = app.add_subcommand("show", "parse and print a term");
  add_common(show);
  show->add_flag("--debruijn", cfg.debruijn,
                 "also print the raw de Bruijn form");

  CLI::App* select =
      app.add_subcommand("select", "preview what a pattern selects");
  add_common(select);
  select->add_option("--pattern", cfg.pattern, "selection pattern")
      ->required();

  CLI::App* rewrite =
      app.add_subcommand("rewrite", "apply a rule at the selected subterm");
  add_common(rewrite);
  rewrite->add_option("--pattern", cfg.pattern, "selection pattern")
      ->required();
  rewrite->add_option("--rules", cfg.rules_path, "rule file")->required();
  rewrite->add_option("--rule", cfg.rule_name, "rule name")->required();
  rewrite->add_option("--where", cfg.where_bindings,
                      "instantiation '?name = term' (repeatable)");
  rewrite->add_flag("--symmetric", cfg.symmetric,
                    "apply the rule right-to-left");
  rewrite->add_flag("--all", cfg.all, "rewrite every applicable selection");

  CLI11_PARSE(app, argc, argv);

  if (show->parsed())
    cfg.command = patsel::CliConfig::Command::show;
  else if (select->parsed())
    cfg.command = patsel::CliConfig::Command::select;
  else
    cfg.command = patsel::CliConfig::Command::rewrite;

  patsel::CliResult res = patsel::run_command(cfg);
  std::cout << res.out;
  std::cerr << res.err;
  return res.exit_code;
}
