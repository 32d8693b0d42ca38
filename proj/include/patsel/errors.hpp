#pragma once

#include <stdexcept>
#include <string>

namespace patsel {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lexical or grammatical error in a term, pattern or rule text.
struct SyntaxError : Error {
  SyntaxError(const std::string& what, std::size_t line, std::size_t col)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(col) + ")"),
        line(line),
        col(col) {}
  std::size_t line;
  std::size_t col;
};

// A position does not address a subterm of the given term.
struct PositionError : Error {
  using Error::Error;
};

// Misused pattern machinery: missing/duplicate holes, duplicate binder names.
struct PatternError : Error {
  using Error::Error;
};

// Problems in a rule file: duplicate names, non-equation, conditional rule.
struct RuleError : Error {
  using Error::Error;
};

// Bad `where` instantiation: unknown schematic, duplicate or unparseable binding.
struct WhereError : Error {
  using Error::Error;
};

// A binder would be opened with a name that is already taken.
struct NameClashError : Error {
  using Error::Error;
};

// The pattern selected no subterm at all.
struct EmptySelectionError : Error {
  using Error::Error;
};

// The rule applied at none of the selected subterms.
struct NoApplicableError : Error {
  using Error::Error;
};

}  // namespace patsel
