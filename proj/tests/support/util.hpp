#pragma once

#include <string>

#include "patsel/syntax.hpp"

namespace testutil {

using namespace patsel;

// Shorthand parsers: plain goal term, pattern term, rule-side term.
inline TermPtr T(const std::string& s) { return parse_term(s); }
inline TermPtr P(const std::string& s) {
  return parse_term(s, ParseOptions{/*allow_pattern=*/true,
                                    /*allow_schematic=*/false});
}
inline TermPtr S(const std::string& s) {
  return parse_term(s, ParseOptions{/*allow_pattern=*/false,
                                    /*allow_schematic=*/true});
}

}  // namespace testutil
