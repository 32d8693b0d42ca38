#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "patsel/term.hpp"
#include "support/oracle.hpp"
#include "support/util.hpp"

using namespace patsel;
using testutil::T;
using testutil::S;

namespace {

std::vector<std::string> words(const std::vector<Position>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.word());
  return out;
}

// The running example (a + b) * c + d in curried form.
TermPtr running_example() { return T("(a + b) * c + d"); }

}  // namespace

TEST_CASE("positions enumerate in pre-order") {
  CHECK(words(positions(free_var("x"))) == std::vector<std::string>{""});
  CHECK(words(positions(T("f x"))) ==
        std::vector<std::string>{"", "l", "r"});

  auto ps = positions(running_example());
  CHECK(ps.size() == 13);
  CHECK(ps.size() == oracle::node_count(running_example()));
  CHECK(words(ps) == std::vector<std::string>{
                         "", "l", "ll", "lr", "lrl", "lrll", "lrlr", "lrlrl",
                         "lrlrll", "lrlrlr", "lrlrr", "lrr", "r"});
}

TEST_CASE("subterm") {
  TermPtr t = running_example();
  CHECK(alpha_eq(subterm(t, Position()), t));
  CHECK(alpha_eq(subterm(T("a = a"), Position("lr")), T("a")));
  CHECK(alpha_eq(subterm(t, Position("lr")), T("(a + b) * c")));
  CHECK_THROWS_AS(subterm(T("a"), Position("l")), PositionError);
  CHECK(try_subterm(T("%x. c"), Position("aa")) == nullptr);

  // p.q addresses iff p addresses and q addresses within.
  for (const auto& p : positions(t))
    for (const auto& q : positions(subterm(t, p)))
      CHECK(alpha_eq(subterm(t, p + q), subterm(subterm(t, p), q)));
}

TEST_CASE("alpha equivalence ignores hints") {
  CHECK(alpha_eq(T("%x. x"), T("%y. y")));
  // %x. f (%y. x) x: both bound occurrences point at the outer binder.
  TermPtr built = abs("a", app(app(free_var("f"), abs("b", bound(1))), bound(0)));
  CHECK(alpha_eq(T("%x. f (%y. x) x"), built));
  CHECK_FALSE(alpha_eq(T("%x. x"), T("%x. y")));
  CHECK_FALSE(alpha_eq(T("f a"), T("f b")));
}

TEST_CASE("loose_depth") {
  CHECK(loose_depth(T("%x. x")) == 0);
  // [f a, (%c. a), f b] with the binders for a and b stripped away.
  TermPtr body = subterm(T("%a b. [f a, (%c. a), f b]"), Position("aa"));
  CHECK(loose_depth(body) == 2);
  TermPtr spread = app(app(free_var("f"), bound(1)), app(abs("c", bound(2)), bound(0)));
  CHECK(loose_depth(spread) == 2);
  CHECK(loose_depth(bound(0)) == 1);
}

TEST_CASE("subst_loose") {
  TermPtr body = subterm(T("%a b. [f a, (%c. a), f b]"), Position("aa"));
  CHECK(alpha_eq(subst_loose(body, {"x", "y"}), T("[f x, (%c. x), f y]")));

  TermPtr partial = subst_loose(body, {"x"});
  CHECK(loose_depth(partial) == 2);
  CHECK(print_term(partial) == "[f L2, (%c. L2), f x]");

  CHECK(alpha_eq(subst_loose(T("%x. f x"), {"x"}), T("%x. f x")));
  CHECK(alpha_eq(subst_loose(body, {}), body));
}

TEST_CASE("open_abs and close_abs") {
  CHECK(alpha_eq(open_abs(T("%x. x"), "v"), T("v")));
  TermPtr inner = abs("x", app(app(free_var("f"), bound(0)), bound(1)));
  CHECK(alpha_eq(open_abs(inner, "v"),
                 app(app(free_var("f"), free_var("v")), bound(0))));
  CHECK(alpha_eq(open_abs(T("%x. c"), "v"), T("c")));
  CHECK_THROWS_AS(open_abs(T("%x. v x"), "v"), NameClashError);
  CHECK_THROWS_AS(open_abs(T("f x"), "v"), PositionError);

  CHECK(alpha_eq(close_abs(T("v"), "v", "x"), T("%x. x")));
  CHECK(alpha_eq(close_abs(app(app(free_var("f"), free_var("v")), bound(0)),
                           "v", "x"),
                 inner));
  CHECK(alpha_eq(close_abs(T("c"), "v", "x"), T("%x. c")));

  for (const char* s : {"%x. x", "%x. f x x", "%x. f (%y. x y) c"}) {
    TermPtr t = T(s);
    CHECK(alpha_eq(close_abs(open_abs(t, "fresh"), "fresh", "h"), t));
  }
}

TEST_CASE("free and schematic variables") {
  CHECK(free_vars(T("%x. x")).empty());
  CHECK(free_vars(T("f a (%c. a)")) == std::set<std::string>{"f", "a"});
  CHECK(free_vars(S("?x + y")) == std::set<std::string>{"+", "y"});
  CHECK(schematic_vars(S("?x + ?y")) == std::set<std::string>{"x", "y"});
  CHECK(contains_schematic(S("?x")));
  CHECK_FALSE(contains_schematic(T("x")));
}
