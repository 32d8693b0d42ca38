#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "patsel/select.hpp"
#include "support/util.hpp"

using namespace patsel;
using testutil::P;
using testutil::T;

namespace {

std::vector<std::string> sel_words(const SelectionSet& s) {
  std::vector<std::string> out;
  for (const auto& sel : s.items) out.push_back(sel.pos.word());
  return out;
}

SelectionSet eval(const std::string& pattern, const std::string& term) {
  return eval_pattern(parse_pattern_expr(pattern), T(term));
}

// λa b. [f a, (λc. a), f b]
TermPtr list_goal() { return T("%a b. [f a, (%c. a), f b]"); }

// !!x1 x2 x3. x1 <= x2 ==> x2 <= x3 ==> x1 <= x3
TermPtr trans_goal() {
  return T("!!x1 x2 x3. x1 <= x2 ==> x2 <= x3 ==> x1 <= x3");
}

}  // namespace

TEST_CASE("matches") {
  CHECK(matches(T("(a + b) * c"), P("_ * _")));
  CHECK_FALSE(matches(T("(a + b) + c"), P("a + _")));
  CHECK(matches(T("a + b"), P("a + _")));
  CHECK(matches(T("%x. f x c"), P("_")));
  CHECK(matches(T("%x. x"), P("%y. \xe2\x96\xa1")));
  CHECK_FALSE(matches(T("f a"), P("g _")));
}

TEST_CASE("sem_term filters") {
  TermPtr root = T("(a + b) * c + d");
  SelectionSet s = sem_term(P("_ * _"), initial_selection(root));
  CHECK(s.items.empty());
  s = sem_term(P("_ * _"), sem_in(initial_selection(root)));
  REQUIRE(s.items.size() == 1);
  CHECK(s.items[0].pos.word() == "lr");
  CHECK(alpha_eq(s.items[0].term, T("(a + b) * c")));
  CHECK(sem_term(P("_"), sem_in(initial_selection(root))).items.size() == 13);
}

TEST_CASE("sem_in enumerates all subterms") {
  CHECK(sem_in(initial_selection(T("x"))).items.size() == 1);
  CHECK(sem_in(initial_selection(T("(a + b) * c + d"))).items.size() == 13);
  SelectionSet s = sem_in(
      sem_term(P("_ * _"), sem_in(initial_selection(T("(a + b) * c + d")))));
  CHECK(s.items.size() == 9);
  CHECK(sel_words(s) ==
        std::vector<std::string>{"lr", "lrl", "lrll", "lrlr", "lrlrl",
                                 "lrlrll", "lrlrlr", "lrlrr", "lrr"});
}

TEST_CASE("sem_pos") {
  SelectionSet id = sem_pos(Position(), initial_selection(T("a = a")));
  CHECK(sel_words(id) == std::vector<std::string>{""});
  SelectionSet s = sem_pos(Position("lr"), initial_selection(T("a = a")));
  REQUIRE(s.items.size() == 1);
  CHECK(s.items[0].pos.word() == "lr");
  CHECK(alpha_eq(s.items[0].term, T("a")));
  CHECK(sem_pos(Position("aa"), initial_selection(T("%x. c"))).items.empty());
}

TEST_CASE("sem_bind names the innermost loose bounds") {
  SelectionSet base =
      sem_pos(Position("aa"), sem_term(P("%x y. \xe2\x96\xa1"),
                                       initial_selection(list_goal())));
  REQUIRE(base.items.size() == 1);
  CHECK(print_term(base.items[0].term) == "[f L2, (%c. L2), f L1]");

  SelectionSet both = sem_bind({"x", "y"}, base);
  REQUIRE(both.items.size() == 1);
  CHECK(print_term(both.items[0].term) == "[f x, (%c. x), f y]");
  CHECK(both.items[0].names ==
        std::map<std::size_t, std::string>{{0, "x"}, {1, "y"}});

  SelectionSet one = sem_bind({"x"}, base);
  REQUIRE(one.items.size() == 1);
  CHECK(print_term(one.items[0].term) == "[f L2, (%c. L2), f x]");
  CHECK(one.items[0].names == std::map<std::size_t, std::string>{{1, "x"}});

  CHECK(sem_bind({"x", "y", "z"}, base).items.empty());
  CHECK(sem_bind({}, base).items.size() == 1);
  CHECK_THROWS_AS(sem_bind({"x", "x"}, base), PatternError);

  // Clashing with a free of the root drops the selection with a note.
  SelectionSet clash = sem_bind({"f"}, base);
  CHECK(clash.items.empty());
  CHECK(clash.notes.size() == 1);
}

TEST_CASE("pos_hole") {
  CHECK(pos_hole(P("\xe2\x96\xa1 = _")).word() == "lr");
  CHECK(pos_hole(P("\xe2\x96\xa1")).word() == "");
  CHECK(pos_hole(P("%x y. \xe2\x96\xa1")).word() == "aa");
  CHECK_THROWS_AS(pos_hole(P("_")), PatternError);
}

TEST_CASE("binds_to") {
  CHECK(binds_to(T("%a b. f a b"), Position("aa")) ==
        std::vector<std::string>{"a", "b"});
  CHECK(binds_to(P("f \xe2\x96\xa1"), Position("r")).empty());
  CHECK(binds_to(P("(%v. \xe2\x96\xa1) == _"), Position("lra")) ==
        std::vector<std::string>{"v"});
  CHECK_THROWS_AS(binds_to(T("f x"), Position("a")), PositionError);
}

TEST_CASE("sem_match composes term, pos and bind") {
  SelectionSet s = sem_match(P("%x y. \xe2\x96\xa1"),
                             initial_selection(list_goal()));
  REQUIRE(s.items.size() == 1);
  CHECK(s.items[0].pos.word() == "aa");
  CHECK(print_term(s.items[0].term) == "[f x, (%c. x), f y]");

  // The bound variables can now be matched by name.
  SelectionSet fb = sem_term(P("f y"), sem_in(s));
  REQUIRE(fb.items.size() == 1);
  CHECK(fb.items[0].pos.word() == "aarrlr");

  // Without a hole match is just a filter.
  SelectionSet holeless = sem_match(P("_ * _"),
                                    sem_in(initial_selection(T("a * b + c"))));
  SelectionSet filtered = sem_term(P("_ * _"),
                                   sem_in(initial_selection(T("a * b + c"))));
  CHECK(sel_words(holeless) == sel_words(filtered));

  // A pattern binding the same name twice along the hole path is an error.
  CHECK_THROWS_AS(sem_match(P("%x x. \xe2\x96\xa1"),
                            initial_selection(T("%a b. f a b"))),
                  PatternError);
}

TEST_CASE("strip_goal") {
  GoalParts bare = strip_goal(T("f x"));
  CHECK(bare.binders.empty());
  CHECK(bare.premises.empty());
  CHECK(alpha_eq(bare.conclusion, T("f x")));

  GoalParts g = strip_goal(trans_goal());
  CHECK(g.binders == std::vector<std::string>{"x1", "x2", "x3"});
  REQUIRE(g.premises.size() == 2);
  CHECK(alpha_eq(g.premises[0], app(free_var("<="), bound(2), bound(1))));
  CHECK(alpha_eq(g.premises[1], app(free_var("<="), bound(1), bound(0))));
  CHECK(alpha_eq(g.conclusion, app(free_var("<="), bound(2), bound(0))));

  GoalParts imp = strip_goal(T("P ==> Q"));
  CHECK(imp.binders.empty());
  REQUIRE(imp.premises.size() == 1);
  CHECK(alpha_eq(imp.premises[0], T("P")));
  CHECK(alpha_eq(imp.conclusion, T("Q")));
}

TEST_CASE("sem_concl") {
  SelectionSet bare = sem_concl(initial_selection(T("f x")));
  CHECK(sel_words(bare) == std::vector<std::string>{""});

  SelectionSet s = sem_concl(initial_selection(trans_goal()));
  REQUIRE(s.items.size() == 1);
  CHECK(s.items[0].pos.word() == "rarararr");
  CHECK(print_term(s.items[0].term) == "L3 <= L1");
}

TEST_CASE("sem_asm") {
  CHECK(sem_asm(initial_selection(T("f x"))).items.empty());
  SelectionSet s = sem_asm(initial_selection(trans_goal()));
  REQUIRE(s.items.size() == 2);
  CHECK(s.items[0].pos.word() == "rararalr");
  CHECK(s.items[1].pos.word() == "rarararlr");
  CHECK(alpha_eq(s.items[0].term, app(free_var("<="), bound(2), bound(1))));
  CHECK(alpha_eq(s.items[1].term, app(free_var("<="), bound(1), bound(0))));
}

TEST_CASE("sem_for names a suffix of the goal parameters") {
  SelectionSet s = sem_for({"a", "b"}, initial_selection(trans_goal()));
  REQUIRE(s.items.size() == 1);
  CHECK(s.items[0].pos.word() == "rarara");
  CHECK(print_term(s.items[0].term) == "L3 <= a ==> a <= b ==> L3 <= b");
  CHECK(s.items[0].names ==
        std::map<std::size_t, std::string>{{1, "a"}, {2, "b"}});

  // The named variables are then available to term patterns.
  SelectionSet match = sem_term(P("a <= b"), sem_in(s));
  REQUIRE(match.items.size() == 1);
  CHECK(match.items[0].pos.word() == "rarararlr");

  // Contrast with match(!!a b. □): for names the rightmost parameters.
  TermPtr goal = T("!!x y z. t x y z");
  SelectionSet f = sem_for({"a", "b"}, initial_selection(goal));
  REQUIRE(f.items.size() == 1);
  CHECK(print_term(f.items[0].term) == "t L3 a b");
  SelectionSet m = sem_match(P("!!a b. \xe2\x96\xa1"), initial_selection(goal));
  REQUIRE(m.items.size() == 1);
  CHECK(print_term(m.items[0].term) == "!!z. t a b z");

  // for with no names strips the binders and names nothing.
  SelectionSet none = sem_for({}, initial_selection(goal));
  REQUIRE(none.items.size() == 1);
  CHECK(none.items[0].names.empty());
  CHECK(print_term(none.items[0].term) == "t L3 L2 L1");

  // More names than binders selects nothing.
  CHECK(sem_for({"a", "b", "c", "d"}, initial_selection(goal)).items.empty());
  CHECK_THROWS_AS(sem_for({"a", "a"}, initial_selection(goal)), PatternError);
}

TEST_CASE("eval_pattern reproduces the surface-language table") {
  // at "a + _"  on (a+b)+c
  CHECK(sel_words(eval("at \"a + _\"", "(a + b) + c")) ==
        std::vector<std::string>{"lr"});
  // at "a + _" at prop: the implicit conclusion step is suppressed
  CHECK(eval("at \"a + _\" at prop", "(a + b) + c").items.empty());
  // in "_ * c"
  CHECK(sel_words(eval("in \"_ * c\"", "(a + b) * c + d")) ==
        std::vector<std::string>{"lr", "lrl", "lrll", "lrlr", "lrlrl",
                                 "lrlrll", "lrlrlr", "lrlrr", "lrr"});
  // at "_ + _" in "_ * c"
  CHECK(sel_words(eval("at \"_ + _\" in \"_ * c\"", "(a + b) * c + d")) ==
        std::vector<std::string>{"lrlr"});
  // at "x + 1" in "f _"
  CHECK(sel_words(eval("at \"x + 1\" in \"f _\"",
                       "f (x + 1) = g (x + 1)")) ==
        std::vector<std::string>{"lrr"});
  // at "□ = _"
  CHECK(sel_words(eval("at \"\xe2\x96\xa1 = _\"", "x = x")) ==
        std::vector<std::string>{"lr"});
  // at "a + _" in "f □ + f _"
  CHECK(sel_words(eval("at \"a + _\" in \"f \xe2\x96\xa1 + f _\"",
                       "f ((a + b) + c) + f ((a + b) + c)")) ==
        std::vector<std::string>{"lrrlr"});
  // at "v + 1" in "(%v. □) == _"
  SelectionSet row8 = eval("at \"v + 1\" in \"(%v. \xe2\x96\xa1) == _\"",
                           "(%x. (x + 1) + c) == (%y. (y + 1) + c)");
  REQUIRE(row8.items.size() == 1);
  CHECK(row8.items[0].pos.word() == "lralr");
  CHECK(print_term(row8.items[0].term) == "v + 1");
  CHECK(row8.items[0].names == std::map<std::size_t, std::string>{{0, "v"}});
}

TEST_CASE("eval_pattern goal navigation") {
  CHECK(sel_words(eval("at \"a <= _\" in asm",
                       "!!x. a <= x ==> x <= a ==> a <= a")) ==
        std::vector<std::string>{"ralr"});
  CHECK(eval("in asm", "f x").items.empty());
  CHECK(sel_words(eval("at concl", "f x")) == std::vector<std::string>{""});
  CHECK_THROWS_AS(eval_pattern(parse_pattern_expr("at prop"),
                               testutil::S("?x")),
                  Error);
}

TEST_CASE("selection sets stay deterministic and deduplicated") {
  TermPtr root = T("(a + b) * c + d");
  SelectionSet twice = sem_in(sem_in(initial_selection(root)));
  CHECK(twice.items.size() == 13);
  SelectionSet once = sem_in(initial_selection(root));
  CHECK(sel_words(twice) == sel_words(once));
}
