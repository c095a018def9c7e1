#include <doctest.h>

#include "knightmagic/filter.hpp"
#include "support.hpp"

using namespace knightmagic;
using testing::tour;

TEST_CASE("class masks") {
  CHECK(Filter::class_mask("magic") == 0x01);
  CHECK(Filter::class_mask("semi_short") == 0x0e);
  CHECK(Filter::class_mask("semi_long") == 0x70);
  CHECK(Filter::class_mask("quasi") == 0x24);
  CHECK(Filter::class_mask("none") == 0x80);
  CHECK(Filter::is_class_token("near_long"));
  CHECK_FALSE(Filter::is_class_token("nearly"));
  CHECK_THROWS_AS(Filter::of_class("bogus"), std::invalid_argument);
}

TEST_CASE("parse and print") {
  const Filter f = Filter::parse("distinct(long)=2 & mc_lines(short)>=13");
  CHECK(Filter::parse(f.str()) == f);
  CHECK(Filter::parse("all").trivial());
  CHECK(Filter::parse("").trivial());
  CHECK(Filter().str() == "all");
  const Filter c = Filter::parse("class=quasi_short|near_short");
  CHECK(c.mask() == 0x0c);
  CHECK(Filter::parse(c.str()) == c);
}

TEST_CASE("parse errors name the column") {
  try {
    Filter::parse("class=magic&distinct(diag)=2");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() > 12);
  }
  CHECK_THROWS_AS(Filter::parse("class=wobbly"), ParseError);
  CHECK_THROWS_AS(Filter::parse("mc_lines(short)>="), ParseError);
}

TEST_CASE("matching") {
  const auto q = classify(tour("fig43a"));
  CHECK(Filter::of_class("semi_short").matches(q));
  CHECK(Filter::of_class("quasi_short").matches(q));
  CHECK_FALSE(Filter::of_class("near_short").matches(q));
  CHECK_FALSE(Filter::of_class("semi_long").matches(q));
  CHECK(Filter::parse("distinct(long)=2").matches(q));
  CHECK(Filter::parse("mc_lines(short)>=8").matches(q));
  CHECK(Filter::parse("mc_lines(long)=0").matches(q));

  const auto two = classify(tour("fig02a"));
  CHECK(Filter::parse("distinct(long)=2").matches(two));
  CHECK(Filter::parse("consecutive(long)").matches(classify(tour("fig08a"))));
}

TEST_CASE("required lines drive pruning") {
  const BoardDims d(4, 8);
  CHECK(Filter::of_class("semi_short").required_mc_lines(Direction::Short, d) == 8);
  CHECK(Filter::of_class("semi_short").required_mc_lines(Direction::Long, d) == 0);
  CHECK(Filter::of_class("magic").required_mc_lines(Direction::Long, d) == 4);
  CHECK(Filter::parse("mc_lines(short)>=5").required_mc_lines(Direction::Short, d) == 5);
  CHECK(Filter::parse("distinct(long)=1").required_mc_lines(Direction::Long, d) == 4);
  CHECK(Filter().required_mc_lines(Direction::Short, d) == 0);
}

TEST_CASE("transpose and satisfiability") {
  const Filter f = Filter::parse("class=semi_short&distinct(long)=2");
  const Filter t = f.transposed();
  CHECK(t.mask() == 0x70);
  CHECK(t.transposed() == f);
  CHECK_FALSE(Filter::of_class("magic").unsatisfiable(BoardDims(4, 8)));
  CHECK(Filter::of_class("magic").unsatisfiable(BoardDims(4, 9)));
  CHECK(Filter::of_class("semi_long").unsatisfiable(BoardDims(4, 9)));
  CHECK_FALSE(Filter::of_class("semi_short").unsatisfiable(BoardDims(4, 9)));
  CHECK((Filter::of_class("magic") & Filter::of_class("none")).unsatisfiable(BoardDims(4, 8)));
}
