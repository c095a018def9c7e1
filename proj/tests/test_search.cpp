#include <doctest.h>

#include <set>

#include "knightmagic/search.hpp"
#include "support.hpp"

using namespace knightmagic;

namespace {

SearchSpec spec_for(const char* board, const char* cls = nullptr,
                    CountMode mode = CountMode::Arithmetic, Closure closure = Closure::Any) {
  SearchSpec s;
  s.dims = BoardDims::parse(board);
  if (cls) s.filter = Filter::of_class(cls);
  s.mode = mode;
  s.closure = closure;
  return s;
}

std::uint64_t count(const char* board, const char* cls = nullptr,
                    CountMode mode = CountMode::Arithmetic, Closure closure = Closure::Any) {
  return count_tours(spec_for(board, cls, mode, closure)).count;
}

}  // namespace

TEST_CASE("totals on small boards") {
  CHECK(count("3x4") == 4);
  CHECK(count("3x4", nullptr, CountMode::Geometric) == 3);
  CHECK(count("4x4") == 0);
  CHECK(count("4x5") == 41);
  CHECK(count("4x6") == 372);
  CHECK(count("4x7") == 3189);
  CHECK(count("4x8") == 15544);
  CHECK(count("3x4", nullptr, CountMode::Raw) == 16);
}

TEST_CASE("6x6 open and closed") {
  const auto r = count_tours(spec_for("6x6"));
  CHECK(r.count == 829740);
  CHECK(r.open == 740982);
  CHECK(r.closed == 88758);
  REQUIRE(r.diagrams);
  CHECK(*r.diagrams == 9862);
  CHECK(count("6x6", nullptr, CountMode::Arithmetic, Closure::Closed) == 88758);
  CHECK(count("6x6", nullptr, CountMode::Arithmetic, Closure::Open) == 740982);
}

TEST_CASE("open plus closed equals any") {
  for (const char* b : {"3x4", "4x5", "5x6", "3x10"}) {
    CAPTURE(b);
    for (CountMode m : {CountMode::Raw, CountMode::Arithmetic, CountMode::Geometric}) {
      CHECK(count(b, nullptr, m, Closure::Open) + count(b, nullptr, m, Closure::Closed) ==
            count(b, nullptr, m));
    }
  }
}

TEST_CASE("no closed tours on 4xn") {
  for (const char* b : {"4x5", "4x6", "4x7", "4x8"}) {
    CHECK(count(b, nullptr, CountMode::Arithmetic, Closure::Closed) == 0);
  }
}

TEST_CASE("filtered counts") {
  CHECK(count_with_filter(BoardDims(4, 6), Closure::Any, Filter::of_class("semi_long"),
                          CountMode::Arithmetic) == 16);
  CHECK(count("4x6", "quasi_long") == 4);
  CHECK(count("4x6", "near_long") == 2);
  CHECK(count("4x8", "semi_short") == 16);
  CHECK(count("4x8", "semi_long") == 136);
  CHECK(count("4x8", "quasi_short") == 4);
  CHECK(count("4x8", "quasi_long") == 10);
  CHECK(count("4x8", "near_short") == 4);
  CHECK(count("4x8", "near_long") == 16);
  SearchSpec s = spec_for("4x9");
  s.filter = Filter::parse("distinct(long)=2");
  CHECK(count_tours(s).count == 1682);
}

TEST_CASE("quasi and near are refinements of semi") {
  for (const char* b : {"4x6", "4x7", "4x8", "5x6"}) {
    CAPTURE(b);
    for (const char* dir : {"short", "long"}) {
      const std::string d = dir;
      CHECK(count(b, ("quasi_" + d).c_str()) + count(b, ("near_" + d).c_str()) <=
            count(b, ("semi_" + d).c_str()));
    }
  }
}

TEST_CASE("batched passes agree with single counts") {
  SearchSpec base = spec_for("4x8");
  std::vector<Filter> filters;
  for (const char* c : {"semi_short", "semi_long", "quasi_short", "quasi_long", "near_short",
                        "near_long", "magic", "none"}) {
    filters.push_back(Filter::of_class(c));
  }
  filters.push_back(Filter::parse("distinct(long)=2"));
  const auto rs = count_batch(base, filters);
  REQUIRE(rs.size() == filters.size());
  for (std::size_t i = 0; i < filters.size(); ++i) {
    base.filter = filters[i];
    CHECK(rs[i].count == count_tours(base).count);
  }
}

TEST_CASE("pruning matches leaf-only filtering") {
  for (const char* b : {"4x6", "4x8", "5x6"}) {
    for (const char* c : {"semi_short", "semi_long", "quasi_long", "near_long", "magic"}) {
      CAPTURE(b);
      CAPTURE(c);
      SearchSpec s = spec_for(b, c);
      const auto pruned = count_tours(s).count;
      s.line_pruning = false;
      CHECK(count_tours(s).count == pruned);
    }
  }
}

TEST_CASE("symmetry reduction off gives the same counts") {
  for (const char* b : {"3x4", "4x5", "5x5", "4x7"}) {
    for (CountMode m : {CountMode::Raw, CountMode::Arithmetic, CountMode::Geometric}) {
      SearchSpec s = spec_for(b, nullptr, m);
      const auto r = count_tours(s).count;
      s.symmetry_reduction = false;
      CHECK(count_tours(s).count == r);
    }
  }
}

TEST_CASE("thread count does not change results") {
  for (const char* b : {"4x8", "5x6"}) {
    SearchSpec s = spec_for(b, "semi_long");
    s.threads = 1;
    const auto one = count_tours(s);
    for (int t : {2, 4}) {
      s.threads = t;
      const auto many = count_tours(s);
      CHECK(many.count == one.count);
      CHECK(many.raw == one.raw);
    }
  }
}

TEST_CASE("enumerate emits each class once") {
  std::set<Tour> seen;
  std::size_t calls = 0;
  const auto r = enumerate_tours(spec_for("4x8", "semi_short"), [&](const Tour& t) {
    ++calls;
    CHECK(validate_tour(t));
    CHECK(frenicle_canonical(t) == t);
    seen.insert(t);
  });
  CHECK(r.count == 16);
  CHECK(calls == 16);
  CHECK(seen.size() == 16);

  // semi-magic classes are closed under reversal
  for (const Tour& t : seen) CHECK(seen.count(frenicle_canonical(reverse_tour(t))) == 1);

  std::vector<Tour> none;
  enumerate_tours(spec_for("4x6", "magic"), [&](const Tour& t) { none.push_back(t); });
  CHECK(none.empty());
}

TEST_CASE("enumerate in geometric and raw modes") {
  std::set<Tour> geo;
  const auto g = enumerate_tours(spec_for("5x6", nullptr, CountMode::Geometric),
                                 [&](const Tour& t) { geo.insert(geometric_class(t)); });
  CHECK(g.count == geo.size());
  CHECK(g.count == count("5x6", nullptr, CountMode::Geometric));

  std::set<Tour> raw;
  enumerate_tours(spec_for("4x5", nullptr, CountMode::Raw), [&](const Tour& t) { raw.insert(t); });
  CHECK(raw.size() == 164);
}

TEST_CASE("limit truncates") {
  SearchSpec s = spec_for("4x8");
  s.limit = 5;
  int n = 0;
  const auto r = enumerate_tours(s, [&](const Tour&) { ++n; });
  CHECK(n == 5);
  CHECK(r.count == 5);
  CHECK(r.truncated);
}

TEST_CASE("resource limits abort with stats") {
  SearchSpec s = spec_for("6x6");
  s.max_nodes = 100000;
  try {
    count_tours(s);
    FAIL("no abort");
  } catch (const SearchAborted& e) {
    CHECK(e.stats().nodes >= 100000);
  }
}

TEST_CASE("split frontier partitions the search") {
  SearchSpec s = spec_for("4x5", nullptr, CountMode::Raw);
  const auto whole = count_tours(s).raw;
  const auto one = split_frontier(s, 1);
  REQUIRE(one.size() == 1);
  CHECK(search_unit(s, one[0]) == whole);

  for (int depth : {1, 2, 3}) {
    const auto units = split_at_depth(s, depth);
    std::uint64_t sum = 0;
    for (const auto& u : units) sum += search_unit(s, u);
    CHECK(sum == whole);
    std::uint64_t backwards = 0;
    for (auto it = units.rbegin(); it != units.rend(); ++it) backwards += search_unit(s, *it);
    CHECK(backwards == sum);
  }
  const auto many = split_frontier(spec_for("4x8", "semi_long"), 50);
  CHECK(many.size() >= 50);
  std::uint64_t sum = 0;
  for (const auto& u : many) sum += search_unit(spec_for("4x8", "semi_long"), u);
  CHECK(sum == count_tours(spec_for("4x8", "semi_long", CountMode::Raw)).raw);
}

TEST_CASE("warnsdorf construction") {
  const auto t = warnsdorf_construct(BoardDims(8, 8), {0, 0});
  REQUIRE(t);
  CHECK(validate_tour(*t));
  CHECK(t->at({0, 0}) == 1);
  CHECK(warnsdorf_construct(BoardDims(8, 8), {0, 0}) == t);
  for (int i = 0; i < 16; ++i) CHECK_FALSE(warnsdorf_construct(BoardDims(4, 4), BoardDims(4, 4).cell(i)));
}

TEST_CASE("burnside") {
  auto r = burnside_check(BoardDims(3, 4), Closure::Any);
  CHECK(r.burnside == 4);
  CHECK(r.canonical_classes == 4);
  CHECK(r.consistent);
  r = burnside_check(BoardDims(4, 5), Closure::Any);
  CHECK(r.burnside == 41);
  CHECK(r.consistent);
  r = burnside_check(BoardDims(4, 4), Closure::Any);
  CHECK(r.burnside == 0);
  CHECK(r.consistent);
  r = burnside_check(BoardDims(5, 5), Closure::Any);
  CHECK(r.consistent);
  CHECK(r.group_order == 8);
}

TEST_CASE("degenerate boards") {
  CHECK(count("1x2") == 0);
  CHECK(count("2x6") == 0);
  CHECK(count("3x3") == 0);
}
