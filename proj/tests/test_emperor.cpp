#include <doctest.h>

#include <set>

#include "knightmagic/emperor.hpp"
#include "support.hpp"

using namespace knightmagic;
using testing::tour;

namespace {

Tour emperor_geometric(const Tour& t) {
  return std::min(frenicle_canonical(t), frenicle_canonical(reverse_tour(t)));
}

}  // namespace

TEST_CASE("validate emperor tours") {
  const Tour t = tour("fig52a");
  const auto chk = validate_emperor(t);
  CHECK(chk);
  CHECK(chk.junction == 12);
  CHECK(to_token(classify(t).cls) == "magic");

  const auto knight = validate_emperor(tour("fig01"));
  CHECK_FALSE(knight);
  CHECK(knight.violation == "zero wazir steps");

  // 1..24 in boustrophedon order is all wazir steps
  Tour snake{BoardDims(4, 6), std::vector<int>(24)};
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 4; ++c) snake.grid[r * 4 + c] = r * 4 + (r % 2 ? 4 - c : c + 1);
  }
  CHECK_FALSE(validate_emperor(snake));

  const auto two = validate_emperor(Tour{BoardDims(1, 3), {1, 2, 3}});
  CHECK_FALSE(two);
  CHECK(two.violation == "2 wazir steps");

  Tour shortgrid = t;
  shortgrid.grid.pop_back();
  CHECK_THROWS_AS(validate_emperor(shortgrid), std::invalid_argument);
}

TEST_CASE("emperor magic tours on 4x6") {
  const auto r = enumerate_emperor(BoardDims(4, 6), Filter::of_class("magic"));
  CHECK(r.count == 3);
  std::set<Tour> found(r.tours.begin(), r.tours.end());
  for (const char* id : {"fig52a", "fig52b", "fig52c"}) {
    CHECK(found.count(frenicle_canonical(tour(id))) == 1);
  }
  for (const Tour& t : r.tours) CHECK(validate_emperor(t));
  CHECK(enumerate_emperor(BoardDims(4, 6), Filter::of_class("magic"), CountMode::Geometric).count ==
        3);
}

TEST_CASE("emperor quasi tours with long lines magic on 4x6") {
  const auto r =
      enumerate_emperor(BoardDims(4, 6), Filter::of_class("quasi_long"), CountMode::Geometric);
  CHECK(r.count == 6);
  std::set<Tour> found;
  for (const Tour& t : r.tours) {
    CHECK(validate_emperor(t));
    CHECK(to_token(classify(t).cls) == "quasi_long");
    found.insert(emperor_geometric(t));
  }
  std::set<Tour> printed;
  for (const char* id : {"fig53a", "fig53b", "fig53c", "fig53d", "fig53e", "fig53f"}) {
    printed.insert(emperor_geometric(tour(id)));
  }
  CHECK(found == printed);
}

TEST_CASE("junction rule") {
  const auto any = enumerate_emperor(BoardDims(4, 6), Filter::of_class("semi_long"),
                                     CountMode::Arithmetic, Junction::Any);
  const auto half = enumerate_emperor(BoardDims(4, 6), Filter::of_class("semi_long"));
  CHECK(half.count <= any.count);
  for (const Tour& t : half.tours) CHECK(validate_emperor(t).junction == 12);
  for (const Tour& t : any.tours) CHECK(validate_emperor(t));
}

TEST_CASE("emperor classes are invariant under symmetry and reversal") {
  for (const char* id : {"fig52a", "fig53a", "fig53d"}) {
    const Tour t = tour(id);
    const auto c = classify(t).cls;
    const Tour r = reverse_tour(t);
    CHECK(classify(r).cls == c);
    CHECK(validate_emperor(r).junction == 24 - validate_emperor(t).junction);
    for (SymmetryOp g : symmetry_group(t.dims)) CHECK(classify(transform_tour(g, t)).cls == c);
  }
}

TEST_CASE("small boards and the guard") {
  const auto r = enumerate_emperor(BoardDims(4, 4), Filter::of_class("magic"), CountMode::Arithmetic,
                                   Junction::Any);
  for (const Tour& t : r.tours) CHECK(to_token(classify(t).cls) == "magic");
  CHECK_THROWS_AS(enumerate_emperor(BoardDims(7, 7), Filter()), std::invalid_argument);
}
