#include <doctest.h>

#include <filesystem>
#include <set>

#include "knightmagic/classify.hpp"
#include "knightmagic/fixtures.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace knightmagic;
using testing::tour;

namespace {

// on a square board a line-swapping op exchanges the short and long labels
MagicClass swapped(MagicClass c) {
  c.direction = other(c.direction);
  return c;
}

}  // namespace

TEST_CASE("quasi with short lines magic") {
  const auto r = classify(tour("fig43a"));
  CHECK(to_token(r.cls) == "quasi_short");
  CHECK(r.cls.kind == MagicKind::SemiMagic);
  CHECK(r.cls.direction == Direction::Short);
  CHECK(r.cls.refinement == Refinement::Quasi);
  CHECK(r.off_direction_distinct_values == std::vector<std::int64_t>{194, 200});
  CHECK_FALSE(r.contains_mc);
  CHECK(r.constants.long_mc == 196);
}

TEST_CASE("near with short lines magic") {
  const auto r = classify(tour("fig42a"));
  CHECK(to_token(r.cls) == "near_short");
  CHECK(r.profile.long_sums == std::vector<std::int64_t>{196, 208, 184, 196, 196, 196});
  CHECK(r.off_direction_distinct_values == std::vector<std::int64_t>{184, 196, 208});
  CHECK(r.contains_mc);
}

TEST_CASE("magic and non-magic") {
  const auto m = classify(tour("fig54-mt1"));
  CHECK(to_token(m.cls) == "magic");
  CHECK(m.profile.short_sums == std::vector<std::int64_t>(12, 219));
  CHECK(m.profile.long_sums == std::vector<std::int64_t>(6, 438));
  CHECK(to_token(classify(tour("fig38a")).cls) == "none");
}

TEST_CASE("distinct values and consecutive sums") {
  const Tour two = tour("fig02a");
  CHECK(distinct_value_count(two, Direction::Long) == 2);
  const auto p = classify(two).profile.long_sums;
  CHECK(std::set<std::int64_t>(p.begin(), p.end()) == std::set<std::int64_t>{151, 182});

  const Tour run = tour("fig08a");
  CHECK(distinct_value_count(run, Direction::Long) == 4);
  CHECK(sums_are_consecutive(run, Direction::Long));
  const auto q = classify(run).profile.long_sums;
  CHECK(std::set<std::int64_t>(q.begin(), q.end()) == std::set<std::int64_t>{343, 344, 345, 346});

  CHECK_FALSE(sums_are_consecutive(tour("fig01"), Direction::Long));
  const Tour m = tour("fig27-mt01");
  CHECK(distinct_value_count(m, Direction::Short) == 1);
  CHECK(distinct_value_count(m, Direction::Long) == 1);
  CHECK(sums_are_consecutive(m, Direction::Long));
}

TEST_CASE("exact class round trip") {
  for (int i = 0; i < 8; ++i) {
    const auto e = static_cast<ExactClass>(i);
    CHECK(exact(from_exact(e)) == e);
  }
}

TEST_CASE("corpus classification agrees with the reference and is invariant") {
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(KNIGHTMAGIC_FIXTURES_DIR)) {
    const Fixture f = load_fixture(entry.path());
    const Tour& t = f.tour;
    const auto r = classify(t);
    CAPTURE(f.id);
    CHECK(to_token(r.cls) == oracle::classify(t.grid, t.dims.width(), t.dims.height()));
    CHECK(classify(reverse_tour(t)).cls == r.cls);
    for (SymmetryOp g : symmetry_group(t.dims)) {
      const auto c = classify(transform_tour(g, t)).cls;
      const bool flip = swaps_lines(g) && r.cls.kind == MagicKind::SemiMagic;
      CHECK(c == (flip ? swapped(r.cls) : r.cls));
    }
    CHECK(classify_profile(t.dims, r.profile).cls == r.cls);
    const auto mc = magic_constants(t.dims);
    CHECK(classify_sums(r.profile.short_sums.data(), t.dims.height(), r.profile.long_sums.data(),
                        t.dims.width(), mc) == exact(r.cls));
    if (r.cls.kind == MagicKind::SemiMagic) {
      // a single off-direction value, or MC plus one other, cannot reach the fixed total
      const auto& d = r.off_direction_distinct_values;
      const std::size_t others = d.size() - (r.contains_mc ? 1 : 0);
      CHECK(others >= 2);
    }
    ++seen;
  }
  CHECK(seen >= 60);
}
