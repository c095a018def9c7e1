#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "knightmagic/fixtures.hpp"
#include "support.hpp"

using namespace knightmagic;
namespace fs = std::filesystem;

namespace {

std::string read(const std::string& id) {
  std::ifstream in(std::string(KNIGHTMAGIC_FIXTURES_DIR) + "/" + id + ".tour");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("knightmagic-" + name + "-" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("parse a magic fixture") {
  const Fixture f = parse_fixture(read("fig54-mt1"), "fig54-mt1");
  CHECK(f.expected_class == "magic");
  CHECK(f.kind == FixtureKind::Knight);
  CHECK(f.tour.dims == BoardDims(6, 12));
  CHECK(parse_fixture(format_fixture(f), f.id).tour == f.tour);
}

TEST_CASE("fixture parse errors") {
  std::string text = read("fig27-mt01");
  const auto grid = text.find("\n", text.find("\n1") + 1);
  std::string cut = text;
  cut.erase(cut.rfind(' ', grid), grid - cut.rfind(' ', grid));
  CHECK_THROWS_AS(parse_fixture(cut), ParseError);

  std::string bad = text;
  bad.replace(bad.find("class magic"), 11, "class sorta");
  try {
    parse_fixture(bad);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("unknown class") != std::string::npos);
  }
}

TEST_CASE("magic corpora verify") {
  for (int i = 1; i <= 16; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "fig27-mt%02d", i);
    const auto v = verify_fixture(testing::fixture(id));
    CAPTURE(id);
    CHECK(v.status == FixtureStatus::Pass);
    CHECK(v.actual_class == "magic");
    const auto p = line_sums(testing::fixture(id).tour);
    CHECK(p.short_sums == std::vector<std::int64_t>(18, 146));
    CHECK(p.long_sums == std::vector<std::int64_t>(4, 657));
  }
  for (int i = 1; i <= 8; ++i) {
    const std::string id = "fig54-mt" + std::to_string(i);
    const auto v = verify_fixture(testing::fixture(id));
    CHECK(v.status == FixtureStatus::Pass);
    const auto p = line_sums(testing::fixture(id).tour);
    CHECK(p.short_sums == std::vector<std::int64_t>(12, 219));
    CHECK(p.long_sums == std::vector<std::int64_t>(6, 438));
  }
}

TEST_CASE("a corrupted digit fails") {
  Fixture f = testing::fixture("fig27-mt01");
  const auto pos = positions(f.tour);
  std::swap(f.tour.grid[pos[9]], f.tour.grid[pos[40]]);
  const auto v = verify_fixture(f);
  CHECK(v.status == FixtureStatus::Fail);
  REQUIRE_FALSE(v.reasons.empty());
  CHECK(v.reasons[0].find("invalid knight tour") == 0);
}

TEST_CASE("whole corpus") {
  const auto rep = verify_corpus(KNIGHTMAGIC_FIXTURES_DIR);
  CHECK(rep.status == CorpusStatus::AllPassed);
  CHECK(rep.failed == 0);
  CHECK(rep.passed >= 60);
  CHECK(rep.quarantined == 4);
  for (const auto& e : rep.entries) {
    if (e.status == FixtureStatus::Quarantined) CHECK(testing::fixture(e.id).quarantine);
  }
  const auto again = verify_corpus(KNIGHTMAGIC_FIXTURES_DIR);
  CHECK(again.passed == rep.passed);
}

TEST_CASE("corpus status cases") {
  TempDir empty("empty");
  const auto none = verify_corpus(empty.path);
  CHECK(none.status == CorpusStatus::NothingVerified);
  CHECK(none.entries.empty());

  TempDir mixed("mixed");
  for (const char* id : {"fig01", "fig43a", "fig54-mt2"}) {
    fs::copy_file(fs::path(KNIGHTMAGIC_FIXTURES_DIR) / (std::string(id) + ".tour"),
                  mixed.path / (std::string(id) + ".tour"));
  }
  Fixture f = testing::fixture("fig27-mt05");
  std::swap(f.tour.grid[0], f.tour.grid[1]);
  std::ofstream(mixed.path / "broken.tour") << format_fixture(f);
  const auto rep = verify_corpus(mixed.path);
  CHECK(rep.status == CorpusStatus::Failures);
  CHECK(rep.failed == 1);
  CHECK(rep.passed == 3);
  for (const auto& e : rep.entries) CHECK((e.status == FixtureStatus::Fail) == (e.id == "broken"));

  CHECK_THROWS_AS(verify_corpus(empty.path / "missing"), std::runtime_error);
}
