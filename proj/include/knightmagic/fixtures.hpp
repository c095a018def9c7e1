#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knightmagic/tour.hpp"

namespace knightmagic {

enum class FixtureKind : std::uint8_t { Knight, Emperor };

/// A transcribed tour with its expected classification.
///
/// File format: the tour text format with extra header lines between the
/// board line and the grid: `kind knight|emperor`, `class <token>`,
/// `source <text>`, `short_sums ...`, `long_sums ...` and
/// `quarantine <reason>` for figures whose printed margins are inconsistent.
/// Sums are listed in canonical orientation.
struct Fixture {
  std::string id;
  std::string source;
  FixtureKind kind = FixtureKind::Knight;
  Tour tour;
  std::string expected_class;
  std::optional<std::vector<std::int64_t>> expected_short_sums;
  std::optional<std::vector<std::int64_t>> expected_long_sums;
  std::optional<std::string> quarantine;
};

/// Throws ParseError naming the line.
Fixture parse_fixture(std::string_view text, std::string id = "");
/// Reads a file; the id is the file stem. Throws std::runtime_error if unreadable.
Fixture load_fixture(const std::filesystem::path& path);
std::string format_fixture(const Fixture& f);

enum class FixtureStatus : std::uint8_t { Pass, Fail, Quarantined };
std::string_view to_string(FixtureStatus s);

struct FixtureVerdict {
  std::string id;
  FixtureStatus status = FixtureStatus::Pass;
  std::vector<std::string> reasons;  // failed checks
  std::string actual_class;
};

/// Pass when the tour validates for its kind, its class is within the
/// expected token, and every listed sum matches. A quarantined fixture that
/// passes those checks reports Quarantined.
FixtureVerdict verify_fixture(const Fixture& f);

enum class CorpusStatus : std::uint8_t { AllPassed, Failures, NothingVerified };
std::string_view to_string(CorpusStatus s);

struct CorpusReport {
  std::vector<FixtureVerdict> entries;  // sorted by id
  int passed = 0;
  int failed = 0;
  int quarantined = 0;
  CorpusStatus status = CorpusStatus::NothingVerified;
};

/// Verifies every *.tour file in a directory. Throws std::runtime_error if the
/// directory cannot be read.
CorpusReport verify_corpus(const std::filesystem::path& dir);

}  // namespace knightmagic
