#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knightmagic/board.hpp"
#include "knightmagic/tour.hpp"

namespace knightmagic {

enum class Direction : std::uint8_t { Short, Long };
enum class Refinement : std::uint8_t { Plain, Quasi, Near };
enum class MagicKind : std::uint8_t { NonMagic, SemiMagic, Magic };

std::string_view to_string(Direction d);
Direction other(Direction d);

struct MagicClass {
  MagicKind kind = MagicKind::NonMagic;
  Direction direction = Direction::Short;  // semi-magic only
  Refinement refinement = Refinement::Plain;

  bool operator==(const MagicClass&) const = default;
};

/// The eight exact classes, in the order used for class masks.
enum class ExactClass : std::uint8_t {
  Magic,
  SemiShort,
  QuasiShort,
  NearShort,
  SemiLong,
  QuasiLong,
  NearLong,
  None,
};

ExactClass exact(const MagicClass& c);
MagicClass from_exact(ExactClass e);

/// "magic", "semi_short", ..., "none". Quasi and near imply their semi direction.
std::string to_token(const MagicClass& c);

struct ClassificationReport {
  LineSumProfile profile;
  MagicConstants constants;
  MagicClass cls;
  std::vector<std::int64_t> off_direction_distinct_values;  // semi-magic only
  bool contains_mc = false;
};

ClassificationReport classify(const Tour& t);
ClassificationReport classify_profile(const BoardDims& dims, const LineSumProfile& profile);

/// Same result as classify_profile().cls without allocating; used at search leaves.
ExactClass classify_sums(const std::int64_t* short_sums, int height, const std::int64_t* long_sums,
                         int width, const MagicConstants& mc);

int distinct_value_count(const Tour& t, Direction d);
bool sums_are_consecutive(const Tour& t, Direction d);

}  // namespace knightmagic
