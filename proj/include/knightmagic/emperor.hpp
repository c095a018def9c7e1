#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "knightmagic/board.hpp"
#include "knightmagic/filter.hpp"
#include "knightmagic/search.hpp"
#include "knightmagic/tour.hpp"

namespace knightmagic {

/// Result of validate_emperor. `junction` is the k whose step k -> k+1 is the
/// single wazir step (0 when there is none).
struct EmperorCheck {
  bool ok = true;
  std::string violation;
  int junction = 0;

  explicit operator bool() const noexcept { return ok; }
};

/// Every step a knight or wazir move, exactly one of them wazir.
/// Throws std::invalid_argument on a wrong grid length.
EmperorCheck validate_emperor(const Tour& t);

struct EmperorResult {
  std::uint64_t count = 0;  // classes in the requested mode
  std::uint64_t raw = 0;    // directed numbered tours matching the filter
  std::vector<Tour> tours;  // one representative per class, sorted
  SearchStats stats;
};

constexpr int kEmperorMaxCells = 48;

/// Balanced: the wazir step joins two knight paths of N/2 cells each (N even).
/// Any: the wazir step may sit anywhere.
enum class Junction : std::uint8_t { Balanced, Any };

/// Exhaustive search; symmetry handled as for knight tours. Refuses boards
/// above kEmperorMaxCells cells with std::invalid_argument.
EmperorResult enumerate_emperor(const BoardDims& dims, const Filter& filter,
                                CountMode mode = CountMode::Arithmetic,
                                Junction junction = Junction::Balanced);

}  // namespace knightmagic
