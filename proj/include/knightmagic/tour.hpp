#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "knightmagic/board.hpp"

namespace knightmagic {

/// A numbered grid in canonical orientation. grid[index(cell)] is the visit
/// number 1..N.
struct Tour {
  BoardDims dims{1, 1};
  std::vector<int> grid;

  int at(Cell c) const { return grid[dims.index(c)]; }
  bool operator==(const Tour&) const = default;
  auto operator<=>(const Tour& o) const { return grid <=> o.grid; }
};

/// Result of validate_tour. `step` is the k of a failing k -> k+1 step, or 0.
struct TourCheck {
  bool ok = true;
  std::string violation;
  int step = 0;

  explicit operator bool() const noexcept { return ok; }
};

/// Thrown by the text readers. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

/// Throws std::invalid_argument if the grid length is not N.
TourCheck validate_tour(const Tour& t);

/// cell index for each number: positions(t)[k-1] is where k sits.
std::vector<int> positions(const Tour& t);

bool is_closed(const Tour& t);
Tour reverse_tour(const Tour& t);
Tour transform_tour(SymmetryOp g, const Tour& t);

/// Lexicographically least grid over the board's symmetry group.
Tour frenicle_canonical(const Tour& t);

/// Least grid over symmetries and reversal; closed tours also over all
/// cyclic renumberings in both directions.
Tour geometric_class(const Tour& t);

struct LineSumProfile {
  std::vector<std::int64_t> short_sums;  // one per row, top to bottom
  std::vector<std::int64_t> long_sums;   // one per column, left to right

  bool operator==(const LineSumProfile&) const = default;
};

LineSumProfile line_sums(const Tour& t);

/// Reads the tour text format. A grid printed wider than tall is transposed.
Tour parse_tour(std::string_view text);
std::string format_tour(const Tour& t);

namespace detail {

// Shared by the tour and fixture readers.
struct TextLine {
  std::string_view text;
  int number;
};

std::vector<TextLine> split_lines(std::string_view text);
BoardDims parse_board_header(const TextLine& line, std::string_view value, int column,
                             int& printed_w, int& printed_h);
Tour read_grid(const std::vector<TextLine>& lines, std::size_t first, int printed_w,
               int printed_h, int header_line);

}  // namespace detail

}  // namespace knightmagic
