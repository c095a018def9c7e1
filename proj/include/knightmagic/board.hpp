#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace knightmagic {

/// A square on the board. Columns run left to right, rows top to bottom.
struct Cell {
  int col = 0;
  int row = 0;

  auto operator<=>(const Cell&) const = default;
};

/// Rectangle geometry in canonical orientation (width <= height).
///
/// Short lines are the `height` rows of `width` cells; long lines are the
/// `width` columns of `height` cells. Construction transposes if needed.
class BoardDims {
 public:
  BoardDims(int width, int height);

  /// Parses "WxH" (case-insensitive 'x') and normalizes the orientation.
  static BoardDims parse(std::string_view text);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int cells() const noexcept { return width_ * height_; }
  bool square() const noexcept { return width_ == height_; }

  bool contains(Cell c) const noexcept {
    return c.col >= 0 && c.col < width_ && c.row >= 0 && c.row < height_;
  }
  int index(Cell c) const noexcept { return c.row * width_ + c.col; }
  Cell cell(int index) const noexcept { return {index % width_, index / width_}; }

  /// "WxH" in canonical orientation.
  std::string str() const;

  bool operator==(const BoardDims&) const = default;

 private:
  int width_;
  int height_;
};

enum class SymmetryOp : std::uint8_t {
  Identity,
  Rotate180,
  ReflectH,  // mirrors columns: col -> width-1-col
  ReflectV,  // mirrors rows: row -> height-1-row
  Rotate90,
  Rotate270,
  ReflectDiag,
  ReflectAnti,
};

std::string_view to_string(SymmetryOp op);

/// Order 4 for oblong boards, 8 for square boards. Identity comes first.
std::span<const SymmetryOp> symmetry_group(const BoardDims& dims);

/// Ops that keep rows as rows (the first four of any group).
std::span<const SymmetryOp> line_preserving_group();

bool valid_for(SymmetryOp op, const BoardDims& dims);
SymmetryOp inverse(SymmetryOp op);

/// True for the ops that exchange rows and columns (square boards only).
bool swaps_lines(SymmetryOp op);

/// Throws std::invalid_argument for an out-of-bounds cell or an order-8 op on
/// an oblong board.
Cell apply_symmetry(SymmetryOp op, Cell c, const BoardDims& dims);

/// In-bounds knight targets in row-major order. Throws std::invalid_argument
/// if `c` is off the board.
std::vector<Cell> knight_neighbors(Cell c, const BoardDims& dims);

/// In-bounds orthogonal single steps in row-major order.
std::vector<Cell> wazir_neighbors(Cell c, const BoardDims& dims);

bool knight_adjacent(Cell a, Cell b) noexcept;
bool wazir_adjacent(Cell a, Cell b) noexcept;

struct MagicConstants {
  std::int64_t total = 0;
  std::int64_t short_mc = 0;  // floor(total / height)
  std::int64_t long_mc = 0;   // floor(total / width)
  bool short_is_integral = false;
  bool long_is_integral = false;
};

MagicConstants magic_constants(const BoardDims& dims);

enum class Feasibility { InfeasibleOddSide, InfeasibleSinglyEvenSides, NotExcluded };

std::string_view to_string(Feasibility f);

struct FeasibilityVerdict {
  Feasibility status = Feasibility::NotExcluded;
  std::string reason;
};

/// Necessary conditions only: NotExcluded does not imply a magic tour exists.
FeasibilityVerdict magic_feasibility(const BoardDims& dims);

}  // namespace knightmagic
