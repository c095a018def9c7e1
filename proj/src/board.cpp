#include "knightmagic/board.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace knightmagic {

namespace {

constexpr std::array<SymmetryOp, 8> kAllOps = {
    SymmetryOp::Identity, SymmetryOp::Rotate180,   SymmetryOp::ReflectH,
    SymmetryOp::ReflectV, SymmetryOp::Rotate90,    SymmetryOp::Rotate270,
    SymmetryOp::ReflectDiag, SymmetryOp::ReflectAnti};

constexpr std::array<std::pair<int, int>, 8> kKnightSteps = {
    {{-1, -2}, {1, -2}, {-2, -1}, {2, -1}, {-2, 1}, {2, 1}, {-1, 2}, {1, 2}}};

constexpr std::array<std::pair<int, int>, 4> kWazirSteps = {{{0, -1}, {-1, 0}, {1, 0}, {0, 1}}};

int parse_side(std::string_view s, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || value < 1) {
    throw std::invalid_argument("bad board '" + std::string(whole) + "', expected WxH");
  }
  return value;
}

void require_in_bounds(Cell c, const BoardDims& dims) {
  if (!dims.contains(c)) {
    throw std::invalid_argument("cell (" + std::to_string(c.col) + "," + std::to_string(c.row) +
                                ") is outside board " + dims.str());
  }
}

}  // namespace

BoardDims::BoardDims(int width, int height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("board sides must be >= 1");
  }
  width_ = std::min(width, height);
  height_ = std::max(width, height);
}

BoardDims BoardDims::parse(std::string_view text) {
  auto x = text.find_first_of("xX");
  if (x == std::string_view::npos) {
    throw std::invalid_argument("bad board '" + std::string(text) + "', expected WxH");
  }
  return BoardDims(parse_side(text.substr(0, x), text), parse_side(text.substr(x + 1), text));
}

std::string BoardDims::str() const {
  return std::to_string(width_) + "x" + std::to_string(height_);
}

std::string_view to_string(SymmetryOp op) {
  switch (op) {
    case SymmetryOp::Identity: return "identity";
    case SymmetryOp::Rotate180: return "rotate180";
    case SymmetryOp::ReflectH: return "reflectH";
    case SymmetryOp::ReflectV: return "reflectV";
    case SymmetryOp::Rotate90: return "rotate90";
    case SymmetryOp::Rotate270: return "rotate270";
    case SymmetryOp::ReflectDiag: return "reflectDiag";
    case SymmetryOp::ReflectAnti: return "reflectAnti";
  }
  return "?";
}

std::span<const SymmetryOp> symmetry_group(const BoardDims& dims) {
  return std::span<const SymmetryOp>(kAllOps).first(dims.square() ? 8 : 4);
}

std::span<const SymmetryOp> line_preserving_group() {
  return std::span<const SymmetryOp>(kAllOps).first(4);
}

bool swaps_lines(SymmetryOp op) {
  return op == SymmetryOp::Rotate90 || op == SymmetryOp::Rotate270 ||
         op == SymmetryOp::ReflectDiag || op == SymmetryOp::ReflectAnti;
}

bool valid_for(SymmetryOp op, const BoardDims& dims) {
  return dims.square() || !swaps_lines(op);
}

SymmetryOp inverse(SymmetryOp op) {
  if (op == SymmetryOp::Rotate90) return SymmetryOp::Rotate270;
  if (op == SymmetryOp::Rotate270) return SymmetryOp::Rotate90;
  return op;
}

Cell apply_symmetry(SymmetryOp op, Cell c, const BoardDims& dims) {
  require_in_bounds(c, dims);
  if (!valid_for(op, dims)) {
    throw std::invalid_argument(std::string(to_string(op)) + " requires a square board, got " +
                                dims.str());
  }
  const int w = dims.width() - 1;
  const int h = dims.height() - 1;
  switch (op) {
    case SymmetryOp::Identity: return c;
    case SymmetryOp::Rotate180: return {w - c.col, h - c.row};
    case SymmetryOp::ReflectH: return {w - c.col, c.row};
    case SymmetryOp::ReflectV: return {c.col, h - c.row};
    case SymmetryOp::Rotate90: return {w - c.row, c.col};
    case SymmetryOp::Rotate270: return {c.row, w - c.col};
    case SymmetryOp::ReflectDiag: return {c.row, c.col};
    case SymmetryOp::ReflectAnti: return {w - c.row, w - c.col};
  }
  return c;
}

std::vector<Cell> knight_neighbors(Cell c, const BoardDims& dims) {
  require_in_bounds(c, dims);
  std::vector<Cell> out;
  for (auto [dc, dr] : kKnightSteps) {
    Cell n{c.col + dc, c.row + dr};
    if (dims.contains(n)) out.push_back(n);
  }
  std::sort(out.begin(), out.end(), [&](Cell a, Cell b) { return dims.index(a) < dims.index(b); });
  return out;
}

std::vector<Cell> wazir_neighbors(Cell c, const BoardDims& dims) {
  require_in_bounds(c, dims);
  std::vector<Cell> out;
  for (auto [dc, dr] : kWazirSteps) {
    Cell n{c.col + dc, c.row + dr};
    if (dims.contains(n)) out.push_back(n);
  }
  return out;
}

bool knight_adjacent(Cell a, Cell b) noexcept {
  const int dc = std::abs(a.col - b.col);
  const int dr = std::abs(a.row - b.row);
  return (dc == 1 && dr == 2) || (dc == 2 && dr == 1);
}

bool wazir_adjacent(Cell a, Cell b) noexcept {
  return std::abs(a.col - b.col) + std::abs(a.row - b.row) == 1;
}

MagicConstants magic_constants(const BoardDims& dims) {
  MagicConstants mc;
  const std::int64_t n = dims.cells();
  mc.total = n * (n + 1) / 2;
  mc.short_mc = mc.total / dims.height();
  mc.long_mc = mc.total / dims.width();
  mc.short_is_integral = mc.total % dims.height() == 0;
  mc.long_is_integral = mc.total % dims.width() == 0;
  return mc;
}

std::string_view to_string(Feasibility f) {
  switch (f) {
    case Feasibility::InfeasibleOddSide: return "InfeasibleOddSide";
    case Feasibility::InfeasibleSinglyEvenSides: return "InfeasibleSinglyEvenSides";
    case Feasibility::NotExcluded: return "NotExcluded";
  }
  return "?";
}

FeasibilityVerdict magic_feasibility(const BoardDims& dims) {
  const int w = dims.width();
  const int h = dims.height();
  if (w % 2 == 1 || h % 2 == 1) {
    return {Feasibility::InfeasibleOddSide,
            "a side is odd: adjacent lines alternate between odd and even sums"};
  }
  if (w % 4 == 2 && h % 4 == 2) {
    return {Feasibility::InfeasibleSinglyEvenSides,
            "both sides are singly even: no magic knight's tour exists"};
  }
  return {Feasibility::NotExcluded, "not excluded by the parity theorems"};
}

}  // namespace knightmagic
