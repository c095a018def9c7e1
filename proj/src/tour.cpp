#include "knightmagic/tour.hpp"

#include <algorithm>
#include <charconv>

namespace knightmagic {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

TourCheck validate_tour(const Tour& t) {
  const int n = t.dims.cells();
  if (static_cast<int>(t.grid.size()) != n) {
    throw std::invalid_argument("grid has " + std::to_string(t.grid.size()) + " values, expected " +
                                std::to_string(n));
  }
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    const int v = t.grid[i];
    if (v < 1 || v > n) {
      return {false, "value " + std::to_string(v) + " out of range 1.." + std::to_string(n), 0};
    }
    if (pos[v - 1] >= 0) return {false, "duplicate " + std::to_string(v), 0};
    pos[v - 1] = i;
  }
  for (int k = 1; k < n; ++k) {
    if (!knight_adjacent(t.dims.cell(pos[k - 1]), t.dims.cell(pos[k]))) {
      return {false,
              "step " + std::to_string(k) + "->" + std::to_string(k + 1) + " is not a knight move",
              k};
    }
  }
  return {};
}

std::vector<int> positions(const Tour& t) {
  std::vector<int> pos(t.grid.size(), -1);
  for (std::size_t i = 0; i < t.grid.size(); ++i) {
    const int v = t.grid[i];
    if (v >= 1 && v <= static_cast<int>(pos.size())) pos[v - 1] = static_cast<int>(i);
  }
  return pos;
}

bool is_closed(const Tour& t) {
  const auto pos = positions(t);
  if (pos.size() < 2) return false;
  return knight_adjacent(t.dims.cell(pos.front()), t.dims.cell(pos.back()));
}

Tour reverse_tour(const Tour& t) {
  Tour r = t;
  const int n = t.dims.cells();
  for (int& v : r.grid) v = n + 1 - v;
  return r;
}

Tour transform_tour(SymmetryOp g, const Tour& t) {
  if (!valid_for(g, t.dims)) {
    throw std::invalid_argument(std::string(to_string(g)) + " requires a square board");
  }
  Tour out = t;
  for (int i = 0; i < t.dims.cells(); ++i) {
    out.grid[t.dims.index(apply_symmetry(g, t.dims.cell(i), t.dims))] = t.grid[i];
  }
  return out;
}

Tour frenicle_canonical(const Tour& t) {
  Tour best = t;
  for (SymmetryOp g : symmetry_group(t.dims)) {
    Tour img = transform_tour(g, t);
    if (img.grid < best.grid) best = std::move(img);
  }
  return best;
}

namespace {

// renumber a closed tour so that cell 0 holds 1
void rotate_to_first(Tour& t) {
  const int n = t.dims.cells();
  const int k = t.grid[0] - 1;
  for (int& v : t.grid) v = ((v - 1 - k) % n + n) % n + 1;
}

}  // namespace

Tour geometric_class(const Tour& t) {
  const bool closed = is_closed(t);
  const Tour rev = reverse_tour(t);
  Tour best = t;
  bool first = true;
  for (SymmetryOp g : symmetry_group(t.dims)) {
    for (const Tour* src : {&t, &rev}) {
      Tour img = transform_tour(g, *src);
      if (closed) rotate_to_first(img);
      if (first || img.grid < best.grid) {
        best = std::move(img);
        first = false;
      }
    }
  }
  return best;
}

LineSumProfile line_sums(const Tour& t) {
  LineSumProfile p;
  p.short_sums.assign(t.dims.height(), 0);
  p.long_sums.assign(t.dims.width(), 0);
  for (int i = 0; i < t.dims.cells(); ++i) {
    const Cell c = t.dims.cell(i);
    p.short_sums[c.row] += t.grid[i];
    p.long_sums[c.col] += t.grid[i];
  }
  return p;
}

namespace detail {

std::vector<TextLine> split_lines(std::string_view text) {
  std::vector<TextLine> out;
  int number = 1;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      throw ParseError("missing trailing newline", number,
                       static_cast<int>(text.size() - start) + 1);
    }
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back({line, number});
    ++number;
    start = nl + 1;
  }
  return out;
}

BoardDims parse_board_header(const TextLine& line, std::string_view value, int column,
                             int& printed_w, int& printed_h) {
  auto x = value.find_first_of("xX");
  auto side = [&](std::string_view s, int col) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || p != s.data() + s.size() || v < 1) {
      throw ParseError("bad board size '" + std::string(value) + "'", line.number, col);
    }
    return v;
  };
  if (x == std::string_view::npos) {
    throw ParseError("bad board size '" + std::string(value) + "', expected WxH", line.number,
                     column);
  }
  printed_w = side(value.substr(0, x), column);
  printed_h = side(value.substr(x + 1), column + static_cast<int>(x) + 1);
  if (static_cast<long long>(printed_w) * printed_h > 100000) {
    throw ParseError("board too large", line.number, column);
  }
  return BoardDims(printed_w, printed_h);
}

Tour read_grid(const std::vector<TextLine>& lines, std::size_t first, int printed_w,
               int printed_h, int header_line) {
  const int n = printed_w * printed_h;
  struct Token {
    int value;
    int line;
    int column;
  };
  std::vector<Token> tokens;
  std::vector<std::size_t> row_starts;
  std::size_t last = first;
  for (std::size_t li = first; li < lines.size(); ++li) {
    const auto& [text, number] = lines[li];
    if (text.empty()) {
      throw ParseError("unexpected empty line", number, 1);
    }
    last = li;
    row_starts.push_back(tokens.size());
    std::size_t pos = 0;
    while (true) {
      auto sp = text.find(' ', pos);
      std::string_view tok = text.substr(pos, sp == std::string_view::npos ? sp : sp - pos);
      const int column = static_cast<int>(pos) + 1;
      if (tok.empty()) {
        throw ParseError("expected a single space between values", number, column);
      }
      int v = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || p != tok.data() + tok.size()) {
        throw ParseError("'" + std::string(tok) + "' is not an integer", number, column);
      }
      tokens.push_back({v, number, column});
      if (sp == std::string_view::npos) break;
      pos = sp + 1;
    }
  }
  if (static_cast<int>(tokens.size()) != n) {
    const int line = row_starts.empty() ? header_line : lines[last].number;
    throw ParseError("expected " + std::to_string(n) + " values, got " +
                         std::to_string(tokens.size()),
                     line, 1);
  }
  if (static_cast<int>(row_starts.size()) != printed_h) {
    throw ParseError("expected " + std::to_string(printed_h) + " rows, got " +
                         std::to_string(row_starts.size()),
                     lines[last].number, 1);
  }
  for (std::size_t r = 0; r < row_starts.size(); ++r) {
    const std::size_t end = r + 1 < row_starts.size() ? row_starts[r + 1] : tokens.size();
    if (static_cast<int>(end - row_starts[r]) != printed_w) {
      throw ParseError("expected " + std::to_string(printed_w) + " values in row, got " +
                           std::to_string(end - row_starts[r]),
                       lines[first + r].number, 1);
    }
  }
  std::vector<bool> seen(n, false);
  for (const auto& tok : tokens) {
    if (tok.value < 1 || tok.value > n) {
      throw ParseError("values must be 1.." + std::to_string(n) + ", got " +
                           std::to_string(tok.value),
                       tok.line, tok.column);
    }
    if (seen[tok.value - 1]) {
      throw ParseError("duplicate value " + std::to_string(tok.value), tok.line, tok.column);
    }
    seen[tok.value - 1] = true;
  }
  Tour t;
  t.dims = BoardDims(printed_w, printed_h);
  t.grid.assign(n, 0);
  const bool transpose = printed_w > printed_h;
  for (int pr = 0; pr < printed_h; ++pr) {
    for (int pc = 0; pc < printed_w; ++pc) {
      const int v = tokens[pr * printed_w + pc].value;
      const Cell c = transpose ? Cell{pr, pc} : Cell{pc, pr};
      t.grid[t.dims.index(c)] = v;
    }
  }
  return t;
}

}  // namespace detail

Tour parse_tour(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && !lines[i].text.empty() && lines[i].text.front() == '#') ++i;
  if (i == lines.size()) throw ParseError("missing 'board WxH' header", 1, 1);
  const auto& header = lines[i];
  if (!header.text.starts_with("board ")) {
    throw ParseError("expected 'board WxH' header", header.number, 1);
  }
  int pw = 0;
  int ph = 0;
  detail::parse_board_header(header, header.text.substr(6), 7, pw, ph);
  return detail::read_grid(lines, i + 1, pw, ph, header.number);
}

std::string format_tour(const Tour& t) {
  std::string out = "board " + t.dims.str() + "\n";
  for (int r = 0; r < t.dims.height(); ++r) {
    for (int c = 0; c < t.dims.width(); ++c) {
      if (c) out += ' ';
      out += std::to_string(t.at({c, r}));
    }
    out += '\n';
  }
  return out;
}

}  // namespace knightmagic
