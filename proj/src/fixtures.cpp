#include "knightmagic/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "knightmagic/classify.hpp"
#include "knightmagic/emperor.hpp"
#include "knightmagic/filter.hpp"

namespace knightmagic {

namespace {

std::vector<std::int64_t> parse_sums(const detail::TextLine& line, std::string_view value,
                                     int column) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos < value.size()) {
    if (value[pos] == ' ') {
      ++pos;
      continue;
    }
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(value.data() + pos, value.data() + value.size(), v);
    if (ec != std::errc{} || (p != value.data() + value.size() && *p != ' ')) {
      throw ParseError("bad sum list", line.number, column + static_cast<int>(pos));
    }
    out.push_back(v);
    pos = static_cast<std::size_t>(p - value.data());
  }
  if (out.empty()) throw ParseError("empty sum list", line.number, column);
  return out;
}

}  // namespace

Fixture parse_fixture(std::string_view text, std::string id) {
  const auto lines = detail::split_lines(text);
  Fixture f;
  f.id = std::move(id);
  int pw = 0;
  int ph = 0;
  int board_line = 0;
  int short_line = 0;
  int long_line = 0;
  bool have_class = false;
  std::size_t i = 0;
  for (; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.text.empty()) throw ParseError("unexpected empty line", line.number, 1);
    if (line.text.front() == '#') continue;
    if (std::isdigit(static_cast<unsigned char>(line.text.front()))) break;
    const auto sp = line.text.find(' ');
    const std::string_view key = line.text.substr(0, sp);
    const std::string_view value =
        sp == std::string_view::npos ? std::string_view{} : line.text.substr(sp + 1);
    const int vcol = static_cast<int>(key.size()) + 2;
    if (key != "board" && board_line == 0) {
      throw ParseError("expected 'board WxH' before '" + std::string(key) + "'", line.number, 1);
    }
    if (key == "board") {
      if (board_line) throw ParseError("duplicate board header", line.number, 1);
      detail::parse_board_header(line, value, vcol, pw, ph);
      board_line = line.number;
    } else if (key == "kind") {
      if (value == "knight") {
        f.kind = FixtureKind::Knight;
      } else if (value == "emperor") {
        f.kind = FixtureKind::Emperor;
      } else {
        throw ParseError("unknown kind '" + std::string(value) + "'", line.number, vcol);
      }
    } else if (key == "class") {
      if (!Filter::is_class_token(value)) {
        throw ParseError("unknown class '" + std::string(value) + "'", line.number, vcol);
      }
      f.expected_class = std::string(value);
      have_class = true;
    } else if (key == "source") {
      f.source = std::string(value);
    } else if (key == "short_sums") {
      f.expected_short_sums = parse_sums(line, value, vcol);
      short_line = line.number;
    } else if (key == "long_sums") {
      f.expected_long_sums = parse_sums(line, value, vcol);
      long_line = line.number;
    } else if (key == "quarantine") {
      f.quarantine = std::string(value);
    } else {
      throw ParseError("unknown header '" + std::string(key) + "'", line.number, 1);
    }
  }
  if (!board_line) throw ParseError("missing 'board WxH' header", 1, 1);
  if (!have_class) throw ParseError("missing class header", board_line, 1);
  if (i == lines.size()) throw ParseError("missing grid", lines.back().number, 1);
  f.tour = detail::read_grid(lines, i, pw, ph, board_line);
  const BoardDims& d = f.tour.dims;
  if (f.expected_short_sums && static_cast<int>(f.expected_short_sums->size()) != d.height()) {
    throw ParseError("short_sums has " + std::to_string(f.expected_short_sums->size()) +
                         " values, expected " + std::to_string(d.height()),
                     short_line, 1);
  }
  if (f.expected_long_sums && static_cast<int>(f.expected_long_sums->size()) != d.width()) {
    throw ParseError("long_sums has " + std::to_string(f.expected_long_sums->size()) +
                         " values, expected " + std::to_string(d.width()),
                     long_line, 1);
  }
  return f;
}

Fixture load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_fixture(ss.str(), path.stem().string());
}

std::string format_fixture(const Fixture& f) {
  auto join = [](const std::vector<std::int64_t>& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
  };
  std::string grid = format_tour(f.tour);
  const auto nl = grid.find('\n');
  std::string out = grid.substr(0, nl + 1);
  out += std::string("kind ") + (f.kind == FixtureKind::Emperor ? "emperor" : "knight") + "\n";
  out += "class " + f.expected_class + "\n";
  if (!f.source.empty()) out += "source " + f.source + "\n";
  if (f.expected_short_sums) out += "short_sums " + join(*f.expected_short_sums) + "\n";
  if (f.expected_long_sums) out += "long_sums " + join(*f.expected_long_sums) + "\n";
  if (f.quarantine) out += "quarantine " + *f.quarantine + "\n";
  return out + grid.substr(nl + 1);
}

std::string_view to_string(FixtureStatus s) {
  switch (s) {
    case FixtureStatus::Pass: return "pass";
    case FixtureStatus::Fail: return "fail";
    case FixtureStatus::Quarantined: return "quarantined";
  }
  return "?";
}

std::string_view to_string(CorpusStatus s) {
  switch (s) {
    case CorpusStatus::AllPassed: return "all_passed";
    case CorpusStatus::Failures: return "failures";
    case CorpusStatus::NothingVerified: return "nothing_verified";
  }
  return "?";
}

FixtureVerdict verify_fixture(const Fixture& f) {
  FixtureVerdict v;
  v.id = f.id;
  if (f.kind == FixtureKind::Knight) {
    const auto chk = validate_tour(f.tour);
    if (!chk) v.reasons.push_back("invalid knight tour: " + chk.violation);
  } else {
    const auto chk = validate_emperor(f.tour);
    if (!chk) v.reasons.push_back("invalid emperor tour: " + chk.violation);
  }
  const auto rep = classify(f.tour);
  v.actual_class = to_token(rep.cls);
  if (!((Filter::class_mask(f.expected_class) >> static_cast<int>(exact(rep.cls))) & 1)) {
    v.reasons.push_back("class is " + v.actual_class + ", expected " + f.expected_class);
  }
  auto check = [&](const char* name, const std::optional<std::vector<std::int64_t>>& want,
                   const std::vector<std::int64_t>& got) {
    if (!want) return;
    for (std::size_t i = 0; i < got.size(); ++i) {
      if ((*want)[i] != got[i]) {
        v.reasons.push_back(std::string(name) + "[" + std::to_string(i) + "] is " +
                            std::to_string(got[i]) + ", printed " + std::to_string((*want)[i]));
      }
    }
  };
  check("short_sums", f.expected_short_sums, rep.profile.short_sums);
  check("long_sums", f.expected_long_sums, rep.profile.long_sums);
  if (!v.reasons.empty()) {
    v.status = FixtureStatus::Fail;
  } else {
    v.status = f.quarantine ? FixtureStatus::Quarantined : FixtureStatus::Pass;
  }
  return v;
}

CorpusReport verify_corpus(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::directory_iterator it(dir, ec);
  if (ec) throw std::runtime_error("cannot read directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : it) {
    if (entry.is_regular_file() && entry.path().extension() == ".tour") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  CorpusReport rep;
  for (const auto& p : files) {
    FixtureVerdict v;
    try {
      v = verify_fixture(load_fixture(p));
    } catch (const std::exception& e) {
      v.id = p.stem().string();
      v.status = FixtureStatus::Fail;
      v.reasons.push_back(std::string("parse error: ") + e.what());
    }
    switch (v.status) {
      case FixtureStatus::Pass: ++rep.passed; break;
      case FixtureStatus::Fail: ++rep.failed; break;
      case FixtureStatus::Quarantined: ++rep.quarantined; break;
    }
    rep.entries.push_back(std::move(v));
  }
  if (rep.entries.empty()) {
    rep.status = CorpusStatus::NothingVerified;
  } else {
    rep.status = rep.failed ? CorpusStatus::Failures : CorpusStatus::AllPassed;
  }
  return rep;
}

}  // namespace knightmagic
