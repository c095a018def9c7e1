#include "knightmagic/filter.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <stdexcept>

#include "knightmagic/tour.hpp"

namespace knightmagic {

namespace {

struct ClassToken {
  std::string_view name;
  std::uint8_t mask;
};

constexpr std::array<ClassToken, 13> kTokens = {{
    {"magic", 0x01},
    {"semi_short", 0x0e},
    {"semi_long", 0x70},
    {"quasi_short", 0x04},
    {"quasi_long", 0x20},
    {"near_short", 0x08},
    {"near_long", 0x40},
    {"none", 0x80},
    {"semi", 0x7e},
    {"quasi", 0x24},
    {"near", 0x48},
    {"plain_short", 0x02},
    {"plain_long", 0x10},
}};

// one name per exact class bit
constexpr std::array<std::string_view, 8> kBitNames = {
    "magic", "plain_short", "quasi_short", "near_short",
    "plain_long", "quasi_long", "near_long", "none"};

constexpr std::uint8_t kShortSide = 0x0f;  // magic + short semi classes
constexpr std::uint8_t kLongSide = 0x71;

int lines_in(Direction d, const BoardDims& dims) {
  return d == Direction::Short ? dims.height() : dims.width();
}

bool compare(std::int64_t lhs, Cmp op, std::int64_t rhs) {
  switch (op) {
    case Cmp::Eq: return lhs == rhs;
    case Cmp::Ne: return lhs != rhs;
    case Cmp::Lt: return lhs < rhs;
    case Cmp::Le: return lhs <= rhs;
    case Cmp::Gt: return lhs > rhs;
    case Cmp::Ge: return lhs >= rhs;
  }
  return false;
}

std::string_view cmp_text(Cmp op) {
  switch (op) {
    case Cmp::Eq: return "=";
    case Cmp::Ne: return "!=";
    case Cmp::Lt: return "<";
    case Cmp::Le: return "<=";
    case Cmp::Gt: return ">";
    case Cmp::Ge: return ">=";
  }
  return "?";
}

std::uint8_t swap_sides(std::uint8_t m) {
  std::uint8_t out = m & 0x81;
  out |= static_cast<std::uint8_t>((m & 0x0e) << 3);
  out |= static_cast<std::uint8_t>((m & 0x70) >> 3);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Filter run() {
    skip();
    if (done()) return {};
    Filter f;
    bool first = true;
    while (true) {
      skip();
      const std::size_t at = pos_;
      std::string_view w = word();
      if (w.empty()) fail("expected a predicate");
      if (first && (w == "all" || w == "false")) {
        skip();
        if (!done()) fail("unexpected text after '" + std::string(w) + "'");
        return w == "all" ? Filter{} : Filter{}.with_mask(0);
      }
      first = false;
      if (w == "class") {
        expect('=');
        std::uint8_t mask = 0;
        do {
          skip();
          const std::size_t tok_at = pos_;
          std::string_view tok = word();
          if (!Filter::is_class_token(tok)) {
            pos_ = tok_at;
            fail("unknown class '" + std::string(tok) + "'");
          }
          mask |= Filter::class_mask(tok);
          skip();
        } while (take('|'));
        f = f & Filter{}.with_mask(mask);
      } else if (w == "mc_lines" || w == "distinct" || w == "consecutive") {
        Atom a;
        a.kind = w == "mc_lines"   ? Atom::Kind::McLines
                 : w == "distinct" ? Atom::Kind::Distinct
                                   : Atom::Kind::Consecutive;
        expect('(');
        skip();
        std::string_view d = word();
        if (d == "short") {
          a.dir = Direction::Short;
        } else if (d == "long") {
          a.dir = Direction::Long;
        } else {
          fail("expected short or long");
        }
        expect(')');
        if (a.kind != Atom::Kind::Consecutive) {
          a.op = cmp();
          a.value = integer();
        }
        f = f & Filter::of_atom(a);
      } else {
        pos_ = at;
        fail("unknown predicate '" + std::string(w) + "'");
      }
      skip();
      if (done()) break;
      if (!take('&')) fail("expected '&'");
    }
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, 1, static_cast<int>(pos_) + 1);
  }
  bool done() const { return pos_ >= s_.size(); }
  void skip() {
    while (!done() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool take(char c) {
    skip();
    if (!done() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!take(c)) fail(std::string("expected '") + c + "'");
  }
  std::string_view word() {
    const std::size_t b = pos_;
    while (!done() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    return s_.substr(b, pos_ - b);
  }
  Cmp cmp() {
    skip();
    auto rest = s_.substr(pos_);
    for (auto [text, op] : std::array<std::pair<std::string_view, Cmp>, 7>{{{"==", Cmp::Eq},
                                                                            {"!=", Cmp::Ne},
                                                                            {"<=", Cmp::Le},
                                                                            {">=", Cmp::Ge},
                                                                            {"=", Cmp::Eq},
                                                                            {"<", Cmp::Lt},
                                                                            {">", Cmp::Gt}}}) {
      if (rest.starts_with(text)) {
        pos_ += text.size();
        return op;
      }
    }
    fail("expected a comparison");
  }
  int integer() {
    skip();
    int v = 0;
    auto [p, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc{}) fail("expected an integer");
    pos_ = static_cast<std::size_t>(p - s_.data());
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Filter Filter::of_atom(const Atom& a) {
  Filter f;
  f.atoms_.push_back(a);
  return f;
}

Filter Filter::parse(std::string_view expr) { return Parser(expr).run(); }

bool Filter::is_class_token(std::string_view token) {
  return std::any_of(kTokens.begin(), kTokens.end(),
                     [&](const ClassToken& t) { return t.name == token; });
}

std::uint8_t Filter::class_mask(std::string_view token) {
  for (const auto& t : kTokens) {
    if (t.name == token) return t.mask;
  }
  throw std::invalid_argument("unknown class '" + std::string(token) + "'");
}

Filter Filter::of_class(std::string_view token) { return Filter{}.with_mask(class_mask(token)); }

Filter Filter::with_mask(std::uint8_t mask) const {
  Filter f = *this;
  f.mask_ = mask;
  return f;
}

Filter Filter::operator&(const Filter& o) const {
  Filter f = *this;
  f.mask_ &= o.mask_;
  f.atoms_.insert(f.atoms_.end(), o.atoms_.begin(), o.atoms_.end());
  f.normalize();
  return f;
}

Filter Filter::transposed() const {
  Filter f = *this;
  f.mask_ = swap_sides(mask_);
  for (auto& a : f.atoms_) a.dir = other(a.dir);
  f.normalize();
  return f;
}

void Filter::normalize() {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

bool Filter::matches_sums(const std::int64_t* short_sums, int height,
                          const std::int64_t* long_sums, int width, const MagicConstants& mc,
                          ExactClass cls) const {
  if (!((mask_ >> static_cast<int>(cls)) & 1)) return false;
  for (const Atom& a : atoms_) {
    const bool is_short = a.dir == Direction::Short;
    const std::int64_t* s = is_short ? short_sums : long_sums;
    const int n = is_short ? height : width;
    if (a.kind == Atom::Kind::McLines) {
      const bool integral = is_short ? mc.short_is_integral : mc.long_is_integral;
      const std::int64_t target = is_short ? mc.short_mc : mc.long_mc;
      std::int64_t hits = 0;
      if (integral) hits = std::count(s, s + n, target);
      if (!compare(hits, a.op, a.value)) return false;
      continue;
    }
    std::array<std::int64_t, 256> buf;
    if (n > static_cast<int>(buf.size())) throw std::invalid_argument("too many lines");
    std::copy(s, s + n, buf.begin());
    std::sort(buf.begin(), buf.begin() + n);
    const auto distinct = std::unique(buf.begin(), buf.begin() + n) - buf.begin();
    if (a.kind == Atom::Kind::Distinct) {
      if (!compare(distinct, a.op, a.value)) return false;
    } else if (buf[distinct - 1] - buf[0] + 1 != distinct) {
      return false;
    }
  }
  return true;
}

bool Filter::matches(const ClassificationReport& r) const {
  return matches_sums(r.profile.short_sums.data(), static_cast<int>(r.profile.short_sums.size()),
                      r.profile.long_sums.data(), static_cast<int>(r.profile.long_sums.size()),
                      r.constants, exact(r.cls));
}

int Filter::required_mc_lines(Direction d, const BoardDims& dims) const {
  const int lines = lines_in(d, dims);
  const std::uint8_t side = d == Direction::Short ? kShortSide : kLongSide;
  int r = 0;
  if (mask_ != 0 && (mask_ & ~side) == 0) r = lines;
  for (const Atom& a : atoms_) {
    if (a.dir != d) continue;
    if (a.kind == Atom::Kind::McLines) {
      if (a.op == Cmp::Ge || a.op == Cmp::Eq) r = std::max(r, a.value);
      if (a.op == Cmp::Gt) r = std::max(r, a.value + 1);
    } else if (a.kind == Atom::Kind::Distinct) {
      const bool one = (a.op == Cmp::Eq && a.value == 1) || (a.op == Cmp::Le && a.value == 1) ||
                       (a.op == Cmp::Lt && a.value == 2);
      if (one) r = lines;
    }
  }
  return r;
}

bool Filter::unsatisfiable(const BoardDims& dims) const {
  if (mask_ == 0) return true;
  const auto mc = magic_constants(dims);
  for (Direction d : {Direction::Short, Direction::Long}) {
    const int req = required_mc_lines(d, dims);
    const bool integral = d == Direction::Short ? mc.short_is_integral : mc.long_is_integral;
    if (req > lines_in(d, dims)) return true;
    if (req > 0 && !integral) return true;
  }
  return false;
}

std::string Filter::str() const {
  if (mask_ == 0) return "false";
  std::string out;
  auto add = [&](const std::string& part) {
    if (!out.empty()) out += '&';
    out += part;
  };
  if (mask_ != kAllClasses) {
    std::string cls;
    for (const auto& t : kTokens) {
      if (t.mask == mask_) cls = std::string(t.name);
    }
    if (cls.empty()) {
      for (int b = 0; b < 8; ++b) {
        if ((mask_ >> b) & 1) {
          if (!cls.empty()) cls += '|';
          cls += kBitNames[b];
        }
      }
    }
    add("class=" + cls);
  }
  for (const Atom& a : atoms_) {
    std::string dir = "(" + std::string(to_string(a.dir)) + ")";
    switch (a.kind) {
      case Atom::Kind::McLines:
        add("mc_lines" + dir + std::string(cmp_text(a.op)) + std::to_string(a.value));
        break;
      case Atom::Kind::Distinct:
        add("distinct" + dir + std::string(cmp_text(a.op)) + std::to_string(a.value));
        break;
      case Atom::Kind::Consecutive:
        add("consecutive" + dir);
        break;
    }
  }
  return out.empty() ? "all" : out;
}

}  // namespace knightmagic
