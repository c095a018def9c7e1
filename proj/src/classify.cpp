#include "knightmagic/classify.hpp"

#include <algorithm>
#include <set>

namespace knightmagic {

std::string_view to_string(Direction d) { return d == Direction::Short ? "short" : "long"; }

Direction other(Direction d) { return d == Direction::Short ? Direction::Long : Direction::Short; }

ExactClass exact(const MagicClass& c) {
  if (c.kind == MagicKind::Magic) return ExactClass::Magic;
  if (c.kind == MagicKind::NonMagic) return ExactClass::None;
  const int base = c.direction == Direction::Short ? 1 : 4;
  return static_cast<ExactClass>(base + static_cast<int>(c.refinement));
}

MagicClass from_exact(ExactClass e) {
  const int i = static_cast<int>(e);
  if (e == ExactClass::Magic) return {MagicKind::Magic, Direction::Short, Refinement::Plain};
  if (e == ExactClass::None) return {MagicKind::NonMagic, Direction::Short, Refinement::Plain};
  return {MagicKind::SemiMagic, i < 4 ? Direction::Short : Direction::Long,
          static_cast<Refinement>((i - 1) % 3)};
}

std::string to_token(const MagicClass& c) {
  switch (c.kind) {
    case MagicKind::Magic: return "magic";
    case MagicKind::NonMagic: return "none";
    case MagicKind::SemiMagic: break;
  }
  std::string prefix = c.refinement == Refinement::Quasi  ? "quasi_"
                       : c.refinement == Refinement::Near ? "near_"
                                                          : "semi_";
  return prefix + std::string(to_string(c.direction));
}

namespace {

bool all_equal(const std::int64_t* s, int n, std::int64_t v) {
  for (int i = 0; i < n; ++i) {
    if (s[i] != v) return false;
  }
  return true;
}

// refinement of the off direction of a semi-magic profile
Refinement refine(const std::int64_t* s, int n, std::int64_t mc, bool integral) {
  int m = 0;
  std::int64_t d[2];
  int nd = 0;
  for (int i = 0; i < n; ++i) {
    if (integral && s[i] == mc) {
      ++m;
      continue;
    }
    if ((nd > 0 && d[0] == s[i]) || (nd > 1 && d[1] == s[i])) continue;
    if (nd == 2) return Refinement::Plain;
    d[nd++] = s[i];
  }
  if (nd != 2) return Refinement::Plain;
  return m == 0 ? Refinement::Quasi : Refinement::Near;
}

}  // namespace

ExactClass classify_sums(const std::int64_t* short_sums, int height, const std::int64_t* long_sums,
                         int width, const MagicConstants& mc) {
  const bool s = mc.short_is_integral && all_equal(short_sums, height, mc.short_mc);
  const bool l = mc.long_is_integral && all_equal(long_sums, width, mc.long_mc);
  if (s && l) return ExactClass::Magic;
  if (s) {
    return static_cast<ExactClass>(
        1 + static_cast<int>(refine(long_sums, width, mc.long_mc, mc.long_is_integral)));
  }
  if (l) {
    return static_cast<ExactClass>(
        4 + static_cast<int>(refine(short_sums, height, mc.short_mc, mc.short_is_integral)));
  }
  return ExactClass::None;
}

ClassificationReport classify_profile(const BoardDims& dims, const LineSumProfile& profile) {
  if (static_cast<int>(profile.short_sums.size()) != dims.height() ||
      static_cast<int>(profile.long_sums.size()) != dims.width()) {
    throw std::invalid_argument("profile does not match board " + dims.str());
  }
  ClassificationReport r;
  r.profile = profile;
  r.constants = magic_constants(dims);
  r.cls = from_exact(classify_sums(profile.short_sums.data(), dims.height(),
                                   profile.long_sums.data(), dims.width(), r.constants));
  if (r.cls.kind == MagicKind::SemiMagic) {
    const bool off_long = r.cls.direction == Direction::Short;
    const auto& off = off_long ? profile.long_sums : profile.short_sums;
    const std::int64_t mc = off_long ? r.constants.long_mc : r.constants.short_mc;
    const bool integral = off_long ? r.constants.long_is_integral : r.constants.short_is_integral;
    std::set<std::int64_t> values(off.begin(), off.end());
    r.off_direction_distinct_values.assign(values.begin(), values.end());
    r.contains_mc = integral && values.count(mc) > 0;
  }
  return r;
}

ClassificationReport classify(const Tour& t) { return classify_profile(t.dims, line_sums(t)); }

namespace {

std::set<std::int64_t> distinct_sums(const Tour& t, Direction d) {
  const auto p = line_sums(t);
  const auto& v = d == Direction::Short ? p.short_sums : p.long_sums;
  return {v.begin(), v.end()};
}

}  // namespace

int distinct_value_count(const Tour& t, Direction d) {
  return static_cast<int>(distinct_sums(t, d).size());
}

bool sums_are_consecutive(const Tour& t, Direction d) {
  const auto s = distinct_sums(t, d);
  return *s.rbegin() - *s.begin() + 1 == static_cast<std::int64_t>(s.size());
}

}  // namespace knightmagic
