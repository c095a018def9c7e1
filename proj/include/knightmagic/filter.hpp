#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "knightmagic/board.hpp"
#include "knightmagic/classify.hpp"

namespace knightmagic {

enum class Cmp : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

/// One predicate over a line-sum profile.
struct Atom {
  enum class Kind : std::uint8_t { McLines, Distinct, Consecutive };

  Kind kind = Kind::McLines;
  Direction dir = Direction::Short;
  Cmp op = Cmp::Eq;
  int value = 0;  // unused for Consecutive

  auto operator<=>(const Atom&) const = default;
};

/// Conjunction of a class set and profile atoms.
///
/// Expression syntax, atoms joined with '&':
///   class=<token>[|<token>...]   mc_lines(short|long) OP k
///   distinct(short|long) OP k    consecutive(short|long)
/// with OP one of = == != < <= > >=. "all" (or empty) matches everything.
///
/// Class tokens are the serialized class names plus "semi", "quasi", "near"
/// (either direction) and "plain_short"/"plain_long" (semi-magic with neither
/// refinement). semi_X matches every semi-magic tour with direction X magic,
/// quasi and near ones included.
class Filter {
 public:
  static constexpr std::uint8_t kAllClasses = 0xff;

  Filter() = default;

  /// Throws ParseError (line 1) on bad syntax or an unknown class.
  static Filter parse(std::string_view expr);
  /// Throws std::invalid_argument "unknown class '...'".
  static Filter of_class(std::string_view token);
  static Filter of_atom(const Atom& a);
  static std::uint8_t class_mask(std::string_view token);
  static bool is_class_token(std::string_view token);

  Filter operator&(const Filter& o) const;
  bool operator==(const Filter& o) const = default;

  /// Swaps short and long everywhere.
  Filter transposed() const;
  Filter with_mask(std::uint8_t mask) const;

  bool trivial() const { return mask_ == kAllClasses && atoms_.empty(); }
  std::uint8_t mask() const { return mask_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  bool matches(const ClassificationReport& r) const;
  bool matches_sums(const std::int64_t* short_sums, int height, const std::int64_t* long_sums,
                    int width, const MagicConstants& mc, ExactClass cls) const;

  /// Lines of direction d that every matching tour has at the magic constant.
  int required_mc_lines(Direction d, const BoardDims& dims) const;
  /// True when no tour on dims can match (empty class set, impossible constant).
  bool unsatisfiable(const BoardDims& dims) const;

  /// Canonical text; parse(str()) == *this.
  std::string str() const;

 private:
  void normalize();

  std::uint8_t mask_ = kAllClasses;
  std::vector<Atom> atoms_;
};

}  // namespace knightmagic
