#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "knightmagic/board.hpp"
#include "knightmagic/filter.hpp"
#include "knightmagic/tour.hpp"

namespace knightmagic {

enum class Closure : std::uint8_t { Open, Closed, Any };
enum class CountMode : std::uint8_t { Raw, Arithmetic, Geometric };

std::string_view to_string(Closure c);
std::string_view to_string(CountMode m);
Closure parse_closure(std::string_view s);  // throws std::invalid_argument
CountMode parse_mode(std::string_view s);

struct SearchSpec {
  BoardDims dims{4, 5};
  Closure closure = Closure::Any;
  Filter filter;
  CountMode mode = CountMode::Arithmetic;
  std::optional<std::uint64_t> limit;  // max tours to emit
  int threads = 1;
  int seed_depth = -1;          // frontier depth for work units, -1 = automatic
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  double time_limit_s = 0;      // 0 = unlimited
  bool line_pruning = true;     // off: the filter is only checked at leaves
  bool symmetry_reduction = true;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t pruned_degree = 0;
  std::uint64_t pruned_sums = 0;
  double elapsed_ms = 0;
  int workers = 1;
  std::uint64_t units = 0;

  std::uint64_t pruned() const { return pruned_degree + pruned_sums; }
};

struct SearchResult {
  std::uint64_t count = 0;   // classes in the requested mode
  std::uint64_t open = 0;    // of which open
  std::uint64_t closed = 0;  // of which closed
  std::uint64_t raw = 0;     // directed numbered tours behind the count
  /// Closed tours as undirected cycles, start and direction forgotten but
  /// symmetric images kept apart: raw closed / 2N.
  std::optional<std::uint64_t> diagrams;
  bool truncated = false;  // stopped at the emission limit
  SearchStats stats;
};

/// Thrown when max_nodes or time_limit_s is exceeded. Never a silent count.
class SearchAborted : public std::runtime_error {
 public:
  SearchAborted(const std::string& what, SearchStats stats, std::uint64_t partial_raw);

  const SearchStats& stats() const noexcept { return stats_; }
  std::uint64_t partial_raw() const noexcept { return partial_raw_; }

 private:
  SearchStats stats_;
  std::uint64_t partial_raw_;
};

/// Exact count of tours matching spec.filter, as classes of spec.mode.
///
/// Arithmetic classes are orbits of the symmetry group; geometric classes
/// also identify a tour with its reverse, and closed tours with every cyclic
/// renumbering. A class counts when any member matches the filter (this only
/// matters for direction-sensitive filters on square boards).
SearchResult count_tours(const SearchSpec& spec);

/// One result per filter; filters with the same pruning share search passes.
std::vector<SearchResult> count_batch(const SearchSpec& base, const std::vector<Filter>& filters);

std::uint64_t count_with_filter(const BoardDims& dims, Closure closure, const Filter& filter,
                                CountMode mode, int threads = 1);

using TourSink = std::function<void(const Tour&)>;

/// Emits each matching class once: the Frenicle canonical form (arithmetic),
/// the geometric_class form (geometric) or every directed tour (raw).
/// Emission order is unspecified; the set is deterministic. count = emitted.
SearchResult enumerate_tours(const SearchSpec& spec, const TourSink& sink);

/// A search prefix: the endpoints of a pair class plus the cells numbered
/// 2, 3, ... (front) and N-1, N-2, ... (back).
struct WorkUnit {
  int pair = 0;  // -1: the whole search space
  int start = 0;  // cell index numbered 1
  int end = 0;    // cell index numbered N
  std::vector<int> front;
  std::vector<int> back;
  std::uint64_t weight = 1;  // directed tours represented by each tour found
};

/// Units obtained by expanding every pair to `depth` placements.
std::vector<WorkUnit> split_at_depth(const SearchSpec& spec, int depth);
/// Shallowest split with at least target_units units (or the deepest useful).
std::vector<WorkUnit> split_frontier(const SearchSpec& spec, int target_units);
/// Directed tours matching spec.filter below the unit (weighted). Summed over
/// a split this equals count_tours with mode Raw.
std::uint64_t search_unit(const SearchSpec& spec, const WorkUnit& unit);

/// Greedy minimum-onward-degree tour; ties go to the lowest row-major cell.
std::optional<Tour> warnsdorf_construct(const BoardDims& dims, Cell start);

struct BurnsideReport {
  std::uint64_t raw = 0;
  std::vector<std::pair<SymmetryOp, std::uint64_t>> fixed;  // |Fix(g)| per op
  std::uint64_t group_order = 0;
  std::uint64_t burnside = 0;  // sum |Fix(g)| / |G|
  bool divisible = true;
  std::uint64_t canonical_classes = 0;  // distinct Frenicle forms
  bool consistent = false;
};

/// Full unreduced enumeration, so keep to small boards.
BurnsideReport burnside_check(const BoardDims& dims, Closure closure);

}  // namespace knightmagic
