#pragma once

// Two-ended backtracking over numbered knight paths. Internal to the library.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "knightmagic/board.hpp"
#include "knightmagic/classify.hpp"
#include "knightmagic/filter.hpp"
#include "knightmagic/search.hpp"

namespace knightmagic::detail {

using u128 = unsigned __int128;

inline int popcount(std::uint64_t x) { return __builtin_popcountll(x); }
inline int popcount(u128 x) {
  return __builtin_popcountll(static_cast<std::uint64_t>(x)) +
         __builtin_popcountll(static_cast<std::uint64_t>(x >> 64));
}
inline int lowest(std::uint64_t x) { return __builtin_ctzll(x); }
inline int lowest(u128 x) {
  const auto lo = static_cast<std::uint64_t>(x);
  return lo ? __builtin_ctzll(lo) : 64 + __builtin_ctzll(static_cast<std::uint64_t>(x >> 64));
}

/// A symmetry, optionally composed with renumbering k -> N+1-k.
struct Op {
  SymmetryOp g = SymmetryOp::Identity;
  bool rev = false;
};

struct Geometry {
  explicit Geometry(const BoardDims& d);

  BoardDims dims;
  int n;
  int w;
  int h;
  MagicConstants mc;
  std::vector<std::vector<int>> knight;
  std::vector<int> row;
  std::vector<int> col;
  std::vector<int> colour;
  std::vector<SymmetryOp> ops;          // full group, identity first
  std::vector<std::vector<int>> perm;   // perm[i][cell] = ops[i] applied to cell

  const std::vector<int>& perm_of(SymmetryOp g) const;
};

/// Endpoint pairs (cell of 1, cell of N), one per orbit of the reduction group.
struct PairRep {
  int s = 0;
  int e = 0;
  std::uint64_t weight = 1;          // orbit size
  bool closed = false;               // endpoints knight-adjacent
  std::vector<Op> stab;              // ops fixing (s, e)
  std::vector<Op> cosets;            // one op per image pair
  std::vector<SymmetryOp> swaps;     // g with g(s) = e and g(e) = s
};

/// level 0: identity only; 1: line-preserving ops with reversal; 2: full group with reversal.
std::vector<Op> group_ops(const Geometry& geo, int level);
std::vector<PairRep> make_pairs(const Geometry& geo, Closure closure, int level);

/// grid of op applied to a numbered grid
std::vector<int> apply_op(const Geometry& geo, const Op& op, const std::vector<int>& grid);

struct PassTally {
  std::uint64_t raw = 0;
  std::uint64_t open = 0;
  std::uint64_t closed = 0;
  std::uint64_t selfrev_open = 0;  // open tours whose reverse is a symmetric image

  PassTally& operator+=(const PassTally& o) {
    raw += o.raw;
    open += o.open;
    closed += o.closed;
    selfrev_open += o.selfrev_open;
    return *this;
  }
};

struct Counters {
  std::uint64_t nodes = 0;
  std::uint64_t pruned_degree = 0;
  std::uint64_t pruned_sums = 0;

  Counters& operator+=(const Counters& o) {
    nodes += o.nodes;
    pruned_degree += o.pruned_degree;
    pruned_sums += o.pruned_sums;
    return *this;
  }
};

/// Shared between workers: stop requests and resource limits.
class Control {
 public:
  Control(std::uint64_t max_nodes, double time_limit_s);

  bool stopped() const { return stop_.load(std::memory_order_relaxed); }
  void request_stop() { stop_.store(true, std::memory_order_relaxed); }
  void abort(const std::string& reason);
  bool aborted() const { return aborted_.load(); }
  std::string reason() const;
  /// Adds nodes to the global tally and enforces limits.
  void poll(std::uint64_t nodes);

 private:
  std::atomic<bool> stop_{false};
  std::atomic<bool> aborted_{false};
  std::atomic<std::uint64_t> nodes_{0};
  std::uint64_t max_nodes_;
  bool has_deadline_;
  std::chrono::steady_clock::time_point deadline_;
  mutable std::mutex mu_;
  std::string reason_;
};

using LeafFn = std::function<void(int filter, const std::vector<int>& grid, const PairRep& pair)>;

struct PassConfig {
  Closure closure = Closure::Any;
  int level = 2;
  int req_short = 0;  // rows that must still be able to reach the constant
  int req_long = 0;
  std::vector<Filter> filters;
  std::vector<bool> emit;  // per filter: call on_leaf for matches
  bool want_selfrev = false;
  LeafFn on_leaf;
};

struct PassResult {
  std::vector<PassTally> tallies;
  Counters counters;
  std::uint64_t units = 0;
  int workers = 1;
};

PassResult run_pass(const Geometry& geo, const PassConfig& cfg, const std::vector<PairRep>& pairs,
                    int threads, int seed_depth, Control& ctl);

std::vector<WorkUnit> split_pass(const Geometry& geo, const PassConfig& cfg,
                                 const std::vector<PairRep>& pairs, int depth, Control& ctl);

PassTally run_unit(const Geometry& geo, const PassConfig& cfg, const std::vector<PairRep>& pairs,
                   const WorkUnit& unit, Control& ctl, Counters* counters = nullptr);

}  // namespace knightmagic::detail
