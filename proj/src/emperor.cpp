#include "knightmagic/emperor.hpp"

#include <chrono>
#include <set>

namespace knightmagic {

EmperorCheck validate_emperor(const Tour& t) {
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
  int wazir = 0;
  int junction = 0;
  for (int k = 1; k < n; ++k) {
    const Cell a = t.dims.cell(pos[k - 1]);
    const Cell b = t.dims.cell(pos[k]);
    if (knight_adjacent(a, b)) continue;
    if (!wazir_adjacent(a, b)) {
      return {false,
              "step " + std::to_string(k) + "->" + std::to_string(k + 1) +
                  " is neither a knight nor a wazir move",
              0};
    }
    ++wazir;
    junction = k;
  }
  if (wazir == 0) return {false, "zero wazir steps", 0};
  if (wazir > 1) return {false, std::to_string(wazir) + " wazir steps", 0};
  return {true, "", junction};
}

namespace {

class EmperorSearch {
 public:
  EmperorSearch(const BoardDims& dims, const Filter& filter, CountMode mode, Junction junction)
      : dims_(dims), filter_(filter), mode_(mode), n_(dims.cells()), mc_(magic_constants(dims)) {
    if (junction == Junction::Balanced) join_at_ = n_ % 2 == 0 ? n_ / 2 + 1 : -1;
    knight_.assign(n_, 0);
    wazir_.assign(n_, 0);
    for (int i = 0; i < n_; ++i) {
      for (Cell c : knight_neighbors(dims.cell(i), dims)) knight_[i] |= bit(dims.index(c));
      for (Cell c : wazir_neighbors(dims.cell(i), dims)) wazir_[i] |= bit(dims.index(c));
    }
    full_ = n_ == 64 ? ~0ULL : bit(n_) - 1;
    req_short_ = filter.required_mc_lines(Direction::Short, dims);
    req_long_ = filter.required_mc_lines(Direction::Long, dims);
    grid_.assign(n_, 0);
    row_sum_.assign(dims.height(), 0);
    col_sum_.assign(dims.width(), 0);
    row_left_.assign(dims.height(), dims.width());
    col_left_.assign(dims.width(), dims.height());
  }

  void run() {
    if (filter_.unsatisfiable(dims_) || join_at_ == -1) return;
    for (int s = 0; s < n_; ++s) {
      place(s, 1);
      rec(s, 2, false);
      unplace(s, 1);
    }
  }

  std::uint64_t raw = 0;
  std::uint64_t nodes = 0;
  std::uint64_t pruned_degree = 0;
  std::uint64_t pruned_sums = 0;
  std::set<std::vector<int>> classes;

 private:
  static std::uint64_t bit(int i) { return 1ULL << i; }

  void place(int c, int v) {
    visited_ |= bit(c);
    grid_[c] = v;
    const Cell x = dims_.cell(c);
    row_sum_[x.row] += v;
    col_sum_[x.col] += v;
    --row_left_[x.row];
    --col_left_[x.col];
  }

  void unplace(int c, int v) {
    visited_ &= ~bit(c);
    grid_[c] = 0;
    const Cell x = dims_.cell(c);
    row_sum_[x.row] -= v;
    col_sum_[x.col] -= v;
    ++row_left_[x.row];
    ++col_left_[x.col];
  }

  // remaining numbers are next..N
  bool sums_ok(int next) const {
    auto ok = [&](std::int64_t part, int k, std::int64_t mc) {
      const std::int64_t need = mc - part;
      const std::int64_t lo = static_cast<std::int64_t>(k) * next + k * (k - 1) / 2;
      const std::int64_t hi = static_cast<std::int64_t>(k) * n_ - k * (k - 1) / 2;
      return need >= lo && need <= hi;
    };
    if (req_short_) {
      int slack = dims_.height() - req_short_;
      for (int r = 0; r < dims_.height(); ++r) {
        if (!ok(row_sum_[r], row_left_[r], mc_.short_mc) && --slack < 0) return false;
      }
    }
    if (req_long_) {
      int slack = dims_.width() - req_long_;
      for (int c = 0; c < dims_.width(); ++c) {
        if (!ok(col_sum_[c], col_left_[c], mc_.long_mc) && --slack < 0) return false;
      }
    }
    return true;
  }

  // every unvisited cell but the last needs two usable neighbours
  bool degrees_ok(int head, bool used) const {
    const std::uint64_t un = full_ & ~visited_;
    const std::uint64_t avail = un | bit(head);
    int ends = 0;
    for (std::uint64_t x = un; x; x &= x - 1) {
      const int u = __builtin_ctzll(x);
      std::uint64_t nb = knight_[u];
      if (!used) nb |= wazir_[u];
      const int d = __builtin_popcountll(nb & avail);
      if (d == 0) return false;
      if (d == 1 && ++ends > 1) return false;
    }
    return true;
  }

  void leaf() {
    const ExactClass cls = classify_sums(row_sum_.data(), dims_.height(), col_sum_.data(),
                                         dims_.width(), mc_);
    if (!filter_.matches_sums(row_sum_.data(), dims_.height(), col_sum_.data(), dims_.width(), mc_,
                              cls)) {
      return;
    }
    ++raw;
    const Tour t{dims_, grid_};
    switch (mode_) {
      case CountMode::Raw: classes.insert(t.grid); break;
      case CountMode::Arithmetic: classes.insert(frenicle_canonical(t).grid); break;
      case CountMode::Geometric:
        classes.insert(std::min(frenicle_canonical(t).grid,
                                frenicle_canonical(reverse_tour(t)).grid));
        break;
    }
  }

  void rec(int head, int next, bool used) {
    ++nodes;
    if (next > n_) {
      if (used) leaf();
      return;
    }
    const std::uint64_t un = full_ & ~visited_;
    std::uint64_t kn = knight_[head] & un;
    std::uint64_t wz = used ? 0 : (wazir_[head] & un);
    if (join_at_ > 0) {
      if (next == join_at_) {
        kn = 0;
      } else {
        wz = 0;
      }
    }
    for (int pass = 0; pass < 2; ++pass) {
      for (std::uint64_t x = pass == 0 ? kn : wz; x; x &= x - 1) {
        const int c = __builtin_ctzll(x);
        const bool now_used = used || pass == 1;
        place(c, next);
        if (!degrees_ok(c, now_used)) {
          ++pruned_degree;
        } else if (!sums_ok(next + 1)) {
          ++pruned_sums;
        } else {
          rec(c, next + 1, now_used);
        }
        unplace(c, next);
      }
    }
  }

  BoardDims dims_;
  Filter filter_;
  CountMode mode_;
  int n_;
  MagicConstants mc_;
  std::vector<std::uint64_t> knight_;
  std::vector<std::uint64_t> wazir_;
  std::uint64_t full_ = 0;
  std::uint64_t visited_ = 0;
  int join_at_ = 0;  // value that must follow the wazir step, 0 = any
  int req_short_ = 0;
  int req_long_ = 0;
  std::vector<int> grid_;
  std::vector<std::int64_t> row_sum_;
  std::vector<std::int64_t> col_sum_;
  std::vector<int> row_left_;
  std::vector<int> col_left_;
};

}  // namespace

EmperorResult enumerate_emperor(const BoardDims& dims, const Filter& filter, CountMode mode,
                                Junction junction) {
  if (dims.cells() > kEmperorMaxCells) {
    throw std::invalid_argument("emperor search is limited to " + std::to_string(kEmperorMaxCells) +
                                " cells; " + dims.str() + " has " + std::to_string(dims.cells()));
  }
  if (dims.cells() < 2) throw std::invalid_argument("board must have at least 2 cells");
  const auto t0 = std::chrono::steady_clock::now();
  EmperorSearch s(dims, filter, mode, junction);
  s.run();
  EmperorResult r;
  r.raw = s.raw;
  r.count = s.classes.size();
  for (const auto& g : s.classes) r.tours.push_back(Tour{dims, g});
  r.stats.nodes = s.nodes;
  r.stats.pruned_degree = s.pruned_degree;
  r.stats.pruned_sums = s.pruned_sums;
  r.stats.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace knightmagic
