#include "engine.hpp"

#include <algorithm>
#include <thread>

namespace knightmagic::detail {

Geometry::Geometry(const BoardDims& d)
    : dims(d), n(d.cells()), w(d.width()), h(d.height()), mc(magic_constants(d)) {
  knight.resize(n);
  row.resize(n);
  col.resize(n);
  colour.resize(n);
  for (int i = 0; i < n; ++i) {
    const Cell c = dims.cell(i);
    row[i] = c.row;
    col[i] = c.col;
    colour[i] = (c.row + c.col) & 1;
    for (Cell x : knight_neighbors(c, dims)) knight[i].push_back(dims.index(x));
  }
  auto group = symmetry_group(dims);
  ops.assign(group.begin(), group.end());
  for (SymmetryOp g : ops) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = dims.index(apply_symmetry(g, dims.cell(i), dims));
    perm.push_back(std::move(p));
  }
}

const std::vector<int>& Geometry::perm_of(SymmetryOp g) const {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i] == g) return perm[i];
  }
  throw std::invalid_argument("symmetry not in group");
}

std::vector<Op> group_ops(const Geometry& geo, int level) {
  if (level == 0) return {Op{}};
  std::vector<Op> out;
  for (SymmetryOp g : geo.ops) {
    if (level == 1 && swaps_lines(g)) continue;
    out.push_back({g, false});
    out.push_back({g, true});
  }
  return out;
}

std::vector<PairRep> make_pairs(const Geometry& geo, Closure closure, int level) {
  const int n = geo.n;
  const auto ops = group_ops(geo, level);
  int majority = 0;
  for (int i = 0; i < n; ++i) majority += geo.colour[i] == 0;
  // colour that holds the odd numbers when N is odd
  const int odd_colour = majority * 2 > n ? 0 : 1;
  std::vector<PairRep> out;
  for (int s = 0; s < n; ++s) {
    for (int e = 0; e < n; ++e) {
      if (s == e) continue;
      if (n % 2 == 0 && geo.colour[s] == geo.colour[e]) continue;
      if (n % 2 == 1 && (geo.colour[s] != odd_colour || geo.colour[e] != odd_colour)) continue;
      const bool adj = knight_adjacent(geo.dims.cell(s), geo.dims.cell(e));
      if (closure == Closure::Closed && !adj) continue;
      if (closure == Closure::Open && adj) continue;
      PairRep p;
      p.s = s;
      p.e = e;
      p.closed = adj;
      const int key = s * n + e;
      bool rep = true;
      std::vector<int> images;
      for (const Op& op : ops) {
        const auto& pm = geo.perm_of(op.g);
        const int s2 = op.rev ? pm[e] : pm[s];
        const int e2 = op.rev ? pm[s] : pm[e];
        const int k2 = s2 * n + e2;
        if (k2 < key) {
          rep = false;
          break;
        }
        if (k2 == key) p.stab.push_back(op);
        if (std::find(images.begin(), images.end(), k2) == images.end()) {
          images.push_back(k2);
          p.cosets.push_back(op);
        }
      }
      if (!rep) continue;
      p.weight = images.size();
      for (SymmetryOp g : geo.ops) {
        const auto& pm = geo.perm_of(g);
        if (pm[s] == e && pm[e] == s) p.swaps.push_back(g);
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<int> apply_op(const Geometry& geo, const Op& op, const std::vector<int>& grid) {
  const auto& pm = geo.perm_of(op.g);
  std::vector<int> out(grid.size());
  for (int i = 0; i < geo.n; ++i) out[pm[i]] = op.rev ? geo.n + 1 - grid[i] : grid[i];
  return out;
}

Control::Control(std::uint64_t max_nodes, double time_limit_s)
    : max_nodes_(max_nodes), has_deadline_(time_limit_s > 0) {
  if (has_deadline_) {
    deadline_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(time_limit_s));
  }
}

void Control::abort(const std::string& reason) {
  {
    std::lock_guard lock(mu_);
    if (reason_.empty()) reason_ = reason;
  }
  aborted_.store(true);
  request_stop();
}

std::string Control::reason() const {
  std::lock_guard lock(mu_);
  return reason_;
}

void Control::poll(std::uint64_t nodes) {
  const auto total = nodes_.fetch_add(nodes) + nodes;
  if (max_nodes_ && total > max_nodes_) abort("node limit " + std::to_string(max_nodes_) + " exceeded");
  if (has_deadline_ && std::chrono::steady_clock::now() > deadline_) abort("time limit exceeded");
}

namespace {

constexpr std::uint64_t kPollEvery = 1 << 14;

// smallest / largest sum of k numbers of parity p inside [lo, hi]
inline std::int64_t smallest(int k, int p, int lo) {
  const std::int64_t f = lo + (((lo & 1) != p) ? 1 : 0);
  return k * f + static_cast<std::int64_t>(k) * (k - 1);
}
inline std::int64_t largest(int k, int p, int hi) {
  const std::int64_t f = hi - (((hi & 1) != p) ? 1 : 0);
  return k * f - static_cast<std::int64_t>(k) * (k - 1);
}

template <class M>
class Engine {
 public:
  Engine(const Geometry& geo, const PassConfig& cfg, Control& ctl)
      : geo_(geo), cfg_(cfg), ctl_(ctl), n_(geo.n), tallies(cfg.filters.size()) {
    nb_.assign(n_, 0);
    for (int i = 0; i < n_; ++i) {
      for (int j : geo.knight[i]) nb_[i] |= bit(j);
    }
    full_ = n_ == static_cast<int>(8 * sizeof(M)) ? ~M(0) : (bit(n_) - 1);
    num_.assign(n_, 0);
    row_sum_.assign(geo.h, 0);
    col_sum_.assign(geo.w, 0);
    row_left_.assign(geo.h, {0, 0});
    col_left_.assign(geo.w, {0, 0});
  }

  void run(const PairRep& p, int index) {
    start(p, index);
    if (sums_ok(2, n_ - 1)) {
      rec(p.s, p.e, 2, n_ - 1, 0);
    } else {
      ++counters.pruned_sums;
    }
    flush();
  }

  void run_unit(const PairRep& p, const WorkUnit& u) {
    start(p, u.pair);
    int a = p.s;
    int b = p.e;
    int lo = 2;
    int hi = n_ - 1;
    for (int c : u.front) {
      place(c, lo++);
      front_.push_back(c);
      a = c;
    }
    for (int c : u.back) {
      place(c, hi--);
      back_.push_back(c);
      b = c;
    }
    rec(a, b, lo, hi, static_cast<int>(u.front.size() + u.back.size()));
    flush();
  }

  void split(const PairRep& p, int index, int depth, std::vector<WorkUnit>& out) {
    split_out_ = &out;
    split_depth_ = depth;
    run(p, index);
    split_out_ = nullptr;
  }

  std::vector<PassTally> tallies;
  Counters counters;

 private:
  static M bit(int i) { return M(1) << i; }

  void start(const PairRep& p, int index) {
    pair_ = &p;
    pair_index_ = index;
    visited_ = 0;
    std::fill(num_.begin(), num_.end(), 0);
    std::fill(row_sum_.begin(), row_sum_.end(), 0);
    std::fill(col_sum_.begin(), col_sum_.end(), 0);
    for (auto& l : row_left_) l = {0, 0};
    for (auto& l : col_left_) l = {0, 0};
    for (int i = 0; i < n_; ++i) {
      ++row_left_[geo_.row[i]][geo_.colour[i]];
      ++col_left_[geo_.col[i]][geo_.colour[i]];
    }
    odd_colour_ = geo_.colour[p.s];
    front_.clear();
    back_.clear();
    place(p.s, 1);
    place(p.e, n_);
  }

  void flush() {
    ctl_.poll(pending_);
    pending_ = 0;
  }

  void place(int c, int v) {
    visited_ |= bit(c);
    num_[c] = v;
    row_sum_[geo_.row[c]] += v;
    col_sum_[geo_.col[c]] += v;
    --row_left_[geo_.row[c]][geo_.colour[c]];
    --col_left_[geo_.col[c]][geo_.colour[c]];
  }

  void unplace(int c, int v) {
    visited_ &= ~bit(c);
    num_[c] = 0;
    row_sum_[geo_.row[c]] -= v;
    col_sum_[geo_.col[c]] -= v;
    ++row_left_[geo_.row[c]][geo_.colour[c]];
    ++col_left_[geo_.col[c]][geo_.colour[c]];
  }

  bool line_ok(std::int64_t part, const std::array<int, 2>& left, std::int64_t mc, int lo,
               int hi) const {
    const std::int64_t need = mc - part;
    const int ko = left[odd_colour_];
    const int ke = left[odd_colour_ ^ 1];
    return need >= smallest(ko, 1, lo) + smallest(ke, 0, lo) &&
           need <= largest(ko, 1, hi) + largest(ke, 0, hi);
  }

  bool sums_ok(int lo, int hi) const {
    if (cfg_.req_short) {
      int slack = geo_.h - cfg_.req_short;
      for (int r = 0; r < geo_.h; ++r) {
        if (!line_ok(row_sum_[r], row_left_[r], geo_.mc.short_mc, lo, hi) && --slack < 0) {
          return false;
        }
      }
    }
    if (cfg_.req_long) {
      int slack = geo_.w - cfg_.req_long;
      for (int c = 0; c < geo_.w; ++c) {
        if (!line_ok(col_sum_[c], col_left_[c], geo_.mc.long_mc, lo, hi) && --slack < 0) {
          return false;
        }
      }
    }
    return true;
  }

  // after a head leaves `old`, its unvisited neighbours still need two ways in
  bool local_ok(int old, M avail, M un) const {
    M x = nb_[old] & un;
    while (x) {
      const int u = lowest(x);
      x &= x - 1;
      if (popcount(nb_[u] & avail) < 2) return false;
    }
    return true;
  }

  void record() {
    WorkUnit u;
    u.pair = pair_index_;
    u.start = pair_->s;
    u.end = pair_->e;
    u.front = front_;
    u.back = back_;
    u.weight = pair_->weight;
    split_out_->push_back(std::move(u));
  }

  bool self_reverse() const {
    for (SymmetryOp g : pair_->swaps) {
      const auto& pm = geo_.perm_of(g);
      bool ok = true;
      for (int c = 0; c < n_ && ok; ++c) ok = num_[pm[c]] == n_ + 1 - num_[c];
      if (ok) return true;
    }
    return false;
  }

  void leaf() {
    const ExactClass cls =
        classify_sums(row_sum_.data(), geo_.h, col_sum_.data(), geo_.w, geo_.mc);
    int selfrev = -1;
    const std::uint64_t w = pair_->weight;
    for (std::size_t i = 0; i < cfg_.filters.size(); ++i) {
      if (!cfg_.filters[i].matches_sums(row_sum_.data(), geo_.h, col_sum_.data(), geo_.w, geo_.mc,
                                        cls)) {
        continue;
      }
      PassTally& t = tallies[i];
      t.raw += w;
      if (pair_->closed) {
        t.closed += w;
      } else {
        t.open += w;
        if (cfg_.want_selfrev) {
          if (selfrev < 0) selfrev = self_reverse() ? 1 : 0;
          if (selfrev) t.selfrev_open += w;
        }
      }
      if (cfg_.on_leaf && cfg_.emit[i]) cfg_.on_leaf(static_cast<int>(i), num_, *pair_);
    }
  }

  void rec(int a, int b, int lo, int hi, int depth) {
    ++counters.nodes;
    if (++pending_ >= kPollEvery) flush();
    if (ctl_.stopped()) return;
    if (split_out_ && (depth == split_depth_ || lo >= hi)) {
      record();
      return;
    }
    const M un = full_ & ~visited_;
    if (lo > hi) {
      if ((nb_[a] >> b) & 1) leaf();
      return;
    }
    if (lo == hi) {
      const int c = lowest(un);
      if (((nb_[a] >> c) & 1) && ((nb_[b] >> c) & 1)) {
        place(c, lo);
        if (sums_ok(lo + 1, lo)) {
          leaf();
        } else {
          ++counters.pruned_sums;
        }
        unplace(c, lo);
      }
      return;
    }
    const M avail = un | bit(a) | bit(b);
    const M na = nb_[a] & un;
    const M nbb = nb_[b] & un;
    M fa = 0;
    M fb = 0;
    for (M x = na; x; x &= x - 1) {
      const int u = lowest(x);
      if (popcount(nb_[u] & avail) == 2) fa |= bit(u);
    }
    for (M x = nbb; x; x &= x - 1) {
      const int u = lowest(x);
      if (popcount(nb_[u] & avail) == 2) fb |= bit(u);
    }
    if (popcount(fa) > 1 || popcount(fb) > 1) {
      ++counters.pruned_degree;
      return;
    }
    bool front;
    M cand;
    if (fa) {
      front = true;
      cand = fa;
    } else if (fb) {
      front = false;
      cand = fb;
    } else {
      const int da = popcount(na);
      const int db = popcount(nbb);
      if (!da || !db) {
        ++counters.pruned_degree;
        return;
      }
      front = da <= db;
      cand = front ? na : nbb;
    }
    while (cand) {
      const int c = lowest(cand);
      cand &= cand - 1;
      const M un2 = un & ~bit(c);
      if (front) {
        place(c, lo);
        front_.push_back(c);
        if (!local_ok(a, un2 | bit(c) | bit(b), un2)) {
          ++counters.pruned_degree;
        } else if (!sums_ok(lo + 1, hi)) {
          ++counters.pruned_sums;
        } else {
          rec(c, b, lo + 1, hi, depth + 1);
        }
        front_.pop_back();
        unplace(c, lo);
      } else {
        place(c, hi);
        back_.push_back(c);
        if (!local_ok(b, un2 | bit(c) | bit(a), un2)) {
          ++counters.pruned_degree;
        } else if (!sums_ok(lo, hi - 1)) {
          ++counters.pruned_sums;
        } else {
          rec(a, c, lo, hi - 1, depth + 1);
        }
        back_.pop_back();
        unplace(c, hi);
      }
      if (ctl_.stopped()) return;
    }
  }

  const Geometry& geo_;
  const PassConfig& cfg_;
  Control& ctl_;
  int n_;
  std::vector<M> nb_;
  M full_ = 0;
  M visited_ = 0;
  std::vector<int> num_;
  std::vector<std::int64_t> row_sum_;
  std::vector<std::int64_t> col_sum_;
  std::vector<std::array<int, 2>> row_left_;
  std::vector<std::array<int, 2>> col_left_;
  int odd_colour_ = 0;
  const PairRep* pair_ = nullptr;
  int pair_index_ = 0;
  std::vector<int> front_;
  std::vector<int> back_;
  std::vector<WorkUnit>* split_out_ = nullptr;
  int split_depth_ = -1;
  std::uint64_t pending_ = 0;
};

template <class M>
std::vector<WorkUnit> split_impl(const Geometry& geo, const PassConfig& cfg,
                                 const std::vector<PairRep>& pairs, int depth, Control& ctl) {
  std::vector<WorkUnit> out;
  Engine<M> eng(geo, cfg, ctl);
  for (std::size_t i = 0; i < pairs.size(); ++i) eng.split(pairs[i], static_cast<int>(i), depth, out);
  return out;
}

template <class M>
PassResult run_impl(const Geometry& geo, const PassConfig& cfg, const std::vector<PairRep>& pairs,
                    int threads, int seed_depth, Control& ctl) {
  PassResult res;
  res.tallies.assign(cfg.filters.size(), {});
  if (threads <= 1) {
    Engine<M> eng(geo, cfg, ctl);
    for (std::size_t i = 0; i < pairs.size() && !ctl.stopped(); ++i) {
      eng.run(pairs[i], static_cast<int>(i));
    }
    res.tallies = eng.tallies;
    res.counters = eng.counters;
    res.units = pairs.size();
    return res;
  }
  std::vector<WorkUnit> units;
  if (seed_depth >= 0) {
    units = split_impl<M>(geo, cfg, pairs, seed_depth, ctl);
  } else {
    const std::size_t want = static_cast<std::size_t>(threads) * 32;
    for (int d = 1; d <= 24; ++d) {
      units = split_impl<M>(geo, cfg, pairs, d, ctl);
      if (units.size() >= want) break;
    }
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  auto worker = [&] {
    Engine<M> eng(geo, cfg, ctl);
    for (std::size_t i; (i = next.fetch_add(1)) < units.size() && !ctl.stopped();) {
      eng.run_unit(pairs[units[i].pair], units[i]);
    }
    std::lock_guard lock(mu);
    for (std::size_t f = 0; f < res.tallies.size(); ++f) res.tallies[f] += eng.tallies[f];
    res.counters += eng.counters;
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  res.units = units.size();
  res.workers = threads;
  return res;
}

void check_size(const Geometry& geo) {
  if (geo.n > 128) {
    throw std::invalid_argument("board " + geo.dims.str() +
                                " has more than 128 cells, beyond the enumerator");
  }
}

}  // namespace

PassResult run_pass(const Geometry& geo, const PassConfig& cfg, const std::vector<PairRep>& pairs,
                    int threads, int seed_depth, Control& ctl) {
  check_size(geo);
  if (geo.n <= 64) return run_impl<std::uint64_t>(geo, cfg, pairs, threads, seed_depth, ctl);
  return run_impl<u128>(geo, cfg, pairs, threads, seed_depth, ctl);
}

std::vector<WorkUnit> split_pass(const Geometry& geo, const PassConfig& cfg,
                                 const std::vector<PairRep>& pairs, int depth, Control& ctl) {
  check_size(geo);
  if (geo.n <= 64) return split_impl<std::uint64_t>(geo, cfg, pairs, depth, ctl);
  return split_impl<u128>(geo, cfg, pairs, depth, ctl);
}

PassTally run_unit(const Geometry& geo, const PassConfig& cfg, const std::vector<PairRep>& pairs,
                   const WorkUnit& unit, Control& ctl, Counters* counters) {
  check_size(geo);
  if (unit.pair < 0 || unit.pair >= static_cast<int>(pairs.size())) {
    throw std::invalid_argument("work unit refers to an unknown pair");
  }
  PassTally total;
  auto go = [&](auto eng) {
    eng.run_unit(pairs[unit.pair], unit);
    for (const auto& t : eng.tallies) total += t;
    if (counters) *counters += eng.counters;
  };
  if (geo.n <= 64) {
    go(Engine<std::uint64_t>(geo, cfg, ctl));
  } else {
    go(Engine<u128>(geo, cfg, ctl));
  }
  return total;
}

}  // namespace knightmagic::detail
