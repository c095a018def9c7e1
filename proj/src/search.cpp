#include "knightmagic/search.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_set>

#include "engine.hpp"

namespace knightmagic {

using detail::Control;
using detail::Geometry;
using detail::PairRep;
using detail::PassConfig;
using detail::PassResult;
using detail::PassTally;

std::string_view to_string(Closure c) {
  switch (c) {
    case Closure::Open: return "open";
    case Closure::Closed: return "closed";
    case Closure::Any: return "any";
  }
  return "?";
}

std::string_view to_string(CountMode m) {
  switch (m) {
    case CountMode::Raw: return "raw";
    case CountMode::Arithmetic: return "arithmetic";
    case CountMode::Geometric: return "geometric";
  }
  return "?";
}

Closure parse_closure(std::string_view s) {
  if (s == "open") return Closure::Open;
  if (s == "closed") return Closure::Closed;
  if (s == "any") return Closure::Any;
  throw std::invalid_argument("closure must be open, closed or any, got '" + std::string(s) + "'");
}

CountMode parse_mode(std::string_view s) {
  if (s == "raw") return CountMode::Raw;
  if (s == "arithmetic") return CountMode::Arithmetic;
  if (s == "geometric") return CountMode::Geometric;
  throw std::invalid_argument("mode must be raw, arithmetic or geometric, got '" + std::string(s) +
                              "'");
}

SearchAborted::SearchAborted(const std::string& what, SearchStats stats, std::uint64_t partial_raw)
    : std::runtime_error(what), stats_(stats), partial_raw_(partial_raw) {}

namespace {

using Clock = std::chrono::steady_clock;

void check_spec(const SearchSpec& spec) {
  if (spec.dims.cells() < 2) throw std::invalid_argument("board must have at least 2 cells");
  if (spec.dims.cells() > 128) {
    throw std::invalid_argument("board " + spec.dims.str() +
                                " has more than 128 cells, beyond the enumerator");
  }
  if (spec.threads < 0) throw std::invalid_argument("threads must be >= 0");
}

int worker_count(const SearchSpec& spec) {
  if (spec.threads > 0) return spec.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Splits a class set that mixes both semi-magic directions into parts that
// each force one direction, so every part gets line pruning.
std::vector<Filter> expand(const Filter& f, const BoardDims& dims) {
  if (f.unsatisfiable(dims)) return {};
  const bool forced = f.required_mc_lines(Direction::Short, dims) > 0 ||
                      f.required_mc_lines(Direction::Long, dims) > 0;
  const std::uint8_t m = f.mask();
  if (!forced && !(m & 0x80) && (m & 0x0e) && (m & 0x70)) {
    std::vector<Filter> out;
    for (std::uint8_t part : {static_cast<std::uint8_t>(m & 0x0f), static_cast<std::uint8_t>(m & 0x70)}) {
      Filter p = f.with_mask(part);
      if (!p.unsatisfiable(dims)) out.push_back(p);
    }
    return out;
  }
  return {f};
}

struct Term {
  Filter filter;
  std::int64_t coef = 1;
  bool positive = true;
};

// Raw counts to combine for one requested filter. Arithmetic and geometric
// classes on square boards count orbits with any matching member, i.e. the
// raw count of F or F-transposed; transposition is a bijection, so that is
// 2|F| - |F and F^T|.
std::vector<Term> plan(const Filter& f, const BoardDims& dims, CountMode mode) {
  std::vector<Term> out;
  if (mode != CountMode::Raw && dims.square() && f.transposed() != f) {
    for (auto& p : expand(f, dims)) out.push_back({p, 2, true});
    for (auto& p : expand(f & f.transposed(), dims)) out.push_back({p, -1, false});
  } else {
    for (auto& p : expand(f, dims)) out.push_back({p, 1, true});
  }
  return out;
}

int level_for(const Filter& f, const BoardDims& dims, bool reduce) {
  if (!reduce) return 0;
  return dims.square() && f.transposed() != f ? 1 : 2;
}

struct PassKey {
  int level;
  int req_short;
  int req_long;
  auto operator<=>(const PassKey&) const = default;
};

PassKey key_for(const Filter& f, const SearchSpec& spec) {
  PassKey k{level_for(f, spec.dims, spec.symmetry_reduction), 0, 0};
  if (spec.line_pruning) {
    k.req_short = f.required_mc_lines(Direction::Short, spec.dims);
    k.req_long = f.required_mc_lines(Direction::Long, spec.dims);
  }
  return k;
}

std::string cycle_key(const BoardDims& dims, const std::vector<int>& grid) {
  const Tour g = geometric_class(Tour{dims, grid});
  return std::string(g.grid.begin(), g.grid.end());
}

SearchStats make_stats(const detail::Counters& c, Clock::time_point t0, int workers,
                       std::uint64_t units) {
  SearchStats s;
  s.nodes = c.nodes;
  s.pruned_degree = c.pruned_degree;
  s.pruned_sums = c.pruned_sums;
  s.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  s.workers = workers;
  s.units = units;
  return s;
}

std::uint64_t divide(std::int64_t value, std::uint64_t by) {
  if (value < 0 || static_cast<std::uint64_t>(value) % by != 0) {
    throw std::logic_error("raw count " + std::to_string(value) + " not divisible by " +
                           std::to_string(by));
  }
  return static_cast<std::uint64_t>(value) / by;
}

}  // namespace

std::vector<SearchResult> count_batch(const SearchSpec& base, const std::vector<Filter>& filters) {
  check_spec(base);
  const auto t0 = Clock::now();
  const Geometry geo(base.dims);
  const int threads = worker_count(base);
  const bool want_keys = base.mode == CountMode::Geometric && base.closure != Closure::Open;

  // distinct raw terms, shared across filters and (on square boards) transposes
  std::vector<Filter> terms;
  std::map<std::string, int> term_index;
  auto term_of = [&](const Filter& f) {
    auto it = term_index.find(f.str());
    if (it != term_index.end()) return it->second;
    if (base.dims.square()) {
      auto jt = term_index.find(f.transposed().str());
      if (jt != term_index.end()) return jt->second;
    }
    terms.push_back(f);
    term_index[f.str()] = static_cast<int>(terms.size()) - 1;
    return static_cast<int>(terms.size()) - 1;
  };
  std::vector<std::vector<std::pair<int, std::int64_t>>> uses(filters.size());
  std::vector<std::vector<int>> key_targets;
  for (std::size_t i = 0; i < filters.size(); ++i) {
    for (const Term& t : plan(filters[i], base.dims, base.mode)) {
      const int ti = term_of(t.filter);
      uses[i].push_back({ti, t.coef});
      if (key_targets.size() < terms.size()) key_targets.resize(terms.size());
      if (t.positive && want_keys) key_targets[ti].push_back(static_cast<int>(i));
    }
  }
  key_targets.resize(terms.size());

  std::map<PassKey, std::vector<int>> passes;
  for (std::size_t ti = 0; ti < terms.size(); ++ti) {
    passes[key_for(terms[ti], base)].push_back(static_cast<int>(ti));
  }

  std::vector<PassTally> tally(terms.size());
  std::vector<std::unordered_set<std::string>> keys(filters.size());
  std::mutex keys_mu;
  detail::Counters counters;
  std::uint64_t units = 0;
  Control ctl(base.max_nodes, base.time_limit_s);
  for (const auto& [key, members] : passes) {
    PassConfig cfg;
    cfg.closure = base.closure;
    cfg.level = key.level;
    cfg.req_short = key.req_short;
    cfg.req_long = key.req_long;
    cfg.want_selfrev = base.mode == CountMode::Geometric;
    for (int ti : members) {
      cfg.filters.push_back(terms[ti]);
      cfg.emit.push_back(!key_targets[ti].empty());
    }
    if (want_keys) {
      cfg.on_leaf = [&](int f, const std::vector<int>& grid, const PairRep& pair) {
        if (!pair.closed) return;
        const std::string k = cycle_key(base.dims, grid);
        std::lock_guard lock(keys_mu);
        for (int target : key_targets[members[f]]) keys[target].insert(k);
      };
    }
    const auto pairs = detail::make_pairs(geo, base.closure, key.level);
    PassResult r = detail::run_pass(geo, cfg, pairs, threads, base.seed_depth, ctl);
    for (std::size_t j = 0; j < members.size(); ++j) tally[members[j]] = r.tallies[j];
    counters += r.counters;
    units += r.units;
    if (ctl.aborted()) {
      std::uint64_t partial = 0;
      for (const auto& t : tally) partial += t.raw;
      throw SearchAborted("search aborted: " + ctl.reason(),
                          make_stats(counters, t0, threads, units), partial);
    }
  }

  const SearchStats stats = make_stats(counters, t0, threads, units);
  const std::uint64_t order = base.dims.square() ? 8 : 4;
  std::vector<SearchResult> out(filters.size());
  for (std::size_t i = 0; i < filters.size(); ++i) {
    std::int64_t raw = 0, open = 0, closed = 0, selfrev = 0;
    for (auto [ti, coef] : uses[i]) {
      raw += coef * static_cast<std::int64_t>(tally[ti].raw);
      open += coef * static_cast<std::int64_t>(tally[ti].open);
      closed += coef * static_cast<std::int64_t>(tally[ti].closed);
      selfrev += coef * static_cast<std::int64_t>(tally[ti].selfrev_open);
    }
    SearchResult& r = out[i];
    r.stats = stats;
    r.raw = static_cast<std::uint64_t>(raw);
    const std::uint64_t g = base.symmetry_reduction || base.mode != CountMode::Raw ? order : 1;
    switch (base.mode) {
      case CountMode::Raw:
        r.open = static_cast<std::uint64_t>(open);
        r.closed = static_cast<std::uint64_t>(closed);
        break;
      case CountMode::Arithmetic:
        r.open = divide(open, g);
        r.closed = divide(closed, g);
        break;
      case CountMode::Geometric:
        r.open = (divide(open, g) + divide(selfrev, g)) / 2;
        r.closed = keys[i].size();
        break;
    }
    r.count = r.open + r.closed;
    if (base.closure != Closure::Open && filters[i].trivial()) {
      r.diagrams = divide(closed, 2 * static_cast<std::uint64_t>(base.dims.cells()));
    }
  }
  return out;
}

SearchResult count_tours(const SearchSpec& spec) {
  if (spec.limit) {
    return enumerate_tours(spec, [](const Tour&) {});
  }
  return count_batch(spec, {spec.filter}).front();
}

std::uint64_t count_with_filter(const BoardDims& dims, Closure closure, const Filter& filter,
                                CountMode mode, int threads) {
  SearchSpec spec;
  spec.dims = dims;
  spec.closure = closure;
  spec.filter = filter;
  spec.mode = mode;
  spec.threads = threads;
  return count_tours(spec).count;
}

SearchResult enumerate_tours(const SearchSpec& spec, const TourSink& sink) {
  check_spec(spec);
  const auto t0 = Clock::now();
  const Geometry geo(spec.dims);
  const int threads = worker_count(spec);
  const BoardDims dims = spec.dims;

  std::mutex mu;
  std::set<std::vector<int>> seen;
  SearchResult res;
  Control ctl(spec.max_nodes, spec.time_limit_s);
  const std::uint64_t limit = spec.limit.value_or(UINT64_MAX);
  if (limit == 0) res.truncated = true;

  auto emit = [&](Tour t, bool dedupe) {
    if (res.count >= limit) {
      res.truncated = true;
      ctl.request_stop();
      return;
    }
    if (dedupe && !seen.insert(t.grid).second) return;
    ++res.count;
    ++(is_closed(t) ? res.closed : res.open);
    sink(t);
    if (res.count >= limit) {
      res.truncated = true;
      ctl.request_stop();
    }
  };

  detail::Counters counters;
  std::uint64_t units = 0;
  for (const Filter& part : limit == 0 ? std::vector<Filter>{} : expand(spec.filter, dims)) {
    const int level = level_for(part, dims, spec.symmetry_reduction);
    PassConfig cfg;
    cfg.closure = spec.closure;
    cfg.level = level;
    const PassKey key = key_for(part, spec);
    cfg.req_short = key.req_short;
    cfg.req_long = key.req_long;
    cfg.filters = {part};
    cfg.emit = {true};
    cfg.on_leaf = [&](int, const std::vector<int>& grid, const PairRep& pair) {
      std::lock_guard lock(mu);
      if (ctl.stopped()) return;
      if (spec.mode == CountMode::Raw) {
        for (const auto& op : pair.cosets) emit(Tour{dims, detail::apply_op(geo, op, grid)}, false);
        return;
      }
      // one tour per orbit of the pair stabiliser
      for (const auto& op : pair.stab) {
        if (detail::apply_op(geo, op, grid) < grid) return;
      }
      const Tour t{dims, grid};
      const bool dedupe =
          level != 2 || (spec.mode == CountMode::Geometric && pair.closed) || !spec.symmetry_reduction;
      if (spec.mode == CountMode::Geometric) {
        emit(geometric_class(t), dedupe);
        return;
      }
      const Tour a = frenicle_canonical(t);
      const Tour b = frenicle_canonical(reverse_tour(t));
      emit(a, dedupe);
      if (b.grid != a.grid) emit(b, dedupe);
    };
    const auto pairs = detail::make_pairs(geo, spec.closure, level);
    PassResult r = detail::run_pass(geo, cfg, pairs, threads, spec.seed_depth, ctl);
    res.raw += r.tallies[0].raw;
    counters += r.counters;
    units += r.units;
    if (ctl.aborted()) {
      throw SearchAborted("search aborted: " + ctl.reason(), make_stats(counters, t0, threads, units),
                          res.raw);
    }
    if (res.truncated) break;
  }
  res.stats = make_stats(counters, t0, threads, units);
  return res;
}

namespace {

PassConfig unit_config(const SearchSpec& spec) {
  PassConfig cfg;
  cfg.closure = spec.closure;
  const PassKey key = key_for(spec.filter, spec);
  cfg.level = key.level;
  cfg.req_short = spec.filter.unsatisfiable(spec.dims) ? 0 : key.req_short;
  cfg.req_long = spec.filter.unsatisfiable(spec.dims) ? 0 : key.req_long;
  cfg.filters = {spec.filter};
  cfg.emit = {false};
  return cfg;
}

}  // namespace

std::vector<WorkUnit> split_at_depth(const SearchSpec& spec, int depth) {
  check_spec(spec);
  if (depth < 0) throw std::invalid_argument("split depth must be >= 0");
  const Geometry geo(spec.dims);
  const PassConfig cfg = unit_config(spec);
  const auto pairs = detail::make_pairs(geo, spec.closure, cfg.level);
  Control ctl(0, 0);
  return detail::split_pass(geo, cfg, pairs, depth, ctl);
}

std::vector<WorkUnit> split_frontier(const SearchSpec& spec, int target_units) {
  if (target_units < 1) throw std::invalid_argument("target_units must be >= 1");
  if (target_units == 1) {
    check_spec(spec);
    WorkUnit whole;
    whole.pair = -1;
    return {whole};
  }
  std::vector<WorkUnit> units;
  for (int d = 0; d <= spec.dims.cells(); ++d) {
    auto next = split_at_depth(spec, d);
    const bool grew = next.size() > units.size();
    units = std::move(next);
    if (units.size() >= static_cast<std::size_t>(target_units) || (!grew && d > 0)) break;
  }
  return units;
}

std::uint64_t search_unit(const SearchSpec& spec, const WorkUnit& unit) {
  check_spec(spec);
  const Geometry geo(spec.dims);
  const PassConfig cfg = unit_config(spec);
  const auto pairs = detail::make_pairs(geo, spec.closure, cfg.level);
  Control ctl(spec.max_nodes, spec.time_limit_s);
  std::uint64_t raw = 0;
  const auto units = unit.pair < 0 ? detail::split_pass(geo, cfg, pairs, 0, ctl)
                                   : std::vector<WorkUnit>{unit};
  for (const auto& u : units) {
    raw += detail::run_unit(geo, cfg, pairs, u, ctl).raw;
    if (ctl.aborted()) throw SearchAborted("search aborted: " + ctl.reason(), {}, raw);
  }
  return raw;
}

std::optional<Tour> warnsdorf_construct(const BoardDims& dims, Cell start) {
  if (!dims.contains(start)) {
    throw std::invalid_argument("start cell is outside board " + dims.str());
  }
  const int n = dims.cells();
  std::vector<std::vector<int>> nb(n);
  for (int i = 0; i < n; ++i) {
    for (Cell c : knight_neighbors(dims.cell(i), dims)) nb[i].push_back(dims.index(c));
  }
  Tour t{dims, std::vector<int>(n, 0)};
  int cur = dims.index(start);
  t.grid[cur] = 1;
  for (int k = 2; k <= n; ++k) {
    int best = -1;
    int best_deg = 9;
    for (int c : nb[cur]) {  // row-major order, so ties keep the lowest cell
      if (t.grid[c]) continue;
      int deg = 0;
      for (int x : nb[c]) deg += t.grid[x] == 0;
      if (deg < best_deg) {
        best = c;
        best_deg = deg;
      }
    }
    if (best < 0) return std::nullopt;
    t.grid[best] = k;
    cur = best;
  }
  return t;
}

BurnsideReport burnside_check(const BoardDims& dims, Closure closure) {
  if (dims.cells() > 40) {
    throw std::invalid_argument("burnside_check enumerates every directed tour; board " +
                                dims.str() + " is too large");
  }
  SearchSpec spec;
  spec.dims = dims;
  spec.closure = closure;
  spec.mode = CountMode::Raw;
  spec.symmetry_reduction = false;
  std::vector<Tour> all;
  enumerate_tours(spec, [&](const Tour& t) { all.push_back(t); });

  BurnsideReport rep;
  rep.raw = all.size();
  const auto group = symmetry_group(dims);
  rep.group_order = group.size();
  std::uint64_t sum = 0;
  for (SymmetryOp g : group) {
    std::uint64_t fixed = 0;
    for (const Tour& t : all) fixed += transform_tour(g, t) == t;
    rep.fixed.push_back({g, fixed});
    sum += fixed;
  }
  rep.divisible = sum % rep.group_order == 0;
  rep.burnside = sum / rep.group_order;
  std::set<std::vector<int>> classes;
  for (const Tour& t : all) classes.insert(frenicle_canonical(t).grid);
  rep.canonical_classes = classes.size();
  rep.consistent = rep.divisible && rep.burnside == rep.canonical_classes;
  return rep;
}

}  // namespace knightmagic
