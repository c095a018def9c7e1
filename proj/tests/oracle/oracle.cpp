#include "oracle.hpp"

#include <algorithm>
#include <set>

namespace oracle {

namespace {

int nops(int w, int h) { return w == h ? 8 : 4; }

// image of (x, y) under op k
void map(int k, int w, int h, int x, int y, int& nx, int& ny) {
  switch (k) {
    case 0: nx = x; ny = y; break;
    case 1: nx = w - 1 - x; ny = h - 1 - y; break;
    case 2: nx = w - 1 - x; ny = y; break;
    case 3: nx = x; ny = h - 1 - y; break;
    case 4: nx = y; ny = x; break;
    case 5: nx = w - 1 - y; ny = h - 1 - x; break;
    case 6: nx = h - 1 - y; ny = x; break;
    default: nx = y; ny = w - 1 - x; break;
  }
}

Grid image(const Grid& g, int w, int h, int k) {
  Grid out(g.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int nx, ny;
      map(k, w, h, x, y, nx, ny);
      out[ny * w + nx] = g[y * w + x];
    }
  }
  return out;
}

bool knight(int a, int b, int w) {
  const int dx = std::abs(a % w - b % w);
  const int dy = std::abs(a / w - b / w);
  return (dx == 1 && dy == 2) || (dx == 2 && dy == 1);
}

}  // namespace

std::string classify(const Grid& g, int w, int h) {
  const long n = static_cast<long>(g.size());
  const long total = n * (n + 1) / 2;
  std::vector<long> rows(h, 0), cols(w, 0);
  for (int i = 0; i < n; ++i) {
    rows[i / w] += g[i];
    cols[i % w] += g[i];
  }
  auto all_eq = [](const std::vector<long>& v, long m) {
    return std::all_of(v.begin(), v.end(), [m](long s) { return s == m; });
  };
  const bool rows_magic = total % h == 0 && all_eq(rows, total / h);
  const bool cols_magic = total % w == 0 && all_eq(cols, total / w);
  if (rows_magic && cols_magic) return "magic";
  if (!rows_magic && !cols_magic) return "none";
  const std::vector<long>& off = rows_magic ? cols : rows;
  const long mc = rows_magic ? total / w : total / h;
  const std::string dir = rows_magic ? "short" : "long";
  std::set<long> others;
  int at_mc = 0;
  for (long s : off) {
    if (s == mc) {
      ++at_mc;
    } else {
      others.insert(s);
    }
  }
  if (others.size() == 2) return (at_mc ? "near_" : "quasi_") + dir;
  return "semi_" + dir;
}

Grid canonical(const Grid& g, int w, int h) {
  Grid best = g;
  for (int k = 1; k < nops(w, h); ++k) best = std::min(best, image(g, w, h, k));
  return best;
}

Grid geometric(const Grid& g, int w, int h) {
  const int n = static_cast<int>(g.size());
  std::vector<Grid> numberings{g};
  Grid rev(n);
  for (int i = 0; i < n; ++i) rev[i] = n + 1 - g[i];
  numberings.push_back(rev);
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[g[i] - 1] = i;
  if (knight(pos[0], pos[n - 1], w)) {
    for (int s = 1; s < n; ++s) {
      Grid a(n), b(n);
      for (int i = 0; i < n; ++i) {
        a[i] = (g[i] - 1 + n - s) % n + 1;
        b[i] = n + 1 - a[i];
      }
      numberings.push_back(a);
      numberings.push_back(b);
    }
  }
  Grid best = canonical(g, w, h);
  for (const Grid& x : numberings) best = std::min(best, canonical(x, w, h));
  return best;
}

std::map<std::string, Counts> count_by(
    int w, int h, int closure, const std::function<std::vector<std::string>(const Grid&)>& labels) {
  const int n = w * h;
  std::vector<std::vector<int>> adj(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (knight(a, b, w)) adj[a].push_back(b);
    }
  }
  std::map<std::string, Counts> out;
  std::map<std::string, std::set<Grid>> arith, geo;
  Grid grid(n, 0);
  std::vector<int> path;
  std::function<void(int, int)> dfs = [&](int cell, int k) {
    grid[cell] = k;
    path.push_back(cell);
    if (k == n) {
      const bool closed = knight(path.front(), cell, w);
      if (!((closure == 0 && closed) || (closure == 1 && !closed))) {
        const auto ls = labels(grid);
        if (!ls.empty()) {
          const Grid a = canonical(grid, w, h);
          const Grid g = geometric(grid, w, h);
          for (const auto& l : ls) {
            Counts& c = out[l];
            ++c.raw;
            ++(closed ? c.raw_closed : c.raw_open);
            arith[l].insert(a);
            geo[l].insert(g);
          }
        }
      }
    } else {
      for (int nb : adj[cell]) {
        if (!grid[nb]) dfs(nb, k + 1);
      }
    }
    path.pop_back();
    grid[cell] = 0;
  };
  for (int s = 0; s < n; ++s) dfs(s, 1);
  for (auto& [l, c] : out) {
    c.arithmetic = arith[l].size();
    c.geometric = geo[l].size();
  }
  return out;
}

Counts count(int w, int h, int closure, const std::function<bool(const Grid&)>& keep) {
  const auto m = count_by(w, h, closure, [&](const Grid& g) {
    return keep(g) ? std::vector<std::string>{"keep"} : std::vector<std::string>{};
  });
  const auto it = m.find("keep");
  return it == m.end() ? Counts{} : it->second;
}

}  // namespace oracle
