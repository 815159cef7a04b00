#include "cylperc/saw.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cylperc/bounds.hpp"
#include "cylperc/montecarlo.hpp"

namespace cylperc {

const std::array<std::int64_t, 22> kGoldenA001411 = {
    1,        4,        12,        36,        100,       284,       780,       2172,
    5916,     16268,    44100,     120292,    324932,    881500,    2374444,   6416596,
    17245332, 46466676, 124658732, 335116620, 897697164, 2408806028};

namespace {

int worker_count(int requested, std::size_t jobs) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  int t = requested > 0 ? requested : hw;
  return static_cast<int>(std::min<std::size_t>(t, jobs ? jobs : 1));
}

constexpr int kPrefixDepth = 6;

// Walks in the upper half-plane (all vertices at height >= 0). The grid is
// padded with a visited border so the hot loop needs no bounds checks.
// Rows store height + 1; counting starts at length `count_from`.
struct HalfPlaneEnum {
  int max_len;
  int height;
  std::vector<std::int64_t> a, b;
  std::vector<char> visited;
  int start;

  explicit HalfPlaneEnum(int L)
      : max_len(L),
        height(L + 3),
        a(L + 1, 0),
        b(L + 1, 0),
        visited(static_cast<std::size_t>(2 * L + 3) * height, 0) {
    for (int x = 0; x < 2 * L + 3; ++x) {
      visited[static_cast<std::size_t>(x) * height] = 1;
      visited[static_cast<std::size_t>(x) * height + height - 1] = 1;
    }
    for (int y = 0; y < height; ++y) {
      visited[y] = 1;
      visited[static_cast<std::size_t>(2 * L + 2) * height + y] = 1;
    }
    start = (L + 1) * height + 1;
  }

  void dfs(int idx, int row, int len, int count_from, int cap,
           std::vector<std::vector<int>>* prefixes, std::vector<int>* trail) {
    if (len >= count_from) {
      ++b[len];
      if (row == 1) ++a[len];
    }
    if (len == cap) {
      if (prefixes) prefixes->push_back(*trail);
      return;
    }
    const int moves[4] = {height, -height, 1, -1};
    for (int m = 0; m < 4; ++m) {
      int nidx = idx + moves[m];
      if (visited[nidx]) continue;
      visited[nidx] = 1;
      if (trail) trail->push_back(nidx);
      dfs(nidx, row + (m == 2) - (m == 3), len + 1, count_from, cap, prefixes, trail);
      if (trail) trail->pop_back();
      visited[nidx] = 0;
    }
  }
};

// Unrestricted walks; tallies per (avoided origin-neighbor, endpoint layer).
struct FullPlaneEnum {
  int max_len, max_d;
  int height;
  std::vector<std::int64_t> c;
  std::vector<std::vector<std::vector<std::int64_t>>> avk;
  std::vector<char> visited;
  int start;
  int neighbor_idx[4];  // E, W, N, S cells around the origin
  int on_path[4] = {0, 0, 0, 0};

  FullPlaneEnum(int L, int Ld)
      : max_len(L),
        max_d(Ld),
        height(2 * L + 3),
        c(L + 1, 0),
        avk(4, std::vector<std::vector<std::int64_t>>(Ld + 1,
                                                      std::vector<std::int64_t>(2 * Ld + 1, 0))),
        visited(static_cast<std::size_t>(2 * L + 3) * height, 0) {
    for (int x = 0; x < 2 * L + 3; ++x) {
      visited[static_cast<std::size_t>(x) * height] = 1;
      visited[static_cast<std::size_t>(x) * height + height - 1] = 1;
    }
    for (int y = 0; y < height; ++y) {
      visited[y] = 1;
      visited[static_cast<std::size_t>(2 * L + 2) * height + y] = 1;
    }
    start = (L + 1) * height + (L + 1);
    neighbor_idx[0] = start + height;
    neighbor_idx[1] = start - height;
    neighbor_idx[2] = start + 1;
    neighbor_idx[3] = start - 1;
  }

  void set_flags(int idx, int delta) {
    for (int v = 0; v < 4; ++v)
      if (idx == neighbor_idx[v]) on_path[v] += delta;
  }

  void dfs(int idx, int layer, int len, int count_from, int cap,
           std::vector<std::vector<int>>* prefixes, std::vector<int>* trail) {
    if (len >= count_from) {
      ++c[len];
      if (len <= max_d)
        for (int v = 0; v < 4; ++v)
          if (!on_path[v]) ++avk[v][len][layer + max_d];
    }
    if (len == cap) {
      if (prefixes) prefixes->push_back(*trail);
      return;
    }
    const int moves[4] = {height, -height, 1, -1};
    for (int m = 0; m < 4; ++m) {
      int nidx = idx + moves[m];
      if (visited[nidx]) continue;
      visited[nidx] = 1;
      set_flags(nidx, +1);
      if (trail) trail->push_back(nidx);
      dfs(nidx, layer + (m == 2) - (m == 3), len + 1, count_from, cap, prefixes, trail);
      if (trail) trail->pop_back();
      set_flags(nidx, -1);
      visited[nidx] = 0;
    }
  }
};

}  // namespace

WalkCensus census(int max_a, int max_b, int max_c, int max_d, int threads) {
  if (max_a < 0 || max_b < 0 || max_c < 0 || max_d < 0)
    throw std::invalid_argument("census: negative length cap");
  if (std::max({max_a, max_b, max_c, max_d}) > 26)
    throw std::length_error("census: length caps beyond budget (max 26)");
  WalkCensus out;
  out.max_a = max_a;
  out.max_b = max_b;
  out.max_c = max_c;
  out.max_d = max_d;

  // Half-plane pass for a and b.
  {
    const int L = std::max(max_a, max_b);
    HalfPlaneEnum seq(L);
    std::vector<std::vector<int>> prefixes;
    std::vector<int> trail;
    seq.visited[seq.start] = 1;
    seq.dfs(seq.start, 1, 0, 1, std::min(kPrefixDepth, L), &prefixes, &trail);

    if (L > kPrefixDepth) {
      const int workers = worker_count(threads, prefixes.size());
      std::vector<HalfPlaneEnum> locals(workers, HalfPlaneEnum(L));
      std::atomic<std::size_t> next{0};
      auto run = [&](int w) {
        HalfPlaneEnum& e = locals[w];
        e.visited[e.start] = 1;
        for (std::size_t i = next.fetch_add(1); i < prefixes.size(); i = next.fetch_add(1)) {
          const auto& pre = prefixes[i];
          for (int idx : pre) e.visited[idx] = 1;
          e.dfs(pre.back(), pre.back() % e.height, kPrefixDepth, kPrefixDepth + 1, L, nullptr,
                nullptr);
          for (int idx : pre) e.visited[idx] = 0;
        }
      };
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
      for (auto& t : pool) t.join();
      for (const auto& e : locals)
        for (int l = 0; l <= L; ++l) {
          seq.a[l] += e.a[l];
          seq.b[l] += e.b[l];
        }
    }

    out.a.assign(seq.a.begin(), seq.a.begin() + max_a + 1);
    out.b.assign(seq.b.begin(), seq.b.begin() + max_b + 1);
    out.a[0] = out.b[0] = 1;
  }

  // Full-plane pass for c and the avoid tallies.
  {
    const int L = std::max(max_c, max_d);
    FullPlaneEnum seq(L, max_d);
    std::vector<std::vector<int>> prefixes;
    std::vector<int> trail;
    seq.visited[seq.start] = 1;
    seq.dfs(seq.start, 0, 0, 1, std::min(kPrefixDepth, L), &prefixes, &trail);

    if (L > kPrefixDepth) {
      const int workers = worker_count(threads, prefixes.size());
      std::vector<FullPlaneEnum> locals(workers, FullPlaneEnum(L, max_d));
      std::atomic<std::size_t> next{0};
      auto run = [&](int w) {
        FullPlaneEnum& e = locals[w];
        e.visited[e.start] = 1;
        for (std::size_t i = next.fetch_add(1); i < prefixes.size(); i = next.fetch_add(1)) {
          const auto& pre = prefixes[i];
          for (int idx : pre) {
            e.visited[idx] = 1;
            e.set_flags(idx, +1);
          }
          int layer = pre.back() % e.height - (L + 1);
          e.dfs(pre.back(), layer, kPrefixDepth, kPrefixDepth + 1, L, nullptr, nullptr);
          for (int idx : pre) {
            e.visited[idx] = 0;
            e.set_flags(idx, -1);
          }
        }
      };
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
      for (auto& t : pool) t.join();
      for (auto& e : locals) {
        for (int l = 0; l <= L; ++l) seq.c[l] += e.c[l];
        for (int v = 0; v < 4; ++v)
          for (int l = 0; l <= max_d; ++l)
            for (int y = 0; y <= 2 * max_d; ++y) seq.avk[v][l][y] += e.avk[v][l][y];
      }
    }

    out.c.assign(seq.c.begin(), seq.c.begin() + max_c + 1);
    out.c[0] = 1;
    out.avk = std::move(seq.avk);
    for (int v = 0; v < 4; ++v) out.avk[v][0][max_d] = 1;
    out.d.assign(max_d + 1, 0);
    for (int l = 0; l <= max_d; ++l) {
      std::int64_t best = 0;
      for (int v = 0; v < 4; ++v)
        for (int y = 0; y <= 2 * max_d; ++y) best = std::max(best, out.avk[v][l][y]);
      out.d[l] = best;
    }
  }
  return out;
}

const WalkCensus& golden_census() {
  static const WalkCensus golden = [] {
    WalkCensus g;
    g.max_a = 22;
    g.max_b = 21;
    g.max_c = 21;
    g.max_d = 20;
    g.a = {1,      2,      2,       4,       8,       20,       40,       100,
           216,    548,    1224,    3112,    7148,    18228,    42696,    109148,
           259520, 664868, 1599448, 4105276, 9969396, 25630164, 62724196};
    g.b = {1,      3,       7,       19,       49,       131,      339,      899,
           2345,   6199,    16225,   42811,    112285,   296051,   777411,   2049025,
           5384855, 14190509, 37313977, 98324565, 258654441, 681552747};
    g.c.assign(kGoldenA001411.begin(), kGoldenA001411.end());
    g.d = {1,    2,    4,     8,     18,     40,     90,      218,     516,     1250,   3090,
           7750, 19506, 49184, 124280, 314822, 802458, 2054136, 5262230, 13494874, 34647816};
    return g;
  }();
  return golden;
}

SmallCounts small_counts(int max_n) {
  SmallCounts out;
  out.n.assign(max_n + 1, 0);

  // Walks from the origin within heights <= 1, never visiting the vertex
  // below the origin, counted at their first step onto height 1.
  {
    const int L = max_n;
    std::set<std::pair<int, int>> blocked{{0, -1}, {0, 0}};
    auto dfs = [&](auto&& self, int x, int y, int len) -> void {
      if (len == max_n) return;
      const int dx[4] = {1, -1, 0, 0};
      const int dy[4] = {0, 0, 1, -1};
      for (int m = 0; m < 4; ++m) {
        int nx = x + dx[m], ny = y + dy[m];
        if (nx < -L || nx > L || ny < -L) continue;
        if (ny == 1) {
          ++out.n[len + 1];
          continue;
        }
        if (!blocked.insert({nx, ny}).second) continue;
        self(self, nx, ny, len + 1);
        blocked.erase({nx, ny});
      }
    };
    dfs(dfs, 0, 0, 0);
  }

  // Length-3 walks from (0,-i) to height 0 within heights <= 0.
  for (int i = 0; i <= 3; ++i) {
    auto dfs = [&](auto&& self, std::vector<std::pair<int, int>>& path) -> void {
      if (path.size() == 4) {
        if (path.back().second == 0) out.k_counts[i] += 1;
        return;
      }
      auto [x, y] = path.back();
      const int dx[4] = {1, -1, 0, 0};
      const int dy[4] = {0, 0, 1, -1};
      for (int m = 0; m < 4; ++m) {
        int nx = x + dx[m], ny = y + dy[m];
        if (ny > 0) continue;
        if (std::find(path.begin(), path.end(), std::make_pair(nx, ny)) != path.end()) continue;
        path.emplace_back(nx, ny);
        self(self, path);
        path.pop_back();
      }
    };
    std::vector<std::pair<int, int>> path{{0, -i}};
    dfs(dfs, path);
  }
  return out;
}

std::int64_t a_prime(int l, const WalkCensus& census) {
  if (l < 23 || l > 41) throw std::invalid_argument("a_prime: defined for l in 23..41");
  if (census.max_b < 12 || census.max_d < 20)
    throw std::invalid_argument("a_prime: census too shallow (needs b_12 and d_20)");
  const int q = l / 4, r = l % 4;
  auto b = [&](int i) { return census.b[i]; };
  switch (r) {
    case 0:
      return b(2 * (q - 5)) * b(2 * (q - 5)) * census.d[20];
    case 1:
      return b(2 * (q - 5)) * b(2 * (q - 4)) * census.d[19];
    case 2:
      return b(2 * (q - 5)) * b(2 * (q - 4)) * census.d[20];
    default:
      return b(2 * (q - 4)) * b(2 * (q - 4)) * census.d[19];
  }
}

RecursionReport verify_recursions(const WalkCensus& census) {
  RecursionReport report;
  auto note = [&](const std::string& s) {
    report.all_pass = false;
    if (report.violations.size() < 100) report.violations.push_back(s);
  };

  for (int l1 = 1; l1 <= census.max_b; ++l1)
    for (int l2 = 0; l2 <= census.max_d; ++l2)
      for (int l3 = 0; l3 <= census.max_b; ++l3) {
        int l = l1 + l2 + l3;
        if (l > census.max_a) continue;
        ++report.checks;
        unsigned __int128 rhs = static_cast<unsigned __int128>(census.b[l1]) * census.d[l2];
        rhs *= static_cast<unsigned __int128>(census.b[l3]);
        if (static_cast<unsigned __int128>(census.a[l]) > rhs) {
          std::ostringstream msg;
          msg << "a-split violated at (" << l1 << "," << l2 << "," << l3 << ")";
          note(msg.str());
        }
      }

  for (int l1 = 1; l1 <= census.max_c; ++l1)
    for (int l2 = 0; l2 <= census.max_d; ++l2) {
      int l = l1 + l2;
      if (l > census.max_d) continue;
      ++report.checks;
      unsigned __int128 rhs = static_cast<unsigned __int128>(census.c[l1]) * census.d[l2] * 3;
      if (static_cast<unsigned __int128>(census.d[l]) * 4 > rhs) {
        std::ostringstream msg;
        msg << "d-split violated at (" << l1 << "," << l2 << ")";
        note(msg.str());
      }
    }

  if (census.max_b >= 12 && census.max_d >= 20)
    for (int l = 23; l <= std::min(41, census.max_a); ++l) {
      ++report.checks;
      if (census.a[l] > a_prime(l, census)) {
        std::ostringstream msg;
        msg << "composite bound violated at a_" << l;
        note(msg.str());
      }
    }

  for (int n = 2; n + 1 <= census.max_b && n <= 20; ++n) {
    ++report.checks;
    if (100 * census.b[n + 1] > 276 * census.b[n]) {
      std::ostringstream msg;
      msg << "growth ratio b_" << n + 1 << "/b_" << n << " exceeds 2.76";
      note(msg.str());
    }
  }

  if (census.max_c >= 21) {
    ++report.checks;
    using boost::multiprecision::cpp_int;
    cpp_int lhs = 3 * cpp_int(census.c[21]) * boost::multiprecision::pow(cpp_int(100), 21);
    cpp_int rhs = 4 * boost::multiprecision::pow(cpp_int(276), 21);
    if (lhs > rhs) note("(3/4) c_21 exceeds 2.76^21");
  }
  return report;
}

double p_prime(int l, double p) {
  const double q = 1.0 - p;
  switch (l) {
    case 3:
      return 2.0 * std::pow(p, 3) * q;
    case 4:
      return 4.0 * std::pow(p, 4) * q + 2.0 * std::pow(p, 4) * (q * q * q + 3.0 * p * q * q);
    case 5:
      return 6.0 * std::pow(p, 5) * q * q + 6.0 * std::pow(p, 5) * q +
             4.0 * std::pow(p, 5) * (q * q * q + 3.0 * p * q * q) +
             2.0 * std::pow(p, 5) *
                 (std::pow(q, 5) + 5.0 * p * std::pow(q, 4) + 8.0 * p * p * std::pow(q, 3));
    default:
      throw std::invalid_argument("p_prime: closed form only for l in {3,4,5}");
  }
}

namespace {

using Vertex = std::pair<int, int>;
using Edge = std::pair<Vertex, Vertex>;

Edge make_edge(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Number of squares enclosed between a walk from (0,0) to (e,0) and the
// straight axis path joining its endpoints, by crossing parity.
int enclosed_size(const std::vector<Vertex>& path, std::set<std::pair<int, int>>* squares) {
  int e = path.back().first;
  std::map<std::pair<int, int>, int> horizontal;  // left end -> multiplicity
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto [x1, y1] = path[i];
    auto [x2, y2] = path[i + 1];
    if (y1 == y2) ++horizontal[{std::min(x1, x2), y1}];
  }
  for (int t = std::min(0, e); t < std::max(0, e); ++t) ++horizontal[{t, 0}];

  int minx = std::min(0, e), maxx = std::max(0, e), maxy = 0;
  for (auto [x, y] : path) {
    minx = std::min(minx, x);
    maxx = std::max(maxx, x);
    maxy = std::max(maxy, y);
  }
  int total = 0;
  for (int i = minx; i < maxx; ++i)
    for (int j = 0; j < maxy; ++j) {
      int crossings = 0;
      for (int y = 0; y <= j; ++y) {
        auto it = horizontal.find({i, y});
        if (it != horizontal.end()) crossings += it->second;
      }
      if (crossings % 2) {
        ++total;
        if (squares) squares->insert({i, j});
      }
    }
  return total;
}

std::vector<std::vector<Vertex>> off_axis_walks(int l) {
  std::vector<std::vector<Vertex>> walks;
  std::vector<Vertex> path{{0, 0}};
  auto dfs = [&](auto&& self) -> void {
    if (static_cast<int>(path.size()) == l + 1) {
      if (path.back().second != 0) return;
      bool off_axis = false;
      for (auto [x, y] : path) off_axis |= y != 0;
      if (off_axis) walks.push_back(path);
      return;
    }
    auto [x, y] = path.back();
    const int dx[4] = {1, -1, 0, 0};
    const int dy[4] = {0, 0, 1, -1};
    for (int m = 0; m < 4; ++m) {
      int nx = x + dx[m], ny = y + dy[m];
      if (ny < 0) continue;
      if (std::find(path.begin(), path.end(), Vertex{nx, ny}) != path.end()) continue;
      path.emplace_back(nx, ny);
      self(self);
      path.pop_back();
    }
  };
  dfs(dfs);
  return walks;
}

void open_connections(const std::set<Edge>& open, Vertex target, std::vector<Vertex>& path,
                      std::set<Vertex>& used, std::vector<int>& sizes) {
  Vertex cur = path.back();
  if (cur == target) {
    sizes.push_back(enclosed_size(path, nullptr));
    return;
  }
  const int dx[4] = {1, -1, 0, 0};
  const int dy[4] = {0, 0, 1, -1};
  for (int m = 0; m < 4; ++m) {
    Vertex nxt{cur.first + dx[m], cur.second + dy[m]};
    if (nxt.second < 0 || used.count(nxt)) continue;
    if (!open.count(make_edge(cur, nxt))) continue;
    path.push_back(nxt);
    used.insert(nxt);
    open_connections(open, target, path, used, sizes);
    used.erase(nxt);
    path.pop_back();
  }
}

}  // namespace

double p_prime_oracle(int l, double p) {
  if (l < 3 || l > 7) throw std::length_error("p_prime_oracle: budget covers l in {3..7}");
  double total = 0.0;
  for (const auto& walk : off_axis_walks(l)) {
    std::set<std::pair<int, int>> squares;
    const int own_size = enclosed_size(walk, &squares);

    std::set<Edge> walk_edges;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i)
      walk_edges.insert(make_edge(walk[i], walk[i + 1]));

    // Bonds bordering an enclosed square, excluding the walk's own.
    std::vector<Edge> inner;
    {
      std::set<Edge> seen;
      for (auto [i, j] : squares) {
        const Edge candidates[4] = {
            make_edge({i, j}, {i + 1, j}), make_edge({i, j + 1}, {i + 1, j + 1}),
            make_edge({i, j}, {i, j + 1}), make_edge({i + 1, j}, {i + 1, j + 1})};
        for (const Edge& edge : candidates)
          if (!walk_edges.count(edge) && seen.insert(edge).second) inner.push_back(edge);
      }
    }

    const Vertex target = walk.back();
    double walk_total = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << inner.size()); ++mask) {
      std::set<Edge> open = walk_edges;
      double weight = 1.0;
      for (std::size_t i = 0; i < inner.size(); ++i) {
        if (mask & (1u << i)) {
          open.insert(inner[i]);
          weight *= p;
        } else {
          weight *= 1.0 - p;
        }
      }
      std::vector<int> sizes;
      std::vector<Vertex> path{{0, 0}};
      std::set<Vertex> used{{0, 0}};
      open_connections(open, target, path, used, sizes);
      int min_size = *std::min_element(sizes.begin(), sizes.end());
      if (min_size < own_size) continue;
      if (std::count(sizes.begin(), sizes.end(), min_size) != 1)
        throw std::runtime_error("p_prime_oracle: minimal-size tie, lattice argument violated");
      walk_total += weight;
    }
    total += std::pow(p, l) * walk_total;
  }
  return total;
}

double w0_bound(double p, const WalkCensus& census) {
  if (!(p > 0.0 && p < 1.0 / 2.76))
    throw std::domain_error("w0_bound: tail diverges unless p < 1/2.76");
  if (census.max_a < 22 || census.max_b < 12 || census.max_d < 20)
    throw std::invalid_argument("w0_bound: census too shallow (needs a_22, b_12, d_20)");
  const double q2 = (1.0 - p * p) * (1.0 - p * p);
  double total = 1.0 + 2.0 * p / (1.0 - p);
  for (int l = 3; l <= 5; ++l) total += p_prime(l, p);
  for (int l = 6; l <= 22; ++l)
    total += static_cast<double>(census.a[l] - 2) * std::pow(p, l) * q2;
  for (int l = 23; l <= 41; ++l)
    total += static_cast<double>(a_prime(l, census)) * std::pow(p, l) * q2;
  const double head = static_cast<double>(census.b[10]) * census.b[12] * census.d[20];
  total += head * q2 * std::pow(p, 42) / (1.0 - 2.76 * p);
  return total;
}

C2Report c2_consistency(double p, const SmallCounts& counts, long mc_samples,
                        std::uint64_t seed, int mc_max_n) {
  if (!(p > 0.0 && p < 1.0 / 3.0)) throw std::domain_error("c2_consistency: needs p < 1/3");
  C2Report report;
  const std::int64_t expected[6] = {1, 2, 2, 2, 4, 8};
  report.coefficients_match = counts.n.size() > 6;
  for (int l = 1; l <= 6 && report.coefficients_match; ++l)
    report.coefficients_match = counts.n[l] == expected[l - 1];

  double series = 0.0;
  for (int l = 1; l <= 6; ++l) series += static_cast<double>(counts.n[l]) * std::pow(p, l);
  series += 64.0 * std::pow(p, 7) / (1.0 - 3.0 * p);
  report.series_value = series;
  report.c2_value = c2_constant(p);
  report.series_matches = std::fabs(series - report.c2_value) <= 1e-12;

  report.all_pass = report.coefficients_match && report.series_matches;
  for (int n = 1; n <= mc_max_n; ++n) {
    Estimate est = estimate_wbar_strip(p, n, mc_samples, seed + n);
    C2Report::McCheck check;
    check.n = n;
    check.mean = est.mean;
    check.std_error = est.std_error;
    check.bound = p * std::pow(report.c2_value, n - 1);
    check.ok = est.mean <= check.bound + 3.0 * est.std_error;
    report.all_pass = report.all_pass && check.ok;
    report.mc.push_back(check);
  }
  return report;
}

}  // namespace cylperc
