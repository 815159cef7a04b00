#include "cylperc/layer_kernel.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace cylperc {

namespace {

int worker_count(int requested, std::size_t jobs) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  int t = requested > 0 ? requested : hw;
  return static_cast<int>(std::min<std::size_t>(t, jobs ? jobs : 1));
}

// Union-find sweep over bottom layer (0..n-1) and top layer (n..2n-1).
// Returns, per top vertex, its root, plus whether it reaches the marked
// lower block.
struct SweepResult {
  std::vector<int> top_root;
  std::vector<char> top_infected;
};

SweepResult sweep(const Graph& g, const std::vector<std::uint8_t>& bottom_assign,
                  std::uint8_t marked_block, bool has_marker, std::uint32_t open_mask) {
  const int n = g.n;
  UnionFind uf(2 * n);
  // bottom connections given by the lower pattern
  std::vector<int> first_of_block(n + 1, -1);
  for (int v = 0; v < n; ++v) {
    int b = bottom_assign[v];
    if (first_of_block[b] < 0)
      first_of_block[b] = v;
    else
      uf.unite(first_of_block[b], v);
  }
  // vertical bonds
  for (int v = 0; v < n; ++v)
    if (open_mask & (1u << v)) uf.unite(v, n + v);
  // horizontal bonds in the top layer
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (open_mask & (1u << (n + e))) uf.unite(n + g.edges[e].first, n + g.edges[e].second);

  SweepResult out;
  out.top_root.resize(n);
  out.top_infected.assign(n, 0);
  std::vector<char> root_infected(2 * n, 0);
  if (has_marker)
    for (int v = 0; v < n; ++v)
      if (bottom_assign[v] == marked_block) root_infected[uf.find(v)] = 1;
  for (int v = 0; v < n; ++v) {
    int r = uf.find(n + v);
    out.top_root[v] = r;
    out.top_infected[v] = root_infected[r];
  }
  return out;
}

}  // namespace

Pattern successor(const Graph& g, const Pattern& y, std::uint32_t open_mask) {
  const int n = g.n;
  std::vector<std::uint8_t> bottom(y.assignment().begin(), y.assignment().begin() + n);
  SweepResult s = sweep(g, bottom, y.star_block(), true, open_mask);

  std::vector<std::vector<int>> blocks;
  std::unordered_map<int, int> block_of_root;
  int star_block = -1;
  for (int v = 0; v < n; ++v) {
    auto [it, inserted] = block_of_root.emplace(s.top_root[v], static_cast<int>(blocks.size()));
    if (inserted) blocks.emplace_back();
    blocks[it->second].push_back(v);
    if (s.top_infected[v]) star_block = it->second;
  }
  if (star_block >= 0)
    blocks[star_block].push_back(Pattern::kStar);
  else
    blocks.push_back({Pattern::kStar});
  return Pattern::canonicalize(n, blocks);
}

std::vector<std::uint8_t> successor_partition(const Graph& g,
                                              const std::vector<std::uint8_t>& assign,
                                              std::uint32_t open_mask) {
  const int n = g.n;
  SweepResult s = sweep(g, assign, 0, false, open_mask);
  std::vector<std::uint8_t> out(n);
  std::unordered_map<int, std::uint8_t> block_of_root;
  std::uint8_t next = 0;
  for (int v = 0; v < n; ++v) {
    auto [it, inserted] = block_of_root.emplace(s.top_root[v], next);
    if (inserted) ++next;
    out[v] = it->second;
  }
  return out;
}

const std::vector<std::int64_t>* TransitionKernel::counts(int y, int x) const {
  const auto& row = rows[y];
  auto it = std::lower_bound(row.begin(), row.end(), x,
                             [](const auto& entry, int key) { return entry.first < key; });
  if (it == row.end() || it->first != x) return nullptr;
  return &it->second;
}

namespace {

double poly_eval(const std::vector<std::int64_t>& counts, int bonds, double p) {
  // sum_j c_j p^j (1-p)^(bonds-j)
  const double q = 1.0 - p;
  double pw = 1.0;
  std::vector<double> ppow(bonds + 1);
  for (int j = 0; j <= bonds; ++j) {
    ppow[j] = pw;
    pw *= p;
  }
  double qw = 1.0;
  double total = 0.0;
  for (int j = bonds; j >= 0; --j) {
    if (counts[j]) total += static_cast<double>(counts[j]) * ppow[j] * qw;
    qw *= q;
  }
  return total;
}

Rational poly_eval_exact(const std::vector<std::int64_t>& counts, int bonds, const Rational& p) {
  const Rational q = Rational(1) - p;
  Rational total = 0;
  Rational ppow = 1;
  std::vector<Rational> pj(bonds + 1);
  for (int j = 0; j <= bonds; ++j) {
    pj[j] = ppow;
    ppow *= p;
  }
  Rational qw = 1;
  for (int j = bonds; j >= 0; --j) {
    if (counts[j]) total += Rational(counts[j]) * pj[j] * qw;
    qw *= q;
  }
  return total;
}

}  // namespace

double TransitionKernel::probability(int y, int x, double p) const {
  const auto* c = counts(y, x);
  return c ? poly_eval(*c, bonds, p) : 0.0;
}

Rational TransitionKernel::probability_exact(int y, int x, const Rational& p) const {
  const auto* c = counts(y, x);
  return c ? poly_eval_exact(*c, bonds, p) : Rational(0);
}

Matrix TransitionKernel::evaluate(double p) const {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("evaluate: p outside [0,1]");
  const int n = static_cast<int>(rows.size());
  if (static_cast<std::size_t>(n) * n > 200'000'000)
    throw std::length_error("evaluate: dense matrix too large");
  Matrix m(n);
  for (int y = 0; y < n; ++y)
    for (const auto& [x, c] : rows[y]) m.at(y, x) = poly_eval(c, bonds, p);
  return m;
}

Matrix TransitionKernel::evaluate_restricted(double p, const std::vector<int>& subset) const {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("evaluate: p outside [0,1]");
  std::unordered_map<int, int> pos;
  for (std::size_t i = 0; i < subset.size(); ++i) pos.emplace(subset[i], static_cast<int>(i));
  Matrix m(static_cast<int>(subset.size()));
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (const auto& [x, c] : rows[subset[i]]) {
      auto it = pos.find(x);
      if (it != pos.end()) m.at(static_cast<int>(i), it->second) = poly_eval(c, bonds, p);
    }
  return m;
}

std::vector<std::vector<Rational>> TransitionKernel::evaluate_restricted_exact(
    const Rational& p, const std::vector<int>& subset) const {
  std::unordered_map<int, int> pos;
  for (std::size_t i = 0; i < subset.size(); ++i) pos.emplace(subset[i], static_cast<int>(i));
  std::vector<std::vector<Rational>> m(subset.size(), std::vector<Rational>(subset.size(), 0));
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (const auto& [x, c] : rows[subset[i]]) {
      auto it = pos.find(x);
      if (it != pos.end()) m[i][it->second] = poly_eval_exact(c, bonds, p);
    }
  return m;
}

TransitionKernel build_kernel(const PatternSpace& space, const Graph& g, int threads) {
  if (g.n != space.k) throw std::invalid_argument("build_kernel: graph/space size mismatch");
  const int bonds = g.layer_bonds();
  if (bonds > 26) throw std::length_error("build_kernel: too many bonds per layer");

  TransitionKernel kernel;
  kernel.graph = g;
  kernel.bonds = bonds;
  kernel.rows.resize(space.all.size());

  const std::uint32_t total = 1u << bonds;
  auto build_row = [&](int y) {
    std::map<int, std::vector<std::int64_t>> acc;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
      Pattern x = successor(g, space.all[y], mask);
      auto [it, inserted] = acc.emplace(space.index_of(x), std::vector<std::int64_t>());
      if (inserted) it->second.assign(bonds + 1, 0);
      ++it->second[std::popcount(mask)];
    }
    kernel.rows[y].assign(acc.begin(), acc.end());
  };

  const int n_rows = static_cast<int>(space.all.size());
  const int workers = worker_count(threads, n_rows);
  if (workers <= 1) {
    for (int y = 0; y < n_rows; ++y) build_row(y);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int y = next.fetch_add(1); y < n_rows; y = next.fetch_add(1)) build_row(y);
      });
    for (auto& t : pool) t.join();
  }
  return kernel;
}

int ConnectivityKernel::index_of(const std::vector<std::uint8_t>& assign) const {
  auto it = std::lower_bound(states.begin(), states.end(), assign);
  if (it == states.end() || *it != assign)
    throw std::invalid_argument("partition not in connectivity space");
  return static_cast<int>(it - states.begin());
}

double ConnectivityKernel::probability(int y, int x, double p) const {
  const auto& row = rows[y];
  auto it = std::lower_bound(row.begin(), row.end(), x,
                             [](const auto& entry, int key) { return entry.first < key; });
  if (it == row.end() || it->first != x) return 0.0;
  return poly_eval(it->second, bonds, p);
}

Matrix ConnectivityKernel::evaluate(double p) const {
  Matrix m(static_cast<int>(states.size()));
  for (std::size_t y = 0; y < states.size(); ++y)
    for (const auto& [x, c] : rows[y]) m.at(static_cast<int>(y), x) = poly_eval(c, bonds, p);
  return m;
}

Matrix ConnectivityKernel::evaluate_restricted(double p, const std::vector<int>& subset) const {
  std::unordered_map<int, int> pos;
  for (std::size_t i = 0; i < subset.size(); ++i) pos.emplace(subset[i], static_cast<int>(i));
  Matrix m(static_cast<int>(subset.size()));
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (const auto& [x, c] : rows[subset[i]]) {
      auto it = pos.find(x);
      if (it != pos.end()) m.at(static_cast<int>(i), it->second) = poly_eval(c, bonds, p);
    }
  return m;
}

std::vector<int> ConnectivityKernel::recurrent_class() const {
  // All bonds closed maps every partition to all-singletons, so the class
  // reachable from all-singletons is the unique closed class.
  std::vector<std::uint8_t> singletons(states[0].size());
  for (std::size_t i = 0; i < singletons.size(); ++i)
    singletons[i] = static_cast<std::uint8_t>(i);
  std::vector<char> seen(states.size(), 0);
  std::deque<int> queue{index_of(singletons)};
  seen[queue.front()] = 1;
  std::vector<int> out;
  while (!queue.empty()) {
    int y = queue.front();
    queue.pop_front();
    out.push_back(y);
    for (const auto& [x, c] : rows[y]) {
      (void)c;
      if (!seen[x]) {
        seen[x] = 1;
        queue.push_back(x);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ConnectivityKernel connectivity_kernel(const Graph& g, int cap) {
  if (g.n > cap) {
    std::ostringstream msg;
    msg << "connectivity_kernel: k = " << g.n << " exceeds cap " << cap << " (Bell(" << g.n
        << ") = " << bell_number(g.n) << " partitions)";
    throw std::length_error(msg.str());
  }
  ConnectivityKernel kernel;
  kernel.graph = g;
  kernel.bonds = g.layer_bonds();

  // Enumerate restricted-growth strings of length n in lexicographic order.
  std::vector<std::uint8_t> a(g.n, 0);
  while (true) {
    kernel.states.push_back(a);
    int i = g.n - 1;
    for (; i > 0; --i) {
      std::uint8_t prefix_max = 0;
      for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, a[j]);
      if (a[i] <= prefix_max) break;
    }
    if (i == 0) break;
    ++a[i];
    std::fill(a.begin() + i + 1, a.end(), std::uint8_t{0});
  }

  kernel.rows.resize(kernel.states.size());
  const std::uint32_t total = 1u << kernel.bonds;
  for (std::size_t y = 0; y < kernel.states.size(); ++y) {
    std::map<int, std::vector<std::int64_t>> acc;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
      int x = kernel.index_of(successor_partition(g, kernel.states[y], mask));
      auto [it, inserted] = acc.emplace(x, std::vector<std::int64_t>());
      if (inserted) it->second.assign(kernel.bonds + 1, 0);
      ++it->second[std::popcount(mask)];
    }
    kernel.rows[y].assign(acc.begin(), acc.end());
  }
  return kernel;
}

}  // namespace cylperc
