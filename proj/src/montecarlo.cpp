#include "cylperc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace cylperc {

namespace {

int worker_count(int requested, long jobs) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  int t = requested > 0 ? requested : hw;
  return static_cast<int>(std::min<long>(t, std::max<long>(jobs, 1)));
}

// Raw layer state: block assignment per vertex plus infection flags. The
// infected vertices always form one block (or none).
struct SweepState {
  std::vector<std::uint8_t> assign;
  std::vector<char> infected;
};

SweepState singletons(int n) {
  SweepState s;
  s.assign.resize(n);
  for (int v = 0; v < n; ++v) s.assign[v] = static_cast<std::uint8_t>(v);
  s.infected.assign(n, 0);
  return s;
}

SweepState sweep_step(const Graph& g, const SweepState& bottom, std::uint32_t mask) {
  const int n = g.n;
  UnionFind uf(2 * n);
  std::vector<int> first_of_block(n, -1);
  for (int v = 0; v < n; ++v) {
    int b = bottom.assign[v];
    if (first_of_block[b] < 0)
      first_of_block[b] = v;
    else
      uf.unite(first_of_block[b], v);
  }
  for (int v = 0; v < n; ++v)
    if (mask & (1u << v)) uf.unite(v, n + v);
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (mask & (1u << (n + e))) uf.unite(n + g.edges[e].first, n + g.edges[e].second);

  std::vector<char> root_infected(2 * n, 0);
  for (int v = 0; v < n; ++v)
    if (bottom.infected[v]) root_infected[uf.find(v)] = 1;

  SweepState top;
  top.assign.resize(n);
  top.infected.assign(n, 0);
  std::vector<int> label(2 * n, -1);
  std::uint8_t next = 0;
  for (int v = 0; v < n; ++v) {
    int r = uf.find(n + v);
    if (label[r] < 0) label[r] = next++;
    top.assign[v] = static_cast<std::uint8_t>(label[r]);
    top.infected[v] = root_infected[r];
  }
  return top;
}

Pattern state_pattern(const Graph& g, const SweepState& s) {
  std::vector<std::vector<int>> blocks(1 + *std::max_element(s.assign.begin(), s.assign.end()));
  for (int v = 0; v < g.n; ++v) blocks[s.assign[v]].push_back(v);
  int star = -1;
  for (int v = 0; v < g.n; ++v)
    if (s.infected[v]) star = s.assign[v];
  if (star >= 0)
    blocks[star].push_back(Pattern::kStar);
  else
    blocks.push_back({Pattern::kStar});
  return Pattern::canonicalize(g.n, blocks);
}

}  // namespace

std::vector<Pattern> sweep_patterns(const Graph& g, int origin,
                                    const std::vector<std::uint32_t>& masks, int depth) {
  if (origin < 0 || origin >= g.n) throw std::invalid_argument("sweep_patterns: bad origin");
  if (depth < 0 || static_cast<std::size_t>(depth) >= masks.size() + 1)
    throw std::invalid_argument("sweep_patterns: depth outside mask range");
  SweepState state = singletons(g.n);
  std::vector<Pattern> out;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    state = sweep_step(g, state, masks[i]);
    int layer = static_cast<int>(i) - depth + 1;
    if (layer == 0)
      for (int v = 0; v < g.n; ++v) state.infected[v] = state.assign[v] == state.assign[origin];
    if (layer >= 0) out.push_back(state_pattern(g, state));
  }
  return out;
}

namespace {

std::vector<std::uint32_t> sample_masks(const Graph& g, const SimConfig& config,
                                        long sample_index) {
  BondSampler sampler(config.seed, static_cast<std::uint64_t>(sample_index), config.p);
  const int bonds = g.layer_bonds();
  // Layers -depth+1 .. horizon; the sweep below layer -depth+1 sees the
  // all-singletons truncation state.
  const int layers = config.depth + config.horizon;
  std::vector<std::uint32_t> masks(layers, 0);
  for (int i = 0; i < layers; ++i)
    for (int b = 0; b < bonds; ++b)
      if (sampler.open(static_cast<std::uint64_t>(i) * bonds + b)) masks[i] |= 1u << b;
  return masks;
}

}  // namespace

std::vector<Pattern> sample_chain_path(const Graph& g, int origin, const SimConfig& config,
                                       long sample_index) {
  if (config.depth < 1) throw std::invalid_argument("sample_chain_path: depth must be >= 1");
  return sweep_patterns(g, origin, sample_masks(g, config, sample_index), config.depth);
}

namespace {

template <typename PerSample>
Estimate run_estimator(long samples, std::uint64_t /*seed*/, int threads, PerSample&& value_of) {
  const int workers = worker_count(threads, samples);
  std::vector<long long> sums(workers, 0), sumsq(workers, 0);
  std::atomic<long> next{0};
  auto work = [&](int w) {
    constexpr long kBlock = 1024;
    for (;;) {
      long lo = next.fetch_add(kBlock);
      if (lo >= samples) break;
      long hi = std::min(samples, lo + kBlock);
      for (long s = lo; s < hi; ++s) {
        long long v = value_of(s);
        sums[w] += v;
        sumsq[w] += v * v;
      }
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  long long total = 0, total_sq = 0;
  for (int w = 0; w < workers; ++w) {
    total += sums[w];
    total_sq += sumsq[w];
  }
  Estimate e;
  e.samples = samples;
  e.mean = static_cast<double>(total) / samples;
  if (samples > 1) {
    double var = (static_cast<double>(total_sq) - samples * e.mean * e.mean) / (samples - 1);
    e.std_error = std::sqrt(std::max(0.0, var) / samples);
  }
  return e;
}

}  // namespace

Estimate estimate(const Graph& g, int origin, const SimConfig& config,
                  const FunctionalSpec& functional) {
  if (config.samples < 1) throw std::invalid_argument("estimate: need samples >= 1");
  SimConfig cfg = config;
  cfg.horizon = std::max(config.horizon, functional.layer);
  return run_estimator(cfg.samples, cfg.seed, cfg.threads, [&](long s) -> long long {
    std::vector<std::uint32_t> masks = sample_masks(g, cfg, s);
    // Sweep up only as far as the functional needs.
    SweepState state = singletons(g.n);
    const int layers = cfg.depth + functional.layer;
    for (int i = 0; i < layers; ++i) {
      state = sweep_step(g, state, masks[i]);
      int layer = i - cfg.depth + 1;
      if (layer == 0)
        for (int v = 0; v < g.n; ++v)
          state.infected[v] = state.assign[v] == state.assign[origin];
    }
    switch (functional.kind) {
      case FunctionalSpec::Kind::Marginal:
        return state_pattern(g, state) == *functional.target ? 1 : 0;
      case FunctionalSpec::Kind::Connection:
        return state.infected[functional.vertex] ? 1 : 0;
      case FunctionalSpec::Kind::InfectedCount: {
        long long c = 0;
        for (int v = 0; v < g.n; ++v) c += state.infected[v];
        return c;
      }
    }
    return 0;
  });
}

namespace {

// Edge ids on the Z strip: direction 0 = east from (x,y), 1 = north.
std::uint64_t strip_edge_id(int x, int y, int dir) {
  return ((static_cast<std::uint64_t>(static_cast<std::uint32_t>(x + (1 << 20)))) << 24) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(y + (1 << 20))) << 2) |
         static_cast<std::uint64_t>(dir);
}

std::uint64_t strip_vertex_key(int x, int y) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x + (1 << 20))) << 22) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(y + (1 << 20)));
}

}  // namespace

Estimate estimate_w_tilde0_strip(double p, int depth, long samples, std::uint64_t seed,
                                 int threads) {
  return run_estimator(samples, seed, threads, [&](long s) -> long long {
    BondSampler sampler(seed, static_cast<std::uint64_t>(s), p);
    // Lazy cluster walk from (0,0) over the half-plane 0 <= y <= depth.
    std::unordered_set<std::uint64_t> visited;
    std::vector<std::pair<int, int>> stack{{0, 0}};
    visited.insert(strip_vertex_key(0, 0));
    long long hits = 0;
    while (!stack.empty()) {
      auto [x, y] = stack.back();
      stack.pop_back();
      if (y == 0) ++hits;
      const std::pair<int, int> moves[4] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
      const std::uint64_t ids[4] = {
          strip_edge_id(x, y, 0), strip_edge_id(x - 1, y, 0), strip_edge_id(x, y, 1),
          strip_edge_id(x, y - 1, 1)};
      for (int m = 0; m < 4; ++m) {
        auto [nx, ny] = moves[m];
        if (ny < 0 || ny > depth) continue;
        if (!sampler.open(ids[m])) continue;
        if (visited.insert(strip_vertex_key(nx, ny)).second) stack.emplace_back(nx, ny);
      }
    }
    return hits;
  });
}

Estimate estimate_wbar_strip(double p, int n, long samples, std::uint64_t seed, int threads) {
  if (n < 1) throw std::invalid_argument("estimate_wbar_strip: n must be >= 1");
  return run_estimator(samples, seed, threads, [&](long s) -> long long {
    BondSampler sampler(seed, static_cast<std::uint64_t>(s), p);
    // Bonds of layers 1..n without the top layer's horizontals.
    std::unordered_set<std::uint64_t> visited;
    std::vector<std::pair<int, int>> stack{{0, 0}};
    visited.insert(strip_vertex_key(0, 0));
    long long hits = 0;
    while (!stack.empty()) {
      auto [x, y] = stack.back();
      stack.pop_back();
      if (y == n) {
        ++hits;
        continue;  // layer-n horizontals are excluded, nothing to extend
      }
      const std::pair<int, int> moves[4] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
      const std::uint64_t ids[4] = {
          strip_edge_id(x, y, 0), strip_edge_id(x - 1, y, 0), strip_edge_id(x, y, 1),
          strip_edge_id(x, y - 1, 1)};
      for (int m = 0; m < 4; ++m) {
        auto [nx, ny] = moves[m];
        if (ny < 0 || ny > n) continue;
        if (ny == y && y == 0) continue;  // no layer-0 horizontals in E_[1,n)
        if (!sampler.open(ids[m])) continue;
        if (visited.insert(strip_vertex_key(nx, ny)).second) stack.emplace_back(nx, ny);
      }
    }
    return hits;
  });
}

}  // namespace cylperc
