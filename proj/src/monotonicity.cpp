#include "cylperc/monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace cylperc {

namespace {

constexpr int kExactStepCap = 16;

std::vector<int> position_map(const std::vector<int>& attainable, std::size_t total) {
  std::vector<int> pos(total, -1);
  for (std::size_t i = 0; i < attainable.size(); ++i) pos[attainable[i]] = static_cast<int>(i);
  return pos;
}

// Solves rho P = rho, sum rho = 1 over the rationals by Gaussian
// elimination; P given dense over the recurrent class.
std::vector<Rational> stationary_exact(const std::vector<std::vector<Rational>>& p) {
  const int n = static_cast<int>(p.size());
  // A = P^T - I with the last row replaced by ones; b = unit mass.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = p[j][i] - Rational(i == j ? 1 : 0);
  }
  for (int j = 0; j < n; ++j) a[n - 1][j] = 1;
  a[n - 1][n] = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::runtime_error("stationary_exact: singular system");
    std::swap(a[col], a[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<Rational> rho(n);
  for (int i = 0; i < n; ++i) rho[i] = a[i][n] / a[i][i];
  return rho;
}

}  // namespace

PatternChain PatternChain::build(const Graph& g, int origin, int cap, int threads) {
  if (origin < 0 || origin >= g.n) throw std::invalid_argument("origin out of range");
  PatternChain chain;
  chain.graph = g;
  chain.origin = origin;
  chain.space = PatternSpace::enumerate(g.n, cap);
  chain.kernel = build_kernel(chain.space, g, threads);
  chain.attainable = attainable_states(chain.space, chain.kernel, origin);
  chain.connectivity = connectivity_kernel(g, cap);
  return chain;
}

int PatternChain::position(const Pattern& p) const {
  int idx;
  try {
    idx = space.index_of(p);
  } catch (const std::invalid_argument&) {
    return -1;
  }
  auto it = std::lower_bound(attainable.begin(), attainable.end(), idx);
  if (it == attainable.end() || *it != idx) return -1;
  return static_cast<int>(it - attainable.begin());
}

Matrix PatternChain::restricted_matrix(double p) const {
  return kernel.evaluate_restricted(p, attainable);
}

std::vector<std::vector<Rational>> PatternChain::restricted_matrix_exact(const Rational& p) const {
  return kernel.evaluate_restricted_exact(p, attainable);
}

AbsorbingChain PatternChain::absorbing_chain(double p) const {
  AbsorbingChain chain;
  chain.Q = restricted_matrix(p);
  chain.labels.reserve(attainable.size());
  for (int idx : attainable) chain.labels.push_back(space.all[idx].to_string());
  return chain;
}

namespace {

// Marker attached to the origin's block of a marker-free partition.
Pattern attach_marker(int k, const std::vector<std::uint8_t>& assign, int origin) {
  std::vector<std::vector<int>> blocks(1 + *std::max_element(assign.begin(), assign.end()));
  for (int v = 0; v < k; ++v) blocks[assign[v]].push_back(v);
  blocks[assign[origin]].push_back(Pattern::kStar);
  return Pattern::canonicalize(k, blocks);
}

struct InitialLaw {
  std::vector<int> connectivity_states;  // recurrent class indices
  std::vector<int> positions;            // attainable position per class state
};

InitialLaw initial_law_support(const PatternChain& chain) {
  InitialLaw law;
  law.connectivity_states = chain.connectivity.recurrent_class();
  law.positions.reserve(law.connectivity_states.size());
  for (int ci : law.connectivity_states) {
    Pattern pat = attach_marker(chain.graph.n, chain.connectivity.states[ci], chain.origin);
    int pos = chain.position(pat);
    if (pos < 0)
      throw std::logic_error("initial law support outside attainable states: " + pat.to_string());
    law.positions.push_back(pos);
  }
  return law;
}

}  // namespace

std::vector<double> initial_distribution(const PatternChain& chain, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("initial_distribution: p must be in (0,1)");
  InitialLaw law = initial_law_support(chain);
  Matrix m = chain.connectivity.evaluate_restricted(p, law.connectivity_states);
  std::vector<double> rho = stationary_distribution(m);
  std::vector<double> out(chain.states(), 0.0);
  for (std::size_t i = 0; i < law.positions.size(); ++i) out[law.positions[i]] += rho[i];
  return out;
}

namespace {

std::vector<double> start_vector(const PatternChain& chain, double p, const ChainStart& start) {
  if (start.pattern_pos) {
    std::vector<double> v(chain.states(), 0.0);
    v.at(*start.pattern_pos) = 1.0;
    return v;
  }
  return initial_distribution(chain, p);
}

std::string start_name(const PatternChain& chain, const ChainStart& start) {
  return start.pattern_pos ? chain.pattern(*start.pattern_pos).to_string() : "stationary-initial";
}

}  // namespace

MarginalCurve marginal_curve(const PatternChain& chain, double p, ChainStart start, long horizon) {
  if (horizon < 0) throw std::invalid_argument("marginal_curve: negative horizon");
  if (static_cast<long long>(horizon + 1) * chain.states() > 40'000'000)
    throw std::length_error("marginal_curve: horizon too large to store; use marginal()");
  MarginalCurve curve;
  curve.k = chain.graph.n;
  curve.p = p;
  curve.start = start_name(chain, start);
  curve.horizon = horizon;
  Matrix q = chain.restricted_matrix(p);
  std::vector<double> v = start_vector(chain, p, start);
  KahanSum ls;
  curve.conditional.push_back(v);
  curve.log_survival.push_back(0.0);
  for (long n = 1; n <= horizon; ++n) {
    v = left_apply(v, q);
    double s = sum(v);
    if (s <= 0.0) throw std::runtime_error("marginal_curve: extinction at layer " + std::to_string(n));
    ls.add(std::log(s));
    for (auto& x : v) x /= s;
    curve.conditional.push_back(v);
    curve.log_survival.push_back(ls.total);
  }
  return curve;
}

double marginal(const PatternChain& chain, double p, ChainStart start, const Pattern& x, long n) {
  int space_idx = chain.space.index_of(x);  // throws if not a state
  int pos = chain.position(x);
  if (pos < 0) {
    if (x.is_infected()) return 0.0;  // infected but not attainable
    // Absorbed-state marginal: evolve over the whole pattern space.
    if (n > 100'000) throw std::length_error("marginal: dagger marginal horizon too large");
    Matrix full = chain.kernel.evaluate(p);
    std::vector<double> v(full.n, 0.0);
    if (start.pattern_pos) {
      v[chain.attainable[*start.pattern_pos]] = 1.0;
    } else {
      std::vector<double> init = initial_distribution(chain, p);
      for (int i = 0; i < chain.states(); ++i) v[chain.attainable[i]] = init[i];
    }
    for (long step = 0; step < n; ++step) v = left_apply(v, full);
    return v[space_idx];
  }
  Matrix q = chain.restricted_matrix(p);
  std::vector<double> v = start_vector(chain, p, start);
  KahanSum ls;
  for (long step = 0; step < n; ++step) {
    v = left_apply(v, q);
    double s = sum(v);
    if (s <= 0.0) return 0.0;
    ls.add(std::log(s));
    for (auto& x_ : v) x_ /= s;
  }
  return v[pos] * std::exp(ls.total);
}

std::vector<Rational> marginal_exact(const PatternChain& chain, const Rational& p,
                                     ChainStart start, int n) {
  if (n > kExactStepCap)
    throw std::length_error("marginal_exact: exact mode limited to n <= 16");
  auto q = chain.restricted_matrix_exact(p);
  std::vector<Rational> v(chain.states(), 0);
  if (start.pattern_pos) {
    v.at(*start.pattern_pos) = 1;
  } else {
    InitialLaw law = initial_law_support(chain);
    std::vector<std::vector<Rational>> cm(law.connectivity_states.size(),
                                          std::vector<Rational>(law.connectivity_states.size(), 0));
    std::unordered_map<int, int> pos;
    for (std::size_t i = 0; i < law.connectivity_states.size(); ++i)
      pos.emplace(law.connectivity_states[i], static_cast<int>(i));
    for (std::size_t i = 0; i < law.connectivity_states.size(); ++i) {
      for (const auto& [x, counts] : chain.connectivity.rows[law.connectivity_states[i]]) {
        auto it = pos.find(x);
        if (it == pos.end()) continue;
        Rational total = 0;
        Rational pw = 1;
        std::vector<Rational> pj(chain.connectivity.bonds + 1);
        for (int j = 0; j <= chain.connectivity.bonds; ++j) {
          pj[j] = pw;
          pw *= p;
        }
        Rational qw = 1;
        for (int j = chain.connectivity.bonds; j >= 0; --j) {
          if (counts[j]) total += Rational(counts[j]) * pj[j] * qw;
          qw *= Rational(1) - p;
        }
        cm[i][it->second] = total;
      }
    }
    std::vector<Rational> rho = stationary_exact(cm);
    for (std::size_t i = 0; i < law.positions.size(); ++i) v[law.positions[i]] += rho[i];
  }
  for (int step = 0; step < n; ++step) {
    std::vector<Rational> w(chain.states(), 0);
    for (int i = 0; i < chain.states(); ++i) {
      if (v[i] == 0) continue;
      for (int j = 0; j < chain.states(); ++j)
        if (q[i][j] != 0) w[j] += v[i] * q[i][j];
    }
    v = std::move(w);
  }
  return v;
}

namespace {

enum class Compare { Holds, Tie, Fails };

Compare compare_once(double at_n, double at_n1, double rel_tol) {
  if (at_n == at_n1) return Compare::Holds;  // covers the exact-zero case
  double margin = rel_tol * std::max(at_n, at_n1);
  if (at_n1 > at_n + margin) return Compare::Fails;
  if (at_n - at_n1 > margin) return Compare::Holds;
  return Compare::Tie;
}

}  // namespace

MonotoneCheck check_monotone_at(const PatternChain& chain, double p, long n,
                                const std::vector<int>* start_positions, double rel_tol) {
  std::vector<int> all;
  if (!start_positions) {
    all.resize(chain.states());
    for (int i = 0; i < chain.states(); ++i) all[i] = i;
    start_positions = &all;
  }
  Matrix q = chain.restricted_matrix(p);
  bool any_tie = false;
  std::vector<int> tied_starts;
  for (int y : *start_positions) {
    std::vector<double> v(chain.states(), 0.0);
    v[y] = 1.0;
    for (long step = 0; step < n; ++step) {
      v = left_apply(v, q);
      double s = sum(v);
      if (s <= 0.0) throw std::runtime_error("check_monotone_at: extinction from start");
      for (auto& x : v) x /= s;
    }
    // w is the next layer's law in the same conditional frame as v, so the
    // comparison below is the absolute one up to a common positive factor.
    std::vector<double> w = left_apply(v, q);
    bool tie_here = false;
    for (int x = 0; x < chain.states(); ++x) {
      switch (compare_once(v[x], w[x], rel_tol)) {
        case Compare::Fails:
          return {false, true, false};
        case Compare::Tie:
          tie_here = true;
          break;
        case Compare::Holds:
          break;
      }
    }
    if (tie_here) {
      any_tie = true;
      tied_starts.push_back(y);
    }
  }
  if (!any_tie) return {true, true, false};
  if (n + 1 > kExactStepCap) return {true, false, false};

  // Resolve ties exactly; the double p converts to a rational exactly.
  Rational pr(p);
  for (int y : tied_starts) {
    std::vector<Rational> at_n = marginal_exact(chain, pr, ChainStart::at(y), static_cast<int>(n));
    std::vector<Rational> at_n1 =
        marginal_exact(chain, pr, ChainStart::at(y), static_cast<int>(n + 1));
    for (int x = 0; x < chain.states(); ++x)
      if (at_n1[x] > at_n[x]) return {false, true, true};
  }
  return {true, true, true};
}

std::optional<long> empirical_onset(const PatternChain& chain, double p, long n_max) {
  for (long n = 0; n <= n_max; ++n) {
    MonotoneCheck check = check_monotone_at(chain, p, n);
    if (check.monotone && check.conclusive) return n;
  }
  return std::nullopt;
}

double connection_probability(const PatternChain& chain, double p, int v, long n) {
  if (v < 0 || v >= chain.graph.n) throw std::invalid_argument("connection_probability: bad vertex");
  Matrix q = chain.restricted_matrix(p);
  std::vector<double> law = initial_distribution(chain, p);
  KahanSum ls;
  for (long step = 0; step < n; ++step) {
    law = left_apply(law, q);
    double s = sum(law);
    if (s <= 0.0) return 0.0;
    ls.add(std::log(s));
    for (auto& x : law) x /= s;
  }
  double total = 0.0;
  for (int i = 0; i < chain.states(); ++i)
    if (chain.pattern(i).infected(v)) total += law[i];
  return total * std::exp(ls.total);
}

double expected_infected(const PatternChain& chain, double p, long n) {
  Matrix q = chain.restricted_matrix(p);
  std::vector<double> law = initial_distribution(chain, p);
  KahanSum ls;
  for (long step = 0; step < n; ++step) {
    law = left_apply(law, q);
    double s = sum(law);
    if (s <= 0.0) return 0.0;
    ls.add(std::log(s));
    for (auto& x : law) x /= s;
  }
  double total = 0.0;
  for (int i = 0; i < chain.states(); ++i) total += law[i] * chain.pattern(i).infected_count();
  return total * std::exp(ls.total);
}

ImplicationReport verify_implication_chain(const PatternChain& chain, double p, long n) {
  constexpr double tol = 1e-12;
  ImplicationReport report;
  report.pattern_transitions = check_monotone_at(chain, p, n).monotone;

  Matrix q = chain.restricted_matrix(p);
  std::vector<double> law = initial_distribution(chain, p);
  for (long step = 0; step < n; ++step) {
    law = left_apply(law, q);
    double s = sum(law);
    for (auto& x : law) x /= s;
  }
  std::vector<double> next = left_apply(law, q);

  report.pattern_marginals = true;
  for (int x = 0; x < chain.states(); ++x) {
    double a = law[x];
    double b = next[x];  // already scaled relative to law's conditional frame
    if (b > a + tol * std::max(a, b)) report.pattern_marginals = false;
  }

  report.connections = true;
  for (int v = 0; v < chain.graph.n; ++v) {
    double a = 0.0, b = 0.0;
    for (int i = 0; i < chain.states(); ++i)
      if (chain.pattern(i).infected(v)) {
        a += law[i];
        b += next[i];
      }
    if (b > a + tol * std::max(a, b)) report.connections = false;
  }

  double ea = 0.0, eb = 0.0;
  for (int i = 0; i < chain.states(); ++i) {
    ea += law[i] * chain.pattern(i).infected_count();
    eb += next[i] * chain.pattern(i).infected_count();
  }
  report.expectation = eb <= ea + tol * std::max(ea, eb);

  report.ordering_respected = (!report.pattern_transitions || report.pattern_marginals) &&
                              (!report.pattern_marginals || report.connections) &&
                              (!report.connections || report.expectation);
  return report;
}

}  // namespace cylperc
