#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cylperc/layer_kernel.hpp"
#include "cylperc/qsd.hpp"

namespace cylperc {

/// Everything needed to run the layer chain of infection patterns on one
/// graph: the pattern space, the exact transition counts, the attainable
/// infected states, and the marker-free layer chain that carries the
/// time-zero law.
struct PatternChain {
  Graph graph;
  int origin = 0;
  PatternSpace space;
  TransitionKernel kernel;
  std::vector<int> attainable;  // space indices, ascending
  ConnectivityKernel connectivity;

  static PatternChain build(const Graph& g, int origin = 0, int cap = 10, int threads = 0);

  int states() const { return static_cast<int>(attainable.size()); }
  const Pattern& pattern(int pos) const { return space.all[attainable[pos]]; }
  /// Position of a pattern within the attainable set, or -1.
  int position(const Pattern& p) const;

  /// Substochastic restriction of the transition matrix to the attainable
  /// infected states.
  Matrix restricted_matrix(double p) const;
  std::vector<std::vector<Rational>> restricted_matrix_exact(const Rational& p) const;
  AbsorbingChain absorbing_chain(double p) const;
};

/// Law of the pattern at layer zero: the marker-free partition of the
/// layer carries the stationary law of the marker-free layer chain (the
/// sweep from below is stationary), and the marker joins the origin's
/// block. Returned over attainable positions; sums to one.
std::vector<double> initial_distribution(const PatternChain& chain, double p);

/// Start of a marginal computation: a single attainable pattern or the
/// layer-zero law.
struct ChainStart {
  std::optional<int> pattern_pos;  // nullopt = layer-zero law
  static ChainStart at(int pos) { return {pos}; }
  static ChainStart stationary_initial() { return {std::nullopt}; }
};

/// Conditional laws on the attainable states for n = 0..horizon plus the
/// log survival mass per step; marginals are conditional * exp(log_survival).
struct MarginalCurve {
  int k = 0;
  double p = 0.0;
  std::string start;
  long horizon = 0;
  std::vector<std::vector<double>> conditional;  // [n][position]
  std::vector<double> log_survival;              // [n]

  double marginal(long n, int pos) const {
    return conditional[n][pos] * std::exp(log_survival[n]);
  }
};

MarginalCurve marginal_curve(const PatternChain& chain, double p, ChainStart start, long horizon);

/// P(X_n = x) for the given start; exact-rational variant limited to
/// n <= 16 returns the whole vector over attainable positions.
double marginal(const PatternChain& chain, double p, ChainStart start, const Pattern& x, long n);
std::vector<Rational> marginal_exact(const PatternChain& chain, const Rational& p,
                                     ChainStart start, int n);

/// Result of a single-layer monotonicity comparison. When float
/// comparisons tie within tolerance the check escalates to exact rational
/// arithmetic for n+1 <= 16 and is otherwise flagged inconclusive.
struct MonotoneCheck {
  bool monotone = false;
  bool conclusive = true;
  bool used_exact = false;
};

MonotoneCheck check_monotone_at(const PatternChain& chain, double p, long n,
                                const std::vector<int>* start_positions = nullptr,
                                double rel_tol = 1e-12);

/// Smallest n <= n_max at which the one-layer comparison holds from every
/// attainable start; holding at n certifies all larger n.
std::optional<long> empirical_onset(const PatternChain& chain, double p, long n_max = 64);

/// P((origin,0) <-> (v,n)) via the pattern marginals with the layer-zero
/// law as start.
double connection_probability(const PatternChain& chain, double p, int v, long n);

/// Expected number of infected vertices in layer n.
double expected_infected(const PatternChain& chain, double p, long n);

/// The four layer-monotonicity statements at (n, n+1), strongest first:
/// (i) all pattern transitions, (ii) pattern marginals from the layer-zero
/// law, (iii) connection probabilities, (iv) expected infected count.
struct ImplicationReport {
  bool pattern_transitions = false;
  bool pattern_marginals = false;
  bool connections = false;
  bool expectation = false;
  bool ordering_respected = false;
};

ImplicationReport verify_implication_chain(const PatternChain& chain, double p, long n);

}  // namespace cylperc
