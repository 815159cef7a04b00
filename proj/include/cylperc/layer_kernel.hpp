#pragma once

#include <cstdint>
#include <vector>

#include "cylperc/graph.hpp"
#include "cylperc/linalg.hpp"
#include "cylperc/pattern.hpp"
#include "cylperc/pattern_space.hpp"
#include "cylperc/rational.hpp"

namespace cylperc {

/// One layer of bonds: bits 0..n-1 are the vertical bonds below vertex i,
/// bits n.. are the horizontal bonds, one per edge of the graph in edge
/// order (for a cycle, edge i joins i and i+1 mod k).
struct LayerConfig {
  std::uint32_t open_mask = 0;
};

/// Pattern at the next layer given the pattern below and one layer of
/// bonds: union-find over both layers, seeded with the lower pattern's
/// blocks, with infection carried along connections to the lower marked
/// block. Output canonical.
Pattern successor(const Graph& g, const Pattern& y, std::uint32_t open_mask);

/// Marker-free variant on vertex partitions in restricted-growth form.
std::vector<std::uint8_t> successor_partition(const Graph& g,
                                              const std::vector<std::uint8_t>& assign,
                                              std::uint32_t open_mask);

/// Exact one-layer transition counts: counts(y,x)[j] is the number of
/// layer configurations with j open bonds mapping pattern y to pattern x.
/// One enumeration serves every p: pi_p(y,x) = sum_j c_j p^j (1-p)^(m-j).
struct TransitionKernel {
  Graph graph;
  int bonds = 0;  // total bonds per layer
  // rows[y]: (x, counts by open-bond number), x ascending
  std::vector<std::vector<std::pair<int, std::vector<std::int64_t>>>> rows;

  const std::vector<std::int64_t>* counts(int y, int x) const;
  bool positive(int y, int x) const { return counts(y, x) != nullptr; }
  double probability(int y, int x, double p) const;
  Rational probability_exact(int y, int x, const Rational& p) const;

  /// Row-stochastic matrix over the whole pattern space at parameter p.
  Matrix evaluate(double p) const;
  /// Substochastic restriction to a subset of states (positions follow
  /// the order of `subset`).
  Matrix evaluate_restricted(double p, const std::vector<int>& subset) const;
  std::vector<std::vector<Rational>> evaluate_restricted_exact(
      const Rational& p, const std::vector<int>& subset) const;
};

/// Exhaustive enumeration of all 2^bonds layer configurations per source
/// pattern. Rows may be built in parallel; the result is identical to the
/// sequential build. Throws the capacity error of PatternSpace::enumerate
/// beyond the cap.
TransitionKernel build_kernel(const PatternSpace& space, const Graph& g, int threads = 0);

/// Marker-free layer chain on vertex partitions (used for the time-zero
/// law of the pattern chain).
struct ConnectivityKernel {
  Graph graph;
  int bonds = 0;
  std::vector<std::vector<std::uint8_t>> states;  // restricted-growth strings
  std::vector<std::vector<std::pair<int, std::vector<std::int64_t>>>> rows;

  int index_of(const std::vector<std::uint8_t>& assign) const;
  double probability(int y, int x, double p) const;
  Matrix evaluate(double p) const;
  Matrix evaluate_restricted(double p, const std::vector<int>& subset) const;

  /// Reachability closure from the all-singletons partition: the states
  /// carrying the stationary law.
  std::vector<int> recurrent_class() const;
};

ConnectivityKernel connectivity_kernel(const Graph& g, int cap = 10);

}  // namespace cylperc
