#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "cylperc/graph.hpp"
#include "cylperc/pattern.hpp"

namespace cylperc {

struct TransitionKernel;

std::uint64_t bell_number(int n);

/// All patterns on k vertices, indexed in lexicographic restricted-growth
/// order (index 0 is the fully connected infected pattern, the last index
/// the fully disconnected one).
struct PatternSpace {
  int k = 0;
  std::vector<Pattern> all;
  std::vector<int> star;    // infected pattern indices (block of * nonempty)
  std::vector<int> dagger;  // uninfected pattern indices

  /// Enumerates all Bell(k+1) patterns. Throws a capacity error above the
  /// cap (message names the Bell-number size).
  static PatternSpace enumerate(int k, int cap = 10);

  int index_of(const Pattern& p) const;
  bool is_star(int index) const { return all[index].is_infected(); }

  int full_index() const { return 0; }
  int disconnected_index() const { return static_cast<int>(all.size()) - 1; }

 private:
  std::unordered_map<Pattern, int, Pattern::Hash> index_;
};

/// True iff no quadruple v1<v2<v3<v4 on the cycle has v1~v3 and v2~v4
/// without v1~v2. The marker is ignored; cycle semantics.
bool is_noncrossing(const Pattern& x);

/// Attainable infected states: closure of the support of the time-zero law
/// under positive-probability transitions, intersected with the infected
/// patterns. Positivity of a transition does not depend on p, so this is a
/// pure reachability computation on the kernel's count table.
std::vector<int> attainable_states(const PatternSpace& space, const TransitionKernel& kernel,
                                   int origin = 0);

/// Support of the time-zero law: patterns whose vertex partition is
/// reachable by the marker-free layer chain from the all-singletons
/// partition, with the marker attached to the origin's block.
std::vector<int> initial_support(const PatternSpace& space, const TransitionKernel& kernel,
                                 int origin = 0);

/// Uninfected-pattern reachability closure from the all-singletons state;
/// these states are in bijection with the marker-free layer partitions.
std::vector<int> dagger_closure(const PatternSpace& space, const TransitionKernel& kernel);

}  // namespace cylperc
