#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cylperc/graph.hpp"
#include "cylperc/pattern.hpp"

namespace cylperc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Counter-based bond stream: every (seed, sample, bond) triple hashes to
/// an independent uniform, so parallel sampling in any order reproduces
/// the same configurations.
class BondSampler {
 public:
  BondSampler(std::uint64_t seed, std::uint64_t sample, double p)
      : stream_(splitmix64(seed ^ splitmix64(sample + 0x632be59bd9b4e019ull))),
        threshold_(static_cast<std::uint64_t>(p * 9007199254740992.0)) {}  // p * 2^53

  bool open(std::uint64_t bond_id) const {
    return (splitmix64(stream_ ^ splitmix64(bond_id + 1)) >> 11) < threshold_;
  }

 private:
  std::uint64_t stream_;
  std::uint64_t threshold_;
};

struct SimConfig {
  int k = 3;
  double p = 0.5;
  int depth = 200;  // layers below zero emulating the infinite lower cylinder
  int horizon = 5;
  long samples = 100'000;
  std::uint64_t seed = 1;
  int threads = 0;
};

/// Deterministic layered sweep over explicit bond masks. masks[i] holds
/// the bonds of layer i - depth (bit layout of LayerConfig); the returned
/// patterns are the layers 0..masks.size()-1-depth of the chain, with the
/// infection anchored at (origin, 0).
std::vector<Pattern> sweep_patterns(const Graph& g, int origin,
                                    const std::vector<std::uint32_t>& masks, int depth);

/// One sampled trajectory of the pattern chain on G x Z.
std::vector<Pattern> sample_chain_path(const Graph& g, int origin, const SimConfig& config,
                                       long sample_index);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

/// Per-sample integer functionals of one trajectory.
struct FunctionalSpec {
  enum class Kind { Marginal, Connection, InfectedCount } kind = Kind::InfectedCount;
  int layer = 0;
  std::optional<Pattern> target;  // Marginal
  int vertex = 0;                 // Connection
};

Estimate estimate(const Graph& g, int origin, const SimConfig& config,
                  const FunctionalSpec& functional);

/// Vertices of layer 0 reached from the origin using only bonds strictly
/// above the lower half-plane, on the line graph Z, truncated at `depth`
/// layers; the lazy cluster walk never touches bonds outside the cluster.
Estimate estimate_w_tilde0_strip(double p, int depth, long samples, std::uint64_t seed,
                                 int threads = 0);

/// Vertices of layer n reached from the origin without layer-n horizontal
/// bonds, on the line graph Z.
Estimate estimate_wbar_strip(double p, int n, long samples, std::uint64_t seed,
                             int threads = 0);

}  // namespace cylperc
