#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace cylperc {

/// Exact self-avoiding-walk counts on the square lattice.
///   a[l]  walks in the upper half-plane from the origin ending on the axis
///   b[l]  walks in the upper half-plane from the origin, any endpoint
///   c[l]  unrestricted walks from the origin (OEIS A001411)
///   avk[v][l][y]  unrestricted walks ending in layer y that avoid the
///                 origin-neighbor v (order E, W, N, S)
///   d[l]  max over (v, y) of avk[v][l][y]
/// Index 0 is the empty walk (= 1 everywhere).
struct WalkCensus {
  int max_a = 0, max_b = 0, max_c = 0, max_d = 0;
  std::vector<std::int64_t> a, b, c, d;
  std::vector<std::vector<std::vector<std::int64_t>>> avk;  // [4][l][y + max_d]

  std::int64_t avoid_count(int v, int l, int layer) const { return avk[v][l][layer + max_d]; }
};

/// Depth-first enumeration with backtracking, parallel over length-6 walk
/// prefixes with an associative integer merge; identical tables for any
/// worker count.
WalkCensus census(int max_a = 22, int max_b = 21, int max_c = 21, int max_d = 20,
                  int threads = 0);

/// The frozen reference tables (a to 22, b to 21, d to 20, c to 21 from
/// OEIS A001411); avoid-tallies empty.
const WalkCensus& golden_census();

/// OEIS A001411, terms 0..21.
extern const std::array<std::int64_t, 22> kGoldenA001411;

struct SmallCounts {
  // n[l]: walks from the origin to their first visit of the layer above,
  // avoiding the vertex below the origin, within the lower half-plane.
  std::vector<std::int64_t> n;
  // k_counts[i]: length-3 walks from (0,-i) ending on the axis, within the
  // lower half-plane.
  std::array<std::int64_t, 4> k_counts{};
};

SmallCounts small_counts(int max_n = 15);

struct RecursionReport {
  bool all_pass = true;
  long checks = 0;
  std::vector<std::string> violations;
};

/// Split inequalities a_{l1+l2+l3} <= b_{l1} d_{l2} b_{l3} and
/// d_{l1+l2} <= (3/4) c_{l1} d_{l2} over every split in table range, the
/// composite a-bounds for l in 23..41, the growth ratio b_{n+1}/b_n <= 2.76
/// for 2 <= n <= 20 and (3/4) c_21 <= 2.76^21 (exact integer arithmetic
/// where the tables reach).
RecursionReport verify_recursions(const WalkCensus& census);

/// Composite upper bound a'_l for l in 23..41 from the b/d tables.
std::int64_t a_prime(int l, const WalkCensus& census);

/// Probability that a length-l off-axis walk is the minimal open
/// connection of its endpoints: closed forms for l in {3,4,5}.
double p_prime(int l, double p);
/// Exhaustive oracle for l <= 7: enumerates the walks, all assignments of
/// the bonds under each walk's envelope, and the minimal-size open path
/// per assignment. Throws on a minimal-size tie (none expected).
double p_prime_oracle(int l, double p);

/// Upper bound for the expected number of axis vertices reached through
/// the upper half-plane; needs a to 22, b to 12, d to 20 and p < 1/2.76.
double w0_bound(double p, const WalkCensus& census);

struct C2Report {
  bool coefficients_match = false;
  double series_value = 0.0;
  double c2_value = 0.0;
  bool series_matches = false;
  struct McCheck {
    int n = 0;
    double mean = 0.0, std_error = 0.0, bound = 0.0;
    bool ok = false;
  };
  std::vector<McCheck> mc;
  bool all_pass = false;
};

/// Consistency of the one-layer series: measured small counts match the
/// series coefficients of c2, the summed series reproduces c2(p), and a
/// strip Monte Carlo estimate of the layer counts respects the recursive
/// bound p c2(p)^(n-1).
C2Report c2_consistency(double p, const SmallCounts& counts, long mc_samples = 200'000,
                        std::uint64_t seed = 0x5eedcafe, int mc_max_n = 5);

}  // namespace cylperc
