#pragma once

#include <string>
#include <vector>

#include "cylperc/monotonicity.hpp"
#include "cylperc/qsd.hpp"

namespace cylperc {

/// Closed-form constants for the onset bounds; c2 is +infinity for
/// p >= 1/3 and every c_i(p) ~ p as p -> 0.
double c1_constant(double p);
double c2_constant(double p);
double c3_constant(double p);

struct BoundConstants {
  double p = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;  // +inf for p >= 1/3
  double c3 = 0.0;
  double m = 0.0;        // k / (2 e c3(p))
  long m_prime = 1;      // ceil(m), at least 1
  double s_k = 0.0;      // k^2 (1 + 2/ln k)
  int n_k = 0;           // floor((k+2)/2)
};

BoundConstants bound_constants(int k, double p);

int n_k_steps(int k);

/// ln(500 k^6 1.95^k); valid for any k >= 3.
double N_main_log(int k);
/// ceil(500 k^6 1.95^k); throws overflow beyond k = 400 (use the log form).
double N_main(int k);

double N0(int k);
/// Onset bounds for intermediate p; +inf where the c2 sentinel propagates.
double N1_log(int k, double p);
double N2_log(int k, double p);
double N3_log(int k, double p);
double N4(int k, double p);
double N1(int k, double p);
double N2(int k, double p);
double N3(int k, double p);

struct SplitViolation {
  int k = 0;
  int interval = 0;  // 1..7
  double p = 0.0;
  double lhs_log = 0.0;
  double rhs_log = 0.0;
};

struct SplitReport {
  bool all_pass = true;
  long checks = 0;
  std::vector<SplitViolation> violations;
};

/// The seven-interval domination of the onset bounds by N(k), checked in
/// log-domain on a dense p-grid of every subinterval (boundary points
/// included), plus each interval bound <= N(k).
SplitReport verify_uniform_split(int k_lo, int k_hi, int grid_points = 1000);

struct AppendixReport {
  bool all_pass = true;
  long checks = 0;
  std::vector<std::string> violations;
};

/// Numeric grid checks of the analytic estimates backing the bound
/// formulas: the quadruple-power inequality behind c1, the e-bound for
/// (1+1/a)^(a+1/2), the s_k inequalities, the large-p inequalities, the
/// monotonicity list, and the binomial lower bound (both prefactor
/// variants) with exact big-integer binomials.
AppendixReport verify_appendix(int p_points = 10000, int k_max = 1000, int md_max = 200);

enum class ParamVariant { SmallP = 'a', MidP = 'b', LargeP = 'c' };

/// Formula-derived certificate parameters; the measure nu is materialized
/// when a chain is supplied (delta at the fully connected pattern for the
/// large-p variant, the random-percolation-pattern law otherwise).
MinorizationParams intermediate_params(int k, double p, ParamVariant variant,
                                       const PatternChain* chain = nullptr);

/// Law of the pattern obtained from one-layer percolation on the graph
/// with a uniformly random infected vertex; exact by enumeration of all
/// 2^|E| bond configurations. Rotation invariant on cycles.
std::vector<double> nu_p_distribution(const PatternChain& chain, double p);

}  // namespace cylperc
