#pragma once

#include <string>
#include <vector>

#include "cylperc/linalg.hpp"

namespace cylperc {

/// Substochastic restriction of an absorbing chain to its transient
/// states; the row deficit is the one-step absorption mass.
struct AbsorbingChain {
  Matrix Q;
  std::vector<std::string> labels;

  /// Checks nonnegativity, row sums <= 1 with at least one strict, and
  /// that the transient states communicate (|states| > 1). Throws on
  /// violation.
  void validate() const;
};

/// Dominant eigenpair data: alpha is the left Perron probability vector
/// (the quasi-stationary distribution), lambda the per-step survival
/// rate, eta the right Perron vector normalized so sum alpha*eta = 1.
struct QsdResult {
  std::vector<double> alpha;
  double lambda = 0.0;
  std::vector<double> eta;
  double residual_l1 = 0.0;      // ||alpha Q - lambda alpha||_1
  double residual_eta_inf = 0.0; // ||Q eta - lambda eta||_inf
  int iterations = 0;
};

QsdResult compute_qsd(const AbsorbingChain& chain, double tolerance = 1e-14,
                      int max_iterations = 1'000'000);

/// Stationary distribution of a row-stochastic irreducible aperiodic
/// matrix by the same left power iteration.
std::vector<double> stationary_distribution(const Matrix& m, double tolerance = 1e-14,
                                            int max_iterations = 1'000'000);

/// Law at time n conditioned on survival, plus accumulated log survival
/// mass; safe at horizons far beyond floating-point underflow.
struct ConditionedLaw {
  std::vector<double> distribution;
  double log_survival = 0.0;
};

ConditionedLaw conditioned_distribution(const AbsorbingChain& chain, std::vector<double> mu,
                                        long n);

/// min over starts y and x in supp(nu) of P^y(X_{n_nu} = x | alive) / nu(x);
/// zero signals an unusable (nu, n_nu) pair.
double minorization_constant(const AbsorbingChain& chain, const std::vector<double>& nu,
                             int n_nu);

/// Survival-ratio comparison constant: finite-horizon minimum of
/// P^nu(alive n)/P^y(alive n) together with its n->infinity limit from the
/// right Perron vector. The certified constant is the minimum of both; the
/// caveat flag records that intermediate n beyond the horizon are covered
/// by the asymptotics only.
struct SurvivalComparison {
  double finite_min = 0.0;
  double asymptotic_min = 0.0;
  double certified = 0.0;
  int horizon = 0;
  bool finite_horizon_caveat = true;
};

SurvivalComparison survival_comparison_constant(const AbsorbingChain& chain,
                                                const std::vector<double>& nu, int horizon);

/// Control parameters for the convergence certificate and the onset bound.
struct MinorizationParams {
  std::vector<double> nu;
  int n_nu = 1;
  double c_nu = 0.0;
  double c_nu_prime = 0.0;
  double c_alpha = 0.0;
  double c_dagger = 0.0;
  int n_dagger = 0;
};

/// Checks sum_x |P^mu(X_n = x | alive) - alpha(x)| against
/// 2 (1 - c_nu c_nu')^floor(n/n_nu) for all n <= horizon. Also reports the
/// margin against the sharper bound without the factor 2.
struct ConvergenceReport {
  bool holds = false;
  double worst_margin = 0.0;  // min over n of bound - distance
  long worst_n = 0;
  bool sharper_holds = false;
  double sharper_worst_margin = 0.0;
};

ConvergenceReport verify_convergence_bound(const AbsorbingChain& chain,
                                           const MinorizationParams& params,
                                           std::vector<double> mu, int horizon);

/// Onset bound N = max{n_dagger, n_nu * ceil(ln((2-c_d)/(c_d c_a)) /
/// -ln(1 - c_nu c_nu'))}; the ceiling term vanishes when c_nu c_nu' = 1.
long onset_bound(const MinorizationParams& params);

/// min_x alpha(x) >= p^((k^2+2)/2) (1-p)^((k^2+k)/2) - 1e-12, the floor
/// valid for the cylinder pattern chain restricted to attainable states.
bool qsd_floor_check(const QsdResult& result, int k, double p);

double qsd_floor(int k, double p);

}  // namespace cylperc
