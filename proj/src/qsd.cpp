#include "cylperc/qsd.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace cylperc {

namespace {

std::vector<int> reachable(const Matrix& m, bool transpose) {
  std::vector<char> seen(m.n, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    int y = queue.front();
    queue.pop_front();
    for (int x = 0; x < m.n; ++x) {
      double v = transpose ? m.at(x, y) : m.at(y, x);
      if (v > 0.0 && !seen[x]) {
        seen[x] = 1;
        queue.push_back(x);
      }
    }
  }
  std::vector<int> out;
  for (int i = 0; i < m.n; ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

struct PowerResult {
  std::vector<double> vec;
  double lambda;
  double residual;
  int iterations;
};

// Left power iteration with L1 renormalization from the uniform start.
PowerResult left_power(const Matrix& m, double tol, int max_iter) {
  std::vector<double> v(m.n, 1.0 / m.n);
  double lambda = 0.0;
  double residual = 0.0;
  int it = 0;
  for (; it < max_iter; ++it) {
    std::vector<double> w = left_apply(v, m);
    lambda = sum(w);  // Rayleigh estimate for a nonnegative L1-normalized v
    if (lambda <= 0.0) throw std::runtime_error("power iteration: mass vanished");
    residual = 0.0;
    for (int i = 0; i < m.n; ++i) residual += std::fabs(w[i] - lambda * v[i]);
    for (auto& x : w) x /= lambda;
    v = std::move(w);
    if (residual <= tol) return {std::move(v), lambda, residual, it + 1};
  }
  return {std::move(v), lambda, residual, it};
}

PowerResult right_power(const Matrix& m, double tol, int max_iter) {
  std::vector<double> v(m.n, 1.0 / m.n);
  double lambda = 0.0;
  double residual = 0.0;
  int it = 0;
  for (; it < max_iter; ++it) {
    std::vector<double> w = right_apply(m, v);
    lambda = sum(w) / sum(v);
    if (!(lambda > 0.0)) throw std::runtime_error("power iteration: mass vanished");
    residual = 0.0;
    for (int i = 0; i < m.n; ++i) residual = std::max(residual, std::fabs(w[i] - lambda * v[i]));
    double s = sum(w);
    for (auto& x : w) x /= s;
    v = std::move(w);
    if (residual <= tol) return {std::move(v), lambda, residual, it + 1};
  }
  return {std::move(v), lambda, residual, it};
}

}  // namespace

void AbsorbingChain::validate() const {
  if (Q.n <= 1) throw std::invalid_argument("absorbing chain: need more than one transient state");
  bool some_deficit = false;
  for (int i = 0; i < Q.n; ++i) {
    double row = 0.0;
    for (int j = 0; j < Q.n; ++j) {
      if (Q.at(i, j) < 0.0) throw std::invalid_argument("absorbing chain: negative entry");
      row += Q.at(i, j);
    }
    if (row > 1.0 + 1e-12) throw std::invalid_argument("absorbing chain: row sum exceeds one");
    if (row < 1.0 - 1e-12) some_deficit = true;
  }
  if (!some_deficit) throw std::invalid_argument("absorbing chain: no absorption mass");
  if (static_cast<int>(reachable(Q, false).size()) != Q.n ||
      static_cast<int>(reachable(Q, true).size()) != Q.n)
    throw std::invalid_argument("absorbing chain: transient states do not communicate");
}

QsdResult compute_qsd(const AbsorbingChain& chain, double tolerance, int max_iterations) {
  chain.validate();
  PowerResult left = left_power(chain.Q, tolerance, max_iterations);
  if (left.residual > tolerance) {
    throw std::runtime_error("compute_qsd: no convergence within " +
                             std::to_string(max_iterations) +
                             " iterations, last residual " + std::to_string(left.residual));
  }
  PowerResult right = right_power(chain.Q, tolerance, max_iterations);

  QsdResult result;
  result.alpha = std::move(left.vec);
  result.residual_l1 = left.residual;
  result.iterations = left.iterations;
  // Bilinear Rayleigh quotient: accurate to the product of the two
  // residuals, which the long-horizon survival identities rely on.
  {
    std::vector<double> qe = right_apply(chain.Q, right.vec);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < chain.Q.n; ++i) {
      num += result.alpha[i] * qe[i];
      den += result.alpha[i] * right.vec[i];
    }
    result.lambda = num / den;
  }
  // Normalize eta so that sum_x alpha(x) eta(x) = 1.
  double inner = 0.0;
  for (int i = 0; i < chain.Q.n; ++i) inner += result.alpha[i] * right.vec[i];
  result.eta = std::move(right.vec);
  for (auto& e : result.eta) e /= inner;
  std::vector<double> qe = right_apply(chain.Q, result.eta);
  double res = 0.0;
  for (int i = 0; i < chain.Q.n; ++i)
    res = std::max(res, std::fabs(qe[i] - result.lambda * result.eta[i]));
  result.residual_eta_inf = res;
  return result;
}

std::vector<double> stationary_distribution(const Matrix& m, double tolerance,
                                            int max_iterations) {
  PowerResult r = left_power(m, tolerance, max_iterations);
  if (r.residual > tolerance)
    throw std::runtime_error("stationary_distribution: no convergence, residual " +
                             std::to_string(r.residual));
  return r.vec;
}

ConditionedLaw conditioned_distribution(const AbsorbingChain& chain, std::vector<double> mu,
                                        long n) {
  ConditionedLaw law;
  double s0 = sum(mu);
  if (s0 <= 0.0) throw std::invalid_argument("conditioned_distribution: empty start");
  for (auto& x : mu) x /= s0;
  KahanSum ls;
  for (long step = 0; step < n; ++step) {
    mu = left_apply(mu, chain.Q);
    double s = sum(mu);
    if (s <= 0.0)
      throw std::runtime_error("conditioned_distribution: extinction at step " +
                               std::to_string(step + 1));
    ls.add(std::log(s));
    for (auto& x : mu) x /= s;
  }
  law.log_survival = ls.total;
  law.distribution = std::move(mu);
  return law;
}

double minorization_constant(const AbsorbingChain& chain, const std::vector<double>& nu,
                             int n_nu) {
  if (n_nu < 1) throw std::invalid_argument("minorization_constant: n_nu must be >= 1");
  Matrix power = matrix_power(chain.Q, n_nu);
  double c = 1.0;
  for (int y = 0; y < chain.Q.n; ++y) {
    double alive = 0.0;
    for (int x = 0; x < chain.Q.n; ++x) alive += power.at(y, x);
    if (alive <= 0.0) return 0.0;
    for (int x = 0; x < chain.Q.n; ++x) {
      if (nu[x] <= 0.0) continue;
      double conditioned = power.at(y, x) / alive;
      if (conditioned < 1e-300) return 0.0;
      c = std::min(c, conditioned / nu[x]);
    }
  }
  return c;
}

SurvivalComparison survival_comparison_constant(const AbsorbingChain& chain,
                                                const std::vector<double>& nu, int horizon) {
  SurvivalComparison out;
  out.horizon = horizon;
  std::vector<double> survive(chain.Q.n, 1.0);  // Q^n 1
  out.finite_min = 1.0;
  for (int n = 0; n <= horizon; ++n) {
    double nu_mass = 0.0;
    for (int i = 0; i < chain.Q.n; ++i) nu_mass += nu[i] * survive[i];
    for (int i = 0; i < chain.Q.n; ++i)
      if (survive[i] > 0.0) out.finite_min = std::min(out.finite_min, nu_mass / survive[i]);
    if (n < horizon) survive = right_apply(chain.Q, survive);
  }
  QsdResult qsd = compute_qsd(chain);
  double nu_eta = 0.0;
  for (int i = 0; i < chain.Q.n; ++i) nu_eta += nu[i] * qsd.eta[i];
  out.asymptotic_min = 1.0;
  for (int i = 0; i < chain.Q.n; ++i)
    out.asymptotic_min = std::min(out.asymptotic_min, nu_eta / qsd.eta[i]);
  out.certified = std::min(out.finite_min, out.asymptotic_min);
  out.finite_horizon_caveat = true;
  return out;
}

ConvergenceReport verify_convergence_bound(const AbsorbingChain& chain,
                                           const MinorizationParams& params,
                                           std::vector<double> mu, int horizon) {
  QsdResult qsd = compute_qsd(chain);
  ConvergenceReport report;
  report.holds = true;
  report.sharper_holds = true;
  report.worst_margin = 2.0;
  report.sharper_worst_margin = 2.0;
  const double c = params.c_nu * params.c_nu_prime;
  // Measured L1 distances bottom out at a few ulp once the conditioned law
  // matches alpha to machine precision; a violation below this floor is
  // rounding, not substance.
  constexpr double kNoiseFloor = 1e-13;
  double s0 = sum(mu);
  for (auto& x : mu) x /= s0;
  for (int n = 0; n <= horizon; ++n) {
    double dist = l1_distance(mu, qsd.alpha);
    double decay = std::pow(1.0 - c, static_cast<double>(n / params.n_nu));
    double margin = 2.0 * decay - dist;
    if (margin < report.worst_margin) {
      report.worst_margin = margin;
      report.worst_n = n;
    }
    report.sharper_worst_margin = std::min(report.sharper_worst_margin, decay - dist);
    if (dist > 2.0 * decay + kNoiseFloor) report.holds = false;
    if (dist > decay + kNoiseFloor) report.sharper_holds = false;
    if (n < horizon) {
      mu = left_apply(mu, chain.Q);
      double s = sum(mu);
      if (s <= 0.0) throw std::runtime_error("verify_convergence_bound: extinction");
      for (auto& x : mu) x /= s;
    }
  }
  return report;
}

long onset_bound(const MinorizationParams& params) {
  const double c = params.c_nu * params.c_nu_prime;
  if (c <= 0.0)
    throw std::invalid_argument("onset_bound: c_nu * c_nu_prime must be positive");
  double term = 0.0;
  if (c < 1.0) {
    double num = std::log((2.0 - params.c_dagger) / (params.c_dagger * params.c_alpha));
    term = std::ceil(num / -std::log1p(-c));
    if (term < 0.0) term = 0.0;
  }
  return std::max<long>(params.n_dagger, params.n_nu * static_cast<long>(term));
}

double qsd_floor(int k, double p) {
  return std::pow(p, (static_cast<double>(k) * k + 2.0) / 2.0) *
         std::pow(1.0 - p, (static_cast<double>(k) * k + k) / 2.0);
}

bool qsd_floor_check(const QsdResult& result, int k, double p) {
  double min_alpha = *std::min_element(result.alpha.begin(), result.alpha.end());
  return min_alpha >= qsd_floor(k, p) - 1e-12;
}

}  // namespace cylperc
