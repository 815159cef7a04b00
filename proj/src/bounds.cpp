#include "cylperc/bounds.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cylperc {

namespace {

constexpr double kE = 2.718281828459045235360287;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_open_unit(double p, const char* who) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error(std::string(who) + ": p must lie in (0,1)");
}

}  // namespace

double c1_constant(double p) {
  require_open_unit(p, "c1");
  const double q = 1.0 - p;
  return p + q * p * p * p + 3.0 * q * q * std::pow(p, 5) + 9.0 * q * q * q * std::pow(p, 7);
}

double c2_constant(double p) {
  require_open_unit(p, "c2");
  if (p >= 1.0 / 3.0) return kInf;
  double s = p + 2 * std::pow(p, 2) + 2 * std::pow(p, 3) + 2 * std::pow(p, 4) +
             4 * std::pow(p, 5) + 8 * std::pow(p, 6);
  return s + 64.0 / (1.0 - 3.0 * p) * std::pow(p, 7);
}

double c3_constant(double p) {
  require_open_unit(p, "c3");
  return 1.0 / (std::sqrt(1.0 / (p * p) + kE * kE / 4.0) - kE / 2.0);
}

int n_k_steps(int k) { return (k + 2) / 2; }

BoundConstants bound_constants(int k, double p) {
  if (k < 3) throw std::invalid_argument("bound_constants: k must be >= 3");
  BoundConstants c;
  c.p = p;
  c.c1 = c1_constant(p);
  c.c2 = c2_constant(p);
  c.c3 = c3_constant(p);
  c.m = k / (2.0 * kE * c.c3);
  c.m_prime = std::max<long>(1, static_cast<long>(std::ceil(c.m)));
  c.s_k = static_cast<double>(k) * k * (1.0 + 2.0 / std::log(k));
  c.n_k = n_k_steps(k);
  return c;
}

double N_main_log(int k) {
  if (k < 3) throw std::invalid_argument("N_main: k must be >= 3");
  return std::log(500.0) + 6.0 * std::log(k) + k * std::log(1.95);
}

double N_main(int k) {
  if (k > 400) throw std::overflow_error("N_main: k beyond 400, use N_main_log");
  return std::ceil(std::exp(N_main_log(k)));
}

double N0(int k) {
  if (k < 3) throw std::invalid_argument("N0: k must be >= 3");
  return 3.0 * k * k * (1.0 + 2.0 / std::log(k));
}

namespace {

double log_neg_log_pq(double p) { return std::log(-std::log(p * (1.0 - p))); }

// ln((1-p)/(1-p(1-p))), a negative number.
double log_insulation_ratio(double p) {
  return std::log1p(-p) - std::log1p(-p * (1.0 - p));
}

}  // namespace

double N1_log(int k, double p) {
  require_open_unit(p, "N1");
  BoundConstants c = bound_constants(k, p);
  if (!std::isfinite(c.c2)) return kInf;
  double kk = static_cast<double>(k);
  double num = log_neg_log_pq(p) + std::log(c.m + 5.0) +
               std::log(kk * kk + 1.5 * kk + 2.0) + 2.5 * std::log(kk) +
               (c.m + 4.0) * std::log(c.c2);
  double den = (c.m + 4.0) * std::log(p) + (kk / 2.0) * log_insulation_ratio(p) +
               std::log1p(-p) + (kk - 2.0) * std::log(c1_constant(1.0 - p));
  return num - den;
}

double N2_log(int k, double p) {
  require_open_unit(p, "N2");
  if (p > 0.5) throw std::domain_error("N2: formula valid for p <= 1/2");
  BoundConstants c = bound_constants(k, p);
  double kk = static_cast<double>(k);
  double num = log_neg_log_pq(p) + std::log(c.m + 5.0) +
               std::log(kk * kk + 1.5 * kk + 2.0) + 1.5 * std::log(kk);
  double den = (c.m + 5.0) * std::log(p) + (c.m + 1.0) * log_insulation_ratio(p) +
               std::log1p(-p) + (kk - 2.0) * std::log(c1_constant(1.0 - p));
  return num - den;
}

double N3_log(int k, double p) {
  require_open_unit(p, "N3");
  if (k < 3) throw std::invalid_argument("N3: k must be >= 3");
  double kk = static_cast<double>(k);
  double num = log_neg_log_pq(p) + std::log(1.5 * (kk * kk + 3.0 * kk + 3.0));
  double den = 4.0 * std::log(p) + (kk - 2.0) * std::log(c1_constant(p));
  return num - den;
}

double N4(int k, double p) {
  require_open_unit(p, "N4");
  if (!(p > 1.0 - 1.0 / (2.0 * k)))
    throw std::domain_error("N4: formula valid for p > 1 - 1/(2k)");
  double kk = static_cast<double>(k);
  return (kk * kk + 4.0 * kk) * std::log1p(-p) / (2.0 * std::log(2.0 * kk * (1.0 - p)));
}

double N1(int k, double p) { return std::exp(N1_log(k, p)); }
double N2(int k, double p) { return std::exp(N2_log(k, p)); }
double N3(int k, double p) { return std::exp(N3_log(k, p)); }

namespace {

struct IntervalCheck {
  int interval;
  double lo, hi;
  double (*lhs_log)(int, double);
  double rhs_log_const;  // ln of the interval bound
};

double log_n4(int k, double p) { return std::log(N4(k, p)); }
double log_n0(int k, double /*p*/) { return std::log(N0(k)); }

}  // namespace

SplitReport verify_uniform_split(int k_lo, int k_hi, int grid_points) {
  if (k_lo < 3 || k_hi < k_lo) throw std::invalid_argument("verify_uniform_split: bad k range");
  SplitReport report;
  for (int k = k_lo; k <= k_hi; ++k) {
    double kk = k;
    double lk = std::log(kk);
    const IntervalCheck checks[] = {
        {1, 1e-12, 1.0 / (3.0 * kk * kk), &log_n0, std::log(9.0) + 2.0 * lk},
        {2, 1.0 / (3.0 * kk * kk), 0.1, &N1_log, std::log(15.0) + 8.0 * lk + kk * std::log(1.53)},
        {3, 0.1, 0.315, &N1_log, std::log(526.0) + 5.5 * lk + kk * std::log(1.95)},
        {4, 0.315, 4.0 / 9.0, &N2_log, std::log(2119.0) + 4.5 * lk + kk * std::log(1.95)},
        {5, 4.0 / 9.0, 2.0 / 3.0, &N3_log, std::log(209.0) + 2.0 * lk + kk * std::log(1.95)},
        {6, 2.0 / 3.0, 1.0 - 1.0 / (kk * kk), &N3_log,
         std::log(16.0) + 2.5 * lk + kk * std::log(1.5)},
        {7, 1.0 - 1.0 / (kk * kk), 1.0 - 1e-12, &log_n4, std::log(7.0) + 2.0 * lk},
    };
    const double n_main = N_main_log(k);
    for (const auto& check : checks) {
      if (check.rhs_log_const > n_main + 1e-12) {
        report.all_pass = false;
        report.violations.push_back({k, check.interval, 0.0, check.rhs_log_const, n_main});
      }
      ++report.checks;
      for (int i = 0; i < grid_points; ++i) {
        double t = grid_points == 1 ? 0.0 : static_cast<double>(i) / (grid_points - 1);
        double p = check.lo + t * (check.hi - check.lo);
        double lhs = check.lhs_log(k, p);
        ++report.checks;
        if (lhs > check.rhs_log_const + 1e-12) {
          report.all_pass = false;
          report.violations.push_back({k, check.interval, p, lhs, check.rhs_log_const});
          if (report.violations.size() > 100) return report;
        }
      }
    }
  }
  return report;
}

namespace {

void check(AppendixReport& report, bool ok, const std::string& what) {
  ++report.checks;
  if (!ok) {
    report.all_pass = false;
    if (report.violations.size() < 200) report.violations.push_back(what);
  }
}

std::string describe(const char* lemma, double a, double b) {
  std::ostringstream out;
  out << lemma << " fails at (" << a << ", " << b << ")";
  return out.str();
}

}  // namespace

AppendixReport verify_appendix(int p_points, int k_max, int md_max) {
  AppendixReport report;

  // (p + (1-p)p^3 + 2(1-p)^2 p^5)^4 >= p c1(p)^3 on (0,1).
  for (int i = 1; i < p_points; ++i) {
    double p = static_cast<double>(i) / p_points;
    double q = 1.0 - p;
    double lhs = std::pow(p + q * p * p * p + 2.0 * q * q * std::pow(p, 5), 4);
    double rhs = p * std::pow(c1_constant(p), 3);
    check(report, lhs >= rhs * (1.0 - 1e-12), describe("quadruple power vs c1", p, 0));
  }

  // (1 + 1/a)^(a + 1/2) > e on a log-spaced grid.
  for (int i = 0; i <= 1000; ++i) {
    double a = 0.01 * std::pow(10000.0, i / 1000.0);  // 0.01 .. 100
    double lhs = (a + 0.5) * std::log1p(1.0 / a);
    check(report, lhs > 1.0, describe("(1+1/a)^(a+1/2) > e", a, 0));
  }

  // s_k >= (25/3) k >= 25 and f(k) >= 0.
  for (int k = 3; k <= k_max; ++k) {
    double sk = static_cast<double>(k) * k * (1.0 + 2.0 / std::log(k));
    check(report, sk >= 25.0 / 3.0 * k && 25.0 / 3.0 * k >= 25.0, describe("s_k floor", k, 0));
    double f = (sk - (static_cast<double>(k) * k - k + 9.0) / 2.0) * std::log(sk) -
               (sk - 2.0) * (1.0 + std::log(k)) +
               (static_cast<double>(k) * k + k) / 2.0 * std::log1p(-1.0 / sk);
    check(report, f >= 0.0, describe("f(k) >= 0", k, f));
  }

  // Large-p estimates: (1-p^(2k))/(p(1-p)) <= 2k and p^(k^2-k+1) >= (1-p)^k.
  for (int k = 3; k <= k_max; ++k) {
    double lo = 1.0 - 1.0 / (2.0 * k);
    for (int i = 0; i < 64; ++i) {
      double p = lo + (1.0 - 1e-9 - lo) * i / 63.0;
      double lhs = -std::expm1(2.0 * k * std::log(p)) / (p * (1.0 - p));
      check(report, lhs <= 2.0 * k * (1.0 + 1e-12), describe("(1-p^2k)/(p(1-p)) <= 2k", k, p));
      double left = (static_cast<double>(k) * k - k + 1.0) * std::log(p);
      double right = k * std::log1p(-p);
      check(report, left >= right, describe("p^(k^2-k+1) >= (1-p)^k", k, p));
    }
  }

  // Monotonicity list for the constituent terms of the N_i(k,p).
  {
    auto monotone = [&](double lo, double hi, bool increasing, auto&& f, const char* name) {
      double prev = f(lo);
      for (int i = 1; i <= p_points; ++i) {
        double p = lo + (hi - lo) * i / p_points;
        double cur = f(p);
        bool ok = increasing ? cur >= prev - 1e-9 * std::max(1.0, std::fabs(prev))
                             : cur <= prev + 1e-9 * std::max(1.0, std::fabs(prev));
        check(report, ok, describe(name, p, cur));
        prev = cur;
      }
    };
    auto neg_log_pq = [](double p) { return -std::log(p * (1.0 - p)); };
    monotone(1e-6, 0.5, false, neg_log_pq, "-ln(p(1-p)) decreasing on (0,1/2]");
    monotone(0.5, 1.0 - 1e-6, true, neg_log_pq, "-ln(p(1-p)) increasing on [1/2,1)");
    auto insulation = [](double p) { return (1.0 - p * (1.0 - p)) / (1.0 - p); };
    for (int i = 1; i < p_points; ++i) {
      double p = static_cast<double>(i) / p_points;
      check(report, insulation(p) > 1.0, describe("(1-p(1-p))/(1-p) > 1", p, 0));
    }
    monotone(1e-6, 1.0 - 1e-6, true, insulation, "(1-p(1-p))/(1-p) increasing");
    auto c1_over_p = [](double p) { return c1_constant(p) / p; };
    monotone(1e-6, 2.0 / 3.0, true, c1_over_p, "c1(p)/p increasing on (0,2/3]");
    monotone(2.0 / 3.0, 1.0 - 1e-6, false, c1_over_p, "c1(p)/p decreasing on [2/3,1)");
    auto c2_over_p = [](double p) { return c2_constant(p) / p; };
    auto c2_shifted = [](double p) { return (c2_constant(p) - p) / (p * p); };
    monotone(1e-6, 1.0 / 3.0 - 1e-6, true, c2_over_p, "c2(p)/p increasing on (0,1/3)");
    monotone(1e-6, 1.0 / 3.0 - 1e-6, true, c2_shifted, "(c2(p)-p)/p^2 increasing on (0,1/3)");
    for (int i = 1; i < p_points; ++i) {
      double p = static_cast<double>(i) / p_points;
      check(report, c3_constant(p) > p, describe("c3(p) > p", p, 0));
    }
    monotone(1e-6, 1.0 - 1e-6, true, c3_constant, "c3(p) increasing");
  }

  // Binomial lower bound with exact big-integer binomials; both prefactor
  // variants.
  {
    using boost::multiprecision::cpp_int;
    const int rows = 2 * md_max;
    std::vector<std::vector<cpp_int>> pascal(rows + 1);
    pascal[0] = {1};
    for (int r = 1; r <= rows; ++r) {
      pascal[r].assign(r + 1, 0);
      pascal[r][0] = pascal[r][r] = 1;
      for (int c = 1; c < r; ++c) pascal[r][c] = pascal[r - 1][c - 1] + pascal[r - 1][c];
    }
    for (int m = 1; m <= md_max; ++m)
      for (int d = 1; d <= md_max; ++d) {
        double lhs = std::log(pascal[m + d][d].convert_to<double>());
        double a = static_cast<double>(m) / d;
        double core = d * (1.0 + 0.5 * std::log(a * a + a));
        double rhs1 = -0.5 * std::log(8.0) + 0.5 * std::log(1.0 / d + 1.0 / m) + core;
        double rhs2 = -0.5 * std::log(8.0 * d) + core;
        check(report, lhs >= rhs1 - 1e-9, describe("binomial bound (1/sqrt 8 variant)", m, d));
        check(report, lhs >= rhs2 - 1e-9, describe("binomial bound (1/sqrt 8d variant)", m, d));
      }
  }

  return report;
}

MinorizationParams intermediate_params(int k, double p, ParamVariant variant,
                                       const PatternChain* chain) {
  require_open_unit(p, "intermediate_params");
  MinorizationParams params;
  params.c_alpha = qsd_floor(k, p);
  params.c_dagger = std::pow(1.0 - p, k);
  params.n_dagger = 0;
  BoundConstants c = bound_constants(k, p);
  if (variant == ParamVariant::LargeP) {
    params.n_nu = 3;
    params.c_nu = std::pow(p, 4) * std::pow(c.c1, k - 2);
    params.c_nu_prime = 1.0;
    if (chain) {
      params.nu.assign(chain->states(), 0.0);
      params.nu[chain->position(Pattern::full(k))] = 1.0;
    }
  } else {
    if (variant == ParamVariant::SmallP && p >= 1.0 / 3.0)
      throw std::domain_error("intermediate_params: small-p variant needs p < 1/3");
    if (variant == ParamVariant::MidP && p > 0.5)
      throw std::domain_error("intermediate_params: mid-p variant needs p <= 1/2");
    long mp = c.m_prime;
    params.n_nu = static_cast<int>(mp + 4);
    double cap = std::isfinite(c.c2) ? std::min(1.0, k * p * std::pow(c.c2, mp + 3)) : 1.0;
    double insulation = (1.0 - p) / (1.0 - p * (1.0 - p));
    params.c_nu = std::pow(p, mp + 4) *
                  std::pow(insulation, std::min(static_cast<double>(mp), k / 2.0)) *
                  (1.0 - p) * std::pow(c1_constant(1.0 - p), k - 2) /
                  (2.0 * std::sqrt(static_cast<double>(k)) * cap);
    params.c_nu_prime = 1.0 / k;
    if (chain) params.nu = nu_p_distribution(*chain, p);
  }
  return params;
}

std::vector<double> nu_p_distribution(const PatternChain& chain, double p) {
  require_open_unit(p, "nu_p_distribution");
  const Graph& g = chain.graph;
  const int e = static_cast<int>(g.edges.size());
  if (e > 24) throw std::length_error("nu_p_distribution: too many edges to enumerate");
  std::vector<double> out(chain.states(), 0.0);
  for (std::uint32_t z = 0; z < (1u << e); ++z) {
    double w = 1.0;
    for (int i = 0; i < e; ++i) w *= (z & (1u << i)) ? p : (1.0 - p);
    UnionFind uf(g.n);
    for (int i = 0; i < e; ++i)
      if (z & (1u << i)) uf.unite(g.edges[i].first, g.edges[i].second);
    std::vector<std::uint8_t> assign(g.n);
    {
      std::vector<int> label(g.n, -1);
      std::uint8_t next = 0;
      for (int v = 0; v < g.n; ++v) {
        int r = uf.find(v);
        if (label[r] < 0) label[r] = next++;
        assign[v] = static_cast<std::uint8_t>(label[r]);
      }
    }
    for (int v = 0; v < g.n; ++v) {
      std::vector<std::vector<int>> blocks(1 + *std::max_element(assign.begin(), assign.end()));
      for (int u = 0; u < g.n; ++u) blocks[assign[u]].push_back(u);
      blocks[assign[v]].push_back(Pattern::kStar);
      Pattern pat = Pattern::canonicalize(g.n, blocks);
      int pos = chain.position(pat);
      if (pos < 0)
        throw std::logic_error("nu_p_distribution: pattern outside attainable states: " +
                               pat.to_string());
      out[pos] += w / g.n;
    }
  }
  return out;
}

}  // namespace cylperc
