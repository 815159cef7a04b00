#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <bit>
#include <cmath>

#include "cylperc/layer_kernel.hpp"
#include "cylperc/pattern_space.hpp"
#include "cylperc/qsd.hpp"

using namespace cylperc;

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("successor reproduces the worked one-layer example") {
  // k = 5, lower pattern {{*,0,1,2},{3,4}}, open vertical bond below 4,
  // open horizontal bonds {4,0} and {1,2}.
  Graph g = Graph::cycle(5);
  Pattern y = Pattern::canonicalize(5, {{Pattern::kStar, 0, 1, 2}, {3, 4}});
  std::uint32_t mask = 0;
  mask |= 1u << 4;        // vertical at 4
  mask |= 1u << (5 + 4);  // horizontal edge {4,0}
  mask |= 1u << (5 + 1);  // horizontal edge {1,2}
  Pattern x = successor(g, y, mask);
  CHECK(x.to_string() == "{{*},{0,4},{1,2},{3}}");
}

TEST_CASE("successor extremes") {
  Graph g = Graph::cycle(4);
  PatternSpace space = PatternSpace::enumerate(4);
  for (const Pattern& y : space.all) {
    CHECK(successor(g, y, 0) == Pattern::disconnected(4));
    Pattern all_open = successor(g, y, (1u << 8) - 1);
    if (y.is_infected())
      CHECK(all_open == Pattern::full(4));
    else
      CHECK(all_open == Pattern::canonicalize(4, {{0, 1, 2, 3}, {Pattern::kStar}}));
  }
}

TEST_CASE("count-level stochasticity") {
  for (int k : {3, 4}) {
    Graph g = Graph::cycle(k);
    PatternSpace space = PatternSpace::enumerate(k);
    TransitionKernel kernel = build_kernel(space, g);
    const int m = 2 * k;
    for (std::size_t y = 0; y < space.all.size(); ++y) {
      std::vector<std::int64_t> totals(m + 1, 0);
      for (const auto& [x, counts] : kernel.rows[y])
        for (int j = 0; j <= m; ++j) totals[j] += counts[j];
      for (int j = 0; j <= m; ++j) CHECK(totals[j] == static_cast<std::int64_t>(binomial(m, j)));
    }
  }
}

TEST_CASE("kernel build is identical across worker counts") {
  Graph g = Graph::cycle(4);
  PatternSpace space = PatternSpace::enumerate(4);
  TransitionKernel seq = build_kernel(space, g, 1);
  TransitionKernel par = build_kernel(space, g, 4);
  REQUIRE(seq.rows.size() == par.rows.size());
  for (std::size_t y = 0; y < seq.rows.size(); ++y) CHECK(seq.rows[y] == par.rows[y]);
}

TEST_CASE("evaluate yields a stochastic matrix and known extremes") {
  Graph g = Graph::cycle(3);
  PatternSpace space = PatternSpace::enumerate(3);
  TransitionKernel kernel = build_kernel(space, g);

  Matrix mid = kernel.evaluate(0.3);
  for (int y = 0; y < mid.n; ++y) {
    double row = 0.0;
    for (int x = 0; x < mid.n; ++x) {
      CHECK(mid.at(y, x) >= 0.0);
      row += mid.at(y, x);
    }
    CHECK(row == doctest::Approx(1.0).epsilon(1e-14));
  }

  Matrix zero = kernel.evaluate(0.0);
  Matrix one = kernel.evaluate(1.0);
  int dagger = space.disconnected_index();
  for (std::size_t y = 0; y < space.all.size(); ++y) {
    CHECK(zero.at(static_cast<int>(y), dagger) == doctest::Approx(1.0));
    if (space.all[y].is_infected())
      CHECK(one.at(static_cast<int>(y), space.full_index()) == doctest::Approx(1.0));
  }

  CHECK_THROWS_AS(kernel.evaluate(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(kernel.evaluate(1.1), std::invalid_argument);
}

TEST_CASE("full-to-full transition matches a direct configuration sweep") {
  // independent brute force: walk every one-layer configuration again,
  // using only the successor primitive
  Graph g = Graph::cycle(3);
  PatternSpace space = PatternSpace::enumerate(3);
  TransitionKernel kernel = build_kernel(space, g);
  const double p = 0.5;
  double direct = 0.0;
  for (std::uint32_t mask = 0; mask < 64; ++mask)
    if (successor(g, Pattern::full(3), mask) == Pattern::full(3))
      direct += std::pow(p, std::popcount(mask)) * std::pow(1 - p, 6 - std::popcount(mask));
  CHECK(kernel.probability(space.full_index(), space.full_index(), p) ==
        doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("positivity structure does not depend on p") {
  Graph g = Graph::cycle(4);
  PatternSpace space = PatternSpace::enumerate(4);
  TransitionKernel kernel = build_kernel(space, g);
  Matrix low = kernel.evaluate(0.25);
  Matrix high = kernel.evaluate(0.75);
  for (int y = 0; y < low.n; ++y)
    for (int x = 0; x < low.n; ++x) CHECK((low.at(y, x) > 0) == (high.at(y, x) > 0));
}

TEST_CASE("structural transition facts") {
  Graph g = Graph::cycle(4);
  PatternSpace space = PatternSpace::enumerate(4);
  TransitionKernel kernel = build_kernel(space, g);
  Matrix m = kernel.evaluate(0.37);
  int dagger_idx = space.disconnected_index();
  for (std::size_t y = 0; y < space.all.size(); ++y) {
    int yi = static_cast<int>(y);
    CHECK(m.at(yi, yi) > 0.0);          // lazy chain
    CHECK(m.at(yi, dagger_idx) > 0.0);  // all bonds closed reaches the dead state
    if (!space.all[y].is_infected())
      for (int xi : space.star) CHECK(m.at(yi, xi) == 0.0);  // no reinfection
  }
}

TEST_CASE("rotation equivariance at the count level") {
  Graph g = Graph::cycle(4);
  PatternSpace space = PatternSpace::enumerate(4);
  TransitionKernel kernel = build_kernel(space, g);
  for (std::size_t y = 0; y < space.all.size(); ++y)
    for (const auto& [x, counts] : kernel.rows[y]) {
      int yr = space.index_of(space.all[y].rotate(1));
      int xr = space.index_of(space.all[x].rotate(1));
      const auto* rotated = kernel.counts(yr, xr);
      REQUIRE(rotated != nullptr);
      CHECK(*rotated == counts);
    }
}

TEST_CASE("exact rational evaluation agrees with float evaluation") {
  Graph g = Graph::cycle(3);
  PatternSpace space = PatternSpace::enumerate(3);
  TransitionKernel kernel = build_kernel(space, g);
  std::vector<int> att = attainable_states(space, kernel, 0);
  Rational p(1, 2);
  auto exact = kernel.evaluate_restricted_exact(p, att);
  Matrix approx = kernel.evaluate_restricted(0.5, att);
  for (std::size_t i = 0; i < att.size(); ++i)
    for (std::size_t j = 0; j < att.size(); ++j)
      CHECK(std::fabs(exact[i][j].convert_to<double>() -
                      approx.at(static_cast<int>(i), static_cast<int>(j))) < 1e-15);
}

TEST_CASE("restricted kernel satisfies the multi-step floor") {
  for (int k : {3, 4, 5}) {
    Graph g = Graph::cycle(k);
    PatternSpace space = PatternSpace::enumerate(k);
    TransitionKernel kernel = build_kernel(space, g);
    std::vector<int> att = attainable_states(space, kernel, 0);
    int steps = (k + 2) / 2;
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      Matrix q = kernel.evaluate_restricted(p, att);
      Matrix power = matrix_power(q, steps);
      double floor = std::pow(p, (k * k + 2) / 2.0) * std::pow(1 - p, (k * k + k) / 2.0);
      for (int y = 0; y < power.n; ++y)
        for (int x = 0; x < power.n; ++x) CHECK(power.at(y, x) >= floor);
    }
  }
}

TEST_CASE("connectivity kernel basics and unique stationary law") {
  Graph g = Graph::cycle(3);
  ConnectivityKernel conn = connectivity_kernel(g);
  CHECK(conn.states.size() == 5);  // Bell(3)

  Matrix m = conn.evaluate(0.4);
  for (int y = 0; y < m.n; ++y) {
    double row = 0.0;
    for (int x = 0; x < m.n; ++x) row += m.at(y, x);
    CHECK(row == doctest::Approx(1.0).epsilon(1e-14));
  }

  std::vector<int> rec = conn.recurrent_class();
  Matrix q = conn.evaluate_restricted(0.4, rec);

  // dense eigensolve oracle: unique eigenvalue 1 with positive left vector
  Eigen::MatrixXd em(q.n, q.n);
  for (int i = 0; i < q.n; ++i)
    for (int j = 0; j < q.n; ++j) em(i, j) = q.at(i, j);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(em.transpose());
  int unit_count = 0;
  Eigen::VectorXd stat;
  for (int i = 0; i < q.n; ++i)
    if (std::abs(solver.eigenvalues()(i).real() - 1.0) < 1e-9 &&
        std::abs(solver.eigenvalues()(i).imag()) < 1e-9) {
      ++unit_count;
      stat = solver.eigenvectors().col(i).real();
    }
  CHECK(unit_count == 1);
  stat /= stat.sum();

  // power iteration agrees with the dense oracle
  std::vector<double> rho = stationary_distribution(q);
  for (int i = 0; i < q.n; ++i) CHECK(rho[i] == doctest::Approx(stat(i)).epsilon(1e-10));

  // Perron residual
  std::vector<double> rq = left_apply(rho, q);
  CHECK(l1_distance(rq, rho) < 1e-12);
}
