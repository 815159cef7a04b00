#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <map>

#include "cylperc/monotonicity.hpp"
#include "cylperc/qsd.hpp"

using namespace cylperc;

namespace {

const PatternChain& cycle3() {
  static PatternChain chain = PatternChain::build(Graph::cycle(3));
  return chain;
}

const PatternChain& cycle4() {
  static PatternChain chain = PatternChain::build(Graph::cycle(4));
  return chain;
}

// Exhaustive two-layer law: walks every bond configuration of both layers
// using only the successor primitive.
std::map<Pattern, double> two_layer_bruteforce(const Graph& g, const Pattern& start, double p) {
  std::map<Pattern, double> law;
  const int bonds = g.layer_bonds();
  for (std::uint32_t m1 = 0; m1 < (1u << bonds); ++m1) {
    Pattern mid = successor(g, start, m1);
    double w1 = std::pow(p, std::popcount(m1)) * std::pow(1 - p, bonds - std::popcount(m1));
    for (std::uint32_t m2 = 0; m2 < (1u << bonds); ++m2) {
      Pattern end = successor(g, mid, m2);
      double w2 = std::pow(p, std::popcount(m2)) * std::pow(1 - p, bonds - std::popcount(m2));
      law[end] += w1 * w2;
    }
  }
  return law;
}

}  // namespace

TEST_CASE("initial distribution is a probability law concentrated on infected states") {
  for (double p : {0.1, 0.3, 0.7}) {
    std::vector<double> law = initial_distribution(cycle3(), p);
    double total = 0.0;
    for (int i = 0; i < cycle3().states(); ++i) {
      total += law[i];
      if (law[i] > 0.0) CHECK(cycle3().pattern(i).infected(0));  // origin always infected
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("marginal at layer zero is the start") {
  const PatternChain& pc = cycle3();
  int y = pc.position(Pattern::full(3));
  for (int x = 0; x < pc.states(); ++x) {
    double m = marginal(pc, 0.4, ChainStart::at(y), pc.pattern(x), 0);
    CHECK(m == doctest::Approx(x == y ? 1.0 : 0.0));
  }
}

TEST_CASE("marginal outside the state space throws, unattainable is zero") {
  const PatternChain& pc = cycle4();
  CHECK_THROWS_AS(marginal(pc, 0.5, ChainStart::stationary_initial(), Pattern::full(5), 1),
                  std::invalid_argument);
  Pattern crossing = Pattern::canonicalize(4, {{Pattern::kStar, 0, 2}, {1, 3}});
  CHECK(marginal(pc, 0.5, ChainStart::stationary_initial(), crossing, 3) == 0.0);
}

TEST_CASE("two-layer marginals match the exhaustive configuration sweep") {
  const PatternChain& pc = cycle3();
  const double p = 0.5;
  for (int y : {pc.position(Pattern::full(3)), 0, pc.states() - 1}) {
    std::map<Pattern, double> brute = two_layer_bruteforce(pc.graph, pc.pattern(y), p);
    for (int x = 0; x < pc.states(); ++x) {
      double expected = 0.0;
      auto it = brute.find(pc.pattern(x));
      if (it != brute.end()) expected = it->second;
      CHECK(marginal(pc, p, ChainStart::at(y), pc.pattern(x), 2) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("exact rational marginals agree with the float path") {
  const PatternChain& pc = cycle3();
  Rational half(1, 2);
  for (int n : {0, 1, 2, 5}) {
    std::vector<Rational> exact =
        marginal_exact(pc, half, ChainStart::at(pc.position(Pattern::full(3))), n);
    for (int x = 0; x < pc.states(); ++x) {
      double f =
          marginal(pc, 0.5, ChainStart::at(pc.position(Pattern::full(3))), pc.pattern(x), n);
      CHECK(std::fabs(exact[x].convert_to<double>() - f) < 1e-12);
    }
  }
  CHECK_THROWS_AS(marginal_exact(pc, half, ChainStart::stationary_initial(), 17),
                  std::length_error);
}

TEST_CASE("exact rational stationary start matches the float stationary law") {
  const PatternChain& pc = cycle3();
  Rational half(1, 2);
  std::vector<Rational> exact = marginal_exact(pc, half, ChainStart::stationary_initial(), 0);
  std::vector<double> law = initial_distribution(pc, 0.5);
  for (int x = 0; x < pc.states(); ++x)
    CHECK(std::fabs(exact[x].convert_to<double>() - law[x]) < 1e-12);
}

TEST_CASE("stochastic completeness over the whole pattern space") {
  const PatternChain& pc = cycle3();
  const double p = 0.3;
  Matrix full = pc.kernel.evaluate(p);
  std::vector<double> v(full.n, 0.0);
  std::vector<double> init = initial_distribution(pc, p);
  for (int i = 0; i < pc.states(); ++i) v[pc.attainable[i]] = init[i];
  for (int n = 0; n <= 5; ++n) {
    CHECK(sum(v) == doctest::Approx(1.0).epsilon(1e-12));
    double star_mass = 0.0;
    for (int idx : pc.space.star) star_mass += v[idx];
    double dagger_mass = 0.0;
    for (int idx : pc.space.dagger) dagger_mass += v[idx];
    CHECK(star_mass + dagger_mass == doctest::Approx(1.0).epsilon(1e-12));
    v = left_apply(v, full);
  }
}

TEST_CASE("dagger marginals go through the full-space path") {
  const PatternChain& pc = cycle3();
  double dead = marginal(pc, 0.3, ChainStart::stationary_initial(), Pattern::disconnected(3), 2);
  CHECK(dead > 0.0);
  CHECK(dead < 1.0);
}

TEST_CASE("monotone check rejects layer zero and certifies the onset") {
  const PatternChain& pc = cycle3();
  MonotoneCheck at0 = check_monotone_at(pc, 0.5, 0);
  CHECK(at0.conclusive);
  CHECK_FALSE(at0.monotone);

  MonotoneCheck at2 = check_monotone_at(pc, 0.5, 2);
  CHECK(at2.conclusive);
  CHECK(at2.monotone);
}

TEST_CASE("empirical onset matches the known small-cycle values") {
  CHECK(empirical_onset(cycle3(), 0.5).value() <= 2);
  CHECK(empirical_onset(cycle4(), 0.5).value() <= 4);
}

TEST_CASE("connection probability at the origin layer") {
  const PatternChain& pc = cycle3();
  CHECK(connection_probability(pc, 0.3, 0, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rotation covariance of connection probabilities") {
  Graph g = Graph::cycle(4);
  PatternChain at0 = PatternChain::build(g, 0);
  PatternChain at1 = PatternChain::build(g, 1);
  for (int v = 0; v < 4; ++v)
    for (int n : {0, 1, 3}) {
      double base = connection_probability(at0, 0.35, v, n);
      double shifted = connection_probability(at1, 0.35, (v + 1) % 4, n);
      CHECK(base == doctest::Approx(shifted).epsilon(1e-12));
    }
}

TEST_CASE("expected infected count behaviors") {
  const PatternChain& pc = cycle3();
  for (int n = 0; n <= 3; ++n) CHECK(expected_infected(pc, 0.999, n) > 3.0 - 0.05);
  CHECK(expected_infected(pc, 0.2, 0) >= 1.0);
  for (double p : {0.3, 0.6}) {
    for (int n : {0, 2, 5}) {
      double direct = expected_infected(pc, p, n);
      double summed = 0.0;
      for (int v = 0; v < 3; ++v) summed += connection_probability(pc, p, v, n);
      CHECK(direct == doctest::Approx(summed).epsilon(1e-12));
    }
  }
  double prev = expected_infected(pc, 0.3, 0);
  for (int n = 1; n <= 50; ++n) {
    double cur = expected_infected(pc, 0.3, n);
    CHECK(cur <= prev * (1 + 1e-12));
    prev = cur;
  }
}

TEST_CASE("absorption is monotone: survival mass never increases") {
  const PatternChain& pc = cycle4();
  MarginalCurve curve = marginal_curve(pc, 0.45, ChainStart::stationary_initial(), 60);
  for (long n = 1; n <= 60; ++n) CHECK(curve.log_survival[n] <= curve.log_survival[n - 1] + 1e-15);
  for (long n = 0; n <= 60; ++n) {
    double total = 0.0;
    for (double x : curve.conditional[n]) total += x;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("implication chain holds and orders correctly") {
  const PatternChain& pc = cycle3();
  ImplicationReport at2 = verify_implication_chain(pc, 0.5, 2);
  CHECK(at2.pattern_transitions);
  CHECK(at2.pattern_marginals);
  CHECK(at2.connections);
  CHECK(at2.expectation);
  CHECK(at2.ordering_respected);

  ImplicationReport at0 = verify_implication_chain(pc, 0.5, 0);
  CHECK_FALSE(at0.pattern_transitions);
  CHECK(at0.ordering_respected);
}

TEST_CASE("implication ordering across a parameter sweep") {
  for (const PatternChain* pc : {&cycle3(), &cycle4()})
    for (double p = 0.1; p < 0.95; p += 0.1)
      for (long n = 0; n <= 10; ++n) {
        ImplicationReport rep = verify_implication_chain(*pc, p, n);
        CHECK(rep.ordering_respected);
      }
}

TEST_CASE("marginal ratios approach the survival rate at large layers") {
  const PatternChain& pc = cycle3();
  const double p = 0.5;
  AbsorbingChain chain = pc.absorbing_chain(p);
  QsdResult r = compute_qsd(chain);
  for (int y = 0; y < pc.states(); ++y) {
    std::vector<double> mu(pc.states(), 0.0);
    mu[y] = 1.0;
    ConditionedLaw law = conditioned_distribution(chain, mu, 1'000'000 - 1);
    std::vector<double> next = left_apply(law.distribution, chain.Q);
    for (int x = 0; x < pc.states(); ++x) {
      // both laws sit in the same conditional frame, so this is the
      // absolute marginal ratio
      double ratio = next[x] / law.distribution[x];
      CHECK(std::fabs(ratio - r.lambda) < 1e-6);
    }
  }
}
