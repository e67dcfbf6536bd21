#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <string>
#include <stdexcept>
#include <vector>

#include "maxstable/analysis.hpp"
#include "maxstable/continuous.hpp"
#include "maxstable/distributions.hpp"
#include "oracles.hpp"

using namespace maxstable;

namespace {

double frechet1(double y) { return frechet_cdf(y); }

TEST(ShapeFunction, NormalizedForward) {
  for (double a : {0.1, 0.5, 0.9}) {
    const ShapeFunction g(a);
    boost::math::quadrature::exp_sinh<double> integrator;
    EXPECT_NEAR(integrator.integrate([&](double t) { return g(t); }, 0.0,
                                     std::numeric_limits<double>::infinity()),
                1.0, 1e-10);
    EXPECT_EQ(g(-0.1), 0.0);
    EXPECT_NEAR(g(0.0), -std::log(a), 1e-15);
  }
}

TEST(ShapeFunction, ReversedMirror) {
  const ShapeFunction g(0.5, Direction::Reversed);
  EXPECT_EQ(g(0.0), 0.0);
  EXPECT_NEAR(g(-1.0), std::log(2.0) * 0.5, 1e-15);
  EXPECT_NEAR(g(-1e-300), std::log(2.0), 1e-15);
}

TEST(ShapeFunction, RejectsDegenerateParameter) {
  EXPECT_THROW(ShapeFunction(0.0), std::domain_error);
  EXPECT_THROW(ShapeFunction(1.0), std::domain_error);
}

TEST(SimulateZa, Errors) {
  RngState rng(1);
  EXPECT_THROW(simulate_za(0.5, 0.0, rng), std::domain_error);
  EXPECT_THROW(simulate_za(0.5, -1.0, rng), std::domain_error);
  try {
    simulate_za(0.0, 1.0, rng);
    FAIL() << "a = 0 accepted";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("a = 0"), std::string::npos);
  }
  EXPECT_THROW(simulate_za_reversed(1.0, 1.0, rng), std::domain_error);
}

TEST(SimulateZa, AIsOneIsConstant) {
  RngState rng(2);
  std::vector<double> xs;
  for (int i = 0; i < 2000; ++i) {
    const auto p = simulate_za(1.0, 3.0, rng);
    ASSERT_TRUE(p.events.empty());
    ASSERT_EQ(path_value(p, 2.0), p.anchor_value);
    xs.push_back(p.anchor_value);
  }
  EXPECT_TRUE(ks_one_sample(xs, frechet1).pass);
}

TEST(SimulateZa, PathsAreValidAndPositive) {
  RngState root(3);
  for (std::uint64_t r = 0; r < 500; ++r) {
    auto rng = root.derive(r);
    const auto p = simulate_za(0.3, 5.0, rng);
    ASSERT_NO_THROW(p.validate());
    ASSERT_GT(path_minimum(p), 0.0);
    ASSERT_GE(p.points_examined, p.events.size());
    const auto q = simulate_za_reversed(0.3, 5.0, rng);
    ASSERT_NO_THROW(q.validate());
    ASSERT_GT(path_minimum(q), 0.0);
  }
}

TEST(SimulateZa, MarginalIsFrechetAtSeveralTimes) {
  for (auto dir : {Direction::Forward, Direction::Reversed}) {
    RngState root(4);
    std::vector<std::vector<double>> at(3);
    for (std::uint64_t r = 0; r < 5000; ++r) {
      auto rng = root.derive(r);
      const auto p = dir == Direction::Forward ? simulate_za(0.5, 5.0, rng)
                                               : simulate_za_reversed(0.5, 5.0, rng);
      at[0].push_back(path_value(p, 0.0));
      at[1].push_back(path_value(p, 2.5));
      at[2].push_back(path_value(p, 4.9));
    }
    for (const auto& xs : at) EXPECT_TRUE(ks_one_sample(xs, frechet1).pass) << to_string(dir);
  }
}

TEST(SimulateZa, AutoregressiveInequality) {
  RngState rng(5);
  const auto p = simulate_za(0.4, 50.0, rng);
  for (double t = 0.0; t + 0.7 <= 50.0; t += 0.37) {
    for (double s : {0.1, 0.7}) {
      ASSERT_GE(path_value(p, t + s), std::pow(0.4, s) * path_value(p, t) * (1 - 1e-12));
    }
  }
}

TEST(SimulateZa, HoldingProbabilityGivenStart) {
  // P[no event in (0,1] | Z(0) = z] = exp(-(1-a)/(a z)); bin on Z(0).
  const double a = 0.5;
  RngState rng(6);
  int in_bin = 0, held = 0;
  double oracle_sum = 0.0;
  for (int r = 0; r < 100000; ++r) {
    const auto p = simulate_za(a, 1.0, rng);
    const double z = p.anchor_value;
    if (z < 0.9 || z > 1.1) continue;
    ++in_bin;
    held += p.events.empty();
    oracle_sum += std::exp(-(1 - a) / (a * z));
  }
  ASSERT_GT(in_bin, 2000);
  const double expected = oracle_sum / in_bin;
  EXPECT_NEAR(expected, std::exp(-1.0), 0.02);
  EXPECT_NEAR(static_cast<double>(held) / in_bin, expected,
              4.0 * std::sqrt(expected * (1 - expected) / in_bin));
}

TEST(SimulateZa, DeterministicGivenSeed) {
  RngState r1(7, 2), r2(7, 2);
  const auto p = simulate_za(0.6, 10.0, r1);
  const auto q = simulate_za(0.6, 10.0, r2);
  EXPECT_EQ(p.events, q.events);
  EXPECT_EQ(p.anchor_value, q.anchor_value);
  EXPECT_EQ(p.seed, 7u);
  EXPECT_EQ(p.stream, 2u);
}

TEST(SimulateZaReversed, IsTimeReversalWithLeftLimits) {
  RngState r1(8), r2(8);
  const double M = 6.0;
  const auto f = simulate_za(0.5, M, r1);
  const auto b = simulate_za_reversed(0.5, M, r2);
  EXPECT_EQ(b.direction, Direction::Reversed);
  ASSERT_EQ(b.events.size(), f.events.size());
  // Away from jump times, reversed(s) = forward(M - s).
  for (double s = 0.013; s < M; s += 0.097) {
    bool near_jump = false;
    for (const auto& e : f.events) near_jump = near_jump || std::abs(e.time - (M - s)) < 1e-9;
    if (near_jump) continue;
    EXPECT_NEAR(path_value(b, s), path_value(f, M - s), 1e-12 * path_value(f, M - s));
  }
  // Reversed events are downward jumps.
  for (const auto& e : b.events) {
    EXPECT_LT(e.value, path_value(b, std::max(0.0, e.time - 1e-9)) * (1 + 1e-6));
  }
}

TEST(PathValue, RightContinuityAndDecay) {
  CadlagPath p;
  p.t_begin = 0.0;
  p.t_end = 4.0;
  p.a = 0.5;
  p.anchor_value = 2.0;
  p.events = {{1.0, 3.0}, {3.0, 2.0}};
  ASSERT_NO_THROW(p.validate());
  EXPECT_EQ(path_value(p, 0.0), 2.0);
  EXPECT_NEAR(path_value(p, 0.5), 2.0 * std::sqrt(0.5), 1e-15);
  EXPECT_EQ(path_value(p, 1.0), 3.0);
  EXPECT_NEAR(path_value(p, 2.0), 1.5, 1e-15);
  EXPECT_EQ(path_value(p, 3.0), 2.0);
  EXPECT_NEAR(path_value(p, 4.0), 1.0, 1e-15);
  EXPECT_THROW(path_value(p, 4.5), std::domain_error);
  EXPECT_THROW(path_value(p, -0.1), std::domain_error);
  EXPECT_NEAR(path_minimum(p), 0.75, 1e-15);
}

TEST(CadlagPath, ValidateRejectsBadEvents) {
  CadlagPath p;
  p.t_end = 4.0;
  p.a = 0.5;
  p.anchor_value = 2.0;
  p.events = {{1.0, 0.5}};  // below the decayed value 1.0: not a jump
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.events = {{2.0, 3.0}, {1.0, 5.0}};
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.events = {{5.0, 3.0}};
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.events.clear();
  p.anchor_value = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(SampleGrid, Errors) {
  RngState rng(9);
  const auto p = simulate_za(0.5, 1.0, rng);
  EXPECT_THROW(sample_grid(p, 0.0), std::domain_error);
  EXPECT_THROW(sample_grid(p, 2.0), std::domain_error);
}

TEST(SampleGrid, GridLengthAndParams) {
  RngState rng(10);
  const auto p = simulate_za(0.5, 10.0, rng);
  const auto g = sample_grid(p, 0.1);
  EXPECT_EQ(g.size(), 101u);
  EXPECT_NEAR(g.params.a(), std::pow(0.5, 0.1), 1e-15);
  EXPECT_EQ(g.params.direction(), Direction::Forward);
  EXPECT_EQ(g.values.front(), p.anchor_value);
}

TEST(SampleGrid, MinRatioIsAPowerEpsilon) {
  RngState rng(11);
  const auto p = simulate_za(0.5, 2000.0, rng);
  const auto g = sample_grid(p, 0.1);
  double m = 1e300;
  for (std::size_t i = 1; i < g.size(); ++i) m = std::min(m, g.values[i] / g.values[i - 1]);
  EXPECT_NEAR(m, 0.9330329915368074, 1e-9);
}

TEST(SampleGrid, ReversedMaxRatioBounded) {
  RngState rng(12);
  const auto p = simulate_za_reversed(0.5, 2000.0, rng);
  const auto g = sample_grid(p, 0.1);
  double m = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i) m = std::max(m, g.values[i] / g.values[i - 1]);
  EXPECT_NEAR(m, std::pow(0.5, -0.1), 1e-9);
}

TEST(SampleGrid, SkeletonPairsMatchMaxAr) {
  const double a = 0.5, eps = 0.1, ae = std::pow(a, eps);
  for (auto dir : {Direction::Forward, Direction::Reversed}) {
    RngState root(13);
    std::vector<double> sk_min, sk_max, ar_min, ar_max;
    for (std::uint64_t r = 0; r < 10000; ++r) {
      auto rng = root.derive(r);
      const auto p = dir == Direction::Forward ? simulate_za(a, 0.2, rng)
                                               : simulate_za_reversed(a, 0.2, rng);
      const auto g = sample_grid(p, eps);
      sk_min.push_back(std::min(g.values[0], g.values[1]));
      sk_max.push_back(std::max(g.values[0], g.values[1]));
      auto rng2 = root.derive(1000000 + r);
      const auto d = simulate(MaxARParams(ae, dir), 0, 2, rng2);
      ar_min.push_back(std::min(d.values[0], d.values[1]));
      ar_max.push_back(std::max(d.values[0], d.values[1]));
    }
    EXPECT_TRUE(ks_two_sample(sk_min, ar_min).pass) << to_string(dir);
    EXPECT_TRUE(ks_two_sample(sk_max, ar_max).pass) << to_string(dir);
  }
}

TEST(SampleGrid, HoldingIdentityMatchesQuadrature) {
  const double a = 0.5;
  for (double s : {0.5, 1.0}) {
    const double oracle = oracle::integrate_against_stationary(
        [&](double z) { return std::exp(-(1 - std::pow(a, s)) / (std::pow(a, s) * z)); });
    EXPECT_NEAR(oracle, std::pow(a, s), 1e-8);
    RngState root(14);
    const int n = 10000;
    int held = 0;
    for (int r = 0; r < n; ++r) {
      auto rng = root.derive(static_cast<std::uint64_t>(r));
      const auto p = simulate_za(a, s, rng);
      held += std::abs(path_value(p, s) - std::pow(a, s) * path_value(p, 0.0)) <=
              1e-12 * path_value(p, s);
    }
    EXPECT_NEAR(static_cast<double>(held) / n, oracle,
                3.0 * std::sqrt(oracle * (1 - oracle) / n));
  }
}

TEST(SimulateZa, PointsExaminedConsistentWithPoissonBound) {
  // Points with peak (-log a) u above the final minimum m number Poisson(M (-log a) / m);
  // every examined point has such a peak, so the mean count over replicates
  // is bounded by the mean of M (-log a) / m plus noise.
  const double a = 0.5, M = 4.0;
  RngState root(15);
  double examined = 0.0, bound = 0.0;
  const int reps = 4000;
  for (int r = 0; r < reps; ++r) {
    auto rng = root.derive(static_cast<std::uint64_t>(r));
    const auto p = simulate_za(a, M, rng);
    examined += static_cast<double>(p.points_examined);
    bound += M * -std::log(a) / path_minimum(p);
  }
  EXPECT_LE(examined / reps, bound / reps * 1.05);
  EXPECT_GT(examined / reps, 0.0);
}

}  // namespace
