#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "maxstable/analysis.hpp"
#include "maxstable/continuous.hpp"
#include "maxstable/distributions.hpp"
#include "maxstable/maxar.hpp"

using namespace maxstable;

namespace {

double frechet1(double y) { return frechet_cdf(y); }

std::vector<double> frechet_draws(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  RngState rng(seed);
  std::vector<double> xs(n);
  for (auto& x : xs) x = frechet_sample(rng, FrechetScale(scale));
  return xs;
}

TEST(Kolmogorov, CriticalValues) {
  EXPECT_NEAR(kolmogorov_critical_value(0.01), 1.6276, 1e-4);
  EXPECT_NEAR(kolmogorov_critical_value(0.05), 1.3581, 1e-4);
  EXPECT_NEAR(kolmogorov_survival(kolmogorov_critical_value(0.1)), 0.1, 1e-12);
  EXPECT_EQ(kolmogorov_survival(0.0), 1.0);
  EXPECT_THROW(kolmogorov_critical_value(0.0), std::domain_error);
}

TEST(KsOneSample, PassesOnNullData) {
  const auto xs = frechet_draws(10000, 1);
  const auto r = ks_one_sample(xs, frechet1);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.threshold, 1.6276 / 100.0, 1e-6);
}

TEST(KsOneSample, RejectsWrongScale) {
  const auto xs = frechet_draws(10000, 2, 2.0);
  const auto r = ks_one_sample(xs, frechet1);
  EXPECT_FALSE(r.pass);
  // sup_y exp(-1/y) - exp(-2/y) = 1/4 at y = 1/log 2.
  EXPECT_NEAR(r.statistic, 0.25, 0.02);
}

TEST(KsOneSample, BoundaryAndErrors) {
  const auto xs = frechet_draws(30, 3);
  EXPECT_NO_THROW(ks_one_sample(xs, frechet1));
  EXPECT_THROW(ks_one_sample(frechet_draws(29, 3), frechet1), std::domain_error);
  auto bad = frechet_draws(40, 3);
  bad[5] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(ks_one_sample(bad, frechet1), std::domain_error);
  bad[5] = std::nan("");
  EXPECT_THROW(ks_two_sample(bad, xs), std::domain_error);
}

TEST(KsOneSample, NullRejectionRateNearLevel) {
  int rejections = 0;
  const int reps = 500;
  for (int r = 0; r < reps; ++r) {
    rejections += !ks_one_sample(frechet_draws(1000, 100 + r), frechet1, 0.05).pass;
  }
  EXPECT_LE(rejections, 2 * 0.05 * reps);
}

TEST(KsTwoSample, SameLawPassesDifferentLawFails) {
  EXPECT_TRUE(ks_two_sample(frechet_draws(5000, 4), frechet_draws(3000, 5)).pass);
  EXPECT_FALSE(ks_two_sample(frechet_draws(5000, 4), frechet_draws(3000, 5, 1.5)).pass);
}

TEST(KsTwoSample, PairMinimumSeparatesParameters) {
  RngState root(6);
  std::vector<double> m05, m09, x05, x09;
  for (std::uint64_t r = 0; r < 5000; ++r) {
    auto r1 = root.derive(2 * r), r2 = root.derive(2 * r + 1);
    const auto p = simulate_forward(0.5, 0, 2, r1);
    const auto q = simulate_forward(0.9, 0, 2, r2);
    x05.push_back(p.values[0]);
    x09.push_back(q.values[0]);
    m05.push_back(std::min(p.values[0], p.values[1]));
    m09.push_back(std::min(q.values[0], q.values[1]));
  }
  EXPECT_TRUE(ks_two_sample(x05, x09).pass);
  EXPECT_FALSE(ks_two_sample(m05, m09).pass);
}

TEST(RatioSupport, ForwardPath) {
  RngState rng(7);
  const auto p = simulate_forward(0.5, 0, 10000, rng);
  const auto est = ratio_support(p, 1e-9);
  EXPECT_NEAR(est.min_ratio, 0.5, 1e-12);
  ASSERT_TRUE(est.atom_location.has_value());
  EXPECT_NEAR(*est.atom_location, 0.5, 1e-9);
  EXPECT_NEAR(est.atom_mass, 0.5, 0.015);
  EXPECT_TRUE(est.max_ratio_unbounded);
  EXPECT_LE(est.min_ratio, est.max_ratio);
  EXPECT_EQ(est.n_ratios, 9999u);
}

TEST(RatioSupport, ReversedPath) {
  RngState rng(8);
  const auto p = simulate_reversed(0.5, 0, 10000, rng);
  const auto est = ratio_support(p, 1e-9);
  EXPECT_NEAR(est.max_ratio, 2.0, 2e-12);
  ASSERT_TRUE(est.atom_location.has_value());
  EXPECT_NEAR(*est.atom_location, 2.0, 2e-9);
  EXPECT_NEAR(est.atom_mass, 0.5, 0.015);
  EXPECT_FALSE(est.max_ratio_unbounded);
}

TEST(RatioSupport, ConstantPath) {
  RngState rng(9);
  const auto est = ratio_support(simulate_forward(1.0, 0, 100, rng), 1e-9);
  EXPECT_EQ(est.min_ratio, 1.0);
  EXPECT_EQ(est.max_ratio, 1.0);
  EXPECT_FALSE(est.max_ratio_unbounded);
}

TEST(RatioSupport, Errors) {
  const std::vector<double> one{1.0};
  EXPECT_THROW(ratio_support(one), std::domain_error);
  const std::vector<double> bad{1.0, -1.0, 2.0};
  EXPECT_THROW(ratio_support(bad), std::domain_error);
}

TEST(RatioSupport, NeverBelowAOnForwardPaths) {
  for (double a : {0.1, 0.4, 0.7, 0.95}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      RngState rng(seed);
      EXPECT_GE(ratio_support(simulate_forward(a, 0, 5000, rng), 1e-9).min_ratio, a - 1e-12);
    }
  }
}

TEST(Identify, ForwardRoundTrip) {
  RngState rng(10);
  const auto p = simulate_forward(0.3, 0, 10000, rng);
  const auto r = identify(p.values);
  EXPECT_EQ(r.params.direction(), Direction::Forward);
  EXPECT_NEAR(r.params.a(), 0.3, 1e-3);
  EXPECT_EQ(r.n_used, 10000u);
  EXPECT_FALSE(r.confidence_notes.empty());
}

TEST(Identify, ReversedRoundTrip) {
  RngState rng(11);
  const auto p = simulate_reversed(0.7, 0, 10000, rng);
  const auto r = identify(p.values);
  EXPECT_EQ(r.params.direction(), Direction::Reversed);
  EXPECT_NEAR(r.params.a(), 0.7, 1e-3);
}

TEST(Identify, IidIsZero) {
  const auto xs = frechet_draws(10000, 12);
  const auto r = identify(xs);
  EXPECT_EQ(r.params.a(), 0.0);
  EXPECT_EQ(r.params.direction(), Direction::Forward);
}

TEST(Identify, ConstantIsOne) {
  const std::vector<double> xs(200, 3.5);
  EXPECT_EQ(identify(xs).params.a(), 1.0);
}

TEST(Identify, SkeletonOfContinuousPath) {
  RngState rng(13);
  const auto g = sample_grid(simulate_za(0.5, 1000.0, rng), 0.1);
  const auto r = identify(g.values);
  EXPECT_EQ(r.params.direction(), Direction::Forward);
  EXPECT_NEAR(r.params.a(), std::pow(0.5, 0.1), 1e-6);
}

TEST(Identify, DependentWithoutAtomIsUnclassifiable) {
  // A smooth AR-type path: strongly dependent, continuous ratio law.
  RngState rng(14);
  std::vector<double> xs(5000);
  double x = 1.0;
  for (auto& v : xs) {
    x = 0.9 * x + 0.1 * (1.0 + rng.uniform());
    v = x;
  }
  try {
    identify(xs);
    FAIL() << "expected IdentificationError";
  } catch (const IdentificationError& e) {
    EXPECT_TRUE(e.diagnostics().contains("min_ratio"));
    EXPECT_TRUE(e.diagnostics().contains("atoms"));
  }
}

TEST(Identify, AtomsOnBothSidesAreAmbiguous) {
  std::vector<double> xs;
  double x = 1.0;
  RngState rng(15);
  for (int i = 0; i < 3000; ++i) {
    xs.push_back(x);
    const double u = rng.uniform();
    x *= u < 0.3 ? 0.5 : (u < 0.6 ? 2.0 : 0.5 + 1.5 * rng.uniform());
  }
  EXPECT_THROW(identify(xs), IdentificationError);
}

TEST(Identify, Errors) {
  EXPECT_THROW(identify(frechet_draws(99, 16)), std::domain_error);
  // Too short for the independence test and no atom.
  EXPECT_THROW(identify(frechet_draws(500, 16)), IdentificationError);
}

TEST(IdentificationResult, Json) {
  IdentificationResult r;
  r.params = MaxARParams(0.25, Direction::Reversed);
  r.confidence_notes = "x";
  r.n_used = 7;
  const auto j = r.to_json();
  EXPECT_EQ(j.at("a"), 0.25);
  EXPECT_EQ(j.at("direction"), "reversed");
  EXPECT_EQ(j.at("n_used"), 7);
}

}  // namespace
