#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "maxstable/report.hpp"
#include "maxstable/rng.hpp"
#include "maxstable/spectral.hpp"

namespace maxstable {

/// P[eta(t_i) <= z_i for all targets | eta(t) = z].
struct ConditionalQuery {
  ExceedancePoint conditioning;
  std::vector<ExceedancePoint> targets;

  /// Throws std::domain_error on empty targets, nonpositive z, or repeated
  /// target indices.
  void validate() const;
};

/// Exact evaluation for the max-AR(1) process with parameter a by summing the
/// two spectral expectations over shifts of f_a (the mixing masses cancel).
/// Shifts below the earliest query index form an exact geometric tail that is
/// summed in closed form, so the only error is rounding; tol is validated
/// against (0, 1e-4] and is an upper bound on that error.
double conditional_cdf(const ConditionalQuery& q, double a, double tol = 1e-10);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  /// E[1{max Y(t_i)/z_i <= Y(t)/z} Y(t)] and its standard error.
  double indicator_mean = 0.0;
  double indicator_se = 0.0;
  /// E[(max Y(t_i)/z_i - Y(t)/z)^+] and its standard error.
  double excess_mean = 0.0;
  double excess_se = 0.0;
  std::size_t samples = 0;
};

/// Same quantity estimated from n draws of the DaMixture spectral process
/// (two-sided geometric mixing with ratio 1/2). The standard error of the
/// product is propagated by the delta method, including the covariance of
/// the two factors. Variance is finite for a^2 < 1/2.
MonteCarloEstimate conditional_cdf_mc(const ConditionalQuery& q, double a, std::size_t n,
                                      RngState& rng);

struct IndependenceOptions {
  /// Grid resolution on the pseudo-observation scale.
  std::size_t grid = 16;
  std::size_t permutations = 199;
  /// Seed of the permutation stream; the test is deterministic in its input.
  std::uint64_t seed = 0x5eed1d3a7e57ull;
};

/// Permutation test of u independent of v: the statistic is the sup over a
/// grid of |C_n(i/G, j/G) - F_n(i/G) G_n(j/G)|, the threshold the (1-level)
/// quantile of the same statistic over random re-pairings of v.
///
/// Check "independence.copula_sup" passes iff the data are consistent with
/// independence. Constant inputs yield a failing "independence.applicable"
/// check and no statistic.
EmpiricalReport independence_test(const std::vector<std::pair<double, double>>& pairs,
                                  double level, const IndependenceOptions& options = {});

/// True when the report carries an applicable independence check that passed.
bool independence_accepted(const EmpiricalReport& report);

}  // namespace maxstable
