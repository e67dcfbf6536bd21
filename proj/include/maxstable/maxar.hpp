#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "maxstable/report.hpp"
#include "maxstable/rng.hpp"

namespace maxstable {

enum class Direction { Forward, Reversed };

std::string_view to_string(Direction d) noexcept;
/// Accepts "forward" / "reversed"; throws std::invalid_argument otherwise.
Direction parse_direction(std::string_view text);

/// Parameter a in [0,1] and time direction of a max-AR(1) process.
/// Reversed with a in {0,1} is reversible and is stored as Forward.
class MaxARParams {
 public:
  MaxARParams(double a, Direction direction = Direction::Forward);

  double a() const noexcept { return a_; }
  Direction direction() const noexcept { return direction_; }
  /// True when the constructor rewrote Reversed to Forward.
  bool canonicalized() const noexcept { return canonicalized_; }

  friend bool operator==(const MaxARParams& l, const MaxARParams& r) noexcept {
    return l.a_ == r.a_ && l.direction_ == r.direction_;
  }

 private:
  double a_;
  Direction direction_;
  bool canonicalized_ = false;
};

/// A realization on the integer window [start_index, start_index + size).
struct DiscretePath {
  std::int64_t start_index = 0;
  std::vector<double> values;
  MaxARParams params{0.0};
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  std::size_t size() const noexcept { return values.size(); }
};

/// Exact stationary simulation of X(t+1) = max(a X(t), (1-a) F_{t+1}) with
/// X(t0) ~ Fréchet(1). Ignores params.direction(); see simulate().
DiscretePath simulate_forward(double a, std::int64_t t0, std::size_t n, RngState& rng);

/// Time reversal: the forward window of the same length read backwards.
DiscretePath simulate_reversed(double a, std::int64_t t0, std::size_t n, RngState& rng);

/// Dispatches on params.direction().
DiscretePath simulate(const MaxARParams& params, std::int64_t t0, std::size_t n,
                      RngState& rng);

/// CDF of the one-step transition kernel.
///
/// Forward: P[X(t+1) <= y | X(t) = x], with an atom of mass
/// exp(-(1-a)/(a x)) at y = a x.
/// Reversed: P[X(t+1) <= x | X(t) = y] (arguments in the kernel's own
/// (current, next) roles: `x` is the next value, `y` the current), with an
/// atom of mass a at x = y / a.
///
/// For Forward the first argument is the current value; for Reversed the
/// second is. Both are right-continuous in the next value.
double kernel_cdf(const MaxARParams& params, double x, double y);

/// One exact inverse-CDF draw of the next value given `current`.
double kernel_sample(const MaxARParams& params, double current, RngState& rng);

/// P[X(t) <= x, X(t+1) <= y] for the forward process:
/// exp(-max(1/x, a/y) - (1-a)/y). For the reversed process swap arguments.
double bivariate_cdf(double a, double x, double y);

/// Probability of the forward atom X(t+1) = a X(t) under stationarity, by
/// closed form: integral of exp(-(1-a)/(a x)) against pi(dx), equal to a.
double forward_atom_probability(double a);

/// Evaluation grid and tolerance for equilibrium_check.
struct EquilibriumOptions {
  std::vector<double> grid{0.5, 1.0, 2.0};
  double tolerance = 0.01;
};

/// Simulates forward and reversed pairs, compares both empirical bivariate
/// CDFs against bivariate_cdf (arguments swapped for the reversed pairs).
EmpiricalReport equilibrium_check(double a, std::size_t n, RngState& rng,
                                  const EquilibriumOptions& options = {});

}  // namespace maxstable
