#include "maxstable/maxar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "maxstable/distributions.hpp"

namespace maxstable {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || std::isnan(v)) {
    throw std::domain_error(std::string(what) + " must be > 0, got " + std::to_string(v));
  }
}

void require_unit_interval(double a) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw std::domain_error("parameter a must lie in [0,1], got " + std::to_string(a));
  }
}

}  // namespace

std::string_view to_string(Direction d) noexcept {
  return d == Direction::Forward ? "forward" : "reversed";
}

Direction parse_direction(std::string_view text) {
  if (text == "forward") return Direction::Forward;
  if (text == "reversed") return Direction::Reversed;
  throw std::invalid_argument("direction must be 'forward' or 'reversed', got '" +
                              std::string(text) + "'");
}

MaxARParams::MaxARParams(double a, Direction direction) : a_(a), direction_(direction) {
  require_unit_interval(a);
  if (direction == Direction::Reversed && (a == 0.0 || a == 1.0)) {
    direction_ = Direction::Forward;
    canonicalized_ = true;
  }
}

DiscretePath simulate_forward(double a, std::int64_t t0, std::size_t n, RngState& rng) {
  require_unit_interval(a);
  if (n == 0) throw std::invalid_argument("simulate_forward: path length must be >= 1");
  DiscretePath path;
  path.start_index = t0;
  path.params = MaxARParams(a);
  path.seed = rng.seed();
  path.stream = rng.stream();
  path.values.reserve(n);

  path.values.push_back(frechet_sample(rng));
  const double innovation_scale = 1.0 - a;
  for (std::size_t i = 1; i < n; ++i) {
    const double previous = path.values.back();
    if (a == 1.0) {
      path.values.push_back(previous);
      continue;
    }
    const double innovation = innovation_scale * frechet_sample(rng);
    path.values.push_back(std::max(a * previous, innovation));
  }
  return path;
}

DiscretePath simulate_reversed(double a, std::int64_t t0, std::size_t n, RngState& rng) {
  const MaxARParams params(a, Direction::Reversed);
  DiscretePath path = simulate_forward(a, t0, n, rng);
  std::reverse(path.values.begin(), path.values.end());
  path.params = params;
  return path;
}

DiscretePath simulate(const MaxARParams& params, std::int64_t t0, std::size_t n,
                      RngState& rng) {
  return params.direction() == Direction::Forward ? simulate_forward(params.a(), t0, n, rng)
                                                  : simulate_reversed(params.a(), t0, n, rng);
}

double kernel_cdf(const MaxARParams& params, double x, double y) {
  require_positive(x, "kernel_cdf: x");
  require_positive(y, "kernel_cdf: y");
  const double a = params.a();
  if (params.direction() == Direction::Forward) {
    // current x, next y; a = 1 is the step function at y = x.
    if (y < a * x) return 0.0;
    return std::exp(-(1.0 - a) / y);
  }
  // current y, next x; the atom a sits at x = y/a.
  if (x >= y / a) return 1.0;
  return (1.0 - a) * std::exp(a / y - 1.0 / x);
}

double kernel_sample(const MaxARParams& params, double current, RngState& rng) {
  require_positive(current, "kernel_sample: current value");
  const double a = params.a();
  const double u = rng.uniform();
  if (params.direction() == Direction::Forward) {
    if (a == 1.0) return current;
    // CDF jumps from 0 to exp(-(1-a)/(a x)) at y = a x.
    const double atom_cdf = std::exp(-(1.0 - a) / (a * current));
    if (u <= atom_cdf) return a * current;
    return -(1.0 - a) / std::log(u);
  }
  // Continuous part has total mass 1-a, then the atom at current/a.
  if (u >= 1.0 - a) return current / a;
  return 1.0 / (a / current - std::log(u / (1.0 - a)));
}

double bivariate_cdf(double a, double x, double y) {
  require_unit_interval(a);
  require_positive(x, "bivariate_cdf: x");
  require_positive(y, "bivariate_cdf: y");
  return std::exp(-std::max(1.0 / x, a / y) - (1.0 - a) / y);
}

double forward_atom_probability(double a) {
  require_unit_interval(a);
  if (a == 0.0) return 0.0;
  // integral of exp(-c/x) x^-2 exp(-1/x) dx = 1/(1+c) with c = (1-a)/a.
  return 1.0 / (1.0 + (1.0 - a) / a);
}

EmpiricalReport equilibrium_check(double a, std::size_t n, RngState& rng,
                                  const EquilibriumOptions& options) {
  if (!(a > 0.0 && a < 1.0)) {
    throw std::domain_error("equilibrium_check: a must lie in (0,1)");
  }
  if (n < 1000) throw std::invalid_argument("equilibrium_check: need n >= 1000 pairs");

  EmpiricalReport report;
  report.add_seed(rng.seed());
  report.params() = {{"a", a}, {"n", n}};

  RngState forward_rng = rng.derive(0);
  RngState reversed_rng = rng.derive(1);
  const auto forward = simulate_forward(a, 0, n + 1, forward_rng);
  const auto reversed = simulate_reversed(a, 0, n + 1, reversed_rng);

  double forward_sup = 0.0;
  double reversed_sup = 0.0;
  for (double x : options.grid) {
    for (double y : options.grid) {
      std::size_t forward_count = 0;
      std::size_t reversed_count = 0;
      for (std::size_t t = 0; t < n; ++t) {
        if (forward.values[t] <= x && forward.values[t + 1] <= y) ++forward_count;
        if (reversed.values[t] <= x && reversed.values[t + 1] <= y) ++reversed_count;
      }
      const double nn = static_cast<double>(n);
      forward_sup = std::max(
          forward_sup, std::abs(forward_count / nn - bivariate_cdf(a, x, y)));
      reversed_sup = std::max(
          reversed_sup, std::abs(reversed_count / nn - bivariate_cdf(a, y, x)));
    }
  }
  report.add("equilibrium.forward_pairs_sup", forward_sup, options.tolerance,
             Comparison::Below, "forward pair law vs exp(-max(1/x,a/y)-(1-a)/y)");
  report.add("equilibrium.reversed_pairs_sup", reversed_sup, options.tolerance,
             Comparison::Below, "reversed pair law vs swapped closed form");
  return report;
}

}  // namespace maxstable
