#pragma once

#include <cstdint>
#include <vector>

#include "maxstable/maxar.hpp"
#include "maxstable/rng.hpp"

namespace maxstable {

/// Shape of the moving maximum: g_a(t) = (-log a) a^t 1{t >= 0} (Forward) or
/// its càdlàg reflection (-log a) a^-t 1{t < 0} (Reversed). Both integrate
/// to one over the line.
class ShapeFunction {
 public:
  ShapeFunction(double a, Direction direction = Direction::Forward);

  double a() const noexcept { return a_; }
  Direction direction() const noexcept { return direction_; }
  double operator()(double t) const noexcept;

 private:
  double a_;
  Direction direction_;
};

struct PathEvent {
  double time;
  /// Path value at `time` (the right limit).
  double value;

  friend bool operator==(const PathEvent&, const PathEvent&) = default;
};

/// Piecewise log-linear càdlàg path on [t_begin, t_end]. Between events the
/// value follows v a^(t - tau) (Forward: decays, events jump up) or
/// v a^-(t - tau) (Reversed: grows, events jump down).
struct CadlagPath {
  double t_begin = 0.0;
  double t_end = 0.0;
  double a = 1.0;
  Direction direction = Direction::Forward;
  double anchor_value = 1.0;
  std::vector<PathEvent> events;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  /// Poisson points in the window drawn before the stopping rule fired.
  std::uint64_t points_examined = 0;

  /// Throws std::invalid_argument if times are not strictly increasing
  /// inside the window, values not positive, or jumps point the wrong way.
  void validate() const;
};

/// Exact draw of Z_a on [0, M]. The points with T <= 0 are collapsed into a
/// single envelope a^t W with W ~ Fréchet(1); points in (0, M] are enumerated
/// in decreasing mark order until (-log a) u_k falls to the running minimum.
CadlagPath simulate_za(double a, double window_length, RngState& rng);

/// Exact draw of the reversed process on [0, M]: Z_a on the same window read
/// backwards with left limits, t -> Z_a((M - t)^-).
CadlagPath simulate_za_reversed(double a, double window_length, RngState& rng);

/// Right-continuous evaluation; t must lie in [t_begin, t_end].
double path_value(const CadlagPath& p, double t);

/// Values at t_begin + k epsilon for every such point in the window; the
/// result carries max-AR(1) parameters (a^epsilon, direction).
DiscretePath sample_grid(const CadlagPath& p, double epsilon);

/// Pathwise minimum over the window.
double path_minimum(const CadlagPath& p);

}  // namespace maxstable
