#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "maxstable/rng.hpp"

namespace maxstable {

/// Nonnegative function on the integer window [start, start + values.size()).
struct WindowedPath {
  std::int64_t start = 0;
  std::vector<double> values;

  std::int64_t end() const noexcept {
    return start + static_cast<std::int64_t>(values.size());
  }
  friend bool operator==(const WindowedPath&, const WindowedPath&) = default;
};

/// Integer window [begin, begin + length).
struct Window {
  std::int64_t begin = 0;
  std::size_t length = 1;
};

/// Raised when a caller-certified bound on the spectral process is violated.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// p_n = (1-r)/(1+r) r^|n| on all of Z.
struct TwoSidedGeometric {
  double ratio = 0.5;
};

/// Strictly positive masses on {first, ..., first + masses.size() - 1};
/// normalized on construction of the owning MixingMass.
struct FiniteMass {
  std::int64_t first = 0;
  std::vector<double> masses;
};

/// Strictly positive probability mass function on (a subset of) Z, used to
/// pick the random shift of a spectral profile.
class MixingMass {
 public:
  MixingMass() : MixingMass(TwoSidedGeometric{}) {}
  explicit MixingMass(TwoSidedGeometric g);
  explicit MixingMass(FiniteMass f);

  /// Uniform masses on [first, last].
  static MixingMass uniform(std::int64_t first, std::int64_t last);

  double mass(std::int64_t n) const;
  bool in_support(std::int64_t n) const noexcept;
  /// Support as [lo, hi] when finite.
  std::optional<std::pair<std::int64_t, std::int64_t>> finite_support() const;
  /// Smallest mass on the support; 0 for infinite support.
  double min_mass() const noexcept;

  /// Inverse-CDF draw; always consumes two uniforms.
  std::int64_t sample(RngState& rng) const;

 private:
  std::variant<TwoSidedGeometric, FiniteMass> kind_;
  std::vector<double> cumulative_;
};

/// Shifted geometric profile f_a(k) = (1-a) a^k 1{k >= 0}; f_0 is the
/// Dirac mass at 0.
double geometric_profile(double a, std::int64_t k) noexcept;

struct DaMixture {
  double a;
  MixingMass mixing;
};
struct DiracMixture {
  MixingMass mixing;
};
struct ConstantProfile {};

/// Spectral process descriptor: DaMixture realizes Y(t) = f_a(t-N)/p_N,
/// DiracMixture Y(t) = 1{t=N}/p_N, ConstantProfile Y = 1.
class SpectralSampler {
 public:
  using Kind = std::variant<DaMixture, DiracMixture, ConstantProfile>;

  SpectralSampler(Kind kind, Window window);

  const Kind& kind() const noexcept { return kind_; }
  const Window& window() const noexcept { return window_; }

  /// Y(t) given shift n (ignored for ConstantProfile).
  double profile_value(std::int64_t n, std::int64_t t) const;

  /// E[Y(t)] by direct summation of p_n * Y_n(t) over shifts (no use of the
  /// p_n / p_n cancellation); remainder below 1e-17 for infinite supports.
  double mean(std::int64_t t) const;

  /// sup of Y over the window across all shifts, when finite.
  std::optional<double> sup_bound() const;

 private:
  Kind kind_;
  Window window_;
};

/// One realization of Y on the sampler's window.
WindowedPath sample_spectral(const SpectralSampler& s, RngState& rng);

enum class ConeKind { D0, D1, Da };

struct ConeSpec {
  ConeKind kind = ConeKind::D1;
  double a = 1.0;  // meaningful for Da only
  double tolerance = 1e-9;

  /// The cone carrying the spectral mass of the max-AR(1) process with
  /// parameter a: D0 for a = 0, D1 for a = 1, Da otherwise.
  static ConeSpec for_parameter(double a, double tolerance = 1e-9);
};

/// Membership of a finite window of f in the cone (restricted to the window).
bool cone_member(const WindowedPath& f, const ConeSpec& cone);

/// g(t) = f(t + s): same values, window moved by -s.
WindowedPath shift(const WindowedPath& f, std::int64_t s);

/// Exponent measure of the max-AR(1) process on rectangle complements,
/// optionally restricted to a finite set of shifts (the exponent measure of a
/// DaMixture with finite mixing support, which does not depend on the masses).
struct ExponentFunctional {
  double a = 0.5;
  double truncation_error = 1e-12;
  std::optional<std::pair<std::int64_t, std::int64_t>> shift_support;
};

struct ExceedancePoint {
  std::int64_t t;
  double z;
};

/// mu{f : f(t_i) > z_i for some i} = sum_n max_i f_a(t_i - n) / z_i. The
/// geometric tail below the earliest index is summed in closed form, which
/// keeps the error under truncation_error (validated > 0).
/// Equals -log P[X(t_i) <= z_i for all i] for the max-AR(1) process.
double exponent_rectangle(const ExponentFunctional& e,
                          const std::vector<ExceedancePoint>& points);

struct DeHaanDraw {
  WindowedPath path;
  std::uint64_t spectral_draws = 0;
};

/// Exact draw of max_i U_i Y_i on the window. Requires sup Y <= bound.
DeHaanDraw dehaan_simulate(const SpectralSampler& s, double bound, RngState& rng);

}  // namespace maxstable
