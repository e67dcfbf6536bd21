#pragma once

#include "maxstable/rng.hpp"

namespace maxstable {

/// Scale c of the 1-Fréchet law with CDF exp(-c/y) on y > 0.
class FrechetScale {
 public:
  /// Throws std::domain_error unless `scale` is finite and strictly positive.
  explicit FrechetScale(double scale);

  static FrechetScale standard() noexcept { return FrechetScale(); }

  double value() const noexcept { return scale_; }

 private:
  FrechetScale() noexcept = default;
  double scale_ = 1.0;
};

/// exp(-c/y). Accepts y = +inf (returns 1); y must be positive, not NaN.
double frechet_cdf(double y, FrechetScale c = FrechetScale::standard());

/// -c / log(p) for p in (0,1).
double frechet_quantile(double p, FrechetScale c = FrechetScale::standard());

/// Inverse-transform draw; consumes exactly one uniform.
double frechet_sample(RngState& rng, FrechetScale c = FrechetScale::standard());

/// Points of a Poisson process on (0, inf) with intensity M u^-2 du, emitted
/// in decreasing order: u_k = M / Gamma_k with Gamma_k the k-th arrival of a
/// unit-rate Poisson process. The number of marks above x is Poisson(M/x).
class DecreasingMarkStream {
 public:
  explicit DecreasingMarkStream(double total_intensity);

  double total_intensity() const noexcept { return total_intensity_; }
  double cumulative_gamma() const noexcept { return cumulative_gamma_; }
  std::uint64_t emitted() const noexcept { return emitted_; }

  double next_mark(RngState& rng);

 private:
  double total_intensity_;
  double cumulative_gamma_ = 0.0;
  std::uint64_t emitted_ = 0;
};

}  // namespace maxstable
