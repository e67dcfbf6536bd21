#include "maxstable/distributions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace maxstable {

FrechetScale::FrechetScale(double scale) : scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::domain_error("Fréchet scale must be finite and > 0, got " +
                            std::to_string(scale));
  }
}

double frechet_cdf(double y, FrechetScale c) {
  if (!(y > 0.0)) {
    throw std::domain_error("frechet_cdf: argument must be > 0, got " + std::to_string(y));
  }
  return std::exp(-c.value() / y);
}

double frechet_quantile(double p, FrechetScale c) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("frechet_quantile: probability must lie in (0,1), got " +
                            std::to_string(p));
  }
  return -c.value() / std::log(p);
}

double frechet_sample(RngState& rng, FrechetScale c) {
  return -c.value() / std::log(rng.uniform());
}

DecreasingMarkStream::DecreasingMarkStream(double total_intensity)
    : total_intensity_(total_intensity) {
  if (!(total_intensity > 0.0) || !std::isfinite(total_intensity)) {
    throw std::domain_error("DecreasingMarkStream: total intensity must be finite and > 0");
  }
}

double DecreasingMarkStream::next_mark(RngState& rng) {
  cumulative_gamma_ += -std::log(rng.uniform());
  ++emitted_;
  return total_intensity_ / cumulative_gamma_;
}

}  // namespace maxstable
