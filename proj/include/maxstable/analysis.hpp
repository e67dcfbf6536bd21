#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxstable/maxar.hpp"

namespace maxstable {

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov

/// c(level) with P[sup |B(t)| > c] = level for the Brownian bridge, i.e. the
/// asymptotic critical constant of the KS statistic (1.628 at 0.01).
double kolmogorov_critical_value(double level);

/// Asymptotic survival function of the Kolmogorov distribution.
double kolmogorov_survival(double c);

struct KsResult {
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// sup |F_n - cdf| with threshold c(level)/sqrt(n). Requires n >= 30.
KsResult ks_one_sample(std::span<const double> values,
                       const std::function<double(double)>& cdf, double level = 0.01);

/// sup |F_n - G_m| with threshold c(level) sqrt((n+m)/(n m)). Requires both
/// samples of size >= 30.
KsResult ks_two_sample(std::span<const double> x, std::span<const double> y,
                       double level = 0.01);

// ---------------------------------------------------------------------------
// Ratio support and identification

struct RatioCluster {
  double location = 0.0;
  std::size_t count = 0;
};

/// Empirical counterpart of the support of X(t+1)/X(t).
struct RatioSupportEstimate {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  /// True unless the dominant atom sits at the upper edge of the support.
  bool max_ratio_unbounded = true;
  std::optional<double> atom_location;
  double atom_mass = 0.0;
  std::size_t n_ratios = 0;
  /// Every cluster large enough to count as an atom, by decreasing count.
  std::vector<RatioCluster> atoms;
};

struct RatioSupportOptions {
  /// Ratios within this relative distance chain into one cluster.
  double rel_tol = 1e-9;
  /// A cluster is an atom when it holds at least
  /// max(min_atom_count, min_atom_fraction * n_ratios) ratios.
  std::size_t min_atom_count = 3;
  double min_atom_fraction = 1e-3;
};

RatioSupportEstimate ratio_support(std::span<const double> values,
                                   const RatioSupportOptions& options = {});
inline RatioSupportEstimate ratio_support(const DiscretePath& path, double rel_tol) {
  return ratio_support(path.values, RatioSupportOptions{.rel_tol = rel_tol});
}

struct IdentificationResult {
  MaxARParams params{0.0};
  std::string confidence_notes;
  std::size_t n_used = 0;

  nlohmann::json to_json() const;
};

/// Raised when the data do not fit the classified family; carries the
/// evidence gathered so far.
class IdentificationError : public std::runtime_error {
 public:
  IdentificationError(const std::string& what, nlohmann::json diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}
  const nlohmann::json& diagnostics() const noexcept { return diagnostics_; }

 private:
  nlohmann::json diagnostics_;
};

struct IdentifyOptions {
  double rel_tol = 1e-9;
  double independence_level = 0.01;
};

/// Decision tree: constant path -> a = 1; consecutive pairs independent and
/// no ratio atom -> a = 0; otherwise the ratio atom q gives Forward a = q
/// (q < 1) or Reversed a = 1/q (q > 1). Requires at least 100 values.
IdentificationResult identify(std::span<const double> values,
                              const IdentifyOptions& options = {});

}  // namespace maxstable
