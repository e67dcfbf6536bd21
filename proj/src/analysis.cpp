#include "maxstable/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maxstable/conditional.hpp"

namespace maxstable {

double kolmogorov_survival(double c) {
  if (c <= 0.0) return 1.0;
  // 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 c^2); alternating with fast decay.
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * c * c);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double kolmogorov_critical_value(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("kolmogorov_critical_value: level must lie in (0,1)");
  }
  double lo = 0.2, hi = 6.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_survival(mid) > level ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

void require_sample(std::span<const double> values, const char* what) {
  if (values.size() < 30) {
    throw std::domain_error(std::string(what) + ": need at least 30 values");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::domain_error(std::string(what) + ": non-finite value");
  }
}

}  // namespace

KsResult ks_one_sample(std::span<const double> values,
                       const std::function<double(double)>& cdf, double level) {
  require_sample(values, "ks_one_sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    // Step over ties so the empirical CDF jumps once per distinct value.
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double f = cdf(sorted[i]);
    d = std::max({d, std::abs(static_cast<double>(j) / n - f),
                  std::abs(f - static_cast<double>(i) / n)});
    i = j;
  }
  KsResult r;
  r.statistic = d;
  r.threshold = kolmogorov_critical_value(level) / std::sqrt(n);
  r.pass = d < r.threshold;
  return r;
}

KsResult ks_two_sample(std::span<const double> x, std::span<const double> y, double level) {
  require_sample(x, "ks_two_sample");
  require_sample(y, "ks_two_sample");
  std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double n = static_cast<double>(xs.size());
  const double m = static_cast<double>(ys.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double v = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  KsResult r;
  r.statistic = d;
  r.threshold = kolmogorov_critical_value(level) * std::sqrt((n + m) / (n * m));
  r.pass = d < r.threshold;
  return r;
}

RatioSupportEstimate ratio_support(std::span<const double> values,
                                   const RatioSupportOptions& options) {
  if (values.size() < 2) throw std::domain_error("ratio_support: need at least 2 values");
  std::vector<double> ratios;
  ratios.reserve(values.size() - 1);
  for (std::size_t t = 0; t + 1 < values.size(); ++t) {
    if (!(values[t] > 0.0) || !std::isfinite(values[t]) || !(values[t + 1] > 0.0) ||
        !std::isfinite(values[t + 1])) {
      throw std::domain_error("ratio_support: values must be finite and > 0");
    }
    ratios.push_back(values[t + 1] / values[t]);
  }
  std::sort(ratios.begin(), ratios.end());

  RatioSupportEstimate est;
  est.n_ratios = ratios.size();
  est.min_ratio = ratios.front();
  est.max_ratio = ratios.back();

  const auto min_count = std::max<std::size_t>(
      options.min_atom_count,
      static_cast<std::size_t>(std::ceil(options.min_atom_fraction * ratios.size())));
  for (std::size_t start = 0; start < ratios.size();) {
    std::size_t stop = start + 1;
    while (stop < ratios.size() &&
           ratios[stop] - ratios[stop - 1] <= options.rel_tol * ratios[stop]) {
      ++stop;
    }
    const std::size_t count = stop - start;
    if (count >= min_count) est.atoms.push_back({ratios[start + count / 2], count});
    start = stop;
  }
  std::stable_sort(est.atoms.begin(), est.atoms.end(),
                   [](const RatioCluster& l, const RatioCluster& r) { return l.count > r.count; });
  if (!est.atoms.empty()) {
    est.atom_location = est.atoms.front().location;
    est.atom_mass = static_cast<double>(est.atoms.front().count) / est.n_ratios;
    if (std::abs(*est.atom_location - est.max_ratio) <= options.rel_tol * est.max_ratio) {
      est.max_ratio_unbounded = false;
    }
  }
  if (est.min_ratio == est.max_ratio) est.max_ratio_unbounded = false;
  return est;
}

nlohmann::json IdentificationResult::to_json() const {
  return {{"a", params.a()},
          {"direction", std::string(to_string(params.direction()))},
          {"confidence_notes", confidence_notes},
          {"n_used", n_used}};
}

IdentificationResult identify(std::span<const double> values, const IdentifyOptions& options) {
  if (values.size() < 100) throw std::domain_error("identify: need at least 100 values");
  IdentificationResult result;
  result.n_used = values.size();

  const auto support = ratio_support(values, RatioSupportOptions{.rel_tol = options.rel_tol});
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; })) {
    result.params = MaxARParams(1.0);
    result.confidence_notes = "constant path: complete dependence";
    return result;
  }

  nlohmann::json diagnostics = {{"min_ratio", support.min_ratio},
                                {"max_ratio", support.max_ratio},
                                {"n_ratios", support.n_ratios}};
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& c : support.atoms) {
    atoms.push_back({{"location", c.location},
                     {"mass", static_cast<double>(c.count) / support.n_ratios}});
  }
  diagnostics["atoms"] = atoms;

  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(values.size() - 1);
  for (std::size_t t = 0; t + 1 < values.size(); ++t) pairs.emplace_back(values[t], values[t + 1]);
  std::string independence_note;
  if (pairs.size() >= 1000) {
    const auto report = independence_test(pairs, options.independence_level);
    const auto* sup = report.find("independence.copula_sup");
    diagnostics["independence"] = report.to_json();
    if (independence_accepted(report)) {
      if (support.atoms.empty()) {
        result.params = MaxARParams(0.0);
        std::ostringstream note;
        note << "consecutive pairs consistent with independence (copula sup " << sup->value
             << " vs threshold " << sup->threshold << "); no ratio atom";
        result.confidence_notes = note.str();
        return result;
      }
      independence_note = "independence not rejected, but a ratio atom is present; ";
    }
  } else if (support.atoms.empty()) {
    throw IdentificationError(
        "identify: fewer than 1001 values, too short for the independence test and no "
        "ratio atom",
        diagnostics);
  }

  const RatioCluster* below = nullptr;
  const RatioCluster* above = nullptr;
  for (const auto& c : support.atoms) {
    if (c.location < 1.0 - options.rel_tol && !below) below = &c;
    if (c.location > 1.0 + options.rel_tol && !above) above = &c;
  }
  if (below && above) {
    throw IdentificationError("identify: ratio atoms on both sides of 1", diagnostics);
  }
  if (!below && !above) {
    throw IdentificationError(
        "identify: dependent data without a ratio atom; not a max-AR(1) process or its "
        "time reversal",
        diagnostics);
  }
  const RatioCluster& atom = below ? *below : *above;
  const double mass = static_cast<double>(atom.count) / support.n_ratios;
  std::ostringstream note;
  note << independence_note << "ratio atom at " << atom.location << " with mass " << mass;
  if (below) {
    result.params = MaxARParams(atom.location, Direction::Forward);
    note << "; lower support edge " << support.min_ratio;
  } else {
    result.params = MaxARParams(1.0 / atom.location, Direction::Reversed);
    note << "; upper support edge " << support.max_ratio;
  }
  result.confidence_notes = note.str();
  return result;
}

}  // namespace maxstable
