#include "maxstable/battery.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "maxstable/analysis.hpp"
#include "maxstable/continuous.hpp"
#include "maxstable/distributions.hpp"

namespace maxstable {

namespace {

constexpr double kAtomRelTol = 1e-12;

bool same_value(double x, double y, double rel = kAtomRelTol) {
  return std::abs(x - y) <= rel * std::max(std::abs(x), std::abs(y));
}

double standard_frechet_cdf(double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; }

void add_ks(EmpiricalReport& report, const std::string& name, const KsResult& ks,
            const std::string& provenance) {
  report.add_decided(name, ks.statistic, ks.threshold, ks.pass, provenance);
}

// Three-sigma band around a binomial proportion; exact equality when p is 0 or 1.
void add_proportion(EmpiricalReport& report, const std::string& name, std::size_t hits,
                    std::size_t trials, double p, const std::string& provenance) {
  const double freq = static_cast<double>(hits) / static_cast<double>(trials);
  const double band = 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  report.add(name, std::abs(freq - p), band, Comparison::AtMost, provenance);
}

struct Pair {
  double first, second;
};

void discrete_battery(const MaxARParams& params, RngState& rng, const BatteryOptions& options,
                      EmpiricalReport& report) {
  const auto& sizes = options.sizes;
  const double scale = options.corrupt_simulator ? 2.0 : 1.0;
  const double a = params.a();
  const bool forward = params.direction() == Direction::Forward;
  auto sim = [&](std::size_t n, RngState& r) {
    auto path = simulate(params, 0, n, r);
    for (double& v : path.values) v *= scale;
    return path;
  };

  {  // marginal law at an interior coordinate of independent windows
    RngState r = rng.derive(1);
    std::vector<double> xs;
    xs.reserve(sizes.replicates);
    for (std::size_t i = 0; i < sizes.replicates; ++i) xs.push_back(sim(9, r).values[4]);
    add_ks(report, "marginal.ks", ks_one_sample(xs, standard_frechet_cdf, sizes.level),
           "1-Fréchet marginal exp(-1/y)");
  }

  std::vector<Pair> pairs;
  {
    RngState r = rng.derive(2);
    pairs.reserve(sizes.replicates);
    for (std::size_t i = 0; i < sizes.replicates; ++i) {
      const auto p = sim(2, r);
      pairs.push_back({p.values[0], p.values[1]});
    }
  }

  {  // atom of the transition kernel
    std::size_t hits = 0;
    for (const auto& p : pairs) {
      const double atom = forward ? a * p.first : (a > 0.0 ? p.first / a : -1.0);
      if (same_value(p.second, atom)) ++hits;
    }
    add_proportion(report, "kernel.atom_frequency", hits, pairs.size(), a,
                   forward ? "atom mass exp(-(1-a)/(ax)) integrates to a under pi"
                           : "reversed kernel atom a at y/a");
  }

  {  // recursion step vs exact kernel draw from the same starting values
    RngState r = rng.derive(3);
    std::vector<double> recursion, kernel;
    recursion.reserve(pairs.size());
    kernel.reserve(pairs.size());
    for (const auto& p : pairs) {
      recursion.push_back(p.second);
      kernel.push_back(kernel_sample(params, p.first / scale, r) * scale);
    }
    add_ks(report, "kernel.two_sample_ks", ks_two_sample(recursion, kernel, sizes.level),
           "transition kernel closed form");
  }

  {  // support of consecutive ratios along one long path
    RngState r = rng.derive(4);
    const auto path = sim(sizes.path_length, r);
    const auto est = ratio_support(path.values);
    if (a == 0.0) {
      report.add("ratio.min", est.min_ratio, 0.0, Comparison::Informational,
                 "ratio support [0, inf) for independent values");
    } else if (forward) {
      report.add("ratio.min_lower_bound", est.min_ratio, a * (1.0 - kAtomRelTol),
                 Comparison::AtLeast, "forward ratio support [a, inf)");
      report.add("ratio.min_attained", std::abs(est.min_ratio - a), a * kAtomRelTol,
                 Comparison::AtMost, "lower edge of forward ratio support is an atom");
    } else {
      report.add("ratio.max_upper_bound", est.max_ratio, (1.0 / a) * (1.0 + kAtomRelTol),
                 Comparison::AtMost, "reversed ratio support [0, 1/a]");
      report.add("ratio.max_attained", std::abs(est.max_ratio - 1.0 / a),
                 (1.0 / a) * kAtomRelTol, Comparison::AtMost,
                 "upper edge of reversed ratio support is an atom");
    }

    IdentificationResult id;
    bool ok = false;
    double error = INFINITY;
    try {
      id = identify(path.values);
      error = std::abs(id.params.a() - a);
      ok = id.params.direction() == params.direction() && error <= 1e-3;
    } catch (const std::exception&) {
      ok = false;
    }
    report.add_decided("identify.round_trip", error, 1e-3, ok,
                       "classification: max-AR(1) or its time reversal");
  }

  if (a > 0.0 && a < 1.0) {
    RngState r = rng.derive(5);
    report.merge(equilibrium_check(a, sizes.equilibrium_pairs, r));
  }

  {  // max-stability: rescaled pointwise maxima of independent copies
    RngState r = rng.derive(6);
    const auto copies = sizes.max_stable_copies;
    std::vector<double> max_first, max_min, one_first, one_min;
    for (std::size_t i = 0; i < sizes.max_stable_replicates; ++i) {
      double m0 = 0.0, m1 = 0.0;
      for (std::size_t c = 0; c < copies; ++c) {
        const auto p = sim(2, r);
        m0 = std::max(m0, p.values[0]);
        m1 = std::max(m1, p.values[1]);
      }
      max_first.push_back(m0 / static_cast<double>(copies));
      max_min.push_back(std::min(m0, m1) / static_cast<double>(copies));
      const auto single = sim(2, r);
      one_first.push_back(single.values[0]);
      one_min.push_back(std::min(single.values[0], single.values[1]));
    }
    add_ks(report, "max_stability.marginal_ks", ks_two_sample(max_first, one_first, sizes.level),
           "max-stability n^-1 max of n copies equals the process in law");
    add_ks(report, "max_stability.pair_min_ks", ks_two_sample(max_min, one_min, sizes.level),
           "max-stability on consecutive pairs");
  }
}

CadlagPath simulate_continuous(const ContinuousProcessSpec& spec, double length, RngState& r) {
  if (spec.direction == Direction::Reversed && spec.a < 1.0) {
    return simulate_za_reversed(spec.a, length, r);
  }
  return simulate_za(spec.a, length, r);
}

void continuous_battery(const ContinuousProcessSpec& spec, RngState& rng,
                        const BatteryOptions& options, EmpiricalReport& report) {
  const auto& sizes = options.sizes;
  const double scale = options.corrupt_simulator ? 2.0 : 1.0;
  const double a = spec.a;
  const double eps = spec.epsilon;
  const double skeleton_a = std::pow(a, eps);
  const bool forward = spec.direction == Direction::Forward || a == 1.0;
  const MaxARParams skeleton_params(skeleton_a,
                                    forward ? Direction::Forward : Direction::Reversed);

  {  // skeleton marginal and pairs against the discrete simulator
    RngState r = rng.derive(11);
    RngState d = rng.derive(12);
    std::vector<double> marginal, sk_min, sk_max, ar_min, ar_max;
    for (std::size_t i = 0; i < sizes.replicates; ++i) {
      const auto grid = sample_grid(simulate_continuous(spec, 2.0 * eps, r), eps);
      const double x0 = grid.values[0] * scale, x1 = grid.values[1] * scale;
      marginal.push_back(x1);
      sk_min.push_back(std::min(x0, x1));
      sk_max.push_back(std::max(x0, x1));
      const auto ar = simulate(skeleton_params, 0, 2, d);
      ar_min.push_back(std::min(ar.values[0], ar.values[1]));
      ar_max.push_back(std::max(ar.values[0], ar.values[1]));
    }
    add_ks(report, "skeleton.marginal_ks", ks_one_sample(marginal, standard_frechet_cdf, sizes.level),
           "stationary 1-Fréchet marginal");
    add_ks(report, "skeleton.pair_min_ks", ks_two_sample(sk_min, ar_min, sizes.level),
           "epsilon-skeleton is max-AR(1) with parameter a^epsilon");
    add_ks(report, "skeleton.pair_max_ks", ks_two_sample(sk_max, ar_max, sizes.level),
           "epsilon-skeleton is max-AR(1) with parameter a^epsilon");
  }

  {  // exact ratio edge along one long skeleton
    RngState r = rng.derive(13);
    const double length = eps * static_cast<double>(std::max<std::size_t>(sizes.path_length / 5, 10));
    const auto grid = sample_grid(simulate_continuous(spec, length, r), eps);
    const auto est = ratio_support(grid.values);
    if (forward) {
      report.add("skeleton.min_ratio", std::abs(est.min_ratio - skeleton_a), 1e-9,
                 Comparison::AtMost, "minimum skeleton ratio equals a^epsilon");
    } else {
      report.add("skeleton.max_ratio", std::abs(est.max_ratio - 1.0 / skeleton_a), 1e-9,
                 Comparison::AtMost, "maximum reversed skeleton ratio equals a^-epsilon");
    }
  }

  {  // holding over a unit step: Z(t+1) = a Z(t) with probability a
    RngState r = rng.derive(14);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < sizes.replicates; ++i) {
      const auto path = simulate_continuous(spec, 1.0, r);
      const double z0 = path_value(path, 0.0), z1 = path_value(path, 1.0);
      if (same_value(z1, forward ? a * z0 : z0 / a)) ++hits;
    }
    add_proportion(report, "holding.unit_step", hits, sizes.replicates, a,
                   "innovation scale 1-a^s; no jump over [t, t+1] with probability a");
  }
}

}  // namespace

EmpiricalReport run_battery(const ProcessSpec& spec, RngState& rng,
                            const BatteryOptions& options) {
  EmpiricalReport report;
  report.add_seed(rng.seed());
  const auto& s = options.sizes;
  nlohmann::json sizes = {{"replicates", s.replicates},
                          {"path_length", s.path_length},
                          {"equilibrium_pairs", s.equilibrium_pairs},
                          {"max_stable_copies", s.max_stable_copies},
                          {"max_stable_replicates", s.max_stable_replicates},
                          {"level", s.level}};
  if (const auto* d = std::get_if<DiscreteProcessSpec>(&spec)) {
    report.params() = {{"process", "discrete"},
                       {"a", d->params.a()},
                       {"direction", std::string(to_string(d->params.direction()))},
                       {"stream", rng.stream()},
                       {"sizes", sizes}};
    discrete_battery(d->params, rng, options, report);
  } else {
    const auto& c = std::get<ContinuousProcessSpec>(spec);
    if (!(c.a > 0.0 && c.a <= 1.0)) throw std::domain_error("continuous battery: a in (0,1]");
    if (!(c.epsilon > 0.0)) throw std::domain_error("continuous battery: epsilon must be > 0");
    report.params() = {{"process", "continuous"},
                       {"a", c.a},
                       {"direction", std::string(to_string(c.direction))},
                       {"epsilon", c.epsilon},
                       {"stream", rng.stream()},
                       {"sizes", sizes}};
    continuous_battery(c, rng, options, report);
  }
  return report;
}

}  // namespace maxstable
