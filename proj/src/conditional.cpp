#include "maxstable/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace maxstable {

namespace {

// Ratios that agree to this relative precision are treated as equal, which
// makes the indicator right-continuous at the kernel atoms.
constexpr double kBoundarySlack = 1e-12;

struct ShiftTerms {
  double indicator = 0.0;  // 1{max_i f(t_i)/z_i <= f(t)/z} f(t)
  double excess = 0.0;     // (max_i f(t_i)/z_i - f(t)/z)^+
};

// g(f) for a single nonnegative profile evaluated at the query points.
template <class Profile>
ShiftTerms evaluate(const ConditionalQuery& q, Profile&& f) {
  const double base = f(q.conditioning.t);
  const double scaled_base = base / q.conditioning.z;
  double target_max = 0.0;
  for (const auto& p : q.targets) target_max = std::max(target_max, f(p.t) / p.z);
  ShiftTerms out;
  if (target_max <= scaled_base * (1.0 + kBoundarySlack)) {
    out.indicator = base;
  } else {
    out.excess = target_max - scaled_base;
  }
  return out;
}

}  // namespace

void ConditionalQuery::validate() const {
  if (targets.empty()) throw std::domain_error("conditional query: no targets");
  if (!(conditioning.z > 0.0)) {
    throw std::domain_error("conditional query: conditioning value must be > 0");
  }
  std::set<std::int64_t> seen;
  for (const auto& p : targets) {
    if (!(p.z > 0.0)) throw std::domain_error("conditional query: target values must be > 0");
    if (!seen.insert(p.t).second) {
      throw std::domain_error("conditional query: repeated target index " +
                              std::to_string(p.t));
    }
  }
}

double conditional_cdf(const ConditionalQuery& q, double a, double tol) {
  q.validate();
  if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("conditional_cdf: a must lie in [0,1]");
  if (!(tol > 0.0 && tol <= 1e-4)) {
    throw std::domain_error("conditional_cdf: tol must lie in (0, 1e-4]");
  }
  if (a == 1.0) {
    const auto t = evaluate(q, [](std::int64_t) { return 1.0; });
    return t.indicator * std::exp(-t.excess);
  }

  std::int64_t first = q.conditioning.t;
  std::int64_t last = q.conditioning.t;
  for (const auto& p : q.targets) {
    first = std::min(first, p.t);
    last = std::max(last, p.t);
  }
  auto terms_at = [&](std::int64_t n) {
    return evaluate(q, [&](std::int64_t t) { return geometric_profile(a, t - n); });
  };

  // Shifts n > last contribute nothing. For n < first every profile value at
  // the query points is a^(first-n) times its value at n = first, and both
  // terms are degree-1 homogeneous in the profile, so the shifts below
  // `first` add exactly term(first) * a / (1-a). The tail is summed in closed
  // form; the remaining error is rounding, far below any admissible tol.
  double indicator = 0.0;
  double excess = 0.0;
  for (auto n = last; n >= first; --n) {
    const auto t = terms_at(n);
    indicator += t.indicator;
    excess += t.excess;
  }
  const auto head = terms_at(first);
  const double tail_factor = a / (1.0 - a);
  indicator += head.indicator * tail_factor;
  excess += head.excess * tail_factor;
  return std::clamp(indicator * std::exp(-excess), 0.0, 1.0);
}

MonteCarloEstimate conditional_cdf_mc(const ConditionalQuery& q, double a, std::size_t n,
                                      RngState& rng) {
  q.validate();
  if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("conditional_cdf_mc: a must lie in [0,1]");
  if (n < 1000) throw std::invalid_argument("conditional_cdf_mc: need n >= 1000 draws");

  std::int64_t first = q.conditioning.t;
  std::int64_t last = q.conditioning.t;
  for (const auto& p : q.targets) {
    first = std::min(first, p.t);
    last = std::max(last, p.t);
  }
  const Window window{first, static_cast<std::size_t>(last - first + 1)};
  SpectralSampler::Kind kind = ConstantProfile{};
  if (a == 0.0) {
    kind = DiracMixture{MixingMass(TwoSidedGeometric{0.5})};
  } else if (a < 1.0) {
    kind = DaMixture{a, MixingMass(TwoSidedGeometric{0.5})};
  }
  const SpectralSampler sampler(kind, window);

  double sum_i = 0.0, sum_e = 0.0, sum_ii = 0.0, sum_ee = 0.0, sum_ie = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto y = sample_spectral(sampler, rng);
    const auto t = evaluate(q, [&](std::int64_t idx) {
      return y.values[static_cast<std::size_t>(idx - first)];
    });
    sum_i += t.indicator;
    sum_e += t.excess;
    sum_ii += t.indicator * t.indicator;
    sum_ee += t.excess * t.excess;
    sum_ie += t.indicator * t.excess;
  }
  const double nn = static_cast<double>(n);
  MonteCarloEstimate est;
  est.samples = n;
  est.indicator_mean = sum_i / nn;
  est.excess_mean = sum_e / nn;
  const double var_i = std::max(0.0, (sum_ii / nn - est.indicator_mean * est.indicator_mean)) *
                       nn / (nn - 1.0);
  const double var_e =
      std::max(0.0, (sum_ee / nn - est.excess_mean * est.excess_mean)) * nn / (nn - 1.0);
  const double cov = (sum_ie / nn - est.indicator_mean * est.excess_mean) * nn / (nn - 1.0);
  est.indicator_se = std::sqrt(var_i / nn);
  est.excess_se = std::sqrt(var_e / nn);

  const double damp = std::exp(-est.excess_mean);
  est.estimate = est.indicator_mean * damp;
  // Gradient of A exp(-B) is (exp(-B), -A exp(-B)).
  const double var_product = damp * damp *
                             (var_i + est.indicator_mean * est.indicator_mean * var_e -
                              2.0 * est.indicator_mean * cov) /
                             nn;
  est.standard_error = std::sqrt(std::max(0.0, var_product));
  return est;
}

EmpiricalReport independence_test(const std::vector<std::pair<double, double>>& pairs,
                                  double level, const IndependenceOptions& options) {
  if (pairs.size() < 1000) {
    throw std::invalid_argument("independence_test: need at least 1000 pairs");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("independence_test: level must lie in (0,1)");
  }
  if (options.grid < 2 || options.permutations < 1) {
    throw std::invalid_argument("independence_test: grid >= 2 and permutations >= 1");
  }
  EmpiricalReport report;
  report.params() = {{"n", pairs.size()}, {"level", level}, {"grid", options.grid},
                     {"permutations", options.permutations}};
  report.add_seed(options.seed);

  const std::size_t n = pairs.size();
  const std::size_t grid = options.grid;
  std::vector<double> us(n), vs(n);
  for (std::size_t i = 0; i < n; ++i) {
    us[i] = pairs[i].first;
    vs[i] = pairs[i].second;
  }

  // Cell index ceil(G F_n(x)) - 1, so that F_n(x) <= i/G iff cell <= i-1.
  auto cells_of = [&](const std::vector<double>& xs) {
    std::vector<double> sorted(xs);
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> cells(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto rank = static_cast<std::size_t>(
          std::upper_bound(sorted.begin(), sorted.end(), xs[i]) - sorted.begin());
      cells[i] = (grid * rank + n - 1) / n - 1;
    }
    return std::make_pair(std::move(cells), sorted.front() == sorted.back());
  };
  auto [cu, u_constant] = cells_of(us);
  auto [cv, v_constant] = cells_of(vs);
  if (u_constant || v_constant) {
    report.add_decided("independence.applicable", 0.0, 1.0, false,
                       "constant margin: independence criterion not applicable");
    return report;
  }

  std::vector<double> marginal_u(grid + 1, 0.0), marginal_v(grid + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    marginal_u[cu[i] + 1] += 1.0;
    marginal_v[cv[i] + 1] += 1.0;
  }
  for (std::size_t i = 1; i <= grid; ++i) {
    marginal_u[i] += marginal_u[i - 1];
    marginal_v[i] += marginal_v[i - 1];
  }

  std::vector<double> counts((grid + 1) * (grid + 1));
  auto statistic = [&](const std::vector<std::size_t>& v_cells) {
    std::fill(counts.begin(), counts.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) counts[(cu[i] + 1) * (grid + 1) + v_cells[i] + 1] += 1.0;
    double sup = 0.0;
    const double nn = static_cast<double>(n);
    for (std::size_t i = 1; i <= grid; ++i) {
      for (std::size_t j = 1; j <= grid; ++j) {
        auto& c = counts[i * (grid + 1) + j];
        c += counts[(i - 1) * (grid + 1) + j] + counts[i * (grid + 1) + j - 1] -
             counts[(i - 1) * (grid + 1) + j - 1];
        sup = std::max(sup, std::abs(c / nn - marginal_u[i] * marginal_v[j] / (nn * nn)));
      }
    }
    return sup;
  };

  const double observed = statistic(cv);
  RngState rng(options.seed, n);
  std::vector<double> null_stats;
  null_stats.reserve(options.permutations);
  std::vector<std::size_t> shuffled(cv);
  std::size_t at_least = 0;
  for (std::size_t b = 0; b < options.permutations; ++b) {
    for (std::size_t i = n - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1));
      std::swap(shuffled[i], shuffled[std::min(j, i)]);
    }
    const double s = statistic(shuffled);
    null_stats.push_back(s);
    if (s >= observed) ++at_least;
  }
  std::sort(null_stats.begin(), null_stats.end());
  const double p_value =
      static_cast<double>(at_least + 1) / static_cast<double>(options.permutations + 1);
  const auto q_index = std::min<std::size_t>(
      null_stats.size() - 1,
      static_cast<std::size_t>(std::ceil((1.0 - level) * (options.permutations + 1))) - 1);
  report.add_decided("independence.applicable", 1.0, 1.0, true, "both margins nonconstant");
  report.add_decided("independence.copula_sup", observed, null_stats[q_index], p_value > level,
                     "independent iff P[Y(t1)=0 or Y(t2)=0]=1; permutation threshold");
  report.add("independence.p_value", p_value, level, Comparison::Informational,
             "permutation p-value");
  return report;
}

bool independence_accepted(const EmpiricalReport& report) {
  const auto* applicable = report.find("independence.applicable");
  const auto* sup = report.find("independence.copula_sup");
  return applicable && applicable->pass && sup && sup->pass;
}

}  // namespace maxstable
