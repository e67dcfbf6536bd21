#include "maxstable/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "maxstable/distributions.hpp"

namespace maxstable {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_profile_parameter(double a) {
  if (!(a >= 0.0 && a < 1.0)) {
    throw std::domain_error("Da profile parameter must lie in [0,1), got " +
                            std::to_string(a));
  }
}

}  // namespace

MixingMass::MixingMass(TwoSidedGeometric g) : kind_(g) {
  if (!(g.ratio > 0.0 && g.ratio < 1.0)) {
    throw std::invalid_argument("two-sided geometric ratio must lie in (0,1)");
  }
}

MixingMass::MixingMass(FiniteMass f) {
  if (f.masses.empty()) throw std::invalid_argument("finite mixing mass: empty support");
  double total = 0.0;
  for (double m : f.masses) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw std::invalid_argument(
          "finite mixing mass: every mass on the support must be finite and > 0");
    }
    total += m;
  }
  for (double& m : f.masses) m /= total;
  cumulative_.resize(f.masses.size());
  std::partial_sum(f.masses.begin(), f.masses.end(), cumulative_.begin());
  cumulative_.back() = 1.0;
  kind_ = std::move(f);
}

MixingMass MixingMass::uniform(std::int64_t first, std::int64_t last) {
  if (last < first) throw std::invalid_argument("uniform mixing mass: empty range");
  return MixingMass(
      FiniteMass{first, std::vector<double>(static_cast<std::size_t>(last - first + 1), 1.0)});
}

double MixingMass::mass(std::int64_t n) const {
  return std::visit(
      Overloaded{
          [n](const TwoSidedGeometric& g) {
            const double k = static_cast<double>(n < 0 ? -n : n);
            return (1.0 - g.ratio) / (1.0 + g.ratio) * std::pow(g.ratio, k);
          },
          [n](const FiniteMass& f) {
            if (n < f.first || n >= f.first + static_cast<std::int64_t>(f.masses.size())) {
              return 0.0;
            }
            return f.masses[static_cast<std::size_t>(n - f.first)];
          }},
      kind_);
}

bool MixingMass::in_support(std::int64_t n) const noexcept {
  if (const auto* f = std::get_if<FiniteMass>(&kind_)) {
    return n >= f->first && n < f->first + static_cast<std::int64_t>(f->masses.size());
  }
  return true;
}

std::optional<std::pair<std::int64_t, std::int64_t>> MixingMass::finite_support() const {
  if (const auto* f = std::get_if<FiniteMass>(&kind_)) {
    return std::make_pair(f->first, f->first + static_cast<std::int64_t>(f->masses.size()) - 1);
  }
  return std::nullopt;
}

double MixingMass::min_mass() const noexcept {
  if (const auto* f = std::get_if<FiniteMass>(&kind_)) {
    return *std::min_element(f->masses.begin(), f->masses.end());
  }
  return 0.0;
}

std::int64_t MixingMass::sample(RngState& rng) const {
  const double u = rng.uniform();
  const double v = rng.uniform();
  if (const auto* g = std::get_if<TwoSidedGeometric>(&kind_)) {
    // P[|N| >= k] = 2 r^k / (1+r) for k >= 1; |N| counts the k >= 1 with
    // u < P[|N| >= k], i.e. k < log(u (1+r) / 2) / log r.
    const double r = g->ratio;
    const double level = std::log(u * (1.0 + r) / 2.0) / std::log(r);
    std::int64_t magnitude = 0;
    if (level > 1.0) magnitude = static_cast<std::int64_t>(std::ceil(level)) - 1;
    return v < 0.5 ? -magnitude : magnitude;
  }
  const auto& f = std::get<FiniteMass>(kind_);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto index = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                           f.masses.size() - 1);
  return f.first + static_cast<std::int64_t>(index);
}

double geometric_profile(double a, std::int64_t k) noexcept {
  if (k < 0) return 0.0;
  if (k == 0) return 1.0 - a;
  if (a == 0.0) return 0.0;
  return (1.0 - a) * std::pow(a, static_cast<double>(k));
}

SpectralSampler::SpectralSampler(Kind kind, Window window)
    : kind_(std::move(kind)), window_(window) {
  if (window.length == 0) throw std::invalid_argument("spectral sampler: empty window");
  if (const auto* d = std::get_if<DaMixture>(&kind_)) require_profile_parameter(d->a);
}

double SpectralSampler::profile_value(std::int64_t n, std::int64_t t) const {
  return std::visit(Overloaded{[&](const DaMixture& d) {
                                 const double p = d.mixing.mass(n);
                                 if (p <= 0.0) {
                                   throw std::invalid_argument(
                                       "spectral sampler: zero mixing mass at shift " +
                                       std::to_string(n));
                                 }
                                 return geometric_profile(d.a, t - n) / p;
                               },
                               [&](const DiracMixture& d) {
                                 const double p = d.mixing.mass(n);
                                 if (p <= 0.0) {
                                   throw std::invalid_argument(
                                       "spectral sampler: zero mixing mass at shift " +
                                       std::to_string(n));
                                 }
                                 return t == n ? 1.0 / p : 0.0;
                               },
                               [](const ConstantProfile&) { return 1.0; }},
                    kind_);
}

double SpectralSampler::mean(std::int64_t t) const {
  return std::visit(
      Overloaded{
          [&](const DaMixture& d) {
            double sum = 0.0;
            if (auto support = d.mixing.finite_support()) {
              for (auto n = support->first; n <= std::min(support->second, t); ++n) {
                sum += d.mixing.mass(n) * profile_value(n, t);
              }
              return sum;
            }
            // Terms vanish for n > t; the remainder after shift t-k is a^(k+1).
            for (std::int64_t k = 0;; ++k) {
              sum += d.mixing.mass(t - k) * profile_value(t - k, t);
              if (std::pow(d.a, static_cast<double>(k + 1)) < 1e-17) break;
            }
            return sum;
          },
          [&](const DiracMixture& d) {
            return d.mixing.in_support(t) ? d.mixing.mass(t) * profile_value(t, t) : 0.0;
          },
          [](const ConstantProfile&) { return 1.0; }},
      kind_);
}

std::optional<double> SpectralSampler::sup_bound() const {
  const std::int64_t lo = window_.begin;
  const std::int64_t hi = window_.begin + static_cast<std::int64_t>(window_.length) - 1;
  return std::visit(
      Overloaded{[&](const DaMixture& d) -> std::optional<double> {
                   const auto support = d.mixing.finite_support();
                   if (!support) return std::nullopt;
                   double best = 0.0;
                   // f_a is nonincreasing on k >= 0, so the sup over the window is
                   // at max(lo, n).
                   for (auto n = support->first; n <= std::min(support->second, hi); ++n) {
                     best = std::max(best, profile_value(n, std::max(lo, n)));
                   }
                   return best;
                 },
                 [&](const DiracMixture& d) -> std::optional<double> {
                   if (!d.mixing.finite_support()) return std::nullopt;
                   double best = 0.0;
                   for (auto n = lo; n <= hi; ++n) {
                     if (d.mixing.in_support(n)) best = std::max(best, 1.0 / d.mixing.mass(n));
                   }
                   return best;
                 },
                 [](const ConstantProfile&) -> std::optional<double> { return 1.0; }},
      kind_);
}

WindowedPath sample_spectral(const SpectralSampler& s, RngState& rng) {
  WindowedPath out;
  out.start = s.window().begin;
  out.values.assign(s.window().length, 1.0);
  std::int64_t shift_index = 0;
  if (const auto* d = std::get_if<DaMixture>(&s.kind())) {
    shift_index = d->mixing.sample(rng);
  } else if (const auto* d = std::get_if<DiracMixture>(&s.kind())) {
    shift_index = d->mixing.sample(rng);
  } else {
    return out;
  }
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = s.profile_value(shift_index, out.start + static_cast<std::int64_t>(i));
  }
  return out;
}

ConeSpec ConeSpec::for_parameter(double a, double tolerance) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("cone parameter must lie in [0,1]");
  if (a == 0.0) return {ConeKind::D0, 0.0, tolerance};
  if (a == 1.0) return {ConeKind::D1, 1.0, tolerance};
  return {ConeKind::Da, a, tolerance};
}

bool cone_member(const WindowedPath& f, const ConeSpec& cone) {
  const auto& v = f.values;
  if (v.empty()) return true;
  const double tol = cone.tolerance;
  const double peak = *std::max_element(v.begin(), v.end());
  if (peak == 0.0) return true;

  switch (cone.kind) {
    case ConeKind::D1:
      return std::all_of(v.begin(), v.end(), [&](double x) {
        return std::abs(x - v.front()) <= tol * std::max(std::abs(x), std::abs(v.front()));
      });
    case ConeKind::D0:
      return std::count_if(v.begin(), v.end(), [&](double x) { return x > tol * peak; }) <= 1;
    case ConeKind::Da: {
      // Exact zeros before the onset, then geometric decay at rate a.
      const auto onset = std::find_if(v.begin(), v.end(), [](double x) { return x != 0.0; });
      const double base = *onset;
      double expected = base;
      for (auto it = onset; it != v.end(); ++it, expected *= cone.a) {
        if (std::abs(*it - expected) > tol * std::max(expected, std::abs(*it))) return false;
      }
      return true;
    }
  }
  return false;
}

WindowedPath shift(const WindowedPath& f, std::int64_t s) {
  return WindowedPath{f.start - s, f.values};
}

double exponent_rectangle(const ExponentFunctional& e,
                          const std::vector<ExceedancePoint>& points) {
  if (points.empty()) throw std::domain_error("exponent_rectangle: need at least one point");
  if (!(e.a >= 0.0 && e.a <= 1.0)) throw std::domain_error("exponent_rectangle: a in [0,1]");
  if (!(e.truncation_error > 0.0)) {
    throw std::domain_error("exponent_rectangle: truncation error must be > 0");
  }
  std::int64_t first = points.front().t;
  std::int64_t last = points.front().t;
  for (const auto& p : points) {
    if (!(p.z > 0.0)) throw std::domain_error("exponent_rectangle: every z must be > 0");
    first = std::min(first, p.t);
    last = std::max(last, p.t);
  }

  if (e.a == 1.0) {
    // Constant profile: mu{f : f > z_i for some i} = max 1/z_i.
    double m = 0.0;
    for (const auto& p : points) m = std::max(m, 1.0 / p.z);
    return m;
  }

  auto term = [&](std::int64_t n) {
    double m = 0.0;
    for (const auto& p : points) m = std::max(m, geometric_profile(e.a, p.t - n) / p.z);
    return m;
  };

  if (e.shift_support) {
    double sum = 0.0;
    for (auto n = std::min(e.shift_support->second, last); n >= e.shift_support->first; --n) {
      sum += term(n);
    }
    return sum;
  }

  // Below the earliest point every term is a^(first-n) times the term at
  // n = first, so those shifts add exactly term(first) * a / (1-a).
  double sum = 0.0;
  for (auto n = last; n >= first; --n) sum += term(n);
  return sum + term(first) * e.a / (1.0 - e.a);
}

DeHaanDraw dehaan_simulate(const SpectralSampler& s, double bound, RngState& rng) {
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw std::domain_error("dehaan_simulate: bound must be finite and > 0");
  }
  for (std::size_t i = 0; i < s.window().length; ++i) {
    const auto t = s.window().begin + static_cast<std::int64_t>(i);
    if (!(s.mean(t) > 0.0)) {
      throw std::invalid_argument("dehaan_simulate: spectral process vanishes a.s. at t = " +
                                  std::to_string(t));
    }
  }
  DeHaanDraw draw;
  draw.path.start = s.window().begin;
  draw.path.values.assign(s.window().length, 0.0);
  auto& running = draw.path.values;

  DecreasingMarkStream marks(1.0);
  double running_min = 0.0;
  const double slack = bound * (1.0 + 1e-12);
  for (;;) {
    const double u = marks.next_mark(rng);
    if (u * bound < running_min) break;
    const auto y = sample_spectral(s, rng);
    ++draw.spectral_draws;
    for (std::size_t i = 0; i < running.size(); ++i) {
      if (y.values[i] > slack) {
        throw ContractViolation("dehaan_simulate: spectral value " +
                                std::to_string(y.values[i]) + " exceeds bound " +
                                std::to_string(bound));
      }
      running[i] = std::max(running[i], u * y.values[i]);
    }
    running_min = *std::min_element(running.begin(), running.end());
  }
  return draw;
}

}  // namespace maxstable
