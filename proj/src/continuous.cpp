#include "maxstable/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "maxstable/distributions.hpp"

namespace maxstable {

namespace {

void require_window(double window_length) {
  if (!(window_length > 0.0) || !std::isfinite(window_length)) {
    throw std::domain_error("window length must be finite and > 0");
  }
}

// Signed exponent: forward paths decay with elapsed time, reversed paths grow.
double drift(const CadlagPath& p, double elapsed) {
  if (p.a == 1.0) return 1.0;
  return std::pow(p.a, p.direction == Direction::Forward ? elapsed : -elapsed);
}

struct Record {
  double time;
  double value;  // envelope value at `time`
};

// min over [records.front().time, window_end] of the upper envelope; the
// envelope decays between records, so the minimum sits at a left limit.
double envelope_minimum(const std::vector<Record>& records, double a, double window_end) {
  double m = INFINITY;
  for (std::size_t j = 0; j < records.size(); ++j) {
    const double until = j + 1 < records.size() ? records[j + 1].time : window_end;
    m = std::min(m, records[j].value * std::pow(a, until - records[j].time));
  }
  return m;
}

}  // namespace

ShapeFunction::ShapeFunction(double a, Direction direction) : a_(a), direction_(direction) {
  if (!(a > 0.0 && a < 1.0)) {
    throw std::domain_error("shape function parameter must lie in (0,1), got " +
                            std::to_string(a));
  }
}

double ShapeFunction::operator()(double t) const noexcept {
  const double c = -std::log(a_);
  if (direction_ == Direction::Forward) return t >= 0.0 ? c * std::pow(a_, t) : 0.0;
  return t < 0.0 ? c * std::pow(a_, -t) : 0.0;
}

void CadlagPath::validate() const {
  if (!(t_end > t_begin)) throw std::invalid_argument("cadlag path: empty window");
  if (!(anchor_value > 0.0) || !std::isfinite(anchor_value)) {
    throw std::invalid_argument("cadlag path: anchor value must be finite and > 0");
  }
  double previous_time = t_begin;
  double previous_value = anchor_value;
  for (const auto& e : events) {
    if (!(e.time > previous_time) || e.time > t_end) {
      throw std::invalid_argument("cadlag path: event times must increase strictly inside "
                                  "the window");
    }
    if (!(e.value > 0.0) || !std::isfinite(e.value)) {
      throw std::invalid_argument("cadlag path: event values must be finite and > 0");
    }
    const double before = previous_value * drift(*this, e.time - previous_time);
    const bool upward = direction == Direction::Forward;
    if (upward ? !(e.value > before) : !(e.value < before)) {
      throw std::invalid_argument("cadlag path: event at t=" + std::to_string(e.time) +
                                  " is not a genuine jump");
    }
    previous_time = e.time;
    previous_value = e.value;
  }
}

CadlagPath simulate_za(double a, double window_length, RngState& rng) {
  require_window(window_length);
  if (!(a > 0.0 && a <= 1.0)) {
    throw std::domain_error(
        "simulate_za: a must lie in (0,1]; a = 0 has no càdlàg version (independent "
        "values at every time)");
  }
  CadlagPath path;
  path.t_end = window_length;
  path.a = a;
  path.seed = rng.seed();
  path.stream = rng.stream();
  // All points with T <= 0 act on [0, M] through a^t W, W ~ Fréchet(1).
  path.anchor_value = frechet_sample(rng);
  if (a == 1.0) return path;

  const double height = -std::log(a);
  std::vector<Record> records{{0.0, path.anchor_value}};
  double running_min = envelope_minimum(records, a, window_length);
  DecreasingMarkStream marks(window_length);
  for (;;) {
    const double peak = height * marks.next_mark(rng);
    if (peak <= running_min) break;
    const double time = window_length * rng.uniform();
    ++path.points_examined;

    auto next = std::upper_bound(records.begin(), records.end(), time,
                                 [](double t, const Record& r) { return t < r.time; });
    const auto& previous = *std::prev(next);
    if (peak <= previous.value * std::pow(a, time - previous.time)) continue;
    auto last_dominated = next;
    while (last_dominated != records.end() &&
           last_dominated->value <= peak * std::pow(a, last_dominated->time - time)) {
      ++last_dominated;
    }
    next = records.erase(next, last_dominated);
    records.insert(next, Record{time, peak});
    running_min = envelope_minimum(records, a, window_length);
  }
  path.events.reserve(records.size() - 1);
  for (std::size_t j = 1; j < records.size(); ++j) {
    path.events.push_back({records[j].time, records[j].value});
  }
  return path;
}

CadlagPath simulate_za_reversed(double a, double window_length, RngState& rng) {
  if (!(a > 0.0 && a < 1.0)) {
    throw std::domain_error("simulate_za_reversed: a must lie in (0,1), got " +
                            std::to_string(a));
  }
  const CadlagPath forward = simulate_za(a, window_length, rng);
  CadlagPath out = forward;
  out.direction = Direction::Reversed;
  out.events.clear();

  // Forward segments j = 0..R start at (T_j, c_j); the reversed path at
  // s = M - T_{j+1} takes the forward left limit c_j a^(T_{j+1} - T_j).
  std::vector<Record> segments{{0.0, forward.anchor_value}};
  for (const auto& e : forward.events) segments.push_back({e.time, e.value});
  const double M = window_length;
  const auto& last = segments.back();
  out.anchor_value = last.value * std::pow(a, M - last.time);
  for (std::size_t j = segments.size() - 1; j-- > 0;) {
    const double jump_time = segments[j + 1].time;
    out.events.push_back(
        {M - jump_time, segments[j].value * std::pow(a, jump_time - segments[j].time)});
  }
  return out;
}

double path_value(const CadlagPath& p, double t) {
  if (!(t >= p.t_begin && t <= p.t_end)) {
    throw std::domain_error("path_value: t=" + std::to_string(t) + " outside [" +
                            std::to_string(p.t_begin) + ", " + std::to_string(p.t_end) + "]");
  }
  const auto it = std::upper_bound(p.events.begin(), p.events.end(), t,
                                   [](double x, const PathEvent& e) { return x < e.time; });
  if (it == p.events.begin()) return p.anchor_value * drift(p, t - p.t_begin);
  const auto& e = *std::prev(it);
  return e.value * drift(p, t - e.time);
}

DiscretePath sample_grid(const CadlagPath& p, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::domain_error("sample_grid: epsilon must be finite and > 0");
  }
  const double length = p.t_end - p.t_begin;
  if (epsilon > length) throw std::domain_error("sample_grid: epsilon exceeds the window");
  const auto steps = static_cast<std::size_t>(std::floor(length / epsilon * (1.0 + 1e-12)));

  DiscretePath out;
  out.start_index = 0;
  out.seed = p.seed;
  out.stream = p.stream;
  out.params = MaxARParams(std::pow(p.a, epsilon), p.direction);
  out.values.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = std::min(p.t_begin + static_cast<double>(k) * epsilon, p.t_end);
    out.values.push_back(path_value(p, t));
  }
  return out;
}

double path_minimum(const CadlagPath& p) {
  double m = INFINITY;
  double start_time = p.t_begin;
  double start_value = p.anchor_value;
  auto close_segment = [&](double until) {
    m = std::min({m, start_value, start_value * drift(p, until - start_time)});
  };
  for (const auto& e : p.events) {
    close_segment(e.time);
    start_time = e.time;
    start_value = e.value;
  }
  close_segment(p.t_end);
  return m;
}

}  // namespace maxstable
