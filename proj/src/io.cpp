#include "maxstable/io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>

namespace maxstable {

namespace {

template <class T>
T parse_field(std::string_view text, std::size_t line) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("line " + std::to_string(line) + ": cannot parse '" +
                                std::string(text) + "'");
  }
  return value;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::string format_double(double v) {
  char buffer[32];
  const int n = std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return std::string(buffer, static_cast<std::size_t>(n));
}

void write_discrete_csv(std::ostream& out, const WindowedPath& path) {
  out << "t,value\n";
  for (std::size_t i = 0; i < path.values.size(); ++i) {
    out << path.start + static_cast<std::int64_t>(i) << ',' << format_double(path.values[i])
        << '\n';
  }
}

void write_discrete_csv(std::ostream& out, const DiscretePath& path) {
  write_discrete_csv(out, WindowedPath{path.start_index, path.values});
}

WindowedPath read_discrete_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("line 1: missing header");
  strip_cr(line);
  if (line != "t,value") {
    throw std::invalid_argument("line 1: expected header 't,value', got '" + line + "'");
  }
  WindowedPath path;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    strip_cr(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_number) + ": expected 't,value'");
    }
    const auto t = parse_field<std::int64_t>(std::string_view(line).substr(0, comma), line_number);
    const auto v = parse_field<double>(std::string_view(line).substr(comma + 1), line_number);
    if (path.values.empty()) {
      path.start = t;
    } else if (t != path.end()) {
      throw std::invalid_argument("line " + std::to_string(line_number) +
                                  ": indices must be consecutive");
    }
    path.values.push_back(v);
  }
  return path;
}

void write_cadlag_csv(std::ostream& out, const CadlagPath& path) {
  out << "time,value,is_event\n";
  out << format_double(path.t_begin) << ',' << format_double(path.anchor_value) << ",0\n";
  for (const auto& e : path.events) {
    out << format_double(e.time) << ',' << format_double(e.value) << ",1\n";
  }
}

nlohmann::json cadlag_to_json(const CadlagPath& path) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : path.events) events.push_back({{"time", e.time}, {"value", e.value}});
  return {{"window", {path.t_begin, path.t_end}},
          {"a", path.a},
          {"direction", std::string(to_string(path.direction))},
          {"anchor_value", path.anchor_value},
          {"events", events},
          {"seed", path.seed},
          {"stream", path.stream},
          {"points_examined", path.points_examined}};
}

CadlagPath cadlag_from_json(const nlohmann::json& j) {
  CadlagPath p;
  const auto& window = j.at("window");
  p.t_begin = window.at(0).get<double>();
  p.t_end = window.at(1).get<double>();
  p.a = j.at("a").get<double>();
  p.direction = parse_direction(j.at("direction").get<std::string>());
  p.anchor_value = j.at("anchor_value").get<double>();
  for (const auto& e : j.at("events")) {
    p.events.push_back({e.at("time").get<double>(), e.at("value").get<double>()});
  }
  p.seed = j.value("seed", std::uint64_t{0});
  p.stream = j.value("stream", std::uint64_t{0});
  p.points_examined = j.value("points_examined", std::uint64_t{0});
  p.validate();
  return p;
}

}  // namespace maxstable
