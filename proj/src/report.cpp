#include "maxstable/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxstable {

namespace {

bool decide(double value, double threshold, Comparison cmp) {
  if (std::isnan(value)) return false;
  switch (cmp) {
    case Comparison::Below: return value < threshold;
    case Comparison::AtMost: return value <= threshold;
    case Comparison::AtLeast: return value >= threshold;
    case Comparison::Informational: return true;
  }
  return false;
}

// JSON has no inf/nan; encode them as strings so reports stay parseable.
nlohmann::json number_to_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  throw std::invalid_argument("report: bad numeric field '" + s + "'");
}

}  // namespace

const Check& EmpiricalReport::add(std::string name, double value, double threshold,
                                  Comparison cmp, std::string provenance) {
  return add_decided(std::move(name), value, threshold, decide(value, threshold, cmp),
                     std::move(provenance));
}

const Check& EmpiricalReport::add_decided(std::string name, double value,
                                          double threshold, bool pass,
                                          std::string provenance) {
  auto it = std::lower_bound(checks_.begin(), checks_.end(), name,
                             [](const Check& c, const std::string& n) { return c.name < n; });
  if (it != checks_.end() && it->name == name) {
    throw std::invalid_argument("report: duplicate check name '" + name + "'");
  }
  it = checks_.insert(it, Check{std::move(name), value, threshold, pass,
                                std::move(provenance)});
  return *it;
}

void EmpiricalReport::add_seed(std::uint64_t seed) {
  if (std::find(seeds_.begin(), seeds_.end(), seed) == seeds_.end()) seeds_.push_back(seed);
}

void EmpiricalReport::merge(const EmpiricalReport& other, const std::string& prefix) {
  for (const auto& c : other.checks_) {
    add_decided(prefix + c.name, c.value, c.threshold, c.pass, c.provenance);
  }
  for (auto s : other.seeds_) add_seed(s);
}

bool EmpiricalReport::all_pass() const noexcept {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

const Check* EmpiricalReport::find(const std::string& name) const noexcept {
  for (const auto& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

nlohmann::json EmpiricalReport::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : checks_) {
    checks.push_back({{"name", c.name},
                      {"value", number_to_json(c.value)},
                      {"threshold", number_to_json(c.threshold)},
                      {"pass", c.pass},
                      {"paper_ref", c.provenance}});
  }
  return {{"checks", checks}, {"seeds", seeds_}, {"params", params_}};
}

EmpiricalReport EmpiricalReport::from_json(const nlohmann::json& j) {
  EmpiricalReport r;
  for (const auto& c : j.at("checks")) {
    r.add_decided(c.at("name").get<std::string>(), number_from_json(c.at("value")),
                  number_from_json(c.at("threshold")), c.at("pass").get<bool>(),
                  c.at("paper_ref").get<std::string>());
  }
  for (const auto& s : j.at("seeds")) r.add_seed(s.get<std::uint64_t>());
  if (j.contains("params")) r.params_ = j.at("params");
  return r;
}

}  // namespace maxstable
