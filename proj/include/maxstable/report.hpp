#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace maxstable {

/// How a check's value is compared against its threshold.
enum class Comparison {
  Below,        // pass iff value < threshold
  AtMost,       // pass iff value <= threshold
  AtLeast,      // pass iff value >= threshold
  Informational // always passes; threshold carried for context
};

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  /// Short provenance note: which identity or oracle this check exercises.
  std::string provenance;
};

/// Outcome of a battery of statistical checks. Checks are kept sorted by
/// name so reports assembled in any order serialize identically.
class EmpiricalReport {
 public:
  const Check& add(std::string name, double value, double threshold, Comparison cmp,
                   std::string provenance);
  /// Records a check whose pass flag was decided by the caller.
  const Check& add_decided(std::string name, double value, double threshold, bool pass,
                           std::string provenance);

  void add_seed(std::uint64_t seed);
  void merge(const EmpiricalReport& other, const std::string& prefix = {});

  const std::vector<Check>& checks() const noexcept { return checks_; }
  const std::vector<std::uint64_t>& seeds() const noexcept { return seeds_; }
  /// Null by default; free-form parameter description.
  nlohmann::json& params() noexcept { return params_; }
  const nlohmann::json& params() const noexcept { return params_; }

  bool all_pass() const noexcept;
  const Check* find(const std::string& name) const noexcept;

  nlohmann::json to_json() const;
  static EmpiricalReport from_json(const nlohmann::json& j);

 private:
  std::vector<Check> checks_;
  std::vector<std::uint64_t> seeds_;
  nlohmann::json params_ = nlohmann::json::object();
};

}  // namespace maxstable
