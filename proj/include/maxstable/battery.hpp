#pragma once

#include <cstddef>
#include <variant>

#include "maxstable/maxar.hpp"
#include "maxstable/report.hpp"
#include "maxstable/rng.hpp"

namespace maxstable {

struct DiscreteProcessSpec {
  MaxARParams params{0.5};
};

struct ContinuousProcessSpec {
  double a = 0.5;
  Direction direction = Direction::Forward;
  double epsilon = 0.1;
};

using ProcessSpec = std::variant<DiscreteProcessSpec, ContinuousProcessSpec>;

/// Desk-scale defaults; every check runs in well under a second at these.
struct BatterySizes {
  std::size_t replicates = 10000;       // independent draws for marginal/kernel checks
  std::size_t path_length = 10000;      // long paths for support and identification
  std::size_t equilibrium_pairs = 100000;
  std::size_t max_stable_copies = 50;
  std::size_t max_stable_replicates = 5000;
  double level = 0.01;
};

struct BatteryOptions {
  BatterySizes sizes;
  /// Test hook: doubles every simulated value so marginal checks must fail.
  bool corrupt_simulator = false;
};

/// Runs every distributional check applicable to the process and records
/// each outcome; individual failures never throw.
EmpiricalReport run_battery(const ProcessSpec& spec, RngState& rng,
                            const BatteryOptions& options = {});

}  // namespace maxstable
