#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace geopump {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
};

/// Kolmogorov-Smirnov distance of `angles` from the uniform law on
/// [0, 2 pi). Sorts a copy.
double ks_uniform_angle(std::span<const double> angles);

/// Runs every module invariant with randomized inputs drawn from `seed`.
/// Grid sweeps use up to `threads` workers; results do not depend on it.
std::vector<CheckResult> run_invariant_suite(std::uint64_t seed, unsigned threads = 1);

}  // namespace geopump
