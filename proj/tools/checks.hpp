#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "loopmech/loop.hpp"
#include "loopmech/random.hpp"

namespace loopmech::cli {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double metric = 0.0;  ///< headline figure, usually a max residual or a rank
  std::string detail;   ///< one-line summary; on failure, the first counterexample
};

/// A named invariant check.  run(seed) must be deterministic for a fixed seed
/// and independent of every other check, so the registry can be evaluated on
/// any number of worker threads in any order.
struct Check {
  std::string suite;  ///< "algebra" | "loop" | "mechanics"
  std::string name;
  std::function<CheckResult(std::uint64_t seed)> run;
};

const std::vector<Check>& check_registry();

/// One (g, h, theta) input for the cotangent-transfer defect: loop points g
/// and h plus a unit covector at g*h.  With quaternionic=true everything is
/// drawn from the embedded quaternion sphere, where the defect vanishes.
struct CotangentSample {
  UnitOctonion g;
  UnitOctonion h;
  Octonion theta;
};

CotangentSample sample_cotangent_triple(RandomStream& rng, bool quaternionic);

}  // namespace loopmech::cli
