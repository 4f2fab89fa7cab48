#pragma once

#include <cstdint>
#include <random>

#include "loopmech/octonion.hpp"

namespace loopmech {

/// Distribution tag for tangent-space sampling.
enum class SampleDistribution { kUniformBall, kGaussianTangent };

/// Seeded sampling request.  Same seed, same stream: all derived doubles are
/// produced by a fixed mapping from raw mt19937_64 output, so streams are
/// bit-identical across platforms and standard libraries.
struct RngSpec {
  std::uint64_t seed = 0;
  SampleDistribution distribution = SampleDistribution::kUniformBall;
};

class RandomStream {
public:
  explicit RandomStream(const RngSpec& spec) : spec_(spec), engine_(spec.seed) {}
  explicit RandomStream(std::uint64_t seed) : RandomStream(RngSpec{seed}) {}

  const RngSpec& spec() const { return spec_; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (explicit, implementation-pinned).
  double gaussian();

  Octonion gaussian_octonion();

private:
  RngSpec spec_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Uniform point on the unit sphere of octonions (normalized 8-d Gaussian).
Octonion sample_unit_octonion(RandomStream& rng);

/// Uniform point on the unit sphere of quaternions, embedded with
/// coefficients 4..7 zero.
Octonion sample_unit_quaternion(RandomStream& rng);

/// Octonion uniform in the closed unit ball, scaled to the given radius.
Octonion sample_in_ball(RandomStream& rng, double radius = 1.0);

/// Imaginary tangent sample with the first `dim` coefficients e1..e_dim
/// populated (dim = 7 for the full algebra, 3 for the quaternionic one).
/// kUniformBall draws uniformly from the radius-`radius` ball; kGaussianTangent
/// draws componentwise N(0, radius^2).  Returned with zero real part.
Octonion sample_algebra(RandomStream& rng, double radius = 1.0, int dim = 7);

}  // namespace loopmech
