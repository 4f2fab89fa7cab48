#include "loopmech/random.hpp"

#include <cmath>

namespace loopmech {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double RandomStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1], u2 in [0, 1).
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

Octonion RandomStream::gaussian_octonion() {
  Octonion g;
  for (std::size_t i = 0; i < 8; ++i) g[i] = gaussian();
  return g;
}

Octonion sample_unit_octonion(RandomStream& rng) {
  for (;;) {
    const Octonion g = rng.gaussian_octonion();
    const double n = norm(g);
    if (n > 1e-6) return g / n;
  }
}

Octonion sample_unit_quaternion(RandomStream& rng) {
  for (;;) {
    Octonion g;
    for (std::size_t i = 0; i < 4; ++i) g[i] = rng.gaussian();
    const double n = norm(g);
    if (n > 1e-6) return g / n;
  }
}

Octonion sample_in_ball(RandomStream& rng, double radius) {
  const Octonion dir = sample_unit_octonion(rng);
  const double r = radius * std::pow(rng.uniform(), 1.0 / 8.0);
  return dir * r;
}

Octonion sample_algebra(RandomStream& rng, double radius, int dim) {
  Octonion v;
  for (int i = 1; i <= dim; ++i) v[static_cast<std::size_t>(i)] = rng.gaussian();
  if (rng.spec().distribution == SampleDistribution::kGaussianTangent) {
    return v * radius;
  }
  const double n = norm(v);
  if (n <= 1e-12) return Octonion{};
  const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
  return v * (r / n);
}

}  // namespace loopmech
