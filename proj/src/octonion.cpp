#include "loopmech/octonion.hpp"

#include <cmath>
#include <stdexcept>

namespace loopmech {

namespace {

// Compiled basis table: TABLE[i][j] = {sign, index} with e_i * e_j = sign * e_index.
// Row is the left factor.  Diagonal of imaginary units is -e0; distinct
// imaginary units anticommute.
constexpr BasisProduct kTable[8][8] = {
    {{+1, 0}, {+1, 1}, {+1, 2}, {+1, 3}, {+1, 4}, {+1, 5}, {+1, 6}, {+1, 7}},
    {{+1, 1}, {-1, 0}, {+1, 3}, {-1, 2}, {+1, 5}, {-1, 4}, {-1, 7}, {+1, 6}},
    {{+1, 2}, {-1, 3}, {-1, 0}, {+1, 1}, {+1, 6}, {+1, 7}, {-1, 4}, {-1, 5}},
    {{+1, 3}, {+1, 2}, {-1, 1}, {-1, 0}, {+1, 7}, {-1, 6}, {+1, 5}, {-1, 4}},
    {{+1, 4}, {-1, 5}, {-1, 6}, {-1, 7}, {-1, 0}, {+1, 1}, {+1, 2}, {+1, 3}},
    {{+1, 5}, {+1, 4}, {-1, 7}, {+1, 6}, {-1, 1}, {-1, 0}, {-1, 3}, {+1, 2}},
    {{+1, 6}, {+1, 7}, {+1, 4}, {-1, 5}, {-1, 2}, {+1, 3}, {-1, 0}, {-1, 1}},
    {{+1, 7}, {-1, 6}, {+1, 5}, {+1, 4}, {-1, 3}, {-1, 2}, {+1, 1}, {-1, 0}},
};

}  // namespace

Octonion Octonion::operator*(const Octonion& o) const {
  std::array<double, 8> r{};
  for (std::size_t i = 0; i < 8; ++i) {
    const double a = c_[i];
    if (a == 0.0) continue;
    for (std::size_t j = 0; j < 8; ++j) {
      const double b = o.c_[j];
      if (b == 0.0) continue;
      const BasisProduct p = kTable[i][j];
      r[p.index] += p.sign * a * b;
    }
  }
  return Octonion(r);
}

double norm(const Octonion& g) { return std::sqrt(norm_sq(g)); }

Octonion inverse(const Octonion& g) {
  const double n2 = norm_sq(g);
  if (n2 == 0.0) throw std::domain_error("octonion inverse: zero norm");
  return conj(g) / n2;
}

Octonion associator(const Octonion& g, const Octonion& h, const Octonion& k) {
  return (g * h) * k - g * (h * k);
}

Octonion commutator(const Octonion& g, const Octonion& h) {
  return g * h - h * g;
}

double structure_constant(std::size_t i, std::size_t j, std::size_t k) {
  if (i == 0 || j == 0 || k == 0) return 0.0;
  if (i == j || j == k || i == k) return 0.0;
  const BasisProduct p = kTable[i][j];
  return p.index == k ? static_cast<double>(p.sign) : 0.0;
}

BasisProduct basis_product(std::size_t i, std::size_t j) { return kTable[i][j]; }

bool approx_equal(const Octonion& g, const Octonion& h, double eps) {
  return max_abs_diff(g, h) <= eps;
}

double max_abs_diff(const Octonion& g, const Octonion& h) {
  double m = 0.0;
  for (std::size_t i = 0; i < 8; ++i) m = std::max(m, std::abs(g[i] - h[i]));
  return m;
}

bool is_finite(const Octonion& g) {
  for (std::size_t i = 0; i < 8; ++i) {
    if (!std::isfinite(g[i])) return false;
  }
  return true;
}

Quaternion Quaternion::operator*(const Quaternion& q) const {
  return {w * q.w - x * q.x - y * q.y - z * q.z,
          w * q.x + x * q.w + y * q.z - z * q.y,
          w * q.y - x * q.z + y * q.w + z * q.x,
          w * q.z + x * q.y - y * q.x + z * q.w};
}

Octonion quaternion_pair_product(const Octonion& g, const Octonion& h) {
  const Quaternion a{g[0], g[1], g[2], g[3]};
  const Quaternion b{g[4], g[5], g[6], g[7]};
  const Quaternion c{h[0], h[1], h[2], h[3]};
  const Quaternion d{h[4], h[5], h[6], h[7]};
  const Quaternion first = a * c - conj(d) * b;
  const Quaternion second = d * a + b * conj(c);
  return Octonion(std::array<double, 8>{first.w, first.x, first.y, first.z,
                                        second.w, second.x, second.y, second.z});
}

}  // namespace loopmech
