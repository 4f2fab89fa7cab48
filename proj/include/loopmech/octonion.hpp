#pragma once

#include <array>
#include <cstddef>

namespace loopmech {

/// Octonion with coefficients over the basis e0..e7, where e0 is the real
/// unit.  Multiplication follows the compiled basis table in octonion.cpp:
/// distinct imaginary units anticommute, each imaginary unit squares to -e0,
/// and the products of distinct imaginary units are fixed by the fundamental
/// triples (1,2,3), (1,4,5), (1,7,6), (2,4,6), (2,5,7), (3,4,7), (3,6,5).
///
/// The algebra is alternative but not associative; use associator() to
/// measure the defect.
class Octonion {
public:
  constexpr Octonion() : c_{} {}
  constexpr explicit Octonion(const std::array<double, 8>& c) : c_(c) {}

  /// Basis element e_i, 0 <= i <= 7.
  static constexpr Octonion basis(std::size_t i) {
    Octonion e;
    e.c_[i] = 1.0;
    return e;
  }

  /// The multiplicative identity e0.
  static constexpr Octonion identity() { return basis(0); }

  constexpr double operator[](std::size_t i) const { return c_[i]; }
  constexpr double& operator[](std::size_t i) { return c_[i]; }
  constexpr const std::array<double, 8>& coeffs() const { return c_; }

  constexpr double real() const { return c_[0]; }

  /// Imaginary part as an octonion (real coefficient zeroed).
  constexpr Octonion imag() const {
    Octonion v = *this;
    v.c_[0] = 0.0;
    return v;
  }

  constexpr Octonion operator+(const Octonion& o) const {
    Octonion r;
    for (std::size_t i = 0; i < 8; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
  }
  constexpr Octonion operator-(const Octonion& o) const {
    Octonion r;
    for (std::size_t i = 0; i < 8; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
  }
  constexpr Octonion operator-() const {
    Octonion r;
    for (std::size_t i = 0; i < 8; ++i) r.c_[i] = -c_[i];
    return r;
  }
  constexpr Octonion operator*(double s) const {
    Octonion r;
    for (std::size_t i = 0; i < 8; ++i) r.c_[i] = c_[i] * s;
    return r;
  }
  constexpr Octonion operator/(double s) const { return *this * (1.0 / s); }

  Octonion operator*(const Octonion& o) const;

private:
  std::array<double, 8> c_;
};

constexpr Octonion operator*(double s, const Octonion& o) { return o * s; }

/// Conjugate: real part kept, all seven imaginary coefficients negated.
/// Anti-automorphism: conj(g*h) = conj(h)*conj(g).
constexpr Octonion conj(const Octonion& g) {
  Octonion r = g;
  for (std::size_t i = 1; i < 8; ++i) r[i] = -r[i];
  return r;
}

/// Euclidean inner product of coefficient vectors; coincides with the
/// polarization (g*conj(h) + h*conj(g)) / 2 of the multiplicative norm.
constexpr double inner(const Octonion& g, const Octonion& h) {
  double s = 0.0;
  for (std::size_t i = 0; i < 8; ++i) s += g[i] * h[i];
  return s;
}

constexpr double norm_sq(const Octonion& g) { return inner(g, g); }

double norm(const Octonion& g);

/// Multiplicative inverse conj(g) / |g|^2.  Satisfies the strong inverse
/// property inv(g)*(g*h) = (h*g)*inv(g) = h for all h.
/// Throws std::domain_error on zero norm.
Octonion inverse(const Octonion& g);

/// Associator (g*h)*k - g*(h*k).  Alternativity makes it vanish whenever two
/// arguments coincide; (e1,e4,e7) witnesses non-associativity with norm 2.
Octonion associator(const Octonion& g, const Octonion& h, const Octonion& k);

/// Commutator g*h - h*g.
Octonion commutator(const Octonion& g, const Octonion& h);

/// Structure constant f_ijk = <e_k, e_i*e_j> for distinct i,j,k >= 1.
/// Completely antisymmetric; zero when any index is 0 or repeated.
double structure_constant(std::size_t i, std::size_t j, std::size_t k);

/// Signed basis product: e_i * e_j = sign * e_index.
struct BasisProduct {
  int sign;
  std::size_t index;
};
BasisProduct basis_product(std::size_t i, std::size_t j);

bool approx_equal(const Octonion& g, const Octonion& h, double eps = 1e-12);
double max_abs_diff(const Octonion& g, const Octonion& h);
bool is_finite(const Octonion& g);

/// Quaternion with Hamilton basis (1, i, j, k), i*j = k.
struct Quaternion {
  double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

  constexpr Quaternion operator+(const Quaternion& q) const {
    return {w + q.w, x + q.x, y + q.y, z + q.z};
  }
  constexpr Quaternion operator-(const Quaternion& q) const {
    return {w - q.w, x - q.x, y - q.y, z - q.z};
  }
  Quaternion operator*(const Quaternion& q) const;
};

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

/// Product computed through the quaternion-pair (doubling) representation
///   (a,b)*(c,d) = (a*c - conj(d)*b, d*a + b*conj(c)),
/// with g = (g0..g3, g4..g7) split into two quaternions.  Agrees with
/// Octonion::operator* on all inputs; kept as an independent cross-check.
Octonion quaternion_pair_product(const Octonion& g, const Octonion& h);

}  // namespace loopmech
