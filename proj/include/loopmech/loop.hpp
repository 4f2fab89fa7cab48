#pragma once

#include <array>
#include <string_view>

#include "loopmech/octonion.hpp"

namespace loopmech {

/// Renormalization window for unit-octonion construction: inputs whose norm
/// is within this distance of 1 are rescaled, anything further is rejected.
inline constexpr double kUnitNormWindow = 1e-6;
/// Post-construction norm guarantee.
inline constexpr double kUnitNormTight = 1e-10;
/// Enforced bound on |<vec, base>| for tangent vectors.
inline constexpr double kTangencyTol = 1e-10;

/// Point of the multiplicative loop of unit octonions (the 7-sphere).
/// Construction renormalizes inputs within kUnitNormWindow of unit norm and
/// throws std::domain_error otherwise, so a live value always satisfies
/// | |g| - 1 | <= kUnitNormTight.
class UnitOctonion {
public:
  UnitOctonion() : v_(Octonion::identity()) {}
  explicit UnitOctonion(const Octonion& v);

  static UnitOctonion identity() { return UnitOctonion(); }
  static UnitOctonion basis(std::size_t i) { return UnitOctonion(Octonion::basis(i)); }

  const Octonion& value() const { return v_; }
  double operator[](std::size_t i) const { return v_[i]; }

  /// Loop product; the result is renormalized through the constructor.
  UnitOctonion operator*(const UnitOctonion& o) const { return UnitOctonion(v_ * o.v_); }

  /// Inverse coincides with conjugation on unit octonions.
  UnitOctonion inverse() const { return UnitOctonion(conj(v_)); }

private:
  Octonion v_;
};

inline UnitOctonion conj(const UnitOctonion& g) { return g.inverse(); }

/// Element of the tangent algebra at the identity: coefficients over the
/// seven imaginary units e1..e7.
class AlgebraVector {
public:
  constexpr AlgebraVector() : c_{} {}
  constexpr explicit AlgebraVector(const std::array<double, 7>& c) : c_(c) {}

  /// Coefficient of e_{i+1} (index 0 holds the e1 coefficient).
  constexpr double operator[](std::size_t i) const { return c_[i]; }
  constexpr double& operator[](std::size_t i) { return c_[i]; }

  static constexpr AlgebraVector basis(std::size_t i) {
    AlgebraVector x;
    x.c_[i] = 1.0;
    return x;
  }

  /// Embeds as the imaginary octonion with these coefficients.
  constexpr Octonion to_octonion() const {
    Octonion o;
    for (std::size_t i = 0; i < 7; ++i) o[i + 1] = c_[i];
    return o;
  }

  /// Imaginary part of an octonion as an algebra element; the real
  /// coefficient is ignored.
  static constexpr AlgebraVector from_imag(const Octonion& o) {
    AlgebraVector x;
    for (std::size_t i = 0; i < 7; ++i) x.c_[i] = o[i + 1];
    return x;
  }

  constexpr AlgebraVector operator+(const AlgebraVector& o) const {
    AlgebraVector r;
    for (std::size_t i = 0; i < 7; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
  }
  constexpr AlgebraVector operator-(const AlgebraVector& o) const {
    AlgebraVector r;
    for (std::size_t i = 0; i < 7; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
  }
  constexpr AlgebraVector operator-() const {
    AlgebraVector r;
    for (std::size_t i = 0; i < 7; ++i) r.c_[i] = -c_[i];
    return r;
  }
  constexpr AlgebraVector operator*(double s) const {
    AlgebraVector r;
    for (std::size_t i = 0; i < 7; ++i) r.c_[i] = c_[i] * s;
    return r;
  }

  double norm() const;
  constexpr double dot(const AlgebraVector& o) const {
    double s = 0.0;
    for (std::size_t i = 0; i < 7; ++i) s += c_[i] * o.c_[i];
    return s;
  }

private:
  std::array<double, 7> c_;
};

constexpr AlgebraVector operator*(double s, const AlgebraVector& x) { return x * s; }

/// Tangent vector at a loop point.  Construction enforces
/// |<vec, base>| <= kTangencyTol * max(1, |vec|).
struct TangentVector {
  TangentVector(const UnitOctonion& base_in, const Octonion& vec_in);

  UnitOctonion base;
  Octonion vec;
};

/// A concrete smooth loop the mechanics layer can run on.  Points live in the
/// ambient octonions; the instance supplies the product, identity, two-sided
/// inverse, translation differentials and a membership test.
///
/// algebra_dim() gives the number of imaginary basis directions e1..e_dim
/// spanning the tangent algebra at the identity that the dynamics uses
/// (7 for the octonion loops, 3 for the quaternionic control instance).
class LoopInstance {
public:
  virtual ~LoopInstance() = default;

  virtual std::string_view name() const = 0;
  virtual int algebra_dim() const = 0;

  virtual Octonion multiply(const Octonion& g, const Octonion& h) const { return g * h; }
  virtual Octonion identity() const { return Octonion::identity(); }
  virtual Octonion inverse(const Octonion& g) const = 0;

  /// Differential of left translation by g (the product is bilinear, so the
  /// differential is multiplication itself).
  virtual Octonion left_translation_diff(const Octonion& g, const Octonion& v) const {
    return g * v;
  }
  virtual Octonion right_translation_diff(const Octonion& g, const Octonion& v) const {
    return v * g;
  }

  virtual bool contains(const Octonion& g, double tol = 1e-9) const = 0;

  /// Nearest loop point (used to re-enter the loop after ambient arithmetic).
  virtual Octonion project(const Octonion& g) const = 0;
};

/// The unit octonions (default instance for everything in this library).
const LoopInstance& unit_octonions();
/// The open loop of all octonions with nonzero norm.
const LoopInstance& invertible_octonions();
/// The unit quaternions, embedded with coefficients 4..7 pinned to zero.
/// Associative: a control instance on which every mixed-prolongation
/// commutator must vanish.
const LoopInstance& unit_quaternions();

/// Left prolongation of X to a: the tangent vector a*X.
TangentVector left_prolong(const UnitOctonion& a, const AlgebraVector& x);
/// Right prolongation of X to a: the tangent vector X*a.
TangentVector right_prolong(const UnitOctonion& a, const AlgebraVector& x);

/// Commutator bracket X*Y - Y*X of imaginary octonions (always imaginary).
/// Throws std::domain_error if the computed real part exceeds 1e-12, which
/// indicates corrupted input.
AlgebraVector bracket_left(const AlgebraVector& x, const AlgebraVector& y);
/// Bracket induced by right prolongations at the identity: Y*X - X*Y.
AlgebraVector bracket_right(const AlgebraVector& x, const AlgebraVector& y);

enum class BracketSide { kLeft, kRight, kMixed };

/// Commutator of prolonged vector fields evaluated at a:
///   left:  (a*X)*Y - (a*Y)*X
///   right: Y*(X*a) - X*(Y*a)
///   mixed: Y*(a*X) - (Y*a)*X   (right-prolonged X against left-prolonged Y)
/// At a = identity the left and right forms reduce to the algebra brackets
/// and the mixed form vanishes; away from the identity the mixed form is
/// generally nonzero, and none of the prolonged fields is invariant.
TangentVector bracket_field_at(const UnitOctonion& a, const AlgebraVector& x,
                               const AlgebraVector& y, BracketSide side);

/// Defect of the Mal'cev identity
///   [[X,Y],[X,Z]] = [[[X,Y],Z],X] + [[[Y,Z],X],X] + [[[Z,X],X],Y]
/// for the left bracket; expected zero to roundoff.  The Jacobi identity
/// fails on this algebra, so this is the replacement law.
double malcev_residual(const AlgebraVector& x, const AlgebraVector& y,
                       const AlgebraVector& z);

/// Jacobiator [[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y]; nonzero in general.
AlgebraVector jacobiator(const AlgebraVector& x, const AlgebraVector& y,
                         const AlgebraVector& z);

/// Geodesic exponential: cos|X| + sin|X| * X/|X| (identity for X = 0).
UnitOctonion exp_map(const AlgebraVector& x);

/// Principal logarithm with |log| in [0, pi).  Throws std::domain_error at
/// the antipode -e0, where no principal branch exists.
AlgebraVector log_map(const UnitOctonion& a);

/// Chart distance |log(a^{-1} * b)|.
double chart_distance(const UnitOctonion& a, const UnitOctonion& b);

/// Residual of the inversion-differential identity: the finite-difference
/// differential of inversion at a applied to the tangent vector a*X, plus
/// X*a^{-1}.  Expected ~0 (central differences, default step 1e-5).
double inversion_differential_residual(const UnitOctonion& a, const AlgebraVector& x,
                                       double h = 1e-5);

/// Tangent-loop product (g, X)*(h, Y) = (g*h, X*h + g*Y).
TangentVector tangent_loop_mul(const TangentVector& u, const TangentVector& v);

/// Residual norms of the three Moufang identities at (a, x, y):
///   ((a*x)*a)*y - a*(x*(a*y))
///   ((x*a)*y)*a - x*(a*(y*a))
///   (a*x)*(y*a) - (a*(x*y))*a
std::array<double, 3> moufang_residuals(const UnitOctonion& a, const UnitOctonion& x,
                                        const UnitOctonion& y);

}  // namespace loopmech
