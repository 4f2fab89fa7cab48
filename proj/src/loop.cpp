#include "loopmech/loop.hpp"

#include <cmath>
#include <stdexcept>

namespace loopmech {

UnitOctonion::UnitOctonion(const Octonion& v) : v_(v) {
  const double n = norm(v);
  if (std::abs(n - 1.0) > kUnitNormWindow) {
    throw std::domain_error("UnitOctonion: norm deviates from 1 beyond the renormalization window");
  }
  v_ = v / n;
}

double AlgebraVector::norm() const { return std::sqrt(dot(*this)); }

TangentVector::TangentVector(const UnitOctonion& base_in, const Octonion& vec_in)
    : base(base_in), vec(vec_in) {
  const double pairing = inner(vec, base.value());
  const double scale = std::max(1.0, norm(vec));
  if (std::abs(pairing) > kTangencyTol * scale) {
    throw std::domain_error("TangentVector: vector is not tangent to the loop at base");
  }
}

namespace {

class UnitOctonions final : public LoopInstance {
public:
  std::string_view name() const override { return "unit_octonions"; }
  int algebra_dim() const override { return 7; }
  Octonion inverse(const Octonion& g) const override {
    const double n2 = norm_sq(g);
    if (n2 == 0.0) throw std::domain_error("unit_octonions: zero norm");
    return conj(g) / n2;
  }
  bool contains(const Octonion& g, double tol) const override {
    return std::abs(norm(g) - 1.0) <= tol;
  }
  Octonion project(const Octonion& g) const override {
    const double n = norm(g);
    if (n == 0.0) throw std::domain_error("unit_octonions: cannot project zero");
    return g / n;
  }
};

class InvertibleOctonions final : public LoopInstance {
public:
  std::string_view name() const override { return "invertible_octonions"; }
  int algebra_dim() const override { return 7; }
  Octonion inverse(const Octonion& g) const override { return loopmech::inverse(g); }
  bool contains(const Octonion& g, double tol) const override {
    (void)tol;
    return norm_sq(g) > 0.0;
  }
  Octonion project(const Octonion& g) const override {
    if (norm_sq(g) == 0.0) throw std::domain_error("invertible_octonions: zero is not a member");
    return g;
  }
};

class UnitQuaternions final : public LoopInstance {
public:
  std::string_view name() const override { return "unit_quaternions"; }
  int algebra_dim() const override { return 3; }
  Octonion inverse(const Octonion& g) const override {
    const double n2 = norm_sq(g);
    if (n2 == 0.0) throw std::domain_error("unit_quaternions: zero norm");
    return conj(g) / n2;
  }
  bool contains(const Octonion& g, double tol) const override {
    if (std::abs(norm(g) - 1.0) > tol) return false;
    for (std::size_t i = 4; i < 8; ++i) {
      if (std::abs(g[i]) > tol) return false;
    }
    return true;
  }
  Octonion project(const Octonion& g) const override {
    Octonion q = g;
    for (std::size_t i = 4; i < 8; ++i) q[i] = 0.0;
    const double n = norm(q);
    if (n == 0.0) throw std::domain_error("unit_quaternions: cannot project zero");
    return q / n;
  }
};

}  // namespace

const LoopInstance& unit_octonions() {
  static const UnitOctonions instance;
  return instance;
}

const LoopInstance& invertible_octonions() {
  static const InvertibleOctonions instance;
  return instance;
}

const LoopInstance& unit_quaternions() {
  static const UnitQuaternions instance;
  return instance;
}

TangentVector left_prolong(const UnitOctonion& a, const AlgebraVector& x) {
  return TangentVector(a, a.value() * x.to_octonion());
}

TangentVector right_prolong(const UnitOctonion& a, const AlgebraVector& x) {
  return TangentVector(a, x.to_octonion() * a.value());
}

namespace {

AlgebraVector imag_or_throw(const Octonion& o, const char* what) {
  if (std::abs(o.real()) > 1e-12) throw std::domain_error(what);
  return AlgebraVector::from_imag(o);
}

}  // namespace

AlgebraVector bracket_left(const AlgebraVector& x, const AlgebraVector& y) {
  const Octonion c = commutator(x.to_octonion(), y.to_octonion());
  return imag_or_throw(c, "bracket_left: non-negligible real part");
}

AlgebraVector bracket_right(const AlgebraVector& x, const AlgebraVector& y) {
  const Octonion c = commutator(y.to_octonion(), x.to_octonion());
  return imag_or_throw(c, "bracket_right: non-negligible real part");
}

TangentVector bracket_field_at(const UnitOctonion& a, const AlgebraVector& x,
                               const AlgebraVector& y, BracketSide side) {
  const Octonion& av = a.value();
  const Octonion xo = x.to_octonion();
  const Octonion yo = y.to_octonion();
  Octonion v;
  switch (side) {
    case BracketSide::kLeft:
      v = (av * xo) * yo - (av * yo) * xo;
      break;
    case BracketSide::kRight:
      v = yo * (xo * av) - xo * (yo * av);
      break;
    case BracketSide::kMixed:
      v = yo * (av * xo) - (yo * av) * xo;
      break;
  }
  return TangentVector(a, v);
}

double malcev_residual(const AlgebraVector& x, const AlgebraVector& y,
                       const AlgebraVector& z) {
  const AlgebraVector xy = bracket_left(x, y);
  const AlgebraVector yz = bracket_left(y, z);
  const AlgebraVector zx = bracket_left(z, x);
  const AlgebraVector lhs = bracket_left(xy, bracket_left(x, z));
  const AlgebraVector rhs = bracket_left(bracket_left(xy, z), x) +
                            bracket_left(bracket_left(yz, x), x) +
                            bracket_left(bracket_left(zx, x), y);
  return (lhs - rhs).norm();
}

AlgebraVector jacobiator(const AlgebraVector& x, const AlgebraVector& y,
                         const AlgebraVector& z) {
  return bracket_left(bracket_left(x, y), z) + bracket_left(bracket_left(y, z), x) +
         bracket_left(bracket_left(z, x), y);
}

UnitOctonion exp_map(const AlgebraVector& x) {
  const double r = x.norm();
  if (r == 0.0) return UnitOctonion::identity();
  const double scale = std::sin(r) / r;
  Octonion o = x.to_octonion() * scale;
  o[0] = std::cos(r);
  return UnitOctonion(o);
}

AlgebraVector log_map(const UnitOctonion& a) {
  const Octonion v = a.value().imag();
  const double s = norm(v);
  const double c = a.value().real();
  // Within 1e-12 of the antipode the direction v/s is amplified by ~1/s and
  // carries no information; there is no usable principal logarithm there.
  if (c < 0.0 && s < 1e-12)
    throw std::domain_error("log_map: antipode has no principal logarithm");
  if (s < 1e-300) return AlgebraVector{};
  const double angle = std::atan2(s, c);  // in (0, pi)
  return AlgebraVector::from_imag(v * (angle / s));
}

double chart_distance(const UnitOctonion& a, const UnitOctonion& b) {
  return log_map(a.inverse() * b).norm();
}

double inversion_differential_residual(const UnitOctonion& a, const AlgebraVector& x,
                                       double h) {
  const AlgebraVector hx = x * h;
  const Octonion fwd = (a * exp_map(hx)).inverse().value();
  const Octonion bwd = (a * exp_map(-hx)).inverse().value();
  const Octonion fd = (fwd - bwd) / (2.0 * h);
  const Octonion expected = -(x.to_octonion() * a.inverse().value());
  return norm(fd - expected);
}

TangentVector tangent_loop_mul(const TangentVector& u, const TangentVector& v) {
  const UnitOctonion base = u.base * v.base;
  const Octonion vec = u.vec * v.base.value() + u.base.value() * v.vec;
  return TangentVector(base, vec);
}

std::array<double, 3> moufang_residuals(const UnitOctonion& a, const UnitOctonion& x,
                                        const UnitOctonion& y) {
  const Octonion& av = a.value();
  const Octonion& xv = x.value();
  const Octonion& yv = y.value();
  const double r1 = norm(((av * xv) * av) * yv - av * (xv * (av * yv)));
  const double r2 = norm(((xv * av) * yv) * av - xv * (av * (yv * av)));
  const double r3 = norm((av * xv) * (yv * av) - (av * (xv * yv)) * av);
  return {r1, r2, r3};
}

}  // namespace loopmech
