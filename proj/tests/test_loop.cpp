#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <stdexcept>

#include "loopmech/loop.hpp"
#include "loopmech/random.hpp"

using namespace loopmech;

namespace {

constexpr double kPi = 3.14159265358979323846;

UnitOctonion random_unit(RandomStream& rng) {
  return UnitOctonion(sample_unit_octonion(rng));
}

AlgebraVector random_algebra(RandomStream& rng, double radius = 1.0, int dim = 7) {
  return AlgebraVector::from_imag(sample_algebra(rng, radius, dim));
}

}  // namespace

TEST_CASE("unit construction renormalizes inside the window and rejects outside") {
  Octonion near = Octonion::basis(3) * (1.0 + 5e-7);
  const UnitOctonion g(near);
  CHECK(std::abs(norm(g.value()) - 1.0) <= kUnitNormTight);

  CHECK_THROWS_AS(UnitOctonion(Octonion::basis(3) * 0.9), std::domain_error);
  CHECK_THROWS_AS(UnitOctonion(Octonion{}), std::domain_error);
}

TEST_CASE("unit octonions satisfy the two-sided inverse laws") {
  RandomStream rng(21);
  double worst = 0.0;
  for (int t = 0; t < 2000; ++t) {
    const UnitOctonion g = random_unit(rng);
    const UnitOctonion h = random_unit(rng);
    worst = std::max(worst, max_abs_diff((g.inverse() * (g * h)).value(), h.value()));
    worst = std::max(worst, max_abs_diff(((h * g) * g.inverse()).value(), h.value()));
    worst = std::max(worst, max_abs_diff((g * g.inverse()).value(), Octonion::identity()));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("loop instances expose consistent identities, inverses and membership") {
  RandomStream rng(22);
  const LoopInstance* instances[3] = {&unit_octonions(), &invertible_octonions(),
                                      &unit_quaternions()};
  for (const LoopInstance* loop : instances) {
    CAPTURE(loop->name());
    const Octonion e = loop->identity();
    CHECK(loop->contains(e));

    for (int t = 0; t < 200; ++t) {
      Octonion g;
      if (loop == &unit_octonions()) {
        g = sample_unit_octonion(rng);
      } else if (loop == &unit_quaternions()) {
        g = sample_unit_quaternion(rng);
      } else {
        g = sample_unit_octonion(rng) * (0.5 + rng.uniform());
      }
      const Octonion h = loop->project(g);
      CHECK(loop->contains(h, 1e-9));
      CHECK(max_abs_diff(loop->multiply(e, h), h) <= 1e-15);
      CHECK(max_abs_diff(loop->multiply(h, e), h) <= 1e-15);
      CHECK(max_abs_diff(loop->multiply(loop->inverse(h), loop->multiply(h, e)), e) <= 1e-12);
    }
  }
  CHECK(unit_octonions().algebra_dim() == 7);
  CHECK(invertible_octonions().algebra_dim() == 7);
  CHECK(unit_quaternions().algebra_dim() == 3);
  CHECK(unit_octonions().name() != unit_quaternions().name());
}

TEST_CASE("quaternionic instance pins the last four coefficients to zero") {
  RandomStream rng(23);
  const LoopInstance& loop = unit_quaternions();
  for (int t = 0; t < 100; ++t) {
    const Octonion g = sample_unit_quaternion(rng);
    const Octonion h = sample_unit_quaternion(rng);
    const Octonion p = loop.multiply(g, h);
    for (int i = 4; i < 8; ++i) CHECK(p[i] == 0.0);
    CHECK(loop.contains(p));
  }
  Octonion outside = sample_unit_octonion(rng);
  outside[4] = 0.5;
  outside = outside * (1.0 / norm(outside));
  CHECK_FALSE(loop.contains(outside));
  const Octonion back = loop.project(outside);
  for (int i = 4; i < 8; ++i) CHECK(back[i] == 0.0);
}

TEST_CASE("prolongations translate tangent vectors and stay tangent") {
  RandomStream rng(24);
  for (int t = 0; t < 500; ++t) {
    const UnitOctonion a = random_unit(rng);
    const AlgebraVector x = random_algebra(rng);
    const TangentVector lv = left_prolong(a, x);
    const TangentVector rv = right_prolong(a, x);
    CHECK(max_abs_diff(lv.vec, a.value() * x.to_octonion()) == 0.0);
    CHECK(max_abs_diff(rv.vec, x.to_octonion() * a.value()) == 0.0);
    CHECK(std::abs(inner(lv.vec, a.value())) <= kTangencyTol * std::max(1.0, norm(lv.vec)));
  }
}

TEST_CASE("tangent vector construction enforces tangency") {
  const UnitOctonion a = UnitOctonion::basis(2);
  CHECK_NOTHROW(TangentVector(a, Octonion::basis(1)));
  CHECK_THROWS_AS(TangentVector(a, Octonion::basis(2)), std::domain_error);
}

TEST_CASE("basis brackets equal twice the basis product") {
  for (int i = 1; i < 8; ++i) {
    for (int j = 1; j < 8; ++j) {
      if (i == j) continue;
      const AlgebraVector x = AlgebraVector::basis(i - 1);
      const AlgebraVector y = AlgebraVector::basis(j - 1);
      const Octonion expected = (Octonion::basis(i) * Octonion::basis(j)) * 2.0;
      CAPTURE(i);
      CAPTURE(j);
      CHECK(max_abs_diff(bracket_left(x, y).to_octonion(), expected) == 0.0);
      CHECK(max_abs_diff(bracket_right(x, y).to_octonion(), -expected) == 0.0);
    }
  }
}

TEST_CASE("brackets of identical arguments vanish") {
  RandomStream rng(25);
  const AlgebraVector x = random_algebra(rng);
  CHECK(bracket_left(x, x).norm() == 0.0);
}

TEST_CASE("malcev identity holds to roundoff while jacobi fails") {
  RandomStream rng(26);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const AlgebraVector x = random_algebra(rng);
    const AlgebraVector y = random_algebra(rng);
    const AlgebraVector z = random_algebra(rng);
    worst = std::max(worst, malcev_residual(x, y, z));
  }
  CHECK(worst <= 1e-10);

  const AlgebraVector j = jacobiator(AlgebraVector::basis(0), AlgebraVector::basis(1),
                                     AlgebraVector::basis(3));
  CHECK(j.norm() == doctest::Approx(12.0).epsilon(1e-13));
  CHECK(max_abs_diff(j.to_octonion(), Octonion::basis(7) * 12.0) <= 1e-13);
}

TEST_CASE("exponential map special values") {
  const UnitOctonion g = exp_map(AlgebraVector::basis(0) * (kPi / 2.0));
  CHECK(max_abs_diff(g.value(), Octonion::basis(1)) <= 1e-14);

  const UnitOctonion e = exp_map(AlgebraVector{});
  CHECK(max_abs_diff(e.value(), Octonion::identity()) == 0.0);

  const UnitOctonion anti = exp_map(AlgebraVector::basis(4) * kPi);
  CHECK(max_abs_diff(anti.value(), -Octonion::identity()) <= 1e-12);
  CHECK_THROWS_AS((void)log_map(anti), std::domain_error);
}

TEST_CASE("exp and log are mutually inverse away from the antipode") {
  RandomStream rng(27);
  double worst_xlx = 0.0;
  double worst_gxg = 0.0;
  for (int t = 0; t < 2000; ++t) {
    AlgebraVector x = random_algebra(rng);
    const double target = (kPi - 0.1) * rng.uniform();
    if (x.norm() > 0.0) x = x * (target / x.norm());
    const AlgebraVector back = log_map(exp_map(x));
    worst_xlx = std::max(worst_xlx, (back - x).norm());

    const UnitOctonion g = random_unit(rng);
    if (std::abs(g.value().real() + 1.0) < 1e-3) continue;
    const UnitOctonion round = exp_map(log_map(g));
    worst_gxg = std::max(worst_gxg, max_abs_diff(round.value(), g.value()));
  }
  CHECK(worst_xlx <= 1e-10);
  CHECK(worst_gxg <= 1e-10);

  // Principal branch: |log| stays below pi.
  RandomStream rng2(28);
  for (int t = 0; t < 500; ++t) {
    CHECK(log_map(random_unit(rng2)).norm() < kPi);
  }
}

TEST_CASE("one-parameter subgroups add their parameters") {
  RandomStream rng(29);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    AlgebraVector x = random_algebra(rng);
    if (x.norm() == 0.0) continue;
    x = x * (1.0 / x.norm());
    const double s = 1.2 * rng.uniform();
    const double u = 1.2 * rng.uniform();
    const UnitOctonion lhs = exp_map(x * s) * exp_map(x * u);
    const UnitOctonion rhs = exp_map(x * (s + u));
    worst = std::max(worst, max_abs_diff(lhs.value(), rhs.value()));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("chart distance recovers the exponential step length") {
  RandomStream rng(30);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const UnitOctonion a = random_unit(rng);
    AlgebraVector x = random_algebra(rng);
    const double len = 0.2 + 2.0 * rng.uniform();
    if (x.norm() == 0.0) continue;
    x = x * (len / x.norm());
    const UnitOctonion b = a * exp_map(x);
    worst = std::max(worst, std::abs(chart_distance(a, b) - len));
  }
  CHECK(worst <= 1e-10);
  CHECK(chart_distance(UnitOctonion::identity(), UnitOctonion::identity()) == 0.0);
}

TEST_CASE("log of a product of exponentials matches the bracket at second order") {
  // log(exp(tX) exp(tY)) = t(X+Y) + (t^2/2) [X,Y] + O(t^3); the remainder
  // after removing the first two orders must decay like t^3.
  const AlgebraVector x = AlgebraVector::basis(0);
  const AlgebraVector y = AlgebraVector::basis(1);
  const AlgebraVector xy = bracket_left(x, y);

  std::array<double, 3> ts = {0.1, 0.05, 0.025};
  std::array<double, 3> rem{};
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double t = ts[k];
    const AlgebraVector full = log_map(exp_map(x * t) * exp_map(y * t));
    rem[k] = (full - (x + y) * t - xy * (0.5 * t * t)).norm();
  }
  const double slope1 = std::log2(rem[0] / rem[1]);
  const double slope2 = std::log2(rem[1] / rem[2]);
  CHECK(slope1 >= 2.9);
  CHECK(slope2 >= 2.9);

  // Third-order coefficient of the remainder is -(X+Y)/3 for this pair.
  const double t = ts[2];
  const AlgebraVector full = log_map(exp_map(x * t) * exp_map(y * t));
  const AlgebraVector r3 = (full - (x + y) * t - xy * (0.5 * t * t)) * (1.0 / (t * t * t));
  CHECK((r3 + (x + y) * (1.0 / 3.0)).norm() <= 0.05);
}

TEST_CASE("prolonged fields are not translation invariant") {
  // The commutator of the left-prolonged fields at a disagrees with the left
  // translate of the algebra bracket: for invariant fields the two would be
  // equal, here the witness has gap four.
  const UnitOctonion a = UnitOctonion::basis(4);
  const AlgebraVector x = AlgebraVector::basis(0);
  const AlgebraVector y = AlgebraVector::basis(1);

  const TangentVector at_a = bracket_field_at(a, x, y, BracketSide::kLeft);
  const Octonion pushed = a.value() * bracket_left(x, y).to_octonion();
  CHECK(norm(at_a.vec - pushed) == doctest::Approx(4.0).epsilon(1e-12));

  const TangentVector mixed = bracket_field_at(a, x, y, BracketSide::kMixed);
  CHECK(norm(mixed.vec) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("left and right field brackets reduce to algebra brackets at the identity") {
  RandomStream rng(31);
  for (int t = 0; t < 200; ++t) {
    const AlgebraVector x = random_algebra(rng);
    const AlgebraVector y = random_algebra(rng);
    const TangentVector l = bracket_field_at(UnitOctonion::identity(), x, y, BracketSide::kLeft);
    const TangentVector r = bracket_field_at(UnitOctonion::identity(), x, y, BracketSide::kRight);
    const TangentVector m = bracket_field_at(UnitOctonion::identity(), x, y, BracketSide::kMixed);
    CHECK(max_abs_diff(l.vec, bracket_left(x, y).to_octonion()) <= 1e-12);
    CHECK(max_abs_diff(r.vec, bracket_right(x, y).to_octonion()) <= 1e-12);
    CHECK(norm(m.vec) <= 1e-12);
  }
}

TEST_CASE("mixed bracket witness away from the identity") {
  const UnitOctonion a = exp_map(AlgebraVector::basis(3) * 0.7);
  const TangentVector m =
      bracket_field_at(a, AlgebraVector::basis(0), AlgebraVector::basis(1), BracketSide::kMixed);
  CHECK(norm(m.vec) == doctest::Approx(2.0 * std::sin(0.7)).epsilon(1e-10));
}

TEST_CASE("inversion differential matches minus conjugated translation") {
  RandomStream rng(32);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const UnitOctonion a = random_unit(rng);
    const AlgebraVector x = random_algebra(rng);
    worst = std::max(worst, inversion_differential_residual(a, x));
  }
  CHECK(worst <= 1e-6);
  CHECK(inversion_differential_residual(UnitOctonion::identity(), AlgebraVector::basis(2)) <= 1e-6);
}

TEST_CASE("tangent loop product lands at the product point and stays tangent") {
  RandomStream rng(33);
  for (int t = 0; t < 300; ++t) {
    const UnitOctonion g = random_unit(rng);
    const UnitOctonion h = random_unit(rng);
    const TangentVector u = left_prolong(g, random_algebra(rng));
    const TangentVector v = left_prolong(h, random_algebra(rng));
    const TangentVector w = tangent_loop_mul(u, v);
    CHECK(max_abs_diff(w.base.value(), (g * h).value()) <= 1e-12);
    CHECK(max_abs_diff(w.vec, u.vec * h.value() + g.value() * v.vec) <= 1e-12);
    CHECK(std::abs(inner(w.vec, w.base.value())) <=
          kTangencyTol * std::max(1.0, norm(w.vec)));
  }
}

TEST_CASE("moufang identities hold on the unit loop") {
  RandomStream rng(34);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const UnitOctonion a = random_unit(rng);
    const UnitOctonion x = random_unit(rng);
    const UnitOctonion y = random_unit(rng);
    const std::array<double, 3> res = moufang_residuals(a, x, y);
    worst = std::max({worst, res[0], res[1], res[2]});
  }
  CHECK(worst <= 1e-12);
}
