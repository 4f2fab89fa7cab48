#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

#include "loopmech/lagrangian.hpp"
#include "loopmech/loop.hpp"
#include "loopmech/mechanics.hpp"
#include "loopmech/numerics.hpp"
#include "loopmech/octonion.hpp"
#include "loopmech/random.hpp"

namespace loopmech::cli {
namespace {

template <class... Args>
std::string strf(const char* f, Args... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return std::string(buf);
}

std::string oct_str(const Octonion& g) {
  return strf("(%.6g, %.6g, %.6g, %.6g, %.6g, %.6g, %.6g, %.6g)", g[0], g[1], g[2], g[3],
              g[4], g[5], g[6], g[7]);
}

struct Outcome {
  bool passed = false;
  double metric = 0.0;
  std::string detail;
};

void add(std::vector<Check>& reg, const char* suite, const char* name, std::uint64_t salt,
         std::function<Outcome(RandomStream&)> body) {
  const std::string s = suite;
  const std::string n = name;
  reg.push_back(Check{s, n, [s, n, salt, body = std::move(body)](std::uint64_t seed) {
                   RandomStream rng(salt ^ (seed * 0x9e3779b97f4a7c15ULL));
                   Outcome o = body(rng);
                   return CheckResult{s, n, o.passed, o.metric, std::move(o.detail)};
                 }});
}

/// Tracks a maximum residual together with the first sample that exceeded the
/// bound, for counterexample reporting.
struct MaxTracker {
  double bound;
  double worst = 0.0;
  std::string first_bad;

  explicit MaxTracker(double b) : bound(b) {}
  void feed(double value, const std::function<std::string()>& describe) {
    if (value > worst) worst = value;
    if (value > bound && first_bad.empty()) first_bad = describe();
  }
  bool ok() const { return first_bad.empty(); }
  Outcome outcome(const char* what, int samples) const {
    Outcome o;
    o.passed = ok();
    o.metric = worst;
    o.detail = ok() ? strf("max %s %.3e over %d samples (bound %.1e)", what, worst, samples,
                           bound)
                    : strf("max %s %.3e exceeds %.1e; first counterexample: %s", what, worst,
                           bound, first_bad.c_str());
    return o;
  }
};

Octonion embedded_quaternion_point(RandomStream& rng) {
  return sample_unit_quaternion(rng);
}

// ---------------------------------------------------------------- algebra --

Outcome check_basis_table(RandomStream&) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      const Octonion ei = Octonion::basis(i);
      const Octonion ej = Octonion::basis(j);
      worst = std::max(worst, max_abs_diff(ei * ej, quaternion_pair_product(ei, ej)));
    }
  const std::size_t triples[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6},
                                     {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};
  for (const auto& t : triples)
    worst = std::max(worst, std::abs(structure_constant(t[0], t[1], t[2]) - 1.0));
  Outcome o;
  o.passed = worst <= 1e-15;
  o.metric = worst;
  o.detail = strf(
      "64 basis products vs the doubling construction and the 7 unit triples; max deviation "
      "%.3e",
      worst);
  return o;
}

Outcome check_doubling(RandomStream& rng) {
  MaxTracker t(1e-14);
  for (int k = 0; k < 10000; ++k) {
    const Octonion g = rng.gaussian_octonion();
    const Octonion h = rng.gaussian_octonion();
    t.feed(max_abs_diff(g * h, quaternion_pair_product(g, h)),
           [&] { return "g=" + oct_str(g) + " h=" + oct_str(h); });
  }
  return t.outcome("product difference", 10000);
}

Outcome check_norm_mult(RandomStream& rng) {
  MaxTracker t(1e-12);
  for (int k = 0; k < 10000; ++k) {
    const Octonion g = rng.gaussian_octonion();
    const Octonion h = rng.gaussian_octonion();
    t.feed(std::abs(norm(g * h) - norm(g) * norm(h)),
           [&] { return "g=" + oct_str(g) + " h=" + oct_str(h); });
  }
  return t.outcome("norm defect", 10000);
}

Outcome check_conj_antiauto(RandomStream& rng) {
  MaxTracker t(1e-12);
  for (int k = 0; k < 10000; ++k) {
    const Octonion g = rng.gaussian_octonion();
    const Octonion h = rng.gaussian_octonion();
    t.feed(max_abs_diff(conj(g * h), conj(h) * conj(g)),
           [&] { return "g=" + oct_str(g) + " h=" + oct_str(h); });
  }
  return t.outcome("reversal defect", 10000);
}

Outcome check_alternativity(RandomStream& rng) {
  MaxTracker t(1e-12);
  for (int k = 0; k < 10000; ++k) {
    const Octonion g = sample_unit_octonion(rng);
    const Octonion h = sample_unit_octonion(rng);
    const double r = std::max({norm(associator(g, g, h)), norm(associator(g, h, h)),
                               norm(associator(g, h, g))});
    t.feed(r, [&] { return "g=" + oct_str(g) + " h=" + oct_str(h); });
  }
  return t.outcome("associator with a repeated argument", 10000);
}

Outcome check_diassociativity(RandomStream& rng) {
  MaxTracker t(1e-12);
  for (int k = 0; k < 10000; ++k) {
    const Octonion g = sample_unit_octonion(rng);
    const Octonion h = sample_unit_octonion(rng);
    // Words in two generators; every parenthesization must agree.
    const Octonion w3a = (g * h) * g, w3b = g * (h * g);
    const Octonion w3c = (h * g) * g, w3d = h * (g * g);
    const Octonion w4a = (g * h) * (h * g);
    const Octonion w4b = ((g * h) * h) * g;
    const Octonion w4c = g * (h * (h * g));
    const double r = std::max({max_abs_diff(w3a, w3b), max_abs_diff(w3c, w3d),
                               max_abs_diff(w4a, w4b), max_abs_diff(w4a, w4c)});
    t.feed(r, [&] { return "g=" + oct_str(g) + " h=" + oct_str(h); });
  }
  return t.outcome("two-generator word defect", 10000);
}

Outcome check_associator_witness(RandomStream&) {
  const Octonion a = associator(Octonion::basis(1), Octonion::basis(4), Octonion::basis(7));
  const double dev = max_abs_diff(a, Octonion::basis(2) * 2.0);
  Outcome o;
  o.passed = dev <= 1e-15 && norm(a) >= 1.0;
  o.metric = norm(a);
  o.detail = strf("[e1,e4,e7] = %s, norm %.1f", oct_str(a).c_str(), norm(a));
  return o;
}

Outcome check_structure_constants(RandomStream&) {
  double worst = 0.0;
  for (std::size_t i = 1; i <= 7; ++i)
    for (std::size_t j = 1; j <= 7; ++j)
      for (std::size_t k = 1; k <= 7; ++k) {
        const double f = structure_constant(i, j, k);
        worst = std::max(worst, std::abs(f + structure_constant(j, i, k)));
        worst = std::max(worst, std::abs(f + structure_constant(i, k, j)));
        if (i == j || j == k || i == k) worst = std::max(worst, std::abs(f));
        // Consistency with the product itself.
        worst = std::max(
            worst, std::abs(f - inner(Octonion::basis(k),
                                      Octonion::basis(i) * Octonion::basis(j))));
      }
  Outcome o;
  o.passed = worst <= 1e-15;
  o.metric = worst;
  o.detail = strf("complete antisymmetry and product consistency over 343 index triples; "
                  "max deviation %.3e",
                  worst);
  return o;
}

Outcome check_strong_inverse(RandomStream& rng) {
  MaxTracker t(1e-12);
  for (int k = 0; k < 10000; ++k) {
    Octonion g = rng.gaussian_octonion();
    if (norm(g) < 1e-3) g = g + Octonion::identity();
    const Octonion h = rng.gaussian_octonion();
    const Octonion gi = inverse(g);
    const double r = std::max(max_abs_diff(gi * (g * h), h), max_abs_diff((h * g) * gi, h));
    t.feed(r, [&] { return "g=" + oct_str(g) + " h=" + oct_str(h); });
  }
  return t.outcome("inverse cancellation defect", 10000);
}

// ------------------------------------------------------------------- loop --

Outcome check_inverse_loop_laws(RandomStream& rng) {
  MaxTracker t(1e-12);
  for (int k = 0; k < 10000; ++k) {
    const Octonion a = sample_unit_octonion(rng);
    const Octonion b = sample_unit_octonion(rng);
    const Octonion ai = conj(a);
    const double r = std::max({max_abs_diff(ai * (a * b), b), max_abs_diff((b * a) * ai, b),
                               max_abs_diff(a * conj(a), Octonion::identity()),
                               max_abs_diff(a * Octonion::identity(), a)});
    t.feed(r, [&] { return "a=" + oct_str(a) + " b=" + oct_str(b); });
  }
  return t.outcome("two-sided inverse defect", 10000);
}

Outcome check_moufang(RandomStream& rng) {
  MaxTracker t(1e-12);
  for (int k = 0; k < 10000; ++k) {
    const UnitOctonion a(sample_unit_octonion(rng));
    const UnitOctonion x(sample_unit_octonion(rng));
    const UnitOctonion y(sample_unit_octonion(rng));
    const auto res = moufang_residuals(a, x, y);
    t.feed(std::max({res[0], res[1], res[2]}), [&] {
      return "a=" + oct_str(a.value()) + " x=" + oct_str(x.value()) +
             " y=" + oct_str(y.value());
    });
  }
  return t.outcome("Moufang identity residual", 10000);
}

Outcome check_basis_brackets(RandomStream&) {
  double worst = 0.0;
  for (std::size_t i = 1; i <= 7; ++i)
    for (std::size_t j = 1; j <= 7; ++j) {
      if (i == j) continue;
      const AlgebraVector l =
          bracket_left(AlgebraVector::basis(i - 1), AlgebraVector::basis(j - 1));
      const AlgebraVector r =
          bracket_right(AlgebraVector::basis(i - 1), AlgebraVector::basis(j - 1));
      const Octonion expect = (Octonion::basis(i) * Octonion::basis(j)) * 2.0;
      worst = std::max(worst, max_abs_diff(l.to_octonion(), expect));
      worst = std::max(worst, (l + r).norm());
    }
  Outcome o;
  o.passed = worst <= 1e-15;
  o.metric = worst;
  o.detail = strf("left bracket equals twice the basis product on all 42 ordered pairs, "
                  "right bracket is its negative; max deviation %.3e",
                  worst);
  return o;
}

Outcome check_malcev(RandomStream& rng) {
  MaxTracker t(1e-10);
  for (int k = 0; k < 10000; ++k) {
    const AlgebraVector x = AlgebraVector::from_imag(sample_algebra(rng, 1.5));
    const AlgebraVector y = AlgebraVector::from_imag(sample_algebra(rng, 1.5));
    const AlgebraVector z = AlgebraVector::from_imag(sample_algebra(rng, 1.5));
    t.feed(malcev_residual(x, y, z), [&] {
      return "x=" + oct_str(x.to_octonion()) + " y=" + oct_str(y.to_octonion()) +
             " z=" + oct_str(z.to_octonion());
    });
  }
  Outcome o = t.outcome("residual", 10000);
  o.detail = strf("max over 10000 random triples = %.3e (bound 1e-10)", o.metric) +
             (t.ok() ? "" : "; first counterexample: " + t.first_bad);
  return o;
}

Outcome check_jacobiator_witness(RandomStream&) {
  const AlgebraVector j = jacobiator(AlgebraVector::basis(0), AlgebraVector::basis(1),
                                     AlgebraVector::basis(3));
  Outcome o;
  o.passed = j.norm() >= 1.0;
  o.metric = j.norm();
  o.detail = strf("jacobiator(e1,e2,e4) = %s, norm %.1f (Jacobi identity fails)",
                  oct_str(j.to_octonion()).c_str(), j.norm());
  return o;
}

Outcome check_exp_log_roundtrip(RandomStream& rng) {
  MaxTracker t(1e-10);
  const double cap = 3.14159265358979323846 - 0.1;
  for (int k = 0; k < 2000; ++k) {
    const AlgebraVector x = AlgebraVector::from_imag(sample_algebra(rng, cap));
    t.feed((log_map(exp_map(x)) - x).norm(),
           [&] { return "X=" + oct_str(x.to_octonion()); });
  }
  return t.outcome("round-trip error", 2000);
}

Outcome check_one_parameter(RandomStream& rng) {
  MaxTracker t(1e-12);
  for (int k = 0; k < 500; ++k) {
    Octonion dir = sample_algebra(rng, 1.0);
    const double n = norm(dir);
    if (n < 1e-8) continue;
    dir = dir / n;
    const AlgebraVector x = AlgebraVector::from_imag(dir);
    const double s = (rng.uniform() - 0.5) * 4.0;
    const double u = (rng.uniform() - 0.5) * 4.0;
    const Octonion lhs = (exp_map(x * s) * exp_map(x * u)).value();
    const Octonion rhs = exp_map(x * (s + u)).value();
    t.feed(max_abs_diff(lhs, rhs),
           [&] { return strf("s=%.4f t=%.4f direction=", s, u) + oct_str(dir); });
  }
  return t.outcome("one-parameter subgroup defect", 500);
}

Outcome check_exp_normalization(RandomStream& rng) {
  const double pi = 3.14159265358979323846;
  double worst = 0.0;
  worst = std::max(worst, max_abs_diff(exp_map(AlgebraVector::basis(0) * (pi / 2)).value(),
                                       Octonion::basis(1)));
  worst = std::max(worst, max_abs_diff(exp_map(AlgebraVector()).value(), Octonion::identity()));
  worst = std::max(worst, log_map(UnitOctonion::identity()).norm());
  bool branch_ok = true;
  double roundtrip = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const UnitOctonion a(sample_unit_octonion(rng));
    const AlgebraVector x = log_map(a);
    if (!(x.norm() < pi)) branch_ok = false;
    roundtrip = std::max(roundtrip, max_abs_diff(exp_map(x).value(), a.value()));
  }
  bool antipode_rejected = false;
  try {
    log_map(UnitOctonion(-Octonion::identity()));
  } catch (const std::domain_error&) {
    antipode_rejected = true;
  }
  Outcome o;
  o.passed = worst <= 1e-14 && branch_ok && roundtrip <= 1e-12 && antipode_rejected;
  o.metric = std::max(worst, roundtrip);
  o.detail = strf("exp(pi/2 e1)=e1 and unit values to %.3e, branch norms < pi: %s, "
                  "exp(log a) round trip %.3e, antipode rejected: %s",
                  worst, branch_ok ? "yes" : "NO", roundtrip,
                  antipode_rejected ? "yes" : "NO");
  return o;
}

Outcome check_ch_order(RandomStream&) {
  // Remainder of the second-order product expansion along e1, e2.  The
  // log(exp(t e1) exp(t e2)) series must match t(e1+e2) + t^2 e1e2 through
  // second order, so the remainder has to decay at least like t^3.
  const double ts[3] = {0.1, 0.05, 0.025};
  double lx[3], ly[3];
  for (int i = 0; i < 3; ++i) {
    const double t = ts[i];
    const AlgebraVector z =
        log_map(exp_map(AlgebraVector::basis(0) * t) * exp_map(AlgebraVector::basis(1) * t));
    const AlgebraVector expect = AlgebraVector::basis(0) * t + AlgebraVector::basis(1) * t +
                                 AlgebraVector::basis(2) * (t * t);
    lx[i] = std::log(t);
    ly[i] = std::log((z - expect).norm());
  }
  double mx = 0, my = 0;
  for (int i = 0; i < 3; ++i) {
    mx += lx[i] / 3.0;
    my += ly[i] / 3.0;
  }
  double num = 0, den = 0;
  for (int i = 0; i < 3; ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = num / den;
  Outcome o;
  o.passed = slope >= 2.9;
  o.metric = slope;
  o.detail = strf("remainder after the t^2 e1e2 term decays with fitted order %.3f "
                  "(need >= 2.9) over t in {0.1, 0.05, 0.025}",
                  slope);
  return o;
}

Outcome check_non_invariance(RandomStream&) {
  const UnitOctonion a(Octonion::basis(4));
  const AlgebraVector x = AlgebraVector::basis(0);  // e1
  const AlgebraVector y = AlgebraVector::basis(1);  // e2
  const Octonion field = bracket_field_at(a, x, y, BracketSide::kLeft).vec;
  const Octonion pushed = a.value() * bracket_left(x, y).to_octonion();
  const double gap = norm(field - pushed);
  Outcome o;
  o.passed = gap > 0.01;
  o.metric = gap;
  o.detail = strf("left-prolonged commutator at e4 differs from the pushed identity bracket "
                  "by %.3f: prolonged fields are not invariant",
                  gap);
  return o;
}

Outcome check_mixed_brackets(RandomStream& rng) {
  double at_identity = 0.0;
  for (int k = 0; k < 200; ++k) {
    const AlgebraVector x = AlgebraVector::from_imag(sample_algebra(rng, 1.0));
    const AlgebraVector y = AlgebraVector::from_imag(sample_algebra(rng, 1.0));
    at_identity = std::max(
        at_identity,
        norm(bracket_field_at(UnitOctonion::identity(), x, y, BracketSide::kMixed).vec));
  }
  double on_sphere3 = 0.0;
  for (int k = 0; k < 200; ++k) {
    const UnitOctonion a(embedded_quaternion_point(rng));
    const AlgebraVector x = AlgebraVector::from_imag(sample_algebra(rng, 1.0, 3));
    const AlgebraVector y = AlgebraVector::from_imag(sample_algebra(rng, 1.0, 3));
    on_sphere3 =
        std::max(on_sphere3, norm(bracket_field_at(a, x, y, BracketSide::kMixed).vec));
  }
  const double witness =
      norm(bracket_field_at(UnitOctonion(exp_map(AlgebraVector::basis(3) * 0.7)),
                            AlgebraVector::basis(0), AlgebraVector::basis(1),
                            BracketSide::kMixed)
               .vec);
  Outcome o;
  o.passed = at_identity <= 1e-12 && on_sphere3 <= 1e-12 && witness > 0.01;
  o.metric = std::max(at_identity, on_sphere3);
  o.detail = strf("mixed commutator: %.3e at the identity, %.3e on the quaternion sphere "
                  "(200 samples each), %.3f at a generic octonion point",
                  at_identity, on_sphere3, witness);
  return o;
}

Outcome check_inversion_differential(RandomStream& rng) {
  MaxTracker t(1e-6);
  for (int k = 0; k < 200; ++k) {
    const UnitOctonion a(sample_unit_octonion(rng));
    Octonion dir = sample_algebra(rng, 1.0);
    if (norm(dir) < 1e-8) continue;
    const AlgebraVector x = AlgebraVector::from_imag(dir / norm(dir));
    t.feed(inversion_differential_residual(a, x),
           [&] { return "a=" + oct_str(a.value()) + " X=" + oct_str(x.to_octonion()); });
  }
  return t.outcome("inversion differential residual", 200);
}

Outcome check_tangent_products(RandomStream& rng) {
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const UnitOctonion g(sample_unit_octonion(rng));
    const UnitOctonion h(sample_unit_octonion(rng));
    const TangentVector u = left_prolong(g, AlgebraVector::from_imag(sample_algebra(rng)));
    const TangentVector v = left_prolong(h, AlgebraVector::from_imag(sample_algebra(rng)));
    const TangentVector w = tangent_loop_mul(u, v);
    worst = std::max(worst, max_abs_diff(w.base.value(), (g * h).value()));
    worst = std::max(worst, std::abs(inner(w.vec, w.base.value())));
  }
  Outcome o;
  o.passed = worst <= 1e-10;
  o.metric = worst;
  o.detail = strf("tangent products stay tangent over their base (g*h); max defect %.3e "
                  "over 500 samples",
                  worst);
  return o;
}

// -------------------------------------------------------------- mechanics --

Outcome check_conjugate_pair_law(RandomStream& rng) {
  const Lagrangian lin = lagrangian_linear();
  MaxTracker t(1e-12);
  for (int k = 0; k < 10000; ++k) {
    const UnitOctonion a(sample_unit_octonion(rng));
    t.feed(el_residual(lin, a, conj(a)).norm(), [&] { return "a=" + oct_str(a.value()); });
  }
  Outcome o = t.outcome("conjugate-pair residual", 10000);
  o.detail = "the pair (a, conj a) solves the first-coordinate dynamics: " + o.detail;
  return o;
}

Outcome check_legendre_duality(RandomStream& rng) {
  const Lagrangian lags[3] = {lagrangian_linear(), lagrangian_sq(),
                              lagrangian_kinetic({1, 2, 3, 4, 5, 6, 7})};
  int mismatches = 0;
  std::string first;
  for (const auto& lag : lags) {
    for (int k = 0; k < 100; ++k) {
      const UnitOctonion a(sample_unit_octonion(rng));
      const int rp = estimate_rank(legendre_jacobian(lag, a, LegendreSide::kPlus));
      const int rm = estimate_rank(legendre_jacobian(lag, a.inverse(), LegendreSide::kMinus));
      if (rp != rm) {
        ++mismatches;
        if (first.empty())
          first = strf("%s at a=", lag.label.c_str()) + oct_str(a.value()) +
                  strf(": rank+ %d vs rank- %d", rp, rm);
      }
    }
  }
  Outcome o;
  o.passed = mismatches == 0;
  o.metric = mismatches;
  o.detail = mismatches == 0
                 ? "rank of the forward map at a matches the rank of the backward map at "
                   "a^{-1} at 100 points per Lagrangian"
                 : "first mismatch: " + first;
  return o;
}

Outcome check_flow_relation(RandomStream& rng) {
  const Lagrangian lag = lagrangian_kinetic({1, 2, 3, 4, 5, 6, 7});
  MaxTracker t(1e-8);
  for (int k = 0; k < 100; ++k) {
    const UnitOctonion a = exp_map(AlgebraVector::from_imag(sample_algebra(rng, 0.6)));
    const UnitOctonion seed(a.value() *
                            exp_map(AlgebraVector::from_imag(sample_algebra(rng, 0.01)))
                                .value());
    const FlowResult flow = hamiltonian_flow(lag, legendre_minus(lag, a), seed);
    double err = 1.0;
    if (flow.defined && chart_distance(flow.point, a) <= 1e-7)
      err = (flow.momentum.covector - legendre_plus(lag, a).covector).norm();
    t.feed(err, [&] { return "a=" + oct_str(a.value()); });
  }
  Outcome o = t.outcome("evolution-step momentum error", 100);
  o.detail = "inverting the backward map and pushing through the forward one: " + o.detail;
  return o;
}

Outcome check_cotangent_projections(RandomStream& rng) {
  const Lagrangian lags[3] = {lagrangian_linear(), lagrangian_sq(),
                              lagrangian_kinetic({1, 2, 3, 4, 5, 6, 7})};
  MaxTracker t(1e-14);
  for (const auto& lag : lags) {
    for (int k = 0; k < 1000; ++k) {
      const UnitOctonion a(sample_unit_octonion(rng));
      const CotangentPoint lift = dl_lift(lag, a);
      const double r =
          std::max((target_map(lift).covector - legendre_plus(lag, a).covector).norm(),
                   (source_map(lift).covector - legendre_minus(lag, a).covector).norm());
      t.feed(r, [&] { return lag.label + " at a=" + oct_str(a.value()); });
    }
  }
  Outcome o = t.outcome("projection vs transform gap", 3000);
  o.detail = "target/source projections of the lifted differential reproduce the Legendre "
             "maps: " +
             o.detail;
  return o;
}

Outcome check_composability(RandomStream& rng) {
  const Lagrangian lin = lagrangian_linear();
  double pos_worst = 0.0, literal_worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const UnitOctonion a(sample_unit_octonion(rng));
    const UnitOctonion b = conj(a);
    const double gap =
        (target_map(dl_lift(lin, a)).covector - source_map(dl_lift(lin, b)).covector).norm();
    pos_worst = std::max(pos_worst, gap);

    const UnitOctonion c(sample_unit_octonion(rng));
    const AlgebraVector mismatch = target_map(dl_lift(lin, a)).covector -
                                   source_map(dl_lift(lin, c)).covector;
    literal_worst =
        std::max(literal_worst, (mismatch - el_residual(lin, a, c)).norm());
  }
  // A fixed visibly-incomposable pair.
  const UnitOctonion g0 = UnitOctonion::identity();
  const UnitOctonion b0 = exp_map(AlgebraVector::basis(1) * 0.5);
  const double neg_gap =
      (target_map(dl_lift(lin, g0)).covector - source_map(dl_lift(lin, b0)).covector).norm();
  Outcome o;
  o.passed = pos_worst <= 1e-12 && literal_worst <= 1e-13 && neg_gap > 0.01;
  o.metric = std::max(pos_worst, literal_worst);
  o.detail = strf("projection gap is the dynamics residual: conjugate pairs compose to "
                  "%.3e, gap-residual agreement %.3e over 500 samples, non-solution pair "
                  "gap %.3f",
                  pos_worst, literal_worst, neg_gap);
  return o;
}

Outcome check_kinetic_normalization(RandomStream&) {
  const std::vector<double> m{1, 2, 3, 4, 5, 6, 7};
  const Lagrangian lag = lagrangian_kinetic(m);
  double worst = 0.0;
  int rank_minus = 0, rank_plus = 0;
  for (int side = 0; side < 2; ++side) {
    const Eigen::MatrixXd jac =
        legendre_jacobian(lag, UnitOctonion::identity(),
                          side == 0 ? LegendreSide::kMinus : LegendreSide::kPlus);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        worst = std::max(worst, std::abs(jac(i, j) - (i == j ? m[static_cast<std::size_t>(i)]
                                                             : 0.0)));
    (side == 0 ? rank_minus : rank_plus) = estimate_rank(jac);
  }
  Outcome o;
  o.passed = worst <= 1e-5 && rank_minus == 7 && rank_plus == 7;
  o.metric = worst;
  o.detail = strf("both transform Jacobians at the identity equal diag(1..7) within %.3e, "
                  "rank 7: the identity-point normalization is the mass matrix",
                  worst);
  return o;
}

Outcome check_linear_degeneracy(RandomStream&) {
  const Lagrangian lin = lagrangian_linear();
  const AlgebraVector fm = legendre_minus(lin, UnitOctonion::identity()).covector;
  const double value_dev = (fm - AlgebraVector::basis(0)).norm();
  const int rank =
      estimate_rank(legendre_jacobian(lin, UnitOctonion::identity(), LegendreSide::kMinus));
  Outcome o;
  o.passed = value_dev <= 1e-15 && rank < 7;
  o.metric = rank;
  o.detail = strf("backward map at the identity is e^1 (deviation %.3e) with singular "
                  "linearization, rank %d < 7: not invertible there",
                  value_dev, rank);
  return o;
}

Outcome check_sq_structure(RandomStream&) {
  const Lagrangian sq = lagrangian_sq();
  double val_worst = 0.0;
  for (std::size_t i = 0; i < 8; ++i)
    val_worst = std::max(
        val_worst, legendre_minus(sq, UnitOctonion(Octonion::basis(i))).covector.norm());
  const Eigen::MatrixXd jac =
      legendre_jacobian(sq, UnitOctonion::identity(), LegendreSide::kMinus);
  double jac_dev = 0.0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      jac_dev = std::max(jac_dev, std::abs(jac(i, j) - (i == 0 && j == 0 ? 1.0 : 0.0)));
  const int rank = estimate_rank(jac);
  Outcome o;
  o.passed = val_worst <= 1e-15 && jac_dev <= 1e-5 && rank == 1;
  o.metric = std::max(val_worst, jac_dev);
  o.detail = strf("backward map vanishes at all 8 basis points (max %.3e); its "
                  "linearization at the identity is the single-entry matrix E11 within "
                  "%.3e, rank %d",
                  val_worst, jac_dev, rank);
  return o;
}

Outcome check_trivial_branch(RandomStream& rng) {
  const Lagrangian lag = lagrangian_kinetic({1, 1, 1, 1, 1, 1, 1});
  const UnitOctonion a0 = exp_map(AlgebraVector::basis(2) * 0.2);
  const ELStepReport same = el_solve_step(lag, a0, a0);
  double worst = chart_distance(same.to, a0);
  bool ok = same.converged && !same.degenerate_branch;
  std::string first;
  for (int k = 0; k < 50; ++k) {
    const UnitOctonion a = exp_map(AlgebraVector::from_imag(sample_algebra(rng, 0.3)));
    const UnitOctonion guess(
        a.value() * exp_map(AlgebraVector::from_imag(sample_algebra(rng, 0.02))).value());
    const ELStepReport rep = el_solve_step(lag, a, guess);
    const double d = chart_distance(rep.to, a);
    worst = std::max(worst, d);
    if ((!rep.converged || rep.degenerate_branch || d > 1e-8) && first.empty()) {
      ok = false;
      first = "a=" + oct_str(a.value());
    }
  }
  ok = ok && worst <= 1e-8;
  Outcome o;
  o.passed = ok;
  o.metric = worst;
  o.detail = ok ? strf("isotropic masses: the solved step returns to b = a near the "
                       "identity (max distance %.3e over 51 starts)",
                       worst)
                : "unexpected non-trivial branch or failure at " + first;
  return o;
}

Outcome check_nontrivial_pair(RandomStream& rng) {
  const double A = 0.5;
  const double B = std::sqrt(3.0) / 2.0;
  const double u = std::sqrt((1.0 - B * B) / (1.0 - A * A));
  MaxTracker t(1e-10);
  const Lagrangian iso = lagrangian_kinetic({1, 1, 1, 1, 1, 1, 1});
  for (int k = 0; k < 20; ++k) {
    Octonion dir = sample_algebra(rng, 1.0);
    if (norm(dir) < 1e-8) continue;
    dir = dir / norm(dir);
    const UnitOctonion a(Octonion::identity() * A + dir * std::sqrt(1.0 - A * A));
    const UnitOctonion b(Octonion::identity() * B + dir * (u * std::sqrt(1.0 - A * A)));
    t.feed(el_residual(iso, a, b).norm(), [&] { return "direction=" + oct_str(dir); });
  }
  const Lagrangian aniso = lagrangian_kinetic({1, 2, 3, 4, 5, 6, 7});
  for (std::size_t j = 1; j <= 7; ++j) {
    const Octonion dir = Octonion::basis(j);
    const UnitOctonion a(Octonion::identity() * A + dir * std::sqrt(1.0 - A * A));
    const UnitOctonion b(Octonion::identity() * B + dir * (u * std::sqrt(1.0 - A * A)));
    t.feed(el_residual(aniso, a, b).norm(),
           [&] { return strf("axis-aligned direction e%zu", j); });
  }
  Outcome o = t.outcome("two-sphere-pair residual", 27);
  o.detail = strf("the closed-form pair with real parts %.3f and %.4f solves the dynamics "
                  "away from the identity: ",
                  A, B) +
             o.detail;
  return o;
}

Outcome check_linear_solver_branch(RandomStream& rng) {
  const Lagrangian lin = lagrangian_linear();
  MaxTracker t(1e-6);
  int max_iters = 0;
  for (int k = 0; k < 100; ++k) {
    Octonion raw = sample_unit_octonion(rng);
    while (std::abs(raw[1]) < 0.05) raw = sample_unit_octonion(rng);
    const UnitOctonion a(raw);
    const UnitOctonion target = conj(a);
    const UnitOctonion guess(
        target.value() *
        exp_map(AlgebraVector::from_imag(sample_algebra(rng, 0.05))).value());
    const ELStepReport rep = el_solve_step(lin, a, guess);
    max_iters = std::max(max_iters, rep.iterations);
    const bool good = rep.converged && rep.iterations <= 15 &&
                      rep.residual_norm <= 1e-10 && !rep.degenerate_branch;
    t.feed(good ? chart_distance(rep.to, target) : 1.0,
           [&] { return "a=" + oct_str(a.value()); });
  }
  Outcome o = t.outcome("distance to the conjugate branch", 100);
  o.detail = strf("Newton from within 0.05 of conj(a) lands on conj(a) in <= 15 "
                  "iterations (max seen %d): ",
                  max_iters) +
             o.detail;
  return o;
}

Outcome check_obstruction_sanity(RandomStream& rng) {
  double oct_max = 0.0;
  for (int k = 0; k < 200; ++k) {
    const CotangentSample s = sample_cotangent_triple(rng, false);
    oct_max = std::max(oct_max, cotangent_obstruction(s.g, s.h, s.theta));
  }
  double quat_max = 0.0;
  for (int k = 0; k < 200; ++k) {
    const CotangentSample s = sample_cotangent_triple(rng, true);
    quat_max = std::max(quat_max, cotangent_obstruction(s.g, s.h, s.theta));
  }
  Outcome o;
  o.passed = oct_max > 0.01 && quat_max <= 1e-10;
  o.metric = oct_max;
  o.detail = strf("no well-defined cotangent transfer: max defect %.3f over 200 octonion "
                  "triples, %.3e over 200 quaternion triples",
                  oct_max, quat_max);
  return o;
}

Outcome check_associative_control(RandomStream& rng) {
  const LoopInstance& s3 = unit_quaternions();
  const Lagrangian lin = lagrangian_linear();
  const Lagrangian kin = lagrangian_kinetic({1, 2, 3});
  const Lagrangian iso = lagrangian_kinetic({1, 1, 1});

  double conj_worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const UnitOctonion a(embedded_quaternion_point(rng));
    conj_worst = std::max(conj_worst, el_residual(lin, a, conj(a), s3).norm());
  }

  const Eigen::MatrixXd jac =
      legendre_jacobian(kin, UnitOctonion::identity(), LegendreSide::kMinus, 1e-6, s3);
  double diag_dev = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      diag_dev = std::max(diag_dev, std::abs(jac(i, j) - (i == j ? i + 1.0 : 0.0)));
  const bool rank_ok = estimate_rank(jac) == 3;

  double trivial_worst = 0.0;
  bool solver_ok = true;
  for (int k = 0; k < 20; ++k) {
    const UnitOctonion a = exp_map(AlgebraVector::from_imag(sample_algebra(rng, 0.3, 3)));
    const UnitOctonion guess(
        a.value() * exp_map(AlgebraVector::from_imag(sample_algebra(rng, 0.02, 3))).value());
    const ELStepReport rep = el_solve_step(iso, a, guess, SolverConfig{}, s3);
    solver_ok = solver_ok && rep.converged && !rep.degenerate_branch;
    trivial_worst = std::max(trivial_worst, chart_distance(rep.to, a));
  }

  int duality_mismatches = 0;
  for (int k = 0; k < 30; ++k) {
    const UnitOctonion a(embedded_quaternion_point(rng));
    for (const Lagrangian* lag : {&lin, &kin}) {
      const int rp = estimate_rank(legendre_jacobian(*lag, a, LegendreSide::kPlus, 1e-6, s3));
      const int rm = estimate_rank(
          legendre_jacobian(*lag, a.inverse(), LegendreSide::kMinus, 1e-6, s3));
      if (rp != rm) ++duality_mismatches;
    }
  }

  double flow_worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const UnitOctonion a = exp_map(AlgebraVector::from_imag(sample_algebra(rng, 0.5, 3)));
    const UnitOctonion seed(
        a.value() * exp_map(AlgebraVector::from_imag(sample_algebra(rng, 0.01, 3))).value());
    const FlowResult flow = hamiltonian_flow(kin, legendre_minus(kin, a, s3), seed,
                                             SolverConfig{}, s3);
    double err = 1.0;
    if (flow.defined && chart_distance(flow.point, a) <= 1e-7)
      err = (flow.momentum.covector - legendre_plus(kin, a, s3).covector).norm();
    flow_worst = std::max(flow_worst, err);
  }

  double mixed_worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const UnitOctonion a(embedded_quaternion_point(rng));
    const AlgebraVector x = AlgebraVector::from_imag(sample_algebra(rng, 1.0, 3));
    const AlgebraVector y = AlgebraVector::from_imag(sample_algebra(rng, 1.0, 3));
    mixed_worst =
        std::max(mixed_worst, norm(bracket_field_at(a, x, y, BracketSide::kMixed).vec));
  }

  Outcome o;
  o.passed = conj_worst <= 1e-12 && diag_dev <= 1e-5 && rank_ok && solver_ok &&
             trivial_worst <= 1e-8 && duality_mismatches == 0 && flow_worst <= 1e-8 &&
             mixed_worst <= 1e-10;
  o.metric = std::max({conj_worst, trivial_worst, flow_worst, mixed_worst});
  o.detail = strf("quaternion sphere: conjugate pairs %.3e, mass matrix dev %.3e (rank %s), "
                  "trivial branch %.3e, duality mismatches %d, evolution step %.3e, mixed "
                  "commutators %.3e",
                  conj_worst, diag_dev, rank_ok ? "3" : "BAD", trivial_worst,
                  duality_mismatches, flow_worst, mixed_worst);
  return o;
}

}  // namespace

CotangentSample sample_cotangent_triple(RandomStream& rng, bool quaternionic) {
  CotangentSample s;
  if (quaternionic) {
    s.g = UnitOctonion(sample_unit_quaternion(rng));
    s.h = UnitOctonion(sample_unit_quaternion(rng));
  } else {
    s.g = UnitOctonion(sample_unit_octonion(rng));
    s.h = UnitOctonion(sample_unit_octonion(rng));
  }
  const Octonion gh = s.g.value() * s.h.value();
  while (true) {
    Octonion raw;
    if (quaternionic) {
      for (std::size_t i = 0; i < 4; ++i) raw[i] = rng.gaussian();
    } else {
      raw = rng.gaussian_octonion();
    }
    const Octonion theta = raw - gh * inner(raw, gh);
    const double n = norm(theta);
    if (n > 1e-6) {
      s.theta = theta / n;
      return s;
    }
  }
}

const std::vector<Check>& check_registry() {
  static const std::vector<Check> reg = [] {
    std::vector<Check> r;
    add(r, "algebra", "basis product table", 101, check_basis_table);
    add(r, "algebra", "doubling cross-check", 102, check_doubling);
    add(r, "algebra", "norm multiplicativity", 103, check_norm_mult);
    add(r, "algebra", "conjugation anti-automorphism", 104, check_conj_antiauto);
    add(r, "algebra", "alternativity", 105, check_alternativity);
    add(r, "algebra", "diassociativity", 106, check_diassociativity);
    add(r, "algebra", "associator witness", 107, check_associator_witness);
    add(r, "algebra", "structure constants", 108, check_structure_constants);
    add(r, "algebra", "strong inverse property", 109, check_strong_inverse);

    add(r, "loop", "inverse-loop laws", 201, check_inverse_loop_laws);
    add(r, "loop", "Moufang identities", 202, check_moufang);
    add(r, "loop", "basis brackets", 203, check_basis_brackets);
    add(r, "loop", "Mal'cev residual", 204, check_malcev);
    add(r, "loop", "Jacobiator witness", 205, check_jacobiator_witness);
    add(r, "loop", "exp/log round trip", 206, check_exp_log_roundtrip);
    add(r, "loop", "one-parameter subgroups", 207, check_one_parameter);
    add(r, "loop", "exponential normalization", 208, check_exp_normalization);
    add(r, "loop", "Campbell-Hausdorff order", 209, check_ch_order);
    add(r, "loop", "prolongation non-invariance", 210, check_non_invariance);
    add(r, "loop", "mixed prolongation commutators", 211, check_mixed_brackets);
    add(r, "loop", "inversion differential", 212, check_inversion_differential);
    add(r, "loop", "tangent-loop products", 213, check_tangent_products);

    add(r, "mechanics", "conjugate-pair law", 301, check_conjugate_pair_law);
    add(r, "mechanics", "Legendre duality", 302, check_legendre_duality);
    add(r, "mechanics", "evolution-step relation", 303, check_flow_relation);
    add(r, "mechanics", "cotangent projections", 304, check_cotangent_projections);
    add(r, "mechanics", "composability", 305, check_composability);
    add(r, "mechanics", "kinetic Legendre normalization", 306, check_kinetic_normalization);
    add(r, "mechanics", "linear Legendre degeneracy", 307, check_linear_degeneracy);
    add(r, "mechanics", "squared Legendre structure", 308, check_sq_structure);
    add(r, "mechanics", "trivial branch", 309, check_trivial_branch);
    add(r, "mechanics", "nontrivial pair", 310, check_nontrivial_pair);
    add(r, "mechanics", "linear solver branch", 311, check_linear_solver_branch);
    add(r, "mechanics", "obstruction sanity", 312, check_obstruction_sanity);
    add(r, "mechanics", "associative control", 313, check_associative_control);
    return r;
  }();
  return reg;
}

}  // namespace loopmech::cli
