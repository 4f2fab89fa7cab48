#include "loopmech/mechanics.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <utility>

namespace loopmech {
namespace {

AlgebraVector algebra_from(const Eigen::VectorXd& xi) {
  AlgebraVector x;
  const std::size_t n = std::min<std::size_t>(7, static_cast<std::size_t>(xi.size()));
  for (std::size_t i = 0; i < n; ++i) x[i] = xi[static_cast<Eigen::Index>(i)];
  return x;
}

Eigen::VectorXd eigen_from(const AlgebraVector& x, int dim) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = x[static_cast<std::size_t>(i)];
  return v;
}

/// Chart point center * exp(xi), taken through the instance product.
UnitOctonion chart_point(const UnitOctonion& center, const Eigen::VectorXd& xi,
                         const LoopInstance& loop) {
  return UnitOctonion(loop.multiply(center.value(), exp_map(algebra_from(xi)).value()));
}

}  // namespace

CotangentPoint::CotangentPoint(const UnitOctonion& base_in, const Octonion& covector_in)
    : base(base_in), covector(covector_in) {
  const double pairing = std::abs(inner(covector, base.value()));
  if (pairing > kTangencyTol * std::max(1.0, norm(covector)))
    throw std::domain_error("CotangentPoint: covector has a radial component at base");
}

AlgebraVector el_residual(const Lagrangian& lag, const UnitOctonion& a,
                          const UnitOctonion& b, const LoopInstance& loop) {
  const int dim = loop.algebra_dim();
  const Octonion grad_a = lag.ambient_grad(a.value());
  const Octonion grad_b = lag.ambient_grad(b.value());
  AlgebraVector r;
  for (int i = 1; i <= dim; ++i) {
    const Octonion ei = Octonion::basis(static_cast<std::size_t>(i));
    r[static_cast<std::size_t>(i - 1)] =
        inner(grad_a, loop.left_translation_diff(a.value(), ei)) -
        inner(grad_b, loop.right_translation_diff(b.value(), ei));
  }
  return r;
}

Momentum legendre_plus(const Lagrangian& lag, const UnitOctonion& a,
                       const LoopInstance& loop) {
  const int dim = loop.algebra_dim();
  const Octonion grad = lag.ambient_grad(a.value());
  Momentum p;
  for (int i = 1; i <= dim; ++i)
    p.covector[static_cast<std::size_t>(i - 1)] =
        inner(grad, loop.left_translation_diff(a.value(), Octonion::basis(static_cast<std::size_t>(i))));
  return p;
}

Momentum legendre_minus(const Lagrangian& lag, const UnitOctonion& a,
                        const LoopInstance& loop) {
  const int dim = loop.algebra_dim();
  const Octonion grad = lag.ambient_grad(a.value());
  Momentum p;
  for (int i = 1; i <= dim; ++i)
    p.covector[static_cast<std::size_t>(i - 1)] =
        inner(grad, loop.right_translation_diff(a.value(), Octonion::basis(static_cast<std::size_t>(i))));
  return p;
}

Eigen::MatrixXd legendre_jacobian(const Lagrangian& lag, const UnitOctonion& a,
                                  LegendreSide side, double fd_step,
                                  const LoopInstance& loop) {
  if (!(fd_step > 0.0) || fd_step >= 1e-2)
    throw std::invalid_argument("legendre_jacobian: fd_step must be in (0, 1e-2)");
  const int dim = loop.algebra_dim();
  auto f = [&](const Eigen::VectorXd& xi) {
    const UnitOctonion g = chart_point(a, xi, loop);
    const Momentum p = side == LegendreSide::kPlus ? legendre_plus(lag, g, loop)
                                                   : legendre_minus(lag, g, loop);
    return eigen_from(p.covector, dim);
  };
  return fd_jacobian(f, Eigen::VectorXd::Zero(dim), fd_step);
}

ELStepReport el_solve_step(const Lagrangian& lag, const UnitOctonion& a,
                           const UnitOctonion& guess, const SolverConfig& cfg,
                           const LoopInstance& loop) {
  const int dim = loop.algebra_dim();
  auto residual = [&](const UnitOctonion& b, const Eigen::VectorXd& xi) {
    return eigen_from(el_residual(lag, a, chart_point(b, xi, loop), loop), dim);
  };
  auto retract = [&](const UnitOctonion& b, const Eigen::VectorXd& xi) {
    return chart_point(b, xi, loop);
  };
  auto [b, rep] = newton_solve_chart(guess, dim, residual, retract, cfg);

  ELStepReport out;
  out.from = a;
  out.to = b;
  out.residual = el_residual(lag, a, b, loop);
  out.residual_norm = out.residual.norm();
  out.converged = rep.converged;
  out.iterations = rep.iterations;
  out.degenerate_branch = rep.rank_deficient;
  return out;
}

namespace {

/// Polish a grid candidate and add it to sols if it converged into the ball
/// (with one grid spacing of slack) and is not a duplicate.
void refine_candidate(const Lagrangian& lag, const UnitOctonion& a,
                      const Eigen::VectorXd& xi, double chart_radius, double spacing,
                      const SolverConfig& cfg, const LoopInstance& loop,
                      std::vector<UnitOctonion>& sols) {
  const ELStepReport rep = el_solve_step(lag, a, chart_point(a, xi, loop), cfg, loop);
  if (!rep.converged) return;
  if (chart_distance(a, rep.to) > chart_radius + spacing) return;
  // At a root with a singular jacobian the iteration stalls within
  // O(sqrt(tol)) of the solution, so endpoints of one branch can scatter at
  // that scale; the merge radius has to cover it.
  const double merge = std::max(1e-6, 100.0 * std::sqrt(cfg.tol));
  for (const UnitOctonion& s : sols)
    if (chart_distance(s, rep.to) < merge) return;
  sols.push_back(rep.to);
}

}  // namespace

std::vector<UnitOctonion> el_brute_oracle(const Lagrangian& lag, const UnitOctonion& a,
                                          double chart_radius, int grid_n,
                                          const SolverConfig& cfg,
                                          const LoopInstance& loop) {
  if (grid_n < 8) throw std::invalid_argument("el_brute_oracle: grid_n must be >= 8");
  if (!(chart_radius > 0.0))
    throw std::invalid_argument("el_brute_oracle: chart_radius must be > 0");
  const int dim = loop.algebra_dim();
  const double total_d = std::pow(static_cast<double>(grid_n), dim);
  if (total_d > 3.0e7)
    throw std::invalid_argument("el_brute_oracle: grid too large for a dense scan");
  const std::size_t total = static_cast<std::size_t>(std::llround(total_d));

  const double spacing = 2.0 * chart_radius / (grid_n - 1);
  std::vector<double> axis(static_cast<std::size_t>(grid_n));
  for (int t = 0; t < grid_n; ++t)
    axis[static_cast<std::size_t>(t)] = -chart_radius + spacing * t;

  std::vector<std::size_t> stride(static_cast<std::size_t>(dim));
  stride[0] = 1;
  for (int k = 1; k < dim; ++k)
    stride[static_cast<std::size_t>(k)] =
        stride[static_cast<std::size_t>(k - 1)] * static_cast<std::size_t>(grid_n);

  // Residual norm at every grid point inside the ball; +inf outside.
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> values(total, kInf);
  std::vector<int> digits(static_cast<std::size_t>(dim), 0);
  Eigen::VectorXd xi(dim);
  for (std::size_t idx = 0; idx < total; ++idx) {
    double nrm2 = 0.0;
    for (int k = 0; k < dim; ++k) {
      xi[k] = axis[static_cast<std::size_t>(digits[static_cast<std::size_t>(k)])];
      nrm2 += xi[k] * xi[k];
    }
    if (nrm2 <= chart_radius * chart_radius * (1.0 + 1e-12))
      values[idx] = el_residual(lag, a, chart_point(a, xi, loop), loop).norm();
    for (int k = 0; k < dim; ++k) {
      if (++digits[static_cast<std::size_t>(k)] < grid_n) break;
      digits[static_cast<std::size_t>(k)] = 0;
    }
  }

  // Axis-neighborhood local minimizers, polished by the Newton solver.
  std::vector<UnitOctonion> sols;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (!(values[idx] < kInf)) continue;
    bool is_min = true;
    std::size_t rest = idx;
    for (int k = 0; k < dim && is_min; ++k) {
      const std::size_t sk = stride[static_cast<std::size_t>(k)];
      const int digit = static_cast<int>(rest % static_cast<std::size_t>(grid_n));
      rest /= static_cast<std::size_t>(grid_n);
      if (digit > 0 && values[idx - sk] < values[idx]) is_min = false;
      if (digit + 1 < grid_n && values[idx + sk] < values[idx]) is_min = false;
    }
    if (!is_min) continue;

    std::size_t dec = idx;
    for (int k = 0; k < dim; ++k) {
      xi[k] = axis[dec % static_cast<std::size_t>(grid_n)];
      dec /= static_cast<std::size_t>(grid_n);
    }
    refine_candidate(lag, a, xi, chart_radius, spacing, cfg, loop, sols);
  }
  return sols;
}

std::vector<UnitOctonion> el_brute_oracle_slices(const Lagrangian& lag,
                                                 const UnitOctonion& a,
                                                 double chart_radius, int grid_n,
                                                 int n_slices, RandomStream& rng,
                                                 const SolverConfig& cfg,
                                                 const LoopInstance& loop) {
  if (grid_n < 8)
    throw std::invalid_argument("el_brute_oracle_slices: grid_n must be >= 8");
  if (!(chart_radius > 0.0))
    throw std::invalid_argument("el_brute_oracle_slices: chart_radius must be > 0");
  if (n_slices < 1)
    throw std::invalid_argument("el_brute_oracle_slices: n_slices must be >= 1");
  const int dim = loop.algebra_dim();
  const double spacing = 2.0 * chart_radius / (grid_n - 1);
  const std::size_t n = static_cast<std::size_t>(grid_n);
  const double kInf = std::numeric_limits<double>::infinity();

  std::vector<UnitOctonion> sols;
  std::vector<double> values(n * n);
  for (int s = 0; s < n_slices; ++s) {
    // Random orthonormal 2-frame in the chart.
    Eigen::VectorXd u(dim), v(dim);
    do {
      for (int i = 0; i < dim; ++i) u[i] = rng.gaussian();
    } while (u.norm() < 1e-8);
    u.normalize();
    do {
      for (int i = 0; i < dim; ++i) v[i] = rng.gaussian();
      v -= u * u.dot(v);
    } while (v.norm() < 1e-8);
    v.normalize();

    for (std::size_t iu = 0; iu < n; ++iu) {
      const double cu = -chart_radius + spacing * static_cast<double>(iu);
      for (std::size_t iv = 0; iv < n; ++iv) {
        const double cv = -chart_radius + spacing * static_cast<double>(iv);
        const std::size_t idx = iu * n + iv;
        if (cu * cu + cv * cv <= chart_radius * chart_radius * (1.0 + 1e-12))
          values[idx] =
              el_residual(lag, a, chart_point(a, u * cu + v * cv, loop), loop).norm();
        else
          values[idx] = kInf;
      }
    }

    for (std::size_t iu = 0; iu < n; ++iu) {
      for (std::size_t iv = 0; iv < n; ++iv) {
        const std::size_t idx = iu * n + iv;
        if (!(values[idx] < kInf)) continue;
        if (iu > 0 && values[idx - n] < values[idx]) continue;
        if (iu + 1 < n && values[idx + n] < values[idx]) continue;
        if (iv > 0 && values[idx - 1] < values[idx]) continue;
        if (iv + 1 < n && values[idx + 1] < values[idx]) continue;
        const double cu = -chart_radius + spacing * static_cast<double>(iu);
        const double cv = -chart_radius + spacing * static_cast<double>(iv);
        refine_candidate(lag, a, u * cu + v * cv, chart_radius, spacing, cfg, loop, sols);
      }
    }
  }
  return sols;
}

Momentum source_map(const CotangentPoint& p, const LoopInstance& loop) {
  const int dim = loop.algebra_dim();
  Momentum m;
  for (int i = 1; i <= dim; ++i)
    m.covector[static_cast<std::size_t>(i - 1)] = inner(
        p.covector,
        loop.right_translation_diff(p.base.value(), Octonion::basis(static_cast<std::size_t>(i))));
  return m;
}

Momentum target_map(const CotangentPoint& p, const LoopInstance& loop) {
  const int dim = loop.algebra_dim();
  Momentum m;
  for (int i = 1; i <= dim; ++i)
    m.covector[static_cast<std::size_t>(i - 1)] = inner(
        p.covector,
        loop.left_translation_diff(p.base.value(), Octonion::basis(static_cast<std::size_t>(i))));
  return m;
}

CotangentPoint dl_lift(const Lagrangian& lag, const UnitOctonion& a) {
  const Octonion grad = lag.ambient_grad(a.value());
  return CotangentPoint(a, grad - a.value() * inner(grad, a.value()));
}

FlowResult hamiltonian_flow(const Lagrangian& lag, const Momentum& p,
                            const UnitOctonion& seed, const SolverConfig& cfg,
                            const LoopInstance& loop) {
  const int dim = loop.algebra_dim();
  const Eigen::VectorXd target = eigen_from(p.covector, dim);
  auto residual = [&](const UnitOctonion& g, const Eigen::VectorXd& xi) {
    return Eigen::VectorXd(
        eigen_from(legendre_minus(lag, chart_point(g, xi, loop), loop).covector, dim) -
        target);
  };
  auto retract = [&](const UnitOctonion& g, const Eigen::VectorXd& xi) {
    return chart_point(g, xi, loop);
  };
  auto [g, rep] = newton_solve_chart(seed, dim, residual, retract, cfg);

  FlowResult out;
  out.point = g;
  out.report = rep;
  out.defined = rep.converged && !rep.rank_deficient;
  out.momentum = legendre_plus(lag, g, loop);
  return out;
}

double cotangent_obstruction(const UnitOctonion& g, const UnitOctonion& h,
                             const Octonion& theta) {
  const Octonion gh = g.value() * h.value();
  if (std::abs(inner(theta, gh)) > 1e-8)
    throw std::domain_error("cotangent_obstruction: theta is not a covector at g*h");
  const Octonion gi = conj(g.value());
  const Octonion hi = conj(h.value());
  return norm(gi * (theta * hi) - (gi * theta) * hi);
}

}  // namespace loopmech
