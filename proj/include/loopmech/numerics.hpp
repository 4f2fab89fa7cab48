#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <utility>

namespace loopmech {

/// Shared solver settings for Euler-Lagrange stepping, Legendre inversion and
/// plain root finding.
struct SolverConfig {
  double tol = 1e-10;        ///< residual norm convergence threshold
  int max_iter = 50;         ///< cap on accepted Newton updates
  double fd_step = 1e-6;     ///< central-difference step for Jacobians
  double damping = 0.5;      ///< backtracking shrink factor
  double chart_clamp = 1.5707963267948966;  ///< max step length (pi/2)

  void validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
    if (!(fd_step > 0.0) || fd_step >= 1e-2)
      throw std::invalid_argument("SolverConfig: fd_step must be in (0, 1e-2)");
    if (!(damping > 0.0) || damping >= 1.0)
      throw std::invalid_argument("SolverConfig: damping must be in (0, 1)");
    if (!(chart_clamp > 0.0))
      throw std::invalid_argument("SolverConfig: chart_clamp must be > 0");
  }
};

struct NewtonReport {
  bool converged = false;
  int iterations = 0;          ///< accepted Newton updates
  double residual_norm = 0.0;  ///< at the final iterate
  bool rank_deficient = false; ///< Jacobian rank-deficient at the final iterate
  bool nonfinite_abort = false;
  bool stalled = false;        ///< backtracking found no decrease
};

/// Central-difference Jacobian of f at x; one column per coordinate.
template <class F>
Eigen::MatrixXd fd_jacobian(F&& f, const Eigen::VectorXd& x, double h) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd jac;
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd xp = x;
    Eigen::VectorXd xm = x;
    xp[j] += h;
    xm[j] -= h;
    const Eigen::VectorXd col = (f(xp) - f(xm)) / (2.0 * h);
    if (jac.size() == 0) jac.resize(col.size(), n);
    jac.col(j) = col;
  }
  return jac;
}

/// Numerical rank: number of singular values above rel_threshold times the
/// largest one.
int estimate_rank(const Eigen::MatrixXd& m, double rel_threshold = 1e-7);

namespace detail {
struct NewtonStep {
  Eigen::VectorXd dx;
  bool rank_deficient = false;
};
/// Solve J*dx = -r; falls back to a truncated-SVD least-squares step when J
/// is rank-deficient at the 1e-7 relative threshold.
NewtonStep solve_newton_step(const Eigen::MatrixXd& jac, const Eigen::VectorXd& r,
                             double rel_threshold = 1e-7);
}  // namespace detail

/// Damped Newton iteration in a chart that is re-centered after every
/// accepted step.
///
/// Contract: residual(x, xi) evaluates a fixed underlying map at the chart
/// point xi around center x, and retract(x, xi) returns that point as a new
/// center, with retract(x, 0) == x.  The Jacobian is taken by central
/// differences at the chart origin, the step is clamped to cfg.chart_clamp,
/// and backtracking with factor cfg.damping enforces monotone residual
/// decrease.  Rank-deficient Newton systems take a damped least-squares step
/// instead and are recorded in the report.
///
/// Throws std::invalid_argument when the residual is non-finite at the start;
/// a non-finite residual appearing mid-iteration aborts with
/// report.nonfinite_abort set.
template <class State, class Residual, class Retract>
std::pair<State, NewtonReport> newton_solve_chart(State x, int dim, Residual&& residual,
                                                  Retract&& retract,
                                                  const SolverConfig& cfg) {
  cfg.validate();
  NewtonReport report;
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(dim);

  Eigen::VectorXd r = residual(x, origin);
  if (!r.allFinite()) throw std::invalid_argument("newton_solve: non-finite residual at start");
  double rn = r.norm();

  bool last_rank_deficient = false;
  while (true) {
    if (rn <= cfg.tol) {
      report.converged = true;
      break;
    }
    if (report.iterations >= cfg.max_iter) break;

    const Eigen::MatrixXd jac = fd_jacobian(
        [&](const Eigen::VectorXd& xi) { return residual(x, xi); }, origin, cfg.fd_step);
    if (!jac.allFinite()) {
      report.nonfinite_abort = true;
      break;
    }
    detail::NewtonStep step = detail::solve_newton_step(jac, r);
    last_rank_deficient = step.rank_deficient;

    const double len = step.dx.norm();
    if (len > cfg.chart_clamp) step.dx *= cfg.chart_clamp / len;

    double t = 1.0;
    bool accepted = false;
    Eigen::VectorXd r_try;
    for (int bt = 0; bt < 40; ++bt) {
      r_try = residual(x, t * step.dx);
      if (r_try.allFinite()) {
        const double rt = r_try.norm();
        if (rt < rn || rt <= cfg.tol) {
          accepted = true;
          break;
        }
      }
      t *= cfg.damping;
    }
    if (!accepted) {
      report.stalled = true;
      break;
    }

    x = retract(x, t * step.dx);
    ++report.iterations;
    r = residual(x, origin);
    if (!r.allFinite()) {
      report.nonfinite_abort = true;
      break;
    }
    rn = r.norm();
  }

  report.residual_norm = rn;
  if (report.converged) {
    // Rank inspection at the solution, for branch-degeneracy reporting.
    const Eigen::MatrixXd jac = fd_jacobian(
        [&](const Eigen::VectorXd& xi) { return residual(x, xi); }, origin, cfg.fd_step);
    report.rank_deficient =
        jac.allFinite() ? estimate_rank(jac) < dim : last_rank_deficient;
  } else {
    report.rank_deficient = last_rank_deficient;
  }
  return {std::move(x), report};
}

/// Plain Newton root finder on R^n (flat chart).
std::pair<Eigen::VectorXd, NewtonReport> newton_solve(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual,
    const Eigen::VectorXd& x0, const SolverConfig& cfg);

}  // namespace loopmech
