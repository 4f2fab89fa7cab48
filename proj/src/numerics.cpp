#include "loopmech/numerics.hpp"

namespace loopmech {

int estimate_rank(const Eigen::MatrixXd& m, double rel_threshold) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma[0] <= 0.0) return 0;
  const double cut = rel_threshold * sigma[0];
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma[i] > cut) ++rank;
  }
  return rank;
}

namespace detail {

NewtonStep solve_newton_step(const Eigen::MatrixXd& jac, const Eigen::VectorXd& r,
                             double rel_threshold) {
  NewtonStep step;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma[0] : 0.0;
  const double cut = rel_threshold * smax;
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma[i] > cut) ++rank;
  }
  step.rank_deficient = rank < std::min(jac.rows(), jac.cols());
  if (!step.rank_deficient) {
    step.dx = jac.fullPivLu().solve(-r);
    return step;
  }
  // Truncated-SVD pseudo-inverse step.
  Eigen::VectorXd inv_sigma = Eigen::VectorXd::Zero(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma[i] > cut) inv_sigma[i] = 1.0 / sigma[i];
  }
  step.dx = -(svd.matrixV() * inv_sigma.asDiagonal() * svd.matrixU().transpose() * r);
  return step;
}

}  // namespace detail

std::pair<Eigen::VectorXd, NewtonReport> newton_solve(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual,
    const Eigen::VectorXd& x0, const SolverConfig& cfg) {
  return newton_solve_chart(
      x0, static_cast<int>(x0.size()),
      [&](const Eigen::VectorXd& x, const Eigen::VectorXd& xi) {
        return residual(x + xi);
      },
      [](const Eigen::VectorXd& x, const Eigen::VectorXd& xi) -> Eigen::VectorXd {
        return x + xi;
      },
      cfg);
}

}  // namespace loopmech
