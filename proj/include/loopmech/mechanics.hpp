#pragma once

#include <Eigen/Dense>
#include <vector>

#include "loopmech/lagrangian.hpp"
#include "loopmech/loop.hpp"
#include "loopmech/numerics.hpp"
#include "loopmech/random.hpp"

namespace loopmech {

/// Momentum covector at a loop point, expressed by its pairings with the
/// translated basis directions e1..e7.  On instances with a smaller algebra
/// (the quaternionic control), trailing components are structurally zero.
struct Momentum {
  AlgebraVector covector;
};

/// Cotangent representative at a loop point: an ambient covector orthogonal
/// to the base (enforced within kTangencyTol at construction).
struct CotangentPoint {
  CotangentPoint(const UnitOctonion& base_in, const Octonion& covector_in);

  UnitOctonion base;
  Octonion covector;
};

/// One discrete Euler-Lagrange step (a, b) together with solver diagnostics.
/// residual_norm always equals |residual|.  degenerate_branch reports a
/// rank-deficient Jacobian at the solution: the solved branch is not locally
/// isolated (or the linearization is singular) and continuation along it is
/// not well-posed.
struct ELStepReport {
  UnitOctonion from;
  UnitOctonion to;
  AlgebraVector residual;
  double residual_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  bool degenerate_branch = false;
};

/// Result of one Hamiltonian evolution step.  defined is false when the
/// Legendre inversion failed to converge or met a rank-deficient Jacobian;
/// the flow is not defined through such momenta.
struct FlowResult {
  Momentum momentum;
  UnitOctonion point;
  bool defined = false;
  NewtonReport report;
};

/// Discrete Euler-Lagrange residual of the pair (a, b), component i:
///   <grad L(a), a*e_i> - <grad L(b), e_i*b>,   i = 1..dim.
/// Zero iff (a, b) satisfies the discrete Euler-Lagrange equations.
AlgebraVector el_residual(const Lagrangian& lag, const UnitOctonion& a,
                          const UnitOctonion& b,
                          const LoopInstance& loop = unit_octonions());

/// Left Legendre transform: component i is <grad L(a), a*e_i>.
Momentum legendre_plus(const Lagrangian& lag, const UnitOctonion& a,
                       const LoopInstance& loop = unit_octonions());

/// Right Legendre transform: component i is <grad L(a), e_i*a>.
Momentum legendre_minus(const Lagrangian& lag, const UnitOctonion& a,
                        const LoopInstance& loop = unit_octonions());

enum class LegendreSide { kPlus, kMinus };

/// Jacobian (dim x dim) of the chosen Legendre transform in the exponential
/// chart b(xi) = a*exp(xi), by central differences at xi = 0.  Regularity of
/// the transform at a is equivalent to full rank.
Eigen::MatrixXd legendre_jacobian(const Lagrangian& lag, const UnitOctonion& a,
                                  LegendreSide side, double fd_step = 1e-6,
                                  const LoopInstance& loop = unit_octonions());

/// Solves the discrete Euler-Lagrange equations for b given a, by damped
/// Newton iteration in the exponential chart around the current iterate (the
/// chart is re-centered after every accepted step and steps are clamped to
/// cfg.chart_clamp).  The solver is local: with several solution branches it
/// returns the one the guess's basin selects.
ELStepReport el_solve_step(const Lagrangian& lag, const UnitOctonion& a,
                           const UnitOctonion& guess, const SolverConfig& cfg = {},
                           const LoopInstance& loop = unit_octonions());

/// Brute-force branch certification: dense grid over the chart ball of the
/// given radius centered at a (grid_n points per axis, grid_n >= 8), local
/// minimizers of the residual norm polished by the Newton solver, converged
/// results inside the ball deduplicated.  Exponential cost in the algebra
/// dimension; desk scale only.
std::vector<UnitOctonion> el_brute_oracle(const Lagrangian& lag, const UnitOctonion& a,
                                          double chart_radius, int grid_n,
                                          const SolverConfig& cfg = {},
                                          const LoopInstance& loop = unit_octonions());

/// Slice variant of the oracle: n_slices random 2-dimensional subspaces of
/// the chart through the origin, each scanned on a grid_n x grid_n grid.
/// Affordable at high grid resolution where the full grid is not.
std::vector<UnitOctonion> el_brute_oracle_slices(const Lagrangian& lag,
                                                 const UnitOctonion& a,
                                                 double chart_radius, int grid_n,
                                                 int n_slices, RandomStream& rng,
                                                 const SolverConfig& cfg = {},
                                                 const LoopInstance& loop = unit_octonions());

/// Source projection: component i is <covector, e_i * base>.
Momentum source_map(const CotangentPoint& p, const LoopInstance& loop = unit_octonions());

/// Target projection: component i is <covector, base * e_i>.
Momentum target_map(const CotangentPoint& p, const LoopInstance& loop = unit_octonions());

/// Differential of the Lagrangian as a cotangent point at a: the ambient
/// gradient with its radial component removed,  grad - <grad, a> a.
CotangentPoint dl_lift(const Lagrangian& lag, const UnitOctonion& a);

/// One step of the Hamiltonian evolution: inverts the right Legendre
/// transform at the momentum p (Newton from seed) and pushes the recovered
/// point through the left transform.
FlowResult hamiltonian_flow(const Lagrangian& lag, const Momentum& p,
                            const UnitOctonion& seed, const SolverConfig& cfg = {},
                            const LoopInstance& loop = unit_octonions());

/// Associativity defect of the candidate cotangent transfer at (g, h):
///   | g^{-1}*(theta*h^{-1}) - (g^{-1}*theta)*h^{-1} |
/// for a covector theta at g*h (<theta, g*h> = 0 within 1e-8 required;
/// std::domain_error otherwise).  Identically zero on associative
/// (quaternionic) data, positive in general: the transfer used to compose
/// cotangent momenta on a group does not survive on this loop.
double cotangent_obstruction(const UnitOctonion& g, const UnitOctonion& h,
                             const Octonion& theta);

}  // namespace loopmech
