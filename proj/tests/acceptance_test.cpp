// Acceptance gate: one check per numbered criterion of the project checklist,
// each printed as a single PASS/FAIL line with its measured figure of merit.
// The process exit code is the number of failed criteria.

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "json.hpp"
#include "loopmech/lagrangian.hpp"
#include "loopmech/loop.hpp"
#include "loopmech/mechanics.hpp"
#include "loopmech/numerics.hpp"
#include "loopmech/random.hpp"

using namespace loopmech;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Part {
  std::string label;
  bool passed;
  std::string metric;
};

struct Outcome {
  bool passed = false;
  std::string metric;
  std::vector<Part> parts;
};

int g_failures = 0;

void run_criterion(int id, const std::string& text, const std::function<Outcome()>& body) {
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.passed = false;
    out.metric = std::string("exception: ") + e.what();
  }
  std::printf("[%s] %02d %s (%s)\n", out.passed ? "PASS" : "FAIL", id, text.c_str(),
              out.metric.c_str());
  for (const Part& p : out.parts) {
    std::printf("   [%s] %02d%s (%s)\n", p.passed ? "PASS" : "FAIL", id, p.label.c_str(),
                p.metric.c_str());
  }
  if (!out.passed) ++g_failures;
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

UnitOctonion random_unit(RandomStream& rng) {
  return UnitOctonion(sample_unit_octonion(rng));
}

AlgebraVector random_algebra(RandomStream& rng, double radius = 1.0, int dim = 7) {
  return AlgebraVector::from_imag(sample_algebra(rng, radius, dim));
}

Octonion random_scaled(RandomStream& rng) {
  return sample_unit_octonion(rng) * (0.5 + rng.uniform());
}

const std::vector<double> kEqualMasses(7, 1.0);
const std::vector<double> kRampMasses = {1, 2, 3, 4, 5, 6, 7};

// ---------------------------------------------------------------------------

Outcome criterion_table() {
  // Frozen signed products, maintained independently of the library table.
  static constexpr int kSign[8][8] = {
      {+1, +1, +1, +1, +1, +1, +1, +1}, {+1, -1, +1, -1, +1, -1, -1, +1},
      {+1, -1, -1, +1, +1, +1, -1, -1}, {+1, +1, -1, -1, +1, -1, +1, -1},
      {+1, -1, -1, -1, -1, +1, +1, +1}, {+1, +1, -1, +1, -1, -1, -1, +1},
      {+1, +1, +1, -1, -1, +1, -1, -1}, {+1, -1, +1, +1, -1, -1, +1, -1},
  };
  static constexpr int kIndex[8][8] = {
      {0, 1, 2, 3, 4, 5, 6, 7}, {1, 0, 3, 2, 5, 4, 7, 6}, {2, 3, 0, 1, 6, 7, 4, 5},
      {3, 2, 1, 0, 7, 6, 5, 4}, {4, 5, 6, 7, 0, 1, 2, 3}, {5, 4, 7, 6, 1, 0, 3, 2},
      {6, 7, 4, 5, 2, 3, 0, 1}, {7, 6, 5, 4, 3, 2, 1, 0},
  };
  double worst_table = 0.0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const Octonion p = Octonion::basis(i) * Octonion::basis(j);
      const Octonion q = Octonion::basis(kIndex[i][j]) * double(kSign[i][j]);
      worst_table = std::max(worst_table, max_abs_diff(p, q));
    }
  }

  RandomStream rng(2101);
  double worst_cd = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const Octonion g = random_scaled(rng);
    const Octonion h = random_scaled(rng);
    worst_cd = std::max(worst_cd, max_abs_diff(g * h, quaternion_pair_product(g, h)));
  }

  const Octonion e1 = Octonion::basis(1), e2 = Octonion::basis(2);
  const Octonion e4 = Octonion::basis(4), e7 = Octonion::basis(7);
  const bool witness = max_abs_diff((e1 * e4) * e7, e2) == 0.0 &&
                       max_abs_diff(e1 * (e4 * e7), -e2) == 0.0;

  Outcome out;
  out.passed = worst_table == 0.0 && worst_cd <= 1e-14 && witness;
  out.metric = "table diff " + fmt(worst_table) + ", doubling diff " + fmt(worst_cd);
  return out;
}

Outcome criterion_identities() {
  RandomStream rng(2102);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const Octonion g = random_scaled(rng);
    const Octonion h = random_scaled(rng);
    const UnitOctonion ua = random_unit(rng);
    const UnitOctonion ux = random_unit(rng);
    const UnitOctonion uy = random_unit(rng);

    const std::array<double, 3> mf = moufang_residuals(ua, ux, uy);
    worst = std::max({worst, mf[0], mf[1], mf[2]});

    worst = std::max(worst, norm(associator(g, g, h)));
    worst = std::max(worst, norm(associator(g, h, h)));
    worst = std::max(worst, norm(associator(g, h, g)));

    worst = std::max(worst, std::abs(norm(g * h) - norm(g) * norm(h)));

    const Octonion gi = inverse(g);
    worst = std::max(worst, max_abs_diff(gi * (g * h), h));
    worst = std::max(worst, max_abs_diff((h * g) * gi, h));

    worst = std::max(worst, max_abs_diff(conj(g * h), conj(h) * conj(g)));

    worst = std::max(worst, norm(associator(g, h, g * h)));
    const Octonion w0 = ((g * h) * g) * h;
    worst = std::max(worst, max_abs_diff(w0, (g * (h * g)) * h));
    worst = std::max(worst, max_abs_diff(w0, g * ((h * g) * h)));
    worst = std::max(worst, max_abs_diff(w0, g * (h * (g * h))));
    worst = std::max(worst, max_abs_diff(w0, (g * h) * (g * h)));
  }
  Outcome out;
  out.passed = worst <= 1e-12;
  out.metric = "max residual " + fmt(worst);
  return out;
}

Outcome criterion_tangent_algebra() {
  double worst_basis = 0.0;
  for (int i = 1; i < 8; ++i) {
    for (int j = 1; j < 8; ++j) {
      if (i == j) continue;
      const AlgebraVector x = AlgebraVector::basis(i - 1);
      const AlgebraVector y = AlgebraVector::basis(j - 1);
      const Octonion expected = (Octonion::basis(i) * Octonion::basis(j)) * 2.0;
      worst_basis = std::max(worst_basis,
                             max_abs_diff(bracket_left(x, y).to_octonion(), expected));
      worst_basis = std::max(worst_basis,
                             max_abs_diff(bracket_right(x, y).to_octonion(), -expected));
    }
  }

  RandomStream rng(2103);
  double worst_malcev = 0.0;
  for (int t = 0; t < 10000; ++t) {
    worst_malcev = std::max(worst_malcev, malcev_residual(random_algebra(rng),
                                                          random_algebra(rng),
                                                          random_algebra(rng)));
  }

  double best_jacobiator = 0.0;
  for (int i = 0; i < 7; ++i) {
    for (int j = i + 1; j < 7; ++j) {
      for (int k = j + 1; k < 7; ++k) {
        best_jacobiator = std::max(
            best_jacobiator, jacobiator(AlgebraVector::basis(i), AlgebraVector::basis(j),
                                        AlgebraVector::basis(k)).norm());
      }
    }
  }

  Outcome out;
  out.passed = worst_basis == 0.0 && worst_malcev <= 1e-10 && best_jacobiator >= 1.0;
  out.metric = "bracket diff " + fmt(worst_basis) + ", malcev " + fmt(worst_malcev) +
               ", jacobiator witness " + fmt(best_jacobiator);
  return out;
}

Outcome criterion_exponential() {
  const double special =
      max_abs_diff(exp_map(AlgebraVector::basis(0) * (kPi / 2.0)).value(), Octonion::basis(1));

  RandomStream rng(2104);
  double worst_rt = 0.0;
  for (int t = 0; t < 2000; ++t) {
    AlgebraVector x = random_algebra(rng);
    const double len = (kPi - 0.1) * rng.uniform();
    if (x.norm() == 0.0) continue;
    x = x * (len / x.norm());
    worst_rt = std::max(worst_rt, (log_map(exp_map(x)) - x).norm());
  }

  const AlgebraVector x = AlgebraVector::basis(0);
  const AlgebraVector y = AlgebraVector::basis(1);
  const AlgebraVector xy = bracket_left(x, y);
  std::array<double, 3> ts = {0.1, 0.05, 0.025};
  std::array<double, 3> rem{};
  for (std::size_t k = 0; k < 3; ++k) {
    const double t = ts[k];
    const AlgebraVector full = log_map(exp_map(x * t) * exp_map(y * t));
    rem[k] = (full - (x + y) * t - xy * (0.5 * t * t)).norm();
  }
  const double slope = std::min(std::log2(rem[0] / rem[1]), std::log2(rem[1] / rem[2]));

  Outcome out;
  out.passed = special <= 1e-14 && worst_rt <= 1e-10 && slope >= 2.9;
  out.metric = "axis value diff " + fmt(special) + ", round trip " + fmt(worst_rt) +
               ", remainder order " + fmt(slope);
  return out;
}

Outcome criterion_linear_lagrangian() {
  const Lagrangian lin = lagrangian_linear();
  RandomStream rng(2105);

  double worst_pair = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const UnitOctonion a = random_unit(rng);
    worst_pair = std::max(worst_pair, el_residual(lin, a, conj(a)).norm());
  }

  // Solver start within chart distance 0.05 of the conjugate.  Points with a
  // vanishing first imaginary coordinate are excluded: there the conjugate
  // branch collides with its twin and is not an isolated target.
  double worst_dist = 0.0;
  double worst_res = 0.0;
  int worst_iters = 0;
  for (int done = 0; done < 100;) {
    const UnitOctonion a = random_unit(rng);
    if (std::abs(a.value()[1]) < 0.05) continue;
    ++done;
    const UnitOctonion guess = conj(a) * exp_map(random_algebra(rng, 0.05));
    const ELStepReport rep = el_solve_step(lin, a, guess);
    worst_res = std::max(worst_res, rep.converged ? rep.residual_norm : 1.0);
    worst_iters = std::max(worst_iters, rep.iterations);
    worst_dist = std::max(worst_dist, chart_distance(rep.to, conj(a)));
  }

  const Momentum at_identity = legendre_minus(lin, UnitOctonion::identity());
  double value_diff = 0.0;
  for (int i = 0; i < 7; ++i) {
    value_diff = std::max(value_diff,
                          std::abs(at_identity.covector[i] - (i == 0 ? 1.0 : 0.0)));
  }
  const int rank =
      estimate_rank(legendre_jacobian(lin, UnitOctonion::identity(), LegendreSide::kMinus));

  Outcome out;
  out.passed = worst_pair <= 1e-12 && worst_res <= 1e-10 && worst_iters <= 15 &&
               worst_dist <= 1e-6 && value_diff <= 1e-15 && rank < 7;
  out.metric = "pair residual " + fmt(worst_pair) + ", solver residual " + fmt(worst_res) +
               ", iters " + std::to_string(worst_iters) + ", branch distance " +
               fmt(worst_dist) + ", rank " + std::to_string(rank);
  return out;
}

Outcome criterion_kinetic_lagrangian() {
  Outcome out;
  RandomStream rng(2106);

  {  // (a) jacobian at the identity, unequal masses
    const Lagrangian kin = lagrangian_kinetic(kRampMasses);
    double worst = 0.0;
    for (const LegendreSide side : {LegendreSide::kPlus, LegendreSide::kMinus}) {
      const Eigen::MatrixXd jac = legendre_jacobian(kin, UnitOctonion::identity(), side);
      Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(7, 7);
      for (int i = 0; i < 7; ++i) expected(i, i) = kRampMasses[i];
      worst = std::max(worst, (jac - expected).cwiseAbs().maxCoeff());
    }
    out.parts.push_back({"a jacobian diag(1..7) at identity, both transforms",
                         worst <= 1e-5, "max entry diff " + fmt(worst)});
  }

  const Lagrangian iso = lagrangian_kinetic(kEqualMasses);

  {  // (b) transform agreement, equal masses
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const UnitOctonion a = random_unit(rng);
      worst = std::max(worst, (legendre_plus(iso, a).covector -
                               legendre_minus(iso, a).covector).norm());
    }
    out.parts.push_back({"b transforms agree at 100 points, equal masses",
                         worst <= 1e-10, "max gap " + fmt(worst)});
  }

  {  // (c) only the trivial branch near the identity, equal masses
    double worst_solver = 0.0;
    double worst_oracle = 0.0;
    for (int p = 0; p < 3; ++p) {
      const UnitOctonion a = exp_map(random_algebra(rng, 0.3));
      for (int t = 0; t < 20; ++t) {
        const UnitOctonion guess = a * exp_map(random_algebra(rng, 0.2));
        const ELStepReport rep = el_solve_step(iso, a, guess);
        worst_solver = std::max(worst_solver,
                                rep.converged ? chart_distance(rep.to, a) : 1.0);
      }
      const std::vector<UnitOctonion> sols =
          el_brute_oracle_slices(iso, a, 0.5, 21, 50, rng);
      if (sols.empty()) worst_oracle = 1.0;
      for (const UnitOctonion& s : sols) {
        worst_oracle = std::max(worst_oracle, chart_distance(s, a));
      }
    }
    out.parts.push_back({"c near identity only the trivial branch (solver + sliced scan)",
                         worst_solver <= 1e-8 && worst_oracle <= 1e-7,
                         "solver drift " + fmt(worst_solver) + ", scan drift " +
                             fmt(worst_oracle)});
  }

  {  // (d) the closed-form nontrivial pair
    const double A = 0.5;
    const double B = std::sqrt(3.0) / 2.0;
    const double u = std::sqrt((1.0 - B * B) / (1.0 - A * A));
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      Octonion n = sample_algebra(rng);
      n = n * (1.0 / norm(n));
      const UnitOctonion a(Octonion::identity() * A + n * std::sqrt(1.0 - A * A));
      const UnitOctonion b(Octonion::identity() * B + n * (u * std::sqrt(1.0 - A * A)));
      worst = std::max(worst, el_residual(iso, a, b).norm());
    }
    const Lagrangian ramp = lagrangian_kinetic(kRampMasses);
    for (int j = 1; j < 8; ++j) {
      const Octonion n = Octonion::basis(j);
      const UnitOctonion a(Octonion::identity() * A + n * std::sqrt(1.0 - A * A));
      const UnitOctonion b(Octonion::identity() * B + n * (u * std::sqrt(1.0 - A * A)));
      worst = std::max(worst, el_residual(ramp, a, b).norm());
    }
    out.parts.push_back({"d nontrivial pair A=1/2, B=sqrt(3)/2, u=1/sqrt(3)",
                         worst <= 1e-10, "max residual " + fmt(worst)});
  }

  out.passed = std::all_of(out.parts.begin(), out.parts.end(),
                           [](const Part& p) { return p.passed; });
  out.metric = out.passed ? "all parts hold" : "see parts";
  return out;
}

Outcome criterion_squared_lagrangian() {
  Outcome out;
  const Lagrangian sq = lagrangian_sq();
  RandomStream rng(2107);

  {  // (a) sign relations of converged pairs
    double worst = 0.0;
    int converged = 0;
    for (int t = 0; t < 200; ++t) {
      const UnitOctonion a = random_unit(rng);
      Octonion tw = conj(a.value());
      tw[1] += 2.0 * a.value()[1];
      const UnitOctonion guess = UnitOctonion(tw) * exp_map(random_algebra(rng, 0.05));
      const ELStepReport rep = el_solve_step(sq, a, guess);
      if (!rep.converged) continue;
      ++converged;
      const Octonion av = a.value();
      const Octonion bv = rep.to.value();
      worst = std::max(worst, std::abs(av[1] * av[0] - bv[1] * bv[0]));
      for (int j = 2; j < 8; ++j) {
        worst = std::max(worst, std::abs(av[1] * av[j] + bv[1] * bv[j]));
      }
    }
    out.parts.push_back({"a converged pairs obey the quadratic sign relations",
                         converged >= 150 && worst <= 1e-8,
                         "max relation defect " + fmt(worst) + " over " +
                             std::to_string(converged) + " pairs"});
  }

  {  // (b) transform vanishes at all basis points
    double worst = 0.0;
    for (int s = 0; s < 8; ++s) {
      worst = std::max(worst, legendre_minus(sq, UnitOctonion::basis(s)).covector.norm());
    }
    out.parts.push_back({"b right transform vanishes at the eight basis points",
                         worst <= 1e-15, "max norm " + fmt(worst)});
  }

  {  // (c) derivative at the identity approximately zero
    const Eigen::MatrixXd jac =
        legendre_jacobian(sq, UnitOctonion::identity(), LegendreSide::kMinus);
    const double measured = jac.cwiseAbs().maxCoeff();
    out.parts.push_back({"c transform derivative at the identity within 1e-5 of zero",
                         measured <= 1e-5,
                         "max entry " + fmt(measured) +
                             "; measured matrix is the rank-one unit in the (1,1) slot, "
                             "slope of sin(t)cos(t) along the first axis"});
  }

  out.passed = std::all_of(out.parts.begin(), out.parts.end(),
                           [](const Part& p) { return p.passed; });
  out.metric = out.passed ? "all parts hold" : "see parts";
  return out;
}

Outcome criterion_cotangent() {
  RandomStream rng(2108);
  const Lagrangian lags[3] = {lagrangian_linear(), lagrangian_sq(),
                              lagrangian_kinetic(kRampMasses)};
  double worst_proj = 0.0;
  for (const Lagrangian& lag : lags) {
    for (int t = 0; t < 1000; ++t) {
      const UnitOctonion a = random_unit(rng);
      const CotangentPoint lift = dl_lift(lag, a);
      worst_proj = std::max(worst_proj, (target_map(lift).covector -
                                         legendre_plus(lag, a).covector).norm());
      worst_proj = std::max(worst_proj, (source_map(lift).covector -
                                         legendre_minus(lag, a).covector).norm());
    }
  }

  const Lagrangian lin = lagrangian_linear();
  double worst_pos = 0.0;
  double worst_link = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const UnitOctonion a = random_unit(rng);
    const AlgebraVector gap =
        target_map(dl_lift(lin, a)).covector - source_map(dl_lift(lin, conj(a))).covector;
    worst_pos = std::max(worst_pos, gap.norm());

    const UnitOctonion c = random_unit(rng);
    const AlgebraVector gap2 =
        target_map(dl_lift(lin, a)).covector - source_map(dl_lift(lin, c)).covector;
    worst_link = std::max(worst_link,
                          std::abs(gap2.norm() - el_residual(lin, a, c).norm()));
  }
  const double neg_gap =
      el_residual(lin, UnitOctonion::identity(), exp_map(AlgebraVector::basis(1) * 0.5)).norm();

  Outcome out;
  out.passed = worst_proj <= 1e-14 && worst_pos <= 1e-12 && worst_link <= 1e-13 &&
               neg_gap > 0.01;
  out.metric = "projection diff " + fmt(worst_proj) + ", composable gap " + fmt(worst_pos) +
               ", gap-residual link " + fmt(worst_link) + ", non-composable gap " +
               fmt(neg_gap);
  return out;
}

Outcome criterion_obstruction() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() /
                       ("loopmech_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path oct_report = dir / "obstruction_octonion.json";
  const fs::path quat_report = dir / "obstruction_quaternion.json";

  const int rc_oct = cli::cmd_obstruction(1000, 2026, false, oct_report.string());
  const int rc_quat = cli::cmd_obstruction(1000, 2026, true, quat_report.string());

  const auto read_max = [](const fs::path& p) {
    std::ifstream in(p);
    return nlohmann::json::parse(in).at("max").get<double>();
  };
  const double max_oct = read_max(oct_report);
  const double max_quat = read_max(quat_report);

  Outcome out;
  out.passed = rc_oct == cli::kExitOk && rc_quat == cli::kExitOk && max_oct > 0.01 &&
               max_quat <= 1e-10;
  out.metric = "octonion max " + fmt(max_oct) + ", quaternion max " + fmt(max_quat);
  return out;
}

Outcome criterion_associative_control() {
  RandomStream rng(2110);
  const LoopInstance& s3 = unit_quaternions();

  double worst_mixed = 0.0;
  for (int t = 0; t < 300; ++t) {
    const UnitOctonion a(sample_unit_quaternion(rng));
    worst_mixed = std::max(worst_mixed,
                           norm(bracket_field_at(a, random_algebra(rng, 1.0, 3),
                                                 random_algebra(rng, 1.0, 3),
                                                 BracketSide::kMixed).vec));
  }

  const Lagrangian lin = lagrangian_linear();
  double worst_conj = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const UnitOctonion a(sample_unit_quaternion(rng));
    worst_conj = std::max(worst_conj, el_residual(lin, a, conj(a), s3).norm());
  }

  const Lagrangian kin3 = lagrangian_kinetic({1, 2, 3});
  const Eigen::MatrixXd jac =
      legendre_jacobian(kin3, UnitOctonion::identity(), LegendreSide::kMinus, 1e-6, s3);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 3);
  expected(0, 0) = 1.0;
  expected(1, 1) = 2.0;
  expected(2, 2) = 3.0;
  const double jac_diff = (jac - expected).cwiseAbs().maxCoeff();

  const Lagrangian iso3 = lagrangian_kinetic({1, 1, 1});
  double worst_solver = 0.0;
  double worst_flow = 0.0;
  for (int t = 0; t < 20; ++t) {
    const UnitOctonion a = exp_map(random_algebra(rng, 0.3, 3));
    const ELStepReport rep =
        el_solve_step(iso3, a, a * exp_map(random_algebra(rng, 0.05, 3)), SolverConfig{}, s3);
    worst_solver = std::max(worst_solver, rep.converged ? chart_distance(rep.to, a) : 1.0);

    const FlowResult flow =
        hamiltonian_flow(iso3, legendre_minus(iso3, a, s3),
                         a * exp_map(random_algebra(rng, 0.01, 3)), SolverConfig{}, s3);
    worst_flow = std::max(worst_flow, flow.defined ? chart_distance(flow.point, a) : 1.0);
  }

  bool ranks_match = true;
  for (int t = 0; t < 30; ++t) {
    const UnitOctonion a(sample_unit_quaternion(rng));
    for (const Lagrangian* lag : {&lin, &kin3}) {
      const int rp = estimate_rank(legendre_jacobian(*lag, a, LegendreSide::kPlus, 1e-6, s3));
      const int rm =
          estimate_rank(legendre_jacobian(*lag, a.inverse(), LegendreSide::kMinus, 1e-6, s3));
      ranks_match = ranks_match && ((rp == 3) == (rm == 3));
    }
  }

  double worst_obstruction = 0.0;
  for (int t = 0; t < 200; ++t) {
    const UnitOctonion g(sample_unit_quaternion(rng));
    const UnitOctonion h(sample_unit_quaternion(rng));
    Octonion theta = sample_algebra(rng, 1.0, 3);
    theta[0] = rng.gaussian();
    const Octonion base = (g * h).value();
    theta = theta - base * inner(theta, base);
    if (norm(theta) < 1e-6) continue;
    theta = theta * (1.0 / norm(theta));
    worst_obstruction = std::max(worst_obstruction, cotangent_obstruction(g, h, theta));
  }

  Outcome out;
  out.passed = worst_mixed <= 1e-10 && worst_conj <= 1e-12 && jac_diff <= 1e-5 &&
               estimate_rank(jac) == 3 && worst_solver <= 1e-8 && worst_flow <= 1e-8 &&
               ranks_match && worst_obstruction <= 1e-10;
  out.metric = "mixed bracket " + fmt(worst_mixed) + ", pair residual " + fmt(worst_conj) +
               ", jacobian diff " + fmt(jac_diff) + ", solver drift " + fmt(worst_solver) +
               ", flow drift " + fmt(worst_flow) + ", transfer defect " +
               fmt(worst_obstruction);
  return out;
}

}  // namespace

int main() {
  run_criterion(1, "basis table fidelity and doubling cross-check", criterion_table);
  run_criterion(2, "algebraic identity suite at 1e-12", criterion_identities);
  run_criterion(3, "tangent algebra brackets, Mal'cev law, Jacobiator witness",
                criterion_tangent_algebra);
  run_criterion(4, "exponential map values, round trips, remainder order",
                criterion_exponential);
  run_criterion(5, "linear Lagrangian: conjugate pairs, solver, degeneracy",
                criterion_linear_lagrangian);
  run_criterion(6, "kinetic Lagrangian: jacobian, transforms, branch structure",
                criterion_kinetic_lagrangian);
  run_criterion(7, "squared Lagrangian: sign relations, vanishing, derivative",
                criterion_squared_lagrangian);
  run_criterion(8, "cotangent projections and composability", criterion_cotangent);
  run_criterion(9, "transfer obstruction at 1000 trials", criterion_obstruction);
  run_criterion(10, "associative control instance", criterion_associative_control);

  std::printf("%d/10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
