#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>
#include <vector>

#include "json.hpp"

#include "checks.hpp"
#include "loopmech/mechanics.hpp"

namespace loopmech::cli {
namespace {

using nlohmann::ordered_json;

std::string e12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return std::string(buf);
}

ordered_json to_json_array(const AlgebraVector& v, int n = 7) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < n; ++i) a.push_back(v[static_cast<std::size_t>(i)]);
  return a;
}

ordered_json to_json_array(const Octonion& o) {
  ordered_json a = ordered_json::array();
  for (std::size_t i = 0; i < 8; ++i) a.push_back(o[i]);
  return a;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file \"" + path + "\"");
  return out;
}

void write_json_doc(const std::string& path, const ordered_json& doc) {
  std::ofstream out = open_output(path);
  out << doc.dump(2) << '\n';
}

/// Runs jobs 0..n-1 on up to worker_count() threads.  Each job must touch
/// only its own slot, so results are identical for any thread count.
template <class Fn>
void parallel_for(std::size_t n, Fn&& job) {
  const int nw = std::max(1, std::min<int>(worker_count(), static_cast<int>(n)));
  if (nw == 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nw));
  for (int w = 0; w < nw; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) job(i);
    });
  for (auto& th : pool) th.join();
}

struct TrajectoryRow {
  int step = 0;
  Octonion point;
  double residual_norm = 0.0;
  bool converged = true;
  bool degenerate = false;
  AlgebraVector p_plus;
  AlgebraVector p_minus;
};

void write_trajectory_csv(const std::string& path, const std::vector<TrajectoryRow>& rows) {
  std::ofstream out = open_output(path);
  out << "step,c0,c1,c2,c3,c4,c5,c6,c7,residual_norm,converged,degenerate,"
         "p_plus_1,p_plus_2,p_plus_3,p_plus_4,p_plus_5,p_plus_6,p_plus_7,"
         "p_minus_1,p_minus_2,p_minus_3,p_minus_4,p_minus_5,p_minus_6,p_minus_7\n";
  for (const auto& r : rows) {
    out << r.step;
    for (std::size_t i = 0; i < 8; ++i) out << ',' << e12(r.point[i]);
    out << ',' << e12(r.residual_norm);
    out << ',' << (r.converged ? 1 : 0) << ',' << (r.degenerate ? 1 : 0);
    for (std::size_t i = 0; i < 7; ++i) out << ',' << e12(r.p_plus[i]);
    for (std::size_t i = 0; i < 7; ++i) out << ',' << e12(r.p_minus[i]);
    out << '\n';
  }
}

void write_trajectory_json(const std::string& path, const RunConfig& cfg,
                           const std::vector<TrajectoryRow>& rows) {
  ordered_json doc;
  doc["command"] = "trajectory";
  doc["lagrangian"] = cfg.lagrangian;
  doc["seed"] = cfg.seed;
  doc["steps"] = cfg.steps;
  ordered_json recs = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json rec;
    rec["step"] = r.step;
    rec["coefficients"] = to_json_array(r.point);
    rec["residual_norm"] = r.residual_norm;
    rec["converged"] = r.converged;
    rec["degenerate"] = r.degenerate;
    rec["momentum_plus"] = to_json_array(r.p_plus);
    rec["momentum_minus"] = to_json_array(r.p_minus);
    recs.push_back(std::move(rec));
  }
  doc["records"] = std::move(recs);
  write_json_doc(path, doc);
}

std::string guess_name(GuessStrategy g) {
  switch (g) {
    case GuessStrategy::kSame: return "same";
    case GuessStrategy::kConjugate: return "conjugate";
    case GuessStrategy::kPerturbed: return "perturbed";
  }
  return "same";
}

}  // namespace

int cmd_verify(const std::string& suite, const std::string& report_path,
               std::uint64_t seed) {
  if (suite != "algebra" && suite != "loop" && suite != "mechanics" && suite != "all")
    throw ConfigError("verify: suite must be one of algebra, loop, mechanics, all");

  const auto& registry = check_registry();
  std::vector<const Check*> selected;
  for (const auto& c : registry)
    if (suite == "all" || c.suite == suite) selected.push_back(&c);

  std::vector<CheckResult> results(selected.size());
  parallel_for(selected.size(), [&](std::size_t i) {
    try {
      results[i] = selected[i]->run(seed);
    } catch (const std::exception& e) {
      results[i] = CheckResult{selected[i]->suite, selected[i]->name, false, 0.0,
                               std::string("exception: ") + e.what()};
    }
  });

  int failed = 0;
  const CheckResult* first_fail = nullptr;
  for (const auto& res : results) {
    std::printf("[%s] %s: %s | %s\n", res.passed ? "PASS" : "FAIL", res.suite.c_str(),
                res.name.c_str(), res.detail.c_str());
    if (!res.passed) {
      ++failed;
      if (!first_fail) first_fail = &res;
    }
  }
  std::printf("%zu/%zu checks passed (suite %s)\n", results.size() - failed,
              results.size(), suite.c_str());
  if (first_fail)
    std::printf("first counterexample: %s / %s: %s\n", first_fail->suite.c_str(),
                first_fail->name.c_str(), first_fail->detail.c_str());

  if (!report_path.empty()) {
    ordered_json doc;
    doc["command"] = "verify";
    doc["suite"] = suite;
    doc["seed"] = seed;
    doc["total"] = results.size();
    doc["failed"] = failed;
    ordered_json checks = ordered_json::array();
    for (const auto& res : results) {
      ordered_json c;
      c["suite"] = res.suite;
      c["name"] = res.name;
      c["passed"] = res.passed;
      c["metric"] = res.metric;
      c["detail"] = res.detail;
      checks.push_back(std::move(c));
    }
    doc["checks"] = std::move(checks);
    write_json_doc(report_path, doc);
  }
  return failed ? kExitCheckFailed : kExitOk;
}

int cmd_trajectory(const RunConfig& cfg) {
  const Lagrangian lag = cfg.make_lagrangian();
  RandomStream rng(cfg.seed);

  std::vector<TrajectoryRow> rows;
  rows.reserve(static_cast<std::size_t>(cfg.steps) + 1);

  UnitOctonion cur = cfg.initial;
  TrajectoryRow first;
  first.step = 0;
  first.point = cur.value();
  first.p_plus = legendre_plus(lag, cur).covector;
  first.p_minus = legendre_minus(lag, cur).covector;
  rows.push_back(first);

  bool solver_failed = false;
  for (int step = 1; step <= cfg.steps; ++step) {
    UnitOctonion guess = cur;
    if (cfg.guess_strategy == GuessStrategy::kConjugate) {
      guess = conj(cur);
    } else if (cfg.guess_strategy == GuessStrategy::kPerturbed) {
      guess = UnitOctonion(
          cur.value() *
          exp_map(AlgebraVector::from_imag(sample_algebra(rng, cfg.perturb_radius)))
              .value());
    }
    const ELStepReport rep = el_solve_step(lag, cur, guess, cfg.solver);

    TrajectoryRow row;
    row.step = step;
    row.point = rep.to.value();
    row.residual_norm = rep.residual_norm;
    row.converged = rep.converged;
    row.degenerate = rep.degenerate_branch;
    row.p_plus = legendre_plus(lag, rep.to).covector;
    row.p_minus = legendre_minus(lag, rep.to).covector;
    rows.push_back(row);

    if (!rep.converged) {
      solver_failed = true;
      break;
    }
    cur = rep.to;
  }

  const std::string path = cfg.output_path.empty()
                               ? "trajectory." + format_extension(cfg.format)
                               : cfg.output_path;
  if (cfg.format == OutputFormat::kCsv)
    write_trajectory_csv(path, rows);
  else
    write_trajectory_json(path, cfg, rows);

  std::printf("trajectory: %s Lagrangian, guess %s, %zu records -> %s\n",
              cfg.lagrangian.c_str(), guess_name(cfg.guess_strategy).c_str(), rows.size(),
              path.c_str());
  if (solver_failed) {
    std::fprintf(stderr,
                 "trajectory: step %d failed to converge (residual %.3e); partial output "
                 "retained\n",
                 rows.back().step, rows.back().residual_norm);
    return kExitSolverFailure;
  }
  return kExitOk;
}

int cmd_legendre(const RunConfig& cfg) {
  const Lagrangian lag = cfg.make_lagrangian();
  RandomStream rng(cfg.seed);

  std::vector<UnitOctonion> points = cfg.points;
  for (int k = 0; k < cfg.random_points; ++k)
    points.push_back(UnitOctonion(sample_unit_octonion(rng)));

  struct Row {
    Octonion point;
    AlgebraVector p_plus, p_minus;
    int rank_plus = 0, rank_minus = 0;
  };
  std::vector<Row> rows(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const UnitOctonion& a = points[i];
    Row& r = rows[i];
    r.point = a.value();
    r.p_plus = legendre_plus(lag, a).covector;
    r.p_minus = legendre_minus(lag, a).covector;
    r.rank_plus = estimate_rank(legendre_jacobian(lag, a, LegendreSide::kPlus,
                                                  cfg.solver.fd_step));
    r.rank_minus = estimate_rank(legendre_jacobian(lag, a, LegendreSide::kMinus,
                                                   cfg.solver.fd_step));
  });

  double max_gap = 0.0;
  for (const auto& r : rows) max_gap = std::max(max_gap, (r.p_plus - r.p_minus).norm());

  const std::string path = cfg.output_path.empty()
                               ? "legendre." + format_extension(cfg.format)
                               : cfg.output_path;
  if (cfg.format == OutputFormat::kCsv) {
    std::ofstream out = open_output(path);
    out << "index,c0,c1,c2,c3,c4,c5,c6,c7,"
           "p_plus_1,p_plus_2,p_plus_3,p_plus_4,p_plus_5,p_plus_6,p_plus_7,"
           "p_minus_1,p_minus_2,p_minus_3,p_minus_4,p_minus_5,p_minus_6,p_minus_7,"
           "rank_plus,rank_minus\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      out << i;
      for (std::size_t c = 0; c < 8; ++c) out << ',' << e12(r.point[c]);
      for (std::size_t c = 0; c < 7; ++c) out << ',' << e12(r.p_plus[c]);
      for (std::size_t c = 0; c < 7; ++c) out << ',' << e12(r.p_minus[c]);
      out << ',' << r.rank_plus << ',' << r.rank_minus << '\n';
    }
  } else {
    ordered_json doc;
    doc["command"] = "legendre";
    doc["lagrangian"] = cfg.lagrangian;
    doc["seed"] = cfg.seed;
    ordered_json pts = ordered_json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      ordered_json p;
      p["index"] = i;
      p["coefficients"] = to_json_array(r.point);
      p["momentum_plus"] = to_json_array(r.p_plus);
      p["momentum_minus"] = to_json_array(r.p_minus);
      p["rank_plus"] = r.rank_plus;
      p["rank_minus"] = r.rank_minus;
      pts.push_back(std::move(p));
    }
    doc["points"] = std::move(pts);
    doc["max_plus_minus_gap"] = max_gap;
    write_json_doc(path, doc);
  }

  std::printf("legendre: %s Lagrangian, %zu points, max |forward - backward| = %.3e -> %s\n",
              cfg.lagrangian.c_str(), rows.size(), max_gap, path.c_str());
  return kExitOk;
}

int cmd_obstruction(long long trials, std::uint64_t seed, bool quaternionic,
                    const std::string& report_path) {
  if (trials < 1) throw ConfigError("obstruction: --trials must be >= 1");
  const std::size_t n = static_cast<std::size_t>(trials);

  // Samples are drawn sequentially so the run is a pure function of the seed;
  // only the evaluations fan out across threads.
  RandomStream rng(seed);
  std::vector<CotangentSample> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) samples.push_back(sample_cotangent_triple(rng, quaternionic));

  std::vector<double> values(n);
  parallel_for(n, [&](std::size_t i) {
    values[i] = cotangent_obstruction(samples[i].g, samples[i].h, samples[i].theta);
  });

  double max_val = 0.0, mean = 0.0;
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] > max_val) {
      max_val = values[i];
      argmax = i;
    }
    mean += values[i];
  }
  mean /= static_cast<double>(n);

  constexpr int kBins = 12;
  std::vector<long long> counts(kBins, 0);
  const double width = max_val > 0.0 ? max_val / kBins : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    int b = static_cast<int>(values[i] / width);
    if (b >= kBins) b = kBins - 1;
    counts[static_cast<std::size_t>(b)]++;
  }

  std::printf("obstruction: trials=%lld quaternionic=%s seed=%llu\n", trials,
              quaternionic ? "yes" : "no",
              static_cast<unsigned long long>(seed));
  std::printf("max = %.6e (trial %zu), mean = %.6e\n", max_val, argmax, mean);
  std::printf("histogram (upper edge : count):\n");
  for (int b = 0; b < kBins; ++b)
    std::printf("  %.3e : %lld\n", width * (b + 1), counts[static_cast<std::size_t>(b)]);

  bool passed = true;
  std::string verdict;
  if (quaternionic) {
    passed = max_val <= 1e-10;
    verdict = passed ? "quaternionic restriction keeps the transfer defect at most 1e-10"
                     : "quaternionic restriction unexpectedly produced a defect above 1e-10";
  } else if (trials >= 100) {
    passed = max_val > 0.01;
    verdict = passed ? "cotangent transfer defect exceeds 0.01: no well-defined product"
                     : "expected a transfer defect above 0.01 but none was found";
  } else {
    verdict = "fewer than 100 trials: no threshold asserted";
  }
  std::printf("[%s] %s\n", passed ? "PASS" : "FAIL", verdict.c_str());

  if (!report_path.empty()) {
    ordered_json doc;
    doc["command"] = "obstruction";
    doc["trials"] = trials;
    doc["quaternionic"] = quaternionic;
    doc["seed"] = seed;
    doc["max"] = max_val;
    doc["argmax"] = argmax;
    doc["mean"] = mean;
    ordered_json hist;
    ordered_json edges = ordered_json::array();
    ordered_json cnts = ordered_json::array();
    for (int b = 0; b < kBins; ++b) {
      edges.push_back(width * (b + 1));
      cnts.push_back(counts[static_cast<std::size_t>(b)]);
    }
    hist["upper_edges"] = std::move(edges);
    hist["counts"] = std::move(cnts);
    doc["histogram"] = std::move(hist);
    doc["passed"] = passed;
    write_json_doc(report_path, doc);
  }
  return passed ? kExitOk : kExitCheckFailed;
}

}  // namespace loopmech::cli
