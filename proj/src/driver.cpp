// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ssenclose/driver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include "ssenclose/certificates.hpp"
#include "ssenclose/generators.hpp"
#include "ssenclose/hankel.hpp"
#include "ssenclose/linsolve.hpp"
#include "ssenclose/matrix_market.hpp"
#include "ssenclose/moments.hpp"
#include "ssenclose/random.hpp"

namespace ssenclose
{

namespace
{

using Clock = std::chrono::steady_clock;

class StageTimer
{
public:
  explicit StageTimer(Report &r) : report_(r), start_(Clock::now()), last_(start_) {}

  void lap(const std::string &name)
  {
    const auto now = Clock::now();
    report_.timings_ms.emplace_back(
        name, std::chrono::duration<double, std::milli>(now - last_).count());
    last_ = now;
  }

  void total()
  {
    report_.timings_ms.emplace_back(
        "total", std::chrono::duration<double, std::milli>(Clock::now() - start_).count());
  }

private:
  Report &report_;
  Clock::time_point start_;
  Clock::time_point last_;
};

// Runs body(i) for i in [0, count) on `threads` workers. Results must be
// written to per-index slots; the first exception is rethrown.
void parallel_for(long count, int threads, const std::function<void(long)> &body)
{
  const int workers = static_cast<int>(std::min<long>(std::max(1, threads), count));
  if (workers <= 1)
  {
    for (long i = 0; i < count; ++i)
    {
      body(i);
    }
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
  {
    pool.emplace_back([&] {
      for (long i = next++; i < count; i = next++)
      {
        try
        {
          body(i);
        }
        catch (...)
        {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error)
          {
            error = std::current_exception();
          }
          next = count;
        }
      }
    });
  }
  for (auto &t : pool)
  {
    t.join();
  }
  if (error)
  {
    std::rethrow_exception(error);
  }
}

void validate_config(const HermitianOperator &a, const HermitianOperator &b, const RunConfig &cfg)
{
  try
  {
    cfg.window.validate();
  }
  catch (const std::invalid_argument &e)
  {
    throw InputError(e.what());
  }
  if (a.n() != b.n() || a.n() == 0)
  {
    throw InputError("A and B must be square of the same nonzero order");
  }
  if (cfg.window.m < 1 || cfg.window.m > a.n())
  {
    throw InputError("m must be in 1..n");
  }
  if (cfg.L < 1 || cfg.M < 1 || cfg.L > a.n())
  {
    throw InputError("L and M must be positive and L <= n");
  }
  if (!(cfg.delta > 0.0) || !std::isfinite(cfg.delta))
  {
    throw InputError("delta must be positive");
  }
  if (cfg.correction_passes < 0 || cfg.correction_passes > 3)
  {
    throw InputError("correction passes must be in 0..3");
  }
  if (!(cfg.gap_c > 0.0 && cfg.gap_c < 1.0) || !(cfg.pd_c > 0.0 && cfg.pd_c < 1.0))
  {
    throw InputError("certificate factors must lie in (0, 1)");
  }
  if (cfg.rank_b && !(*cfg.rank_b >= cfg.window.m && *cfg.rank_b <= static_cast<double>(a.n())))
  {
    throw InputError("rank of B must be in m..n");
  }
  if (cfg.gap_mode == GapMode::UserSupplied && !cfg.lambda_hat_user)
  {
    throw InputError("user-supplied gap mode needs a lower bound");
  }
  if (cfg.lambda_hat_user && cfg.gap_mode != GapMode::UserSupplied && cfg.gap_mode != GapMode::Auto)
  {
    throw InputError("a user-supplied gap bound conflicts with the selected certificate mode");
  }
  if (cfg.gap_target && cfg.lambda_hat_hint)
  {
    throw InputError("give either a gap target or a lambda_hat hint, not both");
  }
}

// Refuses a window that numerically holds more than m eigenvalues, the
// case in which the Hankel pencil could be certified without its
// eigenvalues being eigenvalues of the problem.
void check_count_numerically(const ScaledPencil &p, int m)
{
  const double est = estimate_outside_modulus(p, m);
  if (!(est > 1.0))
  {
    throw CertificateError("gap certificate: the (m+1)-th eigenvalue estimate has scaled modulus " +
                           std::to_string(est) + " <= 1; the window appears to hold more than m");
  }
}

GapCertificate certify_gap(const HermitianOperator &a, const HermitianOperator &b,
                           const ScaledPencil &p, const RunConfig &cfg, Report &report)
{
  const int m = cfg.window.m;
  const bool dense_ok = p.n() <= cfg.general_max_n;
  GapMode mode = cfg.gap_mode;
  if (mode == GapMode::Auto)
  {
    if (cfg.lambda_hat_user)
    {
      mode = GapMode::UserSupplied;
    }
    else if (is_second_difference(a) && b.is_diagonal())
    {
      mode = GapMode::DiagonalPerturbation;
    }
    else
    {
      mode = GapMode::RegularitySweep;
    }
  }
  switch (mode)
  {
  case GapMode::UserSupplied:
  {
    if (!(*cfg.lambda_hat_user > 1.0))
    {
      throw CertificateError("user-supplied lambda_hat lower bound must exceed 1");
    }
    if (dense_ok)
    {
      check_count_numerically(p, m);
    }
    report.warnings.push_back("gap bound supplied by the user and not certified");
    GapCertificate g;
    g.lambda_hat_lower = *cfg.lambda_hat_user;
    g.method = "user-supplied";
    return g;
  }
  case GapMode::DiagonalPerturbation:
  {
    if (!is_second_difference(a) || !b.is_diagonal())
    {
      throw CertificateError(
          "diagonal-perturbation gap needs A = tridiag(-1, 2, -1) and diagonal B");
    }
    return gap_from_diagonal_perturbation(tridiag_eigenvalues(a.n()), b.diagonal(), cfg.window);
  }
  case GapMode::RegularitySweep:
  case GapMode::Auto:
    break;
  }
  if (!dense_ok)
  {
    throw CertificateError("regularity sweep is dense and limited to n <= " +
                           std::to_string(cfg.general_max_n));
  }
  double t_hi = 0.0;
  double estimate = 0.0;
  if (cfg.gap_target)
  {
    t_hi = *cfg.gap_target;
    check_count_numerically(p, m);
  }
  else
  {
    estimate = cfg.lambda_hat_hint ? std::abs(*cfg.lambda_hat_hint) : estimate_outside_modulus(p, m);
    if (cfg.lambda_hat_hint)
    {
      check_count_numerically(p, m);
    }
    t_hi = cfg.gap_c * estimate;
  }
  if (!(t_hi > 1.0))
  {
    throw CertificateError("gap certificate: target c*|lambda_hat| = " + std::to_string(t_hi) +
                           " does not exceed 1 (is m too small for the window?)");
  }
  GapCertificate g = verify_outside_gap(p, t_hi);
  g.estimate = estimate;
  return g;
}

struct NodeResult
{
  IntervalMatrix block;
  SolvePath path = SolvePath::FastPD;
  bool accepted = true;
  std::string message;
};

NodeResult solve_node(const ScaledPencil &p, const QuadratureNode &node, const IntervalMatrix &w,
                      SolvePath path, double lambda_min, const RunConfig &cfg)
{
  const ShiftedSystem s(p, node.z, w);
  NodeResult r;
  r.path = path;
  if (path == SolvePath::FastPD)
  {
    const NodeSolver solver(s);
    const Eigen::MatrixXcd y = solver.solve(s.rhs_mid);
    const SolveCertificate cert = enclose_fast_pd(s, solver, y, lambda_min, cfg.correction_passes);
    const Eigen::MatrixXcd center = cert.center();
    for (Eigen::Index c = 0; c < y.cols(); ++c)
    {
      if (!(cert.err2(c) <= cfg.fast_rel_threshold * center.col(c).norm()))
      {
        r.accepted = false;
        r.message = "node " + std::to_string(node.j) + ": fast-path error bound " +
                    std::to_string(cert.err2(c)) + " too large relative to the solution";
      }
    }
    r.block = node_block(w, cert);
    return r;
  }
  const NodeSolver solver(s);
  const Eigen::MatrixXcd y = solver.solve(s.rhs_mid);
  const SolveCertificate cert = enclose_general(s, y);
  if (!cert.verified)
  {
    throw CertificateError("verified solve at node " + std::to_string(node.j) + ": " +
                           cert.message);
  }
  r.block = node_block(w, cert);
  return r;
}

// Node blocks for all N nodes. With conjugate symmetry only the upper half
// is solved and the mirror node gets the conjugated enclosure.
std::vector<NodeResult> solve_nodes(const ScaledPencil &p, const QuadratureGrid &grid,
                                    const IntervalMatrix &w, SolvePath path, double lambda_min,
                                    const RunConfig &cfg, bool mirror, int threads)
{
  const long n_nodes = grid.n_nodes;
  const long solved = mirror ? n_nodes / 2 : n_nodes;
  std::vector<NodeResult> out(static_cast<std::size_t>(n_nodes));
  parallel_for(solved, threads, [&](long i) {
    out[static_cast<std::size_t>(i)] =
        solve_node(p, grid.nodes[static_cast<std::size_t>(i)], w, path, lambda_min, cfg);
  });
  if (mirror)
  {
    for (long i = 0; i < solved; ++i)
    {
      NodeResult r = out[static_cast<std::size_t>(i)];
      r.block = r.block.unaryExpr([](const ComplexInterval &z) { return conj(z); });
      out[static_cast<std::size_t>(n_nodes - 1 - i)] = std::move(r);
    }
  }
  return out;
}

const char *path_name(SolvePath p)
{
  return p == SolvePath::FastPD ? "fast-pd" : "general";
}

void fail_all(Report &report, int m)
{
  report.eigenvalues.clear();
  for (int i = 0; i < m; ++i)
  {
    ReportEntry e;
    e.index = i + 1;
    e.enclosure.status = EigenStatus::Failed;
    report.eigenvalues.push_back(e);
  }
}

}  // namespace

int resolve_threads(int requested)
{
  if (requested > 0)
  {
    return requested;
  }
  if (const char *env = std::getenv("SSENCLOSE_THREADS"))
  {
    const int v = std::atoi(env);
    if (v > 0)
    {
      return v;
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::pair<HermitianOperator, HermitianOperator> load_problem(const RunConfig &cfg)
{
  try
  {
    if (cfg.generator == "mass-spring")
    {
      return gen_mass_spring(cfg.gen_n, cfg.gen_variance, cfg.gen_seed);
    }
    if (cfg.generator == "pentadiag")
    {
      return gen_pentadiag(cfg.gen_n, cfg.gen_b_last);
    }
    if (!cfg.generator.empty())
    {
      throw InputError("unknown generator '" + cfg.generator + "'");
    }
    if (cfg.a_path.empty() || cfg.b_path.empty())
    {
      throw InputError("both A and B must be given");
    }
    return {load_matrix_market(cfg.a_path), load_matrix_market(cfg.b_path)};
  }
  catch (const InputError &)
  {
    throw;
  }
  catch (const std::exception &e)
  {
    throw InputError(e.what());
  }
}

RunResult run_verification(const HermitianOperator &a, const HermitianOperator &b,
                           const RunConfig &cfg)
{
  RunResult result;
  Report &report = result.report;
  report.a = cfg.window.a;
  report.b = cfg.window.b;
  report.m = cfg.window.m;
  report.L = cfg.L;
  report.M = cfg.M;
  report.delta = cfg.delta;
  StageTimer timer(report);
  std::string stage = "input";
  try
  {
    validate_config(a, b, cfg);
    const int m = cfg.window.m;
    const int lm = cfg.L * cfg.M;
    if (lm < m)
    {
      throw InputError("L*M must be at least m");
    }
    if (lm > m)
    {
      report.warnings.push_back(
          "L*M > m: the rank condition cannot hold, results are best effort only");
    }

    stage = "scale";
    const ScaledPencil p(a, b, cfg.window);
    timer.lap("scale");

    stage = "lambda_min_B";
    double lambda_min = 0.0;
    bool fast_possible = cfg.path != PathChoice::General;
    if (fast_possible)
    {
      try
      {
        lambda_min = lambda_min_lower_bound(b, cfg.pd_c);
        report.lambda_min_b = lambda_min;
      }
      catch (const CertificateError &e)
      {
        if (cfg.path == PathChoice::FastPD)
        {
          throw;
        }
        report.warnings.push_back(std::string("fast path refused: ") + e.what());
        fast_possible = false;
      }
    }
    timer.lap("lambda_min_B");

    stage = "gap";
    const GapCertificate gap = certify_gap(a, b, p, cfg, report);
    report.lambda_hat_lower = gap.lambda_hat_lower;
    report.gap_method = gap.method;
    timer.lap("gap");

    stage = "setup";
    const double r = cfg.rank_b ? *cfg.rank_b : static_cast<double>(a.n());
    // With m trusted only as input, every one of the r finite eigenvalues
    // is counted as a potential outside term.
    const double r_outside = r;
    Rng rng(cfg.seed);
    const Eigen::MatrixXcd v = rng.gaussian_matrix(a.n(), cfg.L).cast<std::complex<double>>();
    const IntervalMatrix w = operator_times(b, v);
    const double vbv = frob_norm_sup(matmul(to_interval(Eigen::MatrixXcd(v.adjoint())), w));
    const long n_nodes =
        choose_N(cfg.delta, r_outside, gap.lambda_hat_lower, vbv, cfg.M, cfg.n_max);
    report.N = n_nodes;
    if (n_nodes == cfg.n_max)
    {
      report.warnings.push_back("node count capped; truncation bound may exceed delta");
    }
    const QuadratureGrid grid = build_grid(n_nodes);
    std::vector<double> outer(static_cast<std::size_t>(2 * cfg.M));
    for (int q = 0; q < 2 * cfg.M; ++q)
    {
      outer[static_cast<std::size_t>(q)] =
          outer_bound(q, r_outside, gap.lambda_hat_lower, vbv, n_nodes);
    }
    timer.lap("setup");

    stage = "solves";
    const int threads = resolve_threads(cfg.threads);
    const bool mirror = cfg.conjugate_symmetry && a.is_real() && b.is_real();
    std::vector<NodeResult> nodes;
    SolvePath path = fast_possible ? SolvePath::FastPD : SolvePath::General;
    if (path == SolvePath::FastPD)
    {
      nodes = solve_nodes(p, grid, w, path, lambda_min, cfg, mirror, threads);
      const auto bad = std::find_if(nodes.begin(), nodes.end(),
                                    [](const NodeResult &n) { return !n.accepted; });
      if (bad != nodes.end())
      {
        report.warnings.push_back("fast path refused: " + bad->message);
        if (cfg.path == PathChoice::Auto)
        {
          path = SolvePath::General;
        }
      }
    }
    if (path == SolvePath::General)
    {
      if (a.n() > cfg.general_max_n)
      {
        throw CertificateError("general solver path is dense and limited to n <= " +
                               std::to_string(cfg.general_max_n));
      }
      nodes = solve_nodes(p, grid, w, path, lambda_min, cfg, mirror, threads);
    }
    report.solver_path = path_name(path);
    timer.lap("solves");

    stage = "moments";
    std::vector<IntervalMatrix> blocks;
    blocks.reserve(nodes.size());
    for (auto &n : nodes)
    {
      blocks.push_back(std::move(n.block));
    }
    std::vector<MomentEnclosure> moments;
    for (int q = 0; q < 2 * cfg.M; ++q)
    {
      moments.push_back(assemble_moment(q, grid, blocks, outer[static_cast<std::size_t>(q)]));
    }
    const HankelPencilEnclosure hk = build_hankel(moments, cfg.M);
    timer.lap("moments");

    stage = "hankel";
    const char *pd_hint = "H not certifiably PD; increase N, shrink radii, or check m/L/M";
    if (!verify_pencil_pd(hk.h))
    {
      throw CertificateError(pd_hint);
    }
    ApproxPencilEig approx;
    try
    {
      approx = approx_pencil_eig(midpoint(hk.h_lt), midpoint(hk.h));
    }
    catch (const std::runtime_error &)
    {
      throw CertificateError(pd_hint);
    }
    const auto scaled = enclose_pencil_eigs(hk.h_lt, hk.h, approx);
    const auto enclosures = rescale(scaled, cfg.window);
    for (std::size_t i = 0; i < enclosures.size(); ++i)
    {
      ReportEntry e;
      e.index = scaled[i].first_index + 1;
      e.enclosure = enclosures[i];
      report.eigenvalues.push_back(e);
    }
    timer.lap("hankel");

    int verified = 0;
    for (const auto &e : report.eigenvalues)
    {
      if (e.enclosure.status == EigenStatus::Verified)
      {
        verified += e.enclosure.cluster_size;
      }
    }
    if (verified == m && lm == m)
    {
      report.status = "verified";
      result.exit_code = kExitVerified;
    }
    else
    {
      report.status = verified > 0 ? "partial" : "failed";
      result.exit_code = kExitPartial;
    }
  }
  catch (const InputError &e)
  {
    fail_all(report, cfg.window.m > 0 ? cfg.window.m : 0);
    report.status = "failed";
    report.error = std::string("input: ") + e.what();
    result.exit_code = kExitInput;
  }
  catch (const std::exception &e)
  {
    fail_all(report, cfg.window.m);
    report.status = "failed";
    report.error = stage + ": " + e.what();
    result.exit_code = kExitCertificate;
  }
  timer.total();
  return result;
}

RunResult run_verification(const RunConfig &cfg)
{
  try
  {
    const auto [a, b] = load_problem(cfg);
    return run_verification(a, b, cfg);
  }
  catch (const InputError &e)
  {
    RunResult r;
    r.report.a = cfg.window.a;
    r.report.b = cfg.window.b;
    r.report.m = cfg.window.m;
    r.report.L = cfg.L;
    r.report.M = cfg.M;
    r.report.delta = cfg.delta;
    fail_all(r.report, std::max(0, cfg.window.m));
    r.report.status = "failed";
    r.report.error = std::string("input: ") + e.what();
    r.exit_code = kExitInput;
    return r;
  }
}

}  // namespace ssenclose
