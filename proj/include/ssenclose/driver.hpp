// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "ssenclose/hermitian_operator.hpp"
#include "ssenclose/pencil.hpp"
#include "ssenclose/report.hpp"

namespace ssenclose
{

// Invalid configuration or unreadable input.
class InputError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

enum class GapMode
{
  Auto,
  RegularitySweep,
  DiagonalPerturbation,
  UserSupplied
};

enum class PathChoice
{
  Auto,
  FastPD,
  General
};

enum ExitCode : int
{
  kExitVerified = 0,
  kExitPartial = 2,
  kExitCertificate = 3,
  kExitInput = 4
};

struct RunConfig
{
  // Problem source: Matrix Market paths, or a generator when `generator` is
  // "mass-spring" or "pentadiag".
  std::string a_path;
  std::string b_path;
  std::string generator;
  Eigen::Index gen_n = 0;
  double gen_variance = 0.0;
  std::uint64_t gen_seed = 0;
  double gen_b_last = 1.0;

  SpectralWindow window;
  int L = 1;
  int M = 1;
  double delta = 1e-15;
  std::uint64_t seed = 1;

  GapMode gap_mode = GapMode::Auto;
  // Numerical estimate of |lambda_hat| in scaled units; the sweep then
  // certifies up to c * hint.
  std::optional<double> lambda_hat_hint;
  // Sweep target t_hi in scaled units.
  std::optional<double> gap_target;
  // Trusted lower bound for GapMode::UserSupplied.
  std::optional<double> lambda_hat_user;
  double gap_c = 0.99;

  PathChoice path = PathChoice::Auto;
  int correction_passes = 1;
  // Largest accepted fast-path error bound relative to the column norm of
  // the approximate solution before the run falls back to the general path.
  double fast_rel_threshold = 1e-4;
  Eigen::Index general_max_n = 4000;
  double pd_c = 0.99;

  std::optional<double> rank_b;
  bool conjugate_symmetry = false;
  long n_max = 1L << 16;
  int threads = 0;  // 0: SSENCLOSE_THREADS or hardware concurrency
};

struct RunResult
{
  Report report;
  int exit_code = kExitVerified;
};

// Loads or generates A and B as described by cfg. Throws InputError.
std::pair<HermitianOperator, HermitianOperator> load_problem(const RunConfig &cfg);

// Full pipeline on given matrices. Never throws for certificate failures;
// those are reported with exit code 3.
RunResult run_verification(const HermitianOperator &a, const HermitianOperator &b,
                           const RunConfig &cfg);

// Loads the problem, then runs the pipeline; input errors give exit code 4.
RunResult run_verification(const RunConfig &cfg);

// Worker count from cfg.threads, the SSENCLOSE_THREADS variable, or the
// hardware, in that order.
int resolve_threads(int requested);

}  // namespace ssenclose
