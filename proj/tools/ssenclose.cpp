// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: gen, check-pd, gap, verify, selftest.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ssenclose/certificates.hpp"
#include "ssenclose/decimal.hpp"
#include "ssenclose/driver.hpp"
#include "ssenclose/generators.hpp"
#include "ssenclose/interval.hpp"
#include "ssenclose/matrix_market.hpp"
#include "ssenclose/pencil.hpp"

namespace
{

using namespace ssenclose;

std::pair<double, double> parse_window(const std::string &text)
{
  const auto comma = text.find(',');
  if (comma == std::string::npos)
  {
    throw InputError("window must be given as a,b");
  }
  try
  {
    const double a = std::stod(text.substr(0, comma));
    const double b = std::stod(text.substr(comma + 1));
    return {a, b};
  }
  catch (const std::logic_error &)
  {
    throw InputError("window endpoints must be numbers");
  }
}

GapMode parse_gap_mode(const std::string &s)
{
  if (s == "auto")
  {
    return GapMode::Auto;
  }
  if (s == "regularity-sweep")
  {
    return GapMode::RegularitySweep;
  }
  if (s == "diagonal-perturbation")
  {
    return GapMode::DiagonalPerturbation;
  }
  return GapMode::UserSupplied;
}

PathChoice parse_path(const std::string &s)
{
  if (s == "fast-pd")
  {
    return PathChoice::FastPD;
  }
  if (s == "general")
  {
    return PathChoice::General;
  }
  return PathChoice::Auto;
}

// Small end-to-end checks against closed-form answers.
int run_selftest()
{
  int failures = 0;
  auto check = [&](bool ok, const std::string &name) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
    failures += ok ? 0 : 1;
  };

  const RealInterval s = RealInterval(0.1) + RealInterval(0.2);
  check(s.inf() <= 0.3 && 0.30000000000000004 <= s.sup(), "interval addition encloses 0.1 + 0.2");

  const auto [sn, cs] = sin_cos(pi_interval() / RealInterval(2.0));
  check(sn.contains(1.0) && cs.contains(0.0), "sin/cos of the pi/2 enclosure");

  const std::string lo = decimal_down(0.1);
  const std::string hi = decimal_up(0.1);
  check(std::stod(lo) <= 0.1 && 0.1 <= std::stod(hi), "decimal endpoints bracket 0.1");

  check(verify_positive_definite(HermitianOperator::identity(8), 0.5), "identity is PD above 0.5");

  RunConfig cfg;
  cfg.generator = "mass-spring";
  cfg.gen_n = 32;
  cfg.L = 2;
  cfg.M = 2;
  cfg.window.m = 4;
  // Eigenvalues 2 - 2 cos(i pi / 33); 2 sits between i = 16 and 17.
  const long double pi = 3.141592653589793238462643383279502884L;
  auto lam = [&](int i) { return static_cast<double>(2.0L - 2.0L * std::cos(i * pi / 33.0L)); };
  const double half = 0.5 * (lam(19) + lam(18)) - 2.0;
  cfg.window.a = 2.0 - half;
  cfg.window.b = 2.0 + half;
  cfg.threads = 1;
  const RunResult r = run_verification(cfg);
  bool ok = r.exit_code == kExitVerified && r.report.eigenvalues.size() == 4;
  for (std::size_t k = 0; ok && k < r.report.eigenvalues.size(); ++k)
  {
    const auto &e = r.report.eigenvalues[k].enclosure;
    const long double exact = 2.0L - 2.0L * std::cos((15 + static_cast<int>(k)) * pi / 33.0L);
    ok = e.interval.inf() <= exact && exact <= e.interval.sup();
  }
  check(ok, "mass-spring n=32 window around 2 encloses the four analytic eigenvalues");

  std::cout << (failures == 0 ? "selftest passed" : "selftest failed") << '\n';
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Verified eigenvalue enclosures for Hermitian pencils via complex moments"};
  app.require_subcommand(1);

  // gen
  auto *gen = app.add_subcommand("gen", "write generator matrices as Matrix Market files");
  std::string gen_kind;
  Eigen::Index gen_n = 0;
  double gen_variance = 0.0;
  std::uint64_t gen_seed = 0;
  double gen_b_last = 1.0;
  std::string gen_prefix;
  gen->add_option("kind", gen_kind, "mass-spring or pentadiag")
      ->required()
      ->check(CLI::IsMember({"mass-spring", "pentadiag"}));
  gen->add_option("--n", gen_n, "matrix order")->required();
  gen->add_option("--variance", gen_variance, "variance of the mass perturbation");
  gen->add_option("--seed", gen_seed, "seed of the mass perturbation");
  gen->add_option("--b-last", gen_b_last, "last diagonal entry of B (pentadiag)");
  gen->add_option("--prefix", gen_prefix, "output prefix (default: kind)");

  // check-pd
  auto *pd = app.add_subcommand("check-pd", "certified lower bound of lambda_min(B)");
  std::string pd_path;
  double pd_c = 0.99;
  pd->add_option("matrix", pd_path, "Matrix Market file")->required();
  pd->add_option("--c", pd_c, "reduction factor in (0,1)");

  // gap
  auto *gap = app.add_subcommand("gap", "certify the exclusion band 1 <= |lambda'| <= t");
  std::string gap_a, gap_b, gap_window;
  int gap_m = 1;
  std::optional<double> gap_target;
  gap->add_option("--a", gap_a, "A matrix")->required();
  gap->add_option("--b", gap_b, "B matrix")->required();
  gap->add_option("--window", gap_window, "a,b")->required();
  gap->add_option("--m", gap_m, "eigenvalues in the window")->required();
  gap->add_option("--target", gap_target, "upper end t of the band in scaled units");

  // verify
  auto *ver = app.add_subcommand("verify", "full verification run, JSON report on stdout");
  RunConfig cfg;
  std::string window_text, gap_mode = "auto", path_choice = "auto", out_path;
  std::optional<double> lambda_hat_user;
  ver->add_option("--a", cfg.a_path, "A matrix");
  ver->add_option("--b", cfg.b_path, "B matrix");
  ver->add_option("--generator", cfg.generator, "mass-spring or pentadiag instead of files");
  ver->add_option("--gen-n", cfg.gen_n, "generator order");
  ver->add_option("--gen-variance", cfg.gen_variance, "generator variance");
  ver->add_option("--gen-seed", cfg.gen_seed, "generator seed");
  ver->add_option("--gen-b-last", cfg.gen_b_last, "pentadiag last diagonal entry of B");
  ver->add_option("--window", window_text, "a,b")->required();
  ver->add_option("--m", cfg.window.m, "eigenvalues in the window")->required();
  ver->add_option("--L", cfg.L, "block width")->required();
  ver->add_option("--M", cfg.M, "moment count")->required();
  ver->add_option("--delta", cfg.delta, "quadrature tolerance");
  ver->add_option("--seed", cfg.seed, "seed of V");
  ver->add_option("--gap-mode", gap_mode, "auto | regularity-sweep | diagonal-perturbation | user-supplied")
      ->check(CLI::IsMember({"auto", "regularity-sweep", "diagonal-perturbation", "user-supplied"}));
  ver->add_option("--lambda-hat-hint", cfg.lambda_hat_hint, "estimate of |lambda_hat| (scaled)");
  ver->add_option("--gap-target", cfg.gap_target, "sweep target t (scaled)");
  ver->add_option("--lambda-hat-lower", lambda_hat_user, "trusted lower bound (user-supplied mode)");
  ver->add_option("--path", path_choice, "auto | fast-pd | general")
      ->check(CLI::IsMember({"auto", "fast-pd", "general"}));
  ver->add_option("--passes", cfg.correction_passes, "staggered correction passes (0..3)");
  ver->add_option("--rank-b", cfg.rank_b, "rank of B when not positive definite");
  ver->add_flag("--conjugate-symmetry", cfg.conjugate_symmetry, "solve half the nodes for real data");
  ver->add_option("--threads", cfg.threads, "worker threads (0: SSENCLOSE_THREADS or all cores)");
  ver->add_option("--output", out_path, "write the report here instead of stdout");

  auto *self = app.add_subcommand("selftest", "run built-in closed-form checks");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try
  {
    if (*gen)
    {
      const auto [a, b] = gen_kind == "mass-spring" ? gen_mass_spring(gen_n, gen_variance, gen_seed)
                                                    : gen_pentadiag(gen_n, gen_b_last);
      const std::string prefix = gen_prefix.empty() ? gen_kind : gen_prefix;
      write_matrix_market(prefix + "_A.mtx", a);
      write_matrix_market(prefix + "_B.mtx", b);
      std::cout << prefix << "_A.mtx\n" << prefix << "_B.mtx\n";
      return 0;
    }
    if (*pd)
    {
      const HermitianOperator b = load_matrix_market(pd_path);
      try
      {
        const double t = lambda_min_lower_bound(b, pd_c);
        std::cout << "lambda_min(B) > " << decimal_down(t) << '\n';
        return 0;
      }
      catch (const CertificateError &e)
      {
        std::cerr << "not certified: " << e.what() << '\n';
        return kExitCertificate;
      }
    }
    if (*gap)
    {
      SpectralWindow w;
      std::tie(w.a, w.b) = parse_window(gap_window);
      w.m = gap_m;
      w.validate();
      const HermitianOperator a = load_matrix_market(gap_a);
      const HermitianOperator b = load_matrix_market(gap_b);
      const ScaledPencil p(a, b, w);
      try
      {
        const double t = gap_target ? *gap_target : 0.99 * estimate_outside_modulus(p, gap_m);
        const GapCertificate g = verify_outside_gap(p, t);
        std::cout << "|lambda_hat| (scaled) > " << decimal_down(g.lambda_hat_lower) << " ("
                  << g.pieces << " pieces)\n";
        return 0;
      }
      catch (const CertificateError &e)
      {
        std::cerr << "not certified: " << e.what() << '\n';
        return kExitCertificate;
      }
    }
    if (*ver)
    {
      std::tie(cfg.window.a, cfg.window.b) = parse_window(window_text);
      cfg.gap_mode = parse_gap_mode(gap_mode);
      cfg.path = parse_path(path_choice);
      cfg.lambda_hat_user = lambda_hat_user;
      const RunResult r = run_verification(cfg);
      if (out_path.empty())
      {
        write_report(std::cout, r.report);
      }
      else
      {
        write_report(out_path, r.report);
      }
      if (!r.report.error.empty())
      {
        std::cerr << r.report.error << '\n';
      }
      return r.exit_code;
    }
    if (*self)
    {
      return run_selftest();
    }
  }
  catch (const std::invalid_argument &e)
  {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
