// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pencils.hpp"
#include "solve_oracle.hpp"
#include "ssenclose/certificates.hpp"
#include "ssenclose/generators.hpp"
#include "ssenclose/linsolve.hpp"
#include "ssenclose/random.hpp"

using namespace ssenclose;
using oracle::CMat;
using oracle::MatR;
using oracle::Real;
using testing::certificate_contains;
using testing::oracle_solve;
using testing::shifted_embed;

namespace
{

constexpr double kEps = 0x1p-52;

const SpectralWindow kUnit{-1.0, 1.0, 1};

HermitianOperator op(const Eigen::MatrixXcd &m)
{
  return HermitianOperator::from_dense(m);
}

HermitianOperator op(const Eigen::MatrixXd &m)
{
  return HermitianOperator::from_dense(m.cast<std::complex<double>>());
}

Eigen::MatrixXcd random_block(Eigen::Index n, Eigen::Index l, std::uint64_t seed)
{
  Rng rng(seed);
  return rng.gaussian_matrix(n, l).cast<std::complex<double>>();
}

}  // namespace

TEST_CASE("approximate solve examples")
{
  const ScaledPencil p(op(Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(3, 3))), HermitianOperator::identity(3), kUnit);
  const Eigen::MatrixXcd e1 = Eigen::MatrixXcd::Identity(3, 1);
  const ShiftedSystem s(p, ComplexInterval(std::complex<double>(0.0, 1.0)), p.b_times(e1));
  const Eigen::MatrixXcd y = approx_solve(s);
  CHECK(std::abs(y(0, 0) - std::complex<double>(0.0, -1.0)) <= 4 * kEps);
  CHECK(std::abs(y(1, 0)) == 0.0);

  Eigen::MatrixXd two(1, 1);
  two(0, 0) = 2.0;
  const ScaledPencil p1(op(two), HermitianOperator::identity(1), kUnit);
  const ShiftedSystem s1(p1, ComplexInterval(std::complex<double>(2.0, 1.0)),
                         to_interval(Eigen::MatrixXcd::Ones(1, 1)));
  CHECK(std::abs(approx_solve(s1)(0, 0) - std::complex<double>(0.0, -1.0)) <= 4 * kEps);
}

TEST_CASE("approximate solve residual on mass-spring")
{
  const auto [a, b] = gen_mass_spring(32, 1e-4, 3);
  const SpectralWindow w{1.9, 2.1, 4};
  const ScaledPencil p(a, b, w);
  const Eigen::MatrixXcd v = random_block(32, 2, 9);
  const ComplexInterval z = unit_root(1, 64);
  const ShiftedSystem s(p, z, p.b_times(v));
  const Eigen::MatrixXcd y = approx_solve(s);
  // Residual in extended precision at the node midpoint.
  const MatR c = shifted_embed(z.mid(), a.dense(), b.dense(), w);
  const MatR r = oracle::product(b.dense(), v) - c * oracle::embed(y);
  const MatR rhs = oracle::product(b.dense(), v);
  CHECK(r.norm() <= Real(1e-10) * rhs.norm());
}

TEST_CASE("residual bound examples")
{
  Eigen::MatrixXd two(1, 1);
  two(0, 0) = 2.0;
  const ScaledPencil p1(op(two), HermitianOperator::identity(1), kUnit);
  const ShiftedSystem s1(p1, ComplexInterval(std::complex<double>(2.0, 1.0)),
                         to_interval(Eigen::MatrixXcd::Ones(1, 1)));
  const Eigen::MatrixXcd exact = Eigen::MatrixXcd::Constant(1, 1, std::complex<double>(0.0, -1.0));
  CHECK(column_norm2_upper(residual_enclosure(s1, exact))(0) <= 4 * kEps);

  // Zero approximation: the bound is an upper bound of ||B v||_2.
  std::mt19937_64 g(5);
  const auto pen = testing::spectrum_pencil(testing::uniform_spectrum(8, -2.0, 2.0, g), g, true);
  const ScaledPencil p(pen.a_op(), pen.b_op(), kUnit);
  const Eigen::MatrixXcd v = random_block(8, 1, 4);
  const ShiftedSystem s(p, unit_root(3, 16), p.b_times(v));
  const double zero_bound = column_norm2_upper(residual_enclosure(s, Eigen::MatrixXcd::Zero(8, 1)))(0);
  // The embedding repeats every entry once, doubling the squared norm.
  const Real bv = oracle::product(pen.b, v).norm() / boost::multiprecision::sqrt(Real(2));
  CHECK(Real(zero_bound) >= bv);
  CHECK(Real(zero_bound) <= bv * Real(1.0 + 1e-13));

  // Perturbation of 1e-8 along e1.
  const std::complex<double> zm = s.z.mid();
  const CMat ys = oracle_solve(zm, pen.a, pen.b, kUnit, v);
  const ShiftedSystem sp(p, ComplexInterval(zm), p.b_times(v));
  Eigen::MatrixXcd y(8, 1);
  for (Eigen::Index i = 0; i < 8; ++i)
  {
    y(i, 0) = {static_cast<double>(ys.re(i, 0)), static_cast<double>(ys.im(i, 0))};
  }
  y(0, 0) += 1e-8;
  const double bound = column_norm2_upper(residual_enclosure(sp, y))(0);
  const MatR c = shifted_embed(zm, pen.a, pen.b, kUnit);
  const Real ce1 = c.col(0).norm();
  const Real expect = Real(1e-8) * ce1;
  CHECK(Real(bound) <= 2 * expect);
  CHECK(Real(bound) >= expect / 2);
}

TEST_CASE("fast path examples")
{
  const ScaledPencil p(op(Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(4, 4))), HermitianOperator::identity(4), kUnit);
  const Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(4, 1);
  const ShiftedSystem s(p, ComplexInterval(std::complex<double>(0.0, 1.0)), p.b_times(v));
  const NodeSolver solver(s);
  const Eigen::MatrixXcd y = approx_solve(s);
  const SolveCertificate cert = enclose_fast_pd(s, solver, y, 1.0, 1);
  CHECK(cert.verified);
  CHECK(cert.err_uniform(0) <= 4 * kEps);

  CHECK_THROWS_AS(enclose_fast_pd(s, solver, y, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(enclose_fast_pd(s, solver, y, -1.0, 1), std::invalid_argument);
}

TEST_CASE("fast path bound formula at the first node of N = 8")
{
  // B = I, A diagonal; residual norm about 0.9e-10, lambda_min lower 0.99.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(5, 5);
  a.diagonal() << -3.0, -0.5, 0.25, 1.5, 4.0;
  const ScaledPencil p(op(a), HermitianOperator::identity(5), kUnit);
  const ComplexInterval z = unit_root(1, 8);
  REQUIRE(z.im().inf() >= 0.38);
  const Eigen::MatrixXcd v = random_block(5, 1, 11);
  const ShiftedSystem s(p, z, p.b_times(v));
  const NodeSolver solver(s);
  Eigen::MatrixXcd y = approx_solve(s);
  // (z - a_0) scales the first component of the residual.
  y(0, 0) += 0.9e-10 / std::abs(z.mid() - a(0, 0));
  const SolveCertificate cert = enclose_fast_pd(s, solver, y, 0.99, 0);
  const double r = column_norm2_upper(residual_enclosure(s, y))(0);
  REQUIRE(r <= 1e-10);
  CHECK(cert.err2(0) <= 2.66e-10);
  // Direct evaluation of r / (inf|Im z| * 0.99).
  const double formula = r / (z.im().inf() * 0.99);
  CHECK(cert.err2(0) >= formula * (1 - 1e-12));
  CHECK(cert.err2(0) <= formula * (1 + 1e-12));
}

TEST_CASE("operator bound behind the fast path")
{
  std::mt19937_64 g(77);
  for (int trial = 0; trial < 100; ++trial)
  {
    const Eigen::Index n = 1 + trial % 16;
    const auto pen = testing::spectrum_pencil(testing::uniform_spectrum(n, -4.0, 4.0, g), g, trial % 2 == 0);
    const long long nn = 8 << (trial % 4);
    const ComplexInterval z = unit_root(2 * (trial % (nn / 2)) + 1, nn);
    const MatR c = shifted_embed(z.mid(), pen.a, pen.b, kUnit);
    Eigen::SelfAdjointEigenSolver<MatR> es(oracle::embed(pen.b), Eigen::EigenvaluesOnly);
    const Real lmin = es.eigenvalues()(0);
    REQUIRE(lmin > 0);
    // ||C^{-1}||_2 <= 1 / (|Im z| lambda_min(B)), i.e. sigma_min(C) >= |Im z| lambda_min(B).
    CHECK(oracle::sigma_min(c) >= boost::multiprecision::abs(Real(z.mid().imag())) * lmin * Real(1 - 1e-25));
  }
}

TEST_CASE("fast path contains the oracle solution on random SPD pencils")
{
  std::mt19937_64 g(1234);
  for (int trial = 0; trial < 100; ++trial)
  {
    const Eigen::Index n = 1 + trial % 16;
    const auto pen = testing::spectrum_pencil(testing::uniform_spectrum(n, -3.0, 3.0, g), g, trial % 2 == 1);
    const ScaledPencil p(pen.a_op(), pen.b_op(), kUnit);
    const double lmin = lambda_min_lower_bound(pen.b_op(), 0.99);
    const long long nn = 16;
    const ComplexInterval z = unit_root(2 * (trial % 8) + 1, nn);
    const Eigen::MatrixXcd v = random_block(n, 2, static_cast<std::uint64_t>(trial));
    // Point node so the oracle solves the same system.
    const ShiftedSystem s(p, ComplexInterval(z.mid()), p.b_times(v));
    const NodeSolver solver(s);
    const SolveCertificate cert = enclose_fast_pd(s, solver, approx_solve(s), lmin, 1);
    REQUIRE(cert.verified);
    CHECK(certificate_contains(cert, oracle_solve(z.mid(), pen.a, pen.b, kUnit, v)));
  }
}

TEST_CASE("interval node: the certificate covers every member")
{
  // The enclosure holds for the midpoint and both corner members of z.
  std::mt19937_64 g(55);
  const auto pen = testing::spectrum_pencil(testing::uniform_spectrum(6, -2.0, 2.0, g), g, true);
  const ScaledPencil p(pen.a_op(), pen.b_op(), kUnit);
  const ComplexInterval z = inflate(unit_root(5, 32), 1e-13);
  const Eigen::MatrixXcd v = random_block(6, 1, 2);
  const ShiftedSystem s(p, z, p.b_times(v));
  const NodeSolver solver(s);
  const SolveCertificate fast = enclose_fast_pd(s, solver, approx_solve(s), 0.5 * lambda_min_lower_bound(pen.b_op()), 1);
  const SolveCertificate gen = enclose_general(s, approx_solve(s));
  REQUIRE(gen.verified);
  for (std::complex<double> member : {z.mid(), std::complex<double>(z.re().inf(), z.im().inf()),
                                      std::complex<double>(z.re().sup(), z.im().sup())})
  {
    const CMat exact = oracle_solve(member, pen.a, pen.b, kUnit, v);
    CHECK(certificate_contains(fast, exact));
    CHECK(certificate_contains(gen, exact));
  }
}

TEST_CASE("staggered correction")
{
  std::mt19937_64 g(8);
  const auto pen = testing::spectrum_pencil(testing::uniform_spectrum(8, -2.0, 2.0, g), g, false);
  const ScaledPencil p(pen.a_op(), pen.b_op(), kUnit);
  const double lmin = lambda_min_lower_bound(pen.b_op());
  const Eigen::MatrixXcd v = random_block(8, 2, 3);
  const ShiftedSystem s(p, unit_root(1, 16), p.b_times(v));
  const NodeSolver solver(s);
  const Eigen::MatrixXcd y = approx_solve(s);
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(8, 2);

  const CorrectionStep exact = staggered_correction(s, solver, y, zero, lmin);
  for (Eigen::Index c = 0; c < 2; ++c)
  {
    CHECK(exact.d.col(c).norm() <= 1e-12 * y.col(c).norm());
    CHECK(exact.bound_after(c) <= 2 * exact.bound_before(c));
  }

  Eigen::MatrixXcd yp = y;
  yp(0, 0) += 1e-6;
  yp(3, 1) -= std::complex<double>(0.0, 1e-6);
  const CorrectionStep step = staggered_correction(s, solver, yp, zero, lmin);
  for (Eigen::Index c = 0; c < 2; ++c)
  {
    CHECK(step.bound_after(c) < step.bound_before(c));
  }

  // The reported bound is the minimum of the pre- and post-correction bounds.
  const SolveCertificate cert = enclose_fast_pd(s, solver, yp, lmin, 1);
  for (Eigen::Index c = 0; c < 2; ++c)
  {
    CHECK(cert.err2(c) <= step.bound_before(c));
    CHECK(cert.err2(c) <= step.bound_after(c));
  }
  const CMat ys = oracle_solve(s.z.mid(), pen.a, pen.b, kUnit, v);
  const ShiftedSystem pt(p, ComplexInterval(s.z.mid()), p.b_times(v));
  const SolveCertificate cert_pt = enclose_fast_pd(pt, solver, yp, lmin, 3);
  CHECK(certificate_contains(cert_pt, ys));
  // Never worse than no correction.
  const SolveCertificate none = enclose_fast_pd(s, solver, yp, lmin, 0);
  CHECK((cert.err2.array() <= none.err2.array()).all());
}

TEST_CASE("general path examples")
{
  Eigen::MatrixXd two(1, 1);
  two(0, 0) = 2.0;
  const ScaledPencil p1(op(two), HermitianOperator::identity(1), kUnit);
  const ShiftedSystem s1(p1, ComplexInterval(std::complex<double>(2.0, 1.0)),
                         to_interval(Eigen::MatrixXcd::Ones(1, 1)));
  const SolveCertificate c1 = enclose_general(s1, approx_solve(s1));
  REQUIRE(c1.verified);
  const std::complex<double> ctr = c1.center()(0, 0);
  CHECK(std::abs(ctr.real()) <= c1.rad(0, 0));
  CHECK(std::abs(ctr.imag() + 1.0) <= c1.rad(0, 0));
  CHECK(2 * c1.rad(0, 0) <= 8 * kEps);

  // Singular members: z B - A = diag(z - 1, 0) for every z.
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 1.0;
  const ScaledPencil ps(op(d), op(d), kUnit);
  const ShiftedSystem ss(ps, ComplexInterval(std::complex<double>(0.0, 1.0)),
                         to_interval(Eigen::MatrixXcd::Ones(2, 1)));
  const SolveCertificate cs = enclose_general(ss, Eigen::MatrixXcd::Zero(2, 1));
  CHECK_FALSE(cs.verified);
}

TEST_CASE("general path on the pentadiagonal example with singular B")
{
  const auto [a, b] = gen_pentadiag(100, 0.0);
  const SpectralWindow w{0.95, 1.05, 6};
  const ScaledPencil p(a, b, w);
  const Eigen::MatrixXcd v = random_block(100, 3, 1);
  for (long long j : {1LL, 37LL, 74LL})
  {
    const ComplexInterval z = unit_root(2 * j - 1, 148);
    const ShiftedSystem s(p, z, p.b_times(v));
    const SolveCertificate cert = enclose_general(s, approx_solve(s));
    REQUIRE(cert.verified);
    // The exact A' and the node midpoint are members of the enclosed family.
    CHECK(certificate_contains(cert, oracle_solve(z.mid(), a.dense(), b.dense(), w, v)));
  }
}

TEST_CASE("both paths contain the oracle solution over randomized trials")
{
  std::mt19937_64 g(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int fast = 0, general = 0;
  for (int trial = 0; trial < 1000; ++trial)
  {
    const Eigen::Index n = 1 + trial % 12;
    const auto pen = testing::spectrum_pencil(testing::uniform_spectrum(n, -5.0, 5.0, g), g, trial % 2 == 0, 0.5);
    const double ca = 4.0 * u(g) - 2.0, rho = 0.1 + u(g);
    const SpectralWindow w{ca - rho, ca + rho, 1};
    const ScaledPencil p(pen.a_op(), pen.b_op(), w);
    const long long nn = 4 << (trial % 5);
    const ComplexInterval z = unit_root(2 * (trial % (nn / 2)) + 1, nn);
    const Eigen::MatrixXcd v = random_block(n, 1 + trial % 3, static_cast<std::uint64_t>(trial));
    const ShiftedSystem s(p, z, p.b_times(v));
    const Eigen::MatrixXcd y = approx_solve(s);
    const CMat exact = oracle_solve(z.mid(), pen.a, pen.b, w, v);
    if (trial % 2 == 0)
    {
      const NodeSolver solver(s);
      const SolveCertificate cert = enclose_fast_pd(s, solver, y, lambda_min_lower_bound(pen.b_op()), 1);
      REQUIRE(cert.verified);
      CHECK(certificate_contains(cert, exact));
      ++fast;
    }
    else
    {
      const SolveCertificate cert = enclose_general(s, y);
      if (cert.verified)
      {
        CHECK(certificate_contains(cert, exact));
        ++general;
      }
    }
  }
  CHECK(fast == 500);
  CHECK(general >= 490);
}
