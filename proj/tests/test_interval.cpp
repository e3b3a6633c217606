// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "ssenclose/interval.hpp"
#include "ssenclose/interval_matrix.hpp"
#include "ssenclose/rounding.hpp"

using namespace ssenclose;
using oracle::Real;

namespace
{

double random_double(std::mt19937_64 &g)
{
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-30, 30);
  return std::ldexp(mant(g), expo(g));
}

RealInterval random_interval(std::mt19937_64 &g)
{
  const double a = random_double(g);
  const double w = std::abs(random_double(g)) * 1e-3;
  return RealInterval(a, a + w);
}

Real sample(const RealInterval &x, double t)
{
  return Real(x.inf()) + (Real(x.sup()) - Real(x.inf())) * Real(t);
}

}  // namespace

TEST_CASE("addition of integer intervals is exact")
{
  const RealInterval s = RealInterval(1, 2) + RealInterval(3, 4);
  CHECK(s.inf() == 4.0);
  CHECK(s.sup() == 6.0);
}

TEST_CASE("product of symmetric unit intervals")
{
  const RealInterval p = RealInterval(-1, 1) * RealInterval(-1, 1);
  CHECK(p.inf() == -1.0);
  CHECK(p.sup() == 1.0);
}

TEST_CASE("0.1 + 0.2 encloses the exact sum within two ulps")
{
  const RealInterval s = RealInterval(0.1) + RealInterval(0.2);
  const Real exact = Real(0.1) + Real(0.2);
  CHECK(oracle::contains(s, exact));
  const double ulp = std::nextafter(0.3, 1.0) - 0.3;
  CHECK(s.width() <= 2 * ulp);
}

TEST_CASE("division by an interval containing zero is an error")
{
  CHECK_THROWS_AS(RealInterval(1, 2) / RealInterval(-1, 1), std::domain_error);
  CHECK_THROWS_AS(ComplexInterval(1.0) / ComplexInterval(RealInterval(-1, 1), RealInterval(-1, 1)),
                  std::domain_error);
}

TEST_CASE("inverted endpoints are rejected")
{
  CHECK_THROWS_AS(RealInterval(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(RealInterval(std::nan(""), 1), std::invalid_argument);
}

TEST_CASE("mag of complex intervals")
{
  const ComplexInterval z(RealInterval(3.0), RealInterval(4.0));
  CHECK(z.mag() >= 5.0);
  CHECK(z.mag() <= std::nextafter(5.0, 6.0));

  CHECK(ComplexInterval(RealInterval(-1, 2), RealInterval(0.0)).mag() == 2.0);

  const ComplexInterval w(RealInterval(0.1, 0.2), RealInterval(0.3, 0.4));
  const Real exact = boost::multiprecision::sqrt(Real(0.2) * Real(0.2) + Real(0.4) * Real(0.4));
  CHECK(Real(w.mag()) >= exact);
  CHECK(oracle::ulps_above(w.mag(), exact) <= 4.0);
}

TEST_CASE("sin_cos enclosures")
{
  const auto [s0, c0] = sin_cos(RealInterval(0.0));
  CHECK(s0.inf() == 0.0);
  CHECK(s0.sup() == 0.0);
  CHECK(c0.inf() == 1.0);
  CHECK(c0.sup() == 1.0);

  const RealInterval half_pi = pi_interval() / RealInterval(2.0);
  const auto [s1, c1] = sin_cos(half_pi);
  CHECK(s1.contains(1.0));
  CHECK(c1.contains(0.0));

  const RealInterval eighth = pi_interval() / RealInterval(8.0);
  const auto [s2, c2] = sin_cos(eighth);
  const Real t = oracle::pi() / 8;
  const Real es = boost::multiprecision::sin(t);
  const Real ec = boost::multiprecision::cos(t);
  CHECK(oracle::contains(s2, es));
  CHECK(oracle::contains(c2, ec));
  const double ulp_s = std::nextafter(static_cast<double>(es), 2.0) - static_cast<double>(es);
  const double ulp_c = std::nextafter(static_cast<double>(ec), 2.0) - static_cast<double>(ec);
  CHECK(s2.width() <= 4 * ulp_s);
  CHECK(c2.width() <= 4 * ulp_c);

  CHECK_THROWS_AS(sin_cos(RealInterval(100.0)), std::domain_error);
}

TEST_CASE("sin_cos width for narrow arguments")
{
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 2000; ++i)
  {
    const double a = u(g);
    const RealInterval th(a, a + std::ldexp(std::abs(u(g)), -24));
    const auto [s, c] = sin_cos(th);
    const double slack_s = 4 * (std::nextafter(s.mag(), 2.0) - s.mag());
    const double slack_c = 4 * (std::nextafter(c.mag(), 2.0) - c.mag());
    CHECK(s.width() <= th.width() + slack_s + 1e-300);
    CHECK(c.width() <= th.width() + slack_c + 1e-300);
  }
}

TEST_CASE("unit roots enclose exp(i pi k / n)")
{
  for (long long n : {1LL, 3LL, 4LL, 16LL, 54LL, 260LL})
  {
    for (long long k = -3 * n; k <= 3 * n; k += std::max(1LL, n / 7))
    {
      const ComplexInterval z = unit_root(k, n);
      const long long kr = ((k % (2 * n)) + 2 * n) % (2 * n);
      oracle::Cplx exact;
      if ((2 * kr) % n == 0)
      {
        // Quarter turns are exact; the extended sin/cos would leave ~1e-40 residue.
        const long long q = 2 * kr / n;
        exact = {Real(q == 0 ? 1 : q == 2 ? -1 : 0), Real(q == 1 ? 1 : q == 3 ? -1 : 0)};
      }
      else
      {
        const Real t = oracle::pi() * Real(kr) / Real(n);
        exact = {boost::multiprecision::cos(t), boost::multiprecision::sin(t)};
      }
      CHECK(oracle::contains(z, exact));
    }
  }
  const ComplexInterval z1 = unit_root(1, 4);
  const Real h = boost::multiprecision::sqrt(Real(2)) / 2;
  CHECK(oracle::contains(z1, {h, h}));
}

TEST_CASE("randomized containment of the real and complex operations")
{
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> t01(0.0, 1.0);
  for (int trial = 0; trial < 5000; ++trial)
  {
    const RealInterval x = random_interval(g);
    RealInterval y = random_interval(g);
    const Real xs = sample(x, t01(g));
    const Real ys = sample(y, t01(g));
    CHECK(oracle::contains(x + y, xs + ys));
    CHECK(oracle::contains(x - y, xs - ys));
    CHECK(oracle::contains(x * y, xs * ys));
    if (!y.contains_zero())
    {
      CHECK(oracle::contains(x / y, xs / ys));
    }
    const RealInterval ax = abs(x);
    CHECK(oracle::contains(sqrt(ax), boost::multiprecision::sqrt(boost::multiprecision::abs(xs))));

    const ComplexInterval zx(x, random_interval(g));
    const ComplexInterval zy(y, random_interval(g));
    const oracle::Cplx a{xs, sample(zx.im(), t01(g))};
    const oracle::Cplx b{ys, sample(zy.im(), t01(g))};
    CHECK(oracle::contains(zx + zy, {a.re + b.re, a.im + b.im}));
    CHECK(oracle::contains(zx * zy, {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}));
    CHECK(Real(zx.mag()) >= oracle::abs(a));
    if (!(zy.re().contains_zero() && zy.im().contains_zero()))
    {
      const Real d = b.re * b.re + b.im * b.im;
      CHECK(oracle::contains(zx / zy, {(a.re * b.re + a.im * b.im) / d,
                                       (a.im * b.re - a.re * b.im) / d}));
    }
  }
}

TEST_CASE("inclusion isotonicity")
{
  std::mt19937_64 g(3);
  for (int trial = 0; trial < 2000; ++trial)
  {
    const RealInterval x = random_interval(g);
    const RealInterval y = random_interval(g);
    const RealInterval wx(rounding::sub_down(x.inf(), 1e-3), rounding::add_up(x.sup(), 1e-3));
    CHECK((wx + y).contains(x + y));
    CHECK((wx * y).contains(x * y));
    CHECK((wx - y).contains(x - y));
    if (!y.contains_zero())
    {
      CHECK((wx / y).contains(x / y));
    }
  }
}

TEST_CASE("integer powers")
{
  CHECK(pow(RealInterval(2.0), 10).inf() == 1024.0);
  CHECK(pow(RealInterval(2.0), 10).sup() == 1024.0);
  const RealInterval p = pow(RealInterval(-2, 1), 3);
  CHECK(p.inf() <= -8.0);
  CHECK(p.sup() >= 1.0);
  const RealInterval q = pow(RealInterval(1.1), 37);
  CHECK(oracle::contains(q, boost::multiprecision::pow(Real(1.1), 37)));
  const RealInterval e = pow(RealInterval(-1, 2), 2);
  CHECK(e.inf() <= 0.0);
  CHECK(e.sup() >= 4.0);
}

TEST_CASE("interval matrix products")
{
  std::mt19937_64 g(5);
  std::normal_distribution<double> n01;
  Eigen::MatrixXcd x(3, 3);
  for (Eigen::Index i = 0; i < 9; ++i)
  {
    x(i) = {n01(g), n01(g)};
  }
  const IntervalMatrix ix = to_interval(x);
  const IntervalMatrix id = to_interval(Eigen::MatrixXcd::Identity(3, 3));
  CHECK(matmul(id, ix) == ix);

  const IntervalMatrix one_a = to_interval(Eigen::MatrixXcd::Constant(1, 1, {0.3, -0.7}));
  const IntervalMatrix one_b = to_interval(Eigen::MatrixXcd::Constant(1, 1, {1.1, 0.2}));
  CHECK(matmul(one_a, one_b)(0, 0) == one_a(0, 0) * one_b(0, 0));

  Eigen::MatrixXcd y(3, 3);
  for (Eigen::Index i = 0; i < 9; ++i)
  {
    y(i) = {n01(g), n01(g)};
  }
  const IntervalMatrix p = matmul(ix, to_interval(y));
  CHECK(oracle::contains(p, oracle::extract(oracle::product(x, y), 3, 3)));

  CHECK_THROWS(matmul(ix, to_interval(Eigen::MatrixXcd::Zero(2, 2))));
}

TEST_CASE("matmul width grows at most linearly in the inner dimension")
{
  std::mt19937_64 g(9);
  std::normal_distribution<double> n01;
  for (Eigen::Index k : {4, 16, 64, 256})
  {
    Eigen::MatrixXcd a(2, k), b(k, 2);
    for (Eigen::Index i = 0; i < a.size(); ++i)
    {
      a(i) = {n01(g), n01(g)};
    }
    for (Eigen::Index i = 0; i < b.size(); ++i)
    {
      b(i) = {n01(g), n01(g)};
    }
    const IntervalMatrix p = matmul(to_interval(a), to_interval(b));
    const double scale = a.cwiseAbs().maxCoeff() * b.cwiseAbs().maxCoeff();
    const double limit = 8.0 * static_cast<double>(k) * scale * 0x1p-52 * 4.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
    {
      CHECK(p(i).re().width() <= limit);
      CHECK(p(i).im().width() <= limit);
    }
  }
}

TEST_CASE("Frobenius norm upper bounds")
{
  const IntervalMatrix id = to_interval(Eigen::MatrixXcd::Identity(2, 2));
  const double f = frob_norm_sup(id);
  CHECK(f >= std::sqrt(2.0));
  CHECK(f <= std::nextafter(std::sqrt(2.0), 2.0));
  CHECK(frob_norm_sup(to_interval(Eigen::MatrixXcd::Zero(3, 3))) == 0.0);

  std::mt19937_64 g(13);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 50; ++trial)
  {
    Eigen::MatrixXcd a(4, 4);
    for (Eigen::Index i = 0; i < 16; ++i)
    {
      a(i) = {n01(g), n01(g)};
    }
    Real s = 0;
    for (Eigen::Index i = 0; i < 16; ++i)
    {
      s += Real(a(i).real()) * Real(a(i).real()) + Real(a(i).imag()) * Real(a(i).imag());
    }
    const Real exact = boost::multiprecision::sqrt(s);
    const double bound = frob_norm_sup(to_interval(a));
    CHECK(Real(bound) >= exact);
    CHECK(oracle::ulps_above(bound, exact) <= 8.0);
  }
}

TEST_CASE("Hermitian hull equals its conjugate transpose and contains the input")
{
  IntervalMatrix m(2, 2);
  m(0, 0) = ComplexInterval(RealInterval(1, 2), RealInterval(-0.5, 0.25));
  m(0, 1) = ComplexInterval(RealInterval(0.1, 0.3), RealInterval(0.2, 0.4));
  m(1, 0) = ComplexInterval(RealInterval(0.2, 0.5), RealInterval(-0.3, -0.1));
  m(1, 1) = ComplexInterval(RealInterval(3.0));
  const IntervalMatrix h = hermitian_hull(m);
  CHECK(is_hermitian(h));
  CHECK(h == conj_transpose(h));
  for (Eigen::Index i = 0; i < 4; ++i)
  {
    CHECK(h(i).contains(m(i)));
  }
}

TEST_CASE("spectral norm bound of nonnegative matrices")
{
  std::mt19937_64 g(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial)
  {
    Eigen::MatrixXd p(5, 5);
    for (Eigen::Index i = 0; i < 25; ++i)
    {
      p(i) = u(g);
    }
    oracle::MatR pr = p.cast<Real>();
    Eigen::SelfAdjointEigenSolver<oracle::MatR> es(pr.transpose() * pr, Eigen::EigenvaluesOnly);
    const Real norm2 = boost::multiprecision::sqrt(es.eigenvalues()(4));
    CHECK(Real(nonneg_norm2_upper(p)) >= norm2);
  }
}
