// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ssenclose/interval.hpp"

#include <array>
#include <ostream>

namespace ssenclose
{

namespace
{

// Nonnegative base raised to k with directed rounding.
double pow_nonneg_up(double x, unsigned k)
{
  double result = 1.0;
  double base = x;
  while (k > 0)
  {
    if (k & 1U)
    {
      result = rounding::mul_up(result, base);
    }
    k >>= 1U;
    if (k > 0)
    {
      base = rounding::mul_up(base, base);
    }
  }
  return result;
}

double pow_nonneg_down(double x, unsigned k)
{
  double result = 1.0;
  double base = x;
  while (k > 0)
  {
    if (k & 1U)
    {
      result = rounding::mul_down(result, base);
    }
    k >>= 1U;
    if (k > 0)
    {
      base = rounding::mul_down(base, base);
    }
  }
  return result;
}

// libm sin/cos are within one ulp on the supported platforms; two steps
// outward cover that even across a binade boundary.
constexpr int kTrigInflationUlps = 2;

double widen_down(double x)
{
  for (int i = 0; i < kTrigInflationUlps; ++i)
  {
    x = rounding::next_down(x);
  }
  return x;
}

double widen_up(double x)
{
  for (int i = 0; i < kTrigInflationUlps; ++i)
  {
    x = rounding::next_up(x);
  }
  return x;
}

bool overlaps(const RealInterval &x, const RealInterval &y)
{
  return x.inf() <= y.sup() && y.inf() <= x.sup();
}

// Range of f over theta, where f has extrema at (offset + k) * pi with value
// (-1)^k. offset is 0.5 for sin and 0 for cos.
RealInterval monotone_branch_range(const RealInterval &theta, double (*f)(double), double offset)
{
  const double f_lo = f(theta.inf());
  const double f_hi = f(theta.sup());
  double lo = widen_down(std::min(f_lo, f_hi));
  double hi = widen_up(std::max(f_lo, f_hi));
  const RealInterval pi = pi_interval();
  for (int k = -3; k <= 3; ++k)
  {
    const RealInterval critical = RealInterval(offset + k) * pi;
    if (overlaps(theta, critical))
    {
      if (k % 2 == 0)
      {
        hi = 1.0;
      }
      else
      {
        lo = -1.0;
      }
    }
  }
  return RealInterval::from_ordered(std::max(lo, -1.0), std::min(hi, 1.0));
}

}  // namespace

RealInterval pow(const RealInterval &x, unsigned k)
{
  if (k == 0)
  {
    return RealInterval(1.0);
  }
  if (k % 2 == 0)
  {
    return RealInterval::from_ordered(pow_nonneg_down(x.mig(), k), pow_nonneg_up(x.mag(), k));
  }
  if (x.inf() >= 0.0)
  {
    return RealInterval::from_ordered(pow_nonneg_down(x.inf(), k), pow_nonneg_up(x.sup(), k));
  }
  if (x.sup() <= 0.0)
  {
    return RealInterval::from_ordered(-pow_nonneg_up(-x.inf(), k), -pow_nonneg_down(-x.sup(), k));
  }
  return RealInterval::from_ordered(-pow_nonneg_up(-x.inf(), k), pow_nonneg_up(x.sup(), k));
}

std::pair<RealInterval, RealInterval> sin_cos(const RealInterval &theta)
{
  const double limit = rounding::add_up(rounding::mul_up(2.0, kPiUpper), 1.0);
  if (!theta.is_finite() || theta.inf() < -limit || theta.sup() > limit)
  {
    throw std::domain_error("sin_cos: argument outside [-2pi-1, 2pi+1]");
  }
  if (theta.is_point() && theta.inf() == 0.0)
  {
    return {RealInterval(0.0), RealInterval(1.0)};
  }
  return {monotone_branch_range(theta, static_cast<double (*)(double)>(std::sin), 0.5),
          monotone_branch_range(theta, static_cast<double (*)(double)>(std::cos), 0.0)};
}

ComplexInterval unit_root(long long k, long long n)
{
  if (n <= 0)
  {
    throw std::invalid_argument("unit_root: n must be positive");
  }
  const long long period = 2 * n;
  k %= period;
  if (k < 0)
  {
    k += period;
  }
  // Exact quarter turns.
  if (k == 0)
  {
    return {RealInterval(1.0), RealInterval(0.0)};
  }
  if (k == n)
  {
    return {RealInterval(-1.0), RealInterval(0.0)};
  }
  if (2 * k == n)
  {
    return {RealInterval(0.0), RealInterval(1.0)};
  }
  if (2 * k == 3 * n)
  {
    return {RealInterval(0.0), RealInterval(-1.0)};
  }
  // Angles in (pi, 2pi) are evaluated as conjugates of (0, pi) so that
  // mirrored nodes are exact conjugates of each other.
  const bool lower_half = k > n;
  const long long kk = lower_half ? period - k : k;
  const RealInterval theta =
      RealInterval(static_cast<double>(kk)) * pi_interval() / RealInterval(static_cast<double>(n));
  const auto [s, c] = sin_cos(theta);
  const ComplexInterval z{c, s};
  return lower_half ? conj(z) : z;
}

std::ostream &operator<<(std::ostream &os, const RealInterval &x)
{
  const auto prec = os.precision(17);
  os << '[' << x.inf() << ", " << x.sup() << ']';
  os.precision(prec);
  return os;
}

std::ostream &operator<<(std::ostream &os, const ComplexInterval &z)
{
  return os << z.re() << " + i" << z.im();
}

}  // namespace ssenclose
