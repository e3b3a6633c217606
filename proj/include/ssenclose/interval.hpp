// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <utility>

#include "ssenclose/rounding.hpp"

namespace ssenclose
{

// Closed real interval [inf, sup] with binary64 endpoints. All arithmetic is
// rounded outward so that x op y lies in X op Y for every x in X, y in Y.
class RealInterval
{
public:
  constexpr RealInterval() = default;
  constexpr RealInterval(double x) : lo_(x), hi_(x) {}  // NOLINT: point promotion
  RealInterval(double lo, double hi) : lo_(lo), hi_(hi)
  {
    if (!(lo <= hi))
    {
      throw std::invalid_argument("RealInterval: inf > sup or NaN endpoint");
    }
  }

  constexpr double inf() const { return lo_; }
  constexpr double sup() const { return hi_; }

  // Midpoint rounded to nearest; always inside the interval.
  double mid() const
  {
    if (lo_ == hi_)
    {
      return lo_;
    }
    const double m = 0.5 * lo_ + 0.5 * hi_;
    return std::clamp(m, lo_, hi_);
  }

  // Upper bound of max(|x - mid()|) over the interval.
  double rad() const
  {
    const double m = mid();
    return std::max(rounding::sub_up(hi_, m), rounding::sub_up(m, lo_));
  }

  double width() const { return rounding::sub_up(hi_, lo_); }

  // max |x| over the interval (exact).
  double mag() const { return std::max(std::abs(lo_), std::abs(hi_)); }

  // min |x| over the interval (exact).
  double mig() const
  {
    if (lo_ <= 0.0 && hi_ >= 0.0)
    {
      return 0.0;
    }
    return std::min(std::abs(lo_), std::abs(hi_));
  }

  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(const RealInterval &o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
  bool is_point() const { return lo_ == hi_; }
  bool is_finite() const { return std::isfinite(lo_) && std::isfinite(hi_); }

  RealInterval operator-() const { return from_ordered(-hi_, -lo_); }

  RealInterval &operator+=(const RealInterval &o);
  RealInterval &operator-=(const RealInterval &o);
  RealInterval &operator*=(const RealInterval &o);
  RealInterval &operator/=(const RealInterval &o);

  // Skips the ordering check; for results computed by the arithmetic below.
  static constexpr RealInterval from_ordered(double lo, double hi)
  {
    RealInterval r;
    r.lo_ = lo;
    r.hi_ = hi;
    return r;
  }

  friend bool operator==(const RealInterval &, const RealInterval &) = default;

private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

inline RealInterval operator+(const RealInterval &x, const RealInterval &y)
{
  return RealInterval::from_ordered(rounding::add_down(x.inf(), y.inf()),
                                    rounding::add_up(x.sup(), y.sup()));
}

inline RealInterval operator-(const RealInterval &x, const RealInterval &y)
{
  return RealInterval::from_ordered(rounding::sub_down(x.inf(), y.sup()),
                                    rounding::sub_up(x.sup(), y.inf()));
}

inline RealInterval operator*(const RealInterval &x, const RealInterval &y)
{
  using namespace rounding;
  const double a = x.inf(), b = x.sup(), c = y.inf(), d = y.sup();
  if (a == b && c == d)
  {
    return RealInterval::from_ordered(mul_down(a, c), mul_up(a, c));
  }
  if (a >= 0.0)
  {
    if (c >= 0.0)
    {
      return RealInterval::from_ordered(mul_down(a, c), mul_up(b, d));
    }
    if (d <= 0.0)
    {
      return RealInterval::from_ordered(mul_down(b, c), mul_up(a, d));
    }
    return RealInterval::from_ordered(mul_down(b, c), mul_up(b, d));
  }
  if (b <= 0.0)
  {
    if (c >= 0.0)
    {
      return RealInterval::from_ordered(mul_down(a, d), mul_up(b, c));
    }
    if (d <= 0.0)
    {
      return RealInterval::from_ordered(mul_down(b, d), mul_up(a, c));
    }
    return RealInterval::from_ordered(mul_down(a, d), mul_up(a, c));
  }
  // 0 in interior of x
  if (c >= 0.0)
  {
    return RealInterval::from_ordered(mul_down(a, d), mul_up(b, d));
  }
  if (d <= 0.0)
  {
    return RealInterval::from_ordered(mul_down(b, c), mul_up(a, c));
  }
  return RealInterval::from_ordered(std::min(mul_down(a, d), mul_down(b, c)),
                                    std::max(mul_up(a, c), mul_up(b, d)));
}

inline RealInterval operator/(const RealInterval &x, const RealInterval &y)
{
  using namespace rounding;
  if (y.contains_zero())
  {
    throw std::domain_error("RealInterval: division by an interval containing zero");
  }
  const double a = x.inf(), b = x.sup(), c = y.inf(), d = y.sup();
  if (c > 0.0)
  {
    if (a >= 0.0)
    {
      return RealInterval::from_ordered(div_down(a, d), div_up(b, c));
    }
    if (b <= 0.0)
    {
      return RealInterval::from_ordered(div_down(a, c), div_up(b, d));
    }
    return RealInterval::from_ordered(div_down(a, c), div_up(b, c));
  }
  // d < 0
  if (a >= 0.0)
  {
    return RealInterval::from_ordered(div_down(b, d), div_up(a, c));
  }
  if (b <= 0.0)
  {
    return RealInterval::from_ordered(div_down(b, c), div_up(a, d));
  }
  return RealInterval::from_ordered(div_down(b, d), div_up(a, d));
}

inline RealInterval &RealInterval::operator+=(const RealInterval &o) { return *this = *this + o; }
inline RealInterval &RealInterval::operator-=(const RealInterval &o) { return *this = *this - o; }
inline RealInterval &RealInterval::operator*=(const RealInterval &o) { return *this = *this * o; }
inline RealInterval &RealInterval::operator/=(const RealInterval &o) { return *this = *this / o; }

// x^2 as a nonnegative interval (tighter than x*x when 0 is inside x).
inline RealInterval sqr(const RealInterval &x)
{
  using namespace rounding;
  const double lo = x.mig();
  const double hi = x.mag();
  return RealInterval::from_ordered(mul_down(lo, lo), mul_up(hi, hi));
}

inline RealInterval sqrt(const RealInterval &x)
{
  if (x.inf() < 0.0)
  {
    throw std::domain_error("RealInterval: sqrt of negative values");
  }
  return RealInterval::from_ordered(rounding::sqrt_down(x.inf()), rounding::sqrt_up(x.sup()));
}

inline RealInterval abs(const RealInterval &x)
{
  return RealInterval::from_ordered(x.mig(), x.mag());
}

inline RealInterval hull(const RealInterval &x, const RealInterval &y)
{
  return RealInterval::from_ordered(std::min(x.inf(), y.inf()), std::max(x.sup(), y.sup()));
}

// Integer power by repeated squaring; sound for any sign of x.
RealInterval pow(const RealInterval &x, unsigned k);

// Hard-coded bracket of pi: 0x1.921fb54442d18p+1 < pi < 0x1.921fb54442d19p+1.
inline constexpr double kPiLower = 0x1.921fb54442d18p+1;
inline constexpr double kPiUpper = 0x1.921fb54442d19p+1;

inline RealInterval pi_interval()
{
  return RealInterval::from_ordered(kPiLower, kPiUpper);
}

// Enclosures of sin and cos over theta. Theta must lie in [-2pi-1, 2pi+1].
std::pair<RealInterval, RealInterval> sin_cos(const RealInterval &theta);

std::ostream &operator<<(std::ostream &os, const RealInterval &x);

// Rectangular complex interval re + i im.
class ComplexInterval
{
public:
  constexpr ComplexInterval() = default;
  constexpr ComplexInterval(double re) : re_(re), im_(0.0) {}  // NOLINT
  constexpr ComplexInterval(const RealInterval &re) : re_(re), im_(0.0) {}  // NOLINT
  constexpr ComplexInterval(const RealInterval &re, const RealInterval &im) : re_(re), im_(im) {}
  ComplexInterval(std::complex<double> z) : re_(z.real()), im_(z.imag()) {}  // NOLINT

  constexpr const RealInterval &re() const { return re_; }
  constexpr const RealInterval &im() const { return im_; }

  std::complex<double> mid() const { return {re_.mid(), im_.mid()}; }

  // Upper bound on |z| for all z in the rectangle.
  double mag() const
  {
    using namespace rounding;
    const double r = re_.mag();
    const double i = im_.mag();
    if (i == 0.0)
    {
      return r;
    }
    if (r == 0.0)
    {
      return i;
    }
    return sqrt_up(add_up(mul_up(r, r), mul_up(i, i)));
  }

  // Upper bound on |z - mid()| for all z in the rectangle.
  double rad() const
  {
    using namespace rounding;
    const double r = re_.rad();
    const double i = im_.rad();
    if (i == 0.0)
    {
      return r;
    }
    if (r == 0.0)
    {
      return i;
    }
    return sqrt_up(add_up(mul_up(r, r), mul_up(i, i)));
  }

  bool contains(std::complex<double> z) const
  {
    return re_.contains(z.real()) && im_.contains(z.imag());
  }
  bool contains(const ComplexInterval &o) const
  {
    return re_.contains(o.re_) && im_.contains(o.im_);
  }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

  ComplexInterval operator-() const { return {-re_, -im_}; }

  ComplexInterval &operator+=(const ComplexInterval &o)
  {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  ComplexInterval &operator-=(const ComplexInterval &o)
  {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  ComplexInterval &operator*=(const ComplexInterval &o);
  ComplexInterval &operator/=(const ComplexInterval &o);

  friend bool operator==(const ComplexInterval &, const ComplexInterval &) = default;

private:
  RealInterval re_;
  RealInterval im_;
};

inline ComplexInterval operator+(const ComplexInterval &x, const ComplexInterval &y)
{
  return {x.re() + y.re(), x.im() + y.im()};
}

inline ComplexInterval operator-(const ComplexInterval &x, const ComplexInterval &y)
{
  return {x.re() - y.re(), x.im() - y.im()};
}

inline ComplexInterval operator*(const ComplexInterval &x, const ComplexInterval &y)
{
  return {x.re() * y.re() - x.im() * y.im(), x.re() * y.im() + x.im() * y.re()};
}

inline ComplexInterval operator*(const RealInterval &x, const ComplexInterval &y)
{
  return {x * y.re(), x * y.im()};
}

inline ComplexInterval operator*(const ComplexInterval &x, const RealInterval &y)
{
  return {x.re() * y, x.im() * y};
}

inline ComplexInterval operator/(const ComplexInterval &x, const RealInterval &y)
{
  return {x.re() / y, x.im() / y};
}

inline ComplexInterval conj(const ComplexInterval &x)
{
  return {x.re(), -x.im()};
}

// |y|^2 as an interval, used as the denominator of complex division.
inline RealInterval abs2(const ComplexInterval &y)
{
  return sqr(y.re()) + sqr(y.im());
}

inline ComplexInterval operator/(const ComplexInterval &x, const ComplexInterval &y)
{
  const RealInterval den = abs2(y);
  if (den.contains_zero())
  {
    throw std::domain_error("ComplexInterval: division by an interval containing zero");
  }
  return (x * conj(y)) / den;
}

inline ComplexInterval &ComplexInterval::operator*=(const ComplexInterval &o) { return *this = *this * o; }
inline ComplexInterval &ComplexInterval::operator/=(const ComplexInterval &o) { return *this = *this / o; }

// Upper bound on |z| over Z.
inline double mag(const ComplexInterval &z)
{
  return z.mag();
}

inline ComplexInterval hull(const ComplexInterval &x, const ComplexInterval &y)
{
  return {hull(x.re(), y.re()), hull(x.im(), y.im())};
}

// Interval widened by r in both the real and the imaginary direction.
inline ComplexInterval inflate(const ComplexInterval &z, double r)
{
  return {z.re() + RealInterval::from_ordered(-r, r), z.im() + RealInterval::from_ordered(-r, r)};
}

// Enclosure of exp(i pi k / n) for integers k, n > 0. The angle is reduced
// exactly in integer arithmetic before the trigonometric evaluation.
ComplexInterval unit_root(long long k, long long n);

std::ostream &operator<<(std::ostream &os, const ComplexInterval &z);

}  // namespace ssenclose
