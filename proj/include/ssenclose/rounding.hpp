// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Directed rounding on binary64 without touching the FPU rounding mode.
//
// Every primitive computes the round-to-nearest result and then recovers the
// sign of the exact rounding error with an error-free transformation (TwoSum,
// FMA-based product/remainder). The result is moved one ulp outward only when
// the error points outward, so the primitives return exactly what the
// hardware would return under FE_UPWARD / FE_DOWNWARD. Where the error-free
// transformation is not exact (results near the underflow range) the result
// is nudged unconditionally, which is still sound.
//
// The library must be compiled with -ffp-contract=off so that the compiler
// does not fuse the expressions below.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace ssenclose::rounding
{

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kMax = std::numeric_limits<double>::max();

// Below this magnitude the FMA residual of a product or quotient may itself
// underflow, so exactness can no longer be decided from its sign.
inline constexpr double kExactThreshold = 0x1p-900;

inline double next_up(double x)
{
  if (std::isnan(x) || x == kInf)
  {
    return x;
  }
  if (x == 0.0)
  {
    return std::numeric_limits<double>::denorm_min();
  }
  auto bits = std::bit_cast<std::uint64_t>(x);
  bits = (x > 0.0) ? bits + 1 : bits - 1;
  return std::bit_cast<double>(bits);
}

inline double next_down(double x)
{
  return -next_up(-x);
}

inline double add_up(double a, double b)
{
  const double s = a + b;
  if (!std::isfinite(s))
  {
    return (s == -kInf && std::isfinite(a) && std::isfinite(b)) ? -kMax : s;
  }
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err > 0.0 ? next_up(s) : s;
}

inline double add_down(double a, double b)
{
  return -add_up(-a, -b);
}

inline double sub_up(double a, double b)
{
  return add_up(a, -b);
}

inline double sub_down(double a, double b)
{
  return add_down(a, -b);
}

inline double mul_up(double a, double b)
{
  const double p = a * b;
  if (!std::isfinite(p))
  {
    return (p == -kInf && std::isfinite(a) && std::isfinite(b)) ? -kMax : p;
  }
  if (a == 0.0 || b == 0.0)
  {
    return p;
  }
  if (std::abs(p) < kExactThreshold)
  {
    return next_up(p);
  }
  const double err = std::fma(a, b, -p);
  return err > 0.0 ? next_up(p) : p;
}

inline double mul_down(double a, double b)
{
  return -mul_up(-a, b);
}

inline double div_up(double a, double b)
{
  const double q = a / b;
  if (!std::isfinite(q))
  {
    return (q == -kInf && std::isfinite(a) && std::isfinite(b)) ? -kMax : q;
  }
  if (a == 0.0)
  {
    return q;
  }
  if (std::abs(q) < kExactThreshold || std::abs(a) < kExactThreshold)
  {
    return next_up(q);
  }
  // a - q*b is exact; sign(a/b - q) = sign(rem) * sign(b).
  const double rem = std::fma(-q, b, a);
  const bool above = (rem > 0.0 && b > 0.0) || (rem < 0.0 && b < 0.0);
  return above ? next_up(q) : q;
}

inline double div_down(double a, double b)
{
  return -div_up(-a, b);
}

inline double sqrt_up(double x)
{
  const double s = std::sqrt(x);
  if (!std::isfinite(s) || x == 0.0)
  {
    return s;
  }
  if (x < kExactThreshold)
  {
    return next_up(s);
  }
  const double rem = std::fma(-s, s, x);
  return rem > 0.0 ? next_up(s) : s;
}

inline double sqrt_down(double x)
{
  const double s = std::sqrt(x);
  if (!std::isfinite(s) || x == 0.0)
  {
    return s;
  }
  if (x < kExactThreshold)
  {
    return next_down(s);
  }
  const double rem = std::fma(-s, s, x);
  return rem < 0.0 ? next_down(s) : s;
}

// Unit roundoff and the classical gamma_k = k u / (1 - k u), rounded up.
inline constexpr double kUnitRoundoff = 0x1p-53;

inline double gamma_up(double k)
{
  const double ku = mul_up(k, kUnitRoundoff);
  return div_up(ku, sub_down(1.0, ku));
}

}  // namespace ssenclose::rounding
