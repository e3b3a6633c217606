// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace ssenclose
{

// Reproducible random source: std::mt19937_64 (fully specified by the C++
// standard) with hand-written transforms, because the distributions in
// <random> are implementation defined.
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

  // Standard normal via the Marsaglia polar method. The second variate of
  // each accepted pair is cached and returned by the next call.
  double gaussian()
  {
    if (has_spare_)
    {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0, v = 0.0, s = 0.0;
    do
    {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  // n x l matrix of standard normals filled column by column.
  Eigen::MatrixXd gaussian_matrix(Eigen::Index n, Eigen::Index l)
  {
    Eigen::MatrixXd v(n, l);
    for (Eigen::Index j = 0; j < l; ++j)
    {
      for (Eigen::Index i = 0; i < n; ++i)
      {
        v(i, j) = gaussian();
      }
    }
    return v;
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ssenclose
