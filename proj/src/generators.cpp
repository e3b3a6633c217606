// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ssenclose/generators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ssenclose/random.hpp"

namespace ssenclose
{

std::pair<HermitianOperator, HermitianOperator> gen_mass_spring(Eigen::Index n, double variance,
                                                                std::uint64_t seed)
{
  if (n < 2)
  {
    throw std::invalid_argument("gen_mass_spring: n must be at least 2");
  }
  if (!(variance >= 0.0) || !std::isfinite(variance))
  {
    throw std::invalid_argument("gen_mass_spring: variance must be finite and nonnegative");
  }
  std::vector<Triplet> a;
  a.reserve(static_cast<std::size_t>(3 * n));
  for (Eigen::Index i = 0; i < n; ++i)
  {
    if (i > 0)
    {
      a.emplace_back(i, i - 1, -1.0);
    }
    a.emplace_back(i, i, 2.0);
    if (i + 1 < n)
    {
      a.emplace_back(i, i + 1, -1.0);
    }
  }
  std::vector<Triplet> b;
  b.reserve(static_cast<std::size_t>(n));
  Rng rng(seed);
  const double sd = std::sqrt(variance);
  for (Eigen::Index i = 0; i < n; ++i)
  {
    const double g = rng.gaussian();
    b.emplace_back(i, i, variance == 0.0 ? 1.0 : 1.0 + sd * g);
  }
  return {HermitianOperator::from_triplets(n, a), HermitianOperator::from_triplets(n, b)};
}

std::pair<HermitianOperator, HermitianOperator> gen_pentadiag(Eigen::Index n, double b_last)
{
  if (n < 5)
  {
    throw std::invalid_argument("gen_pentadiag: n must be at least 5");
  }
  if (!(b_last >= 0.0) || !std::isfinite(b_last))
  {
    throw std::invalid_argument("gen_pentadiag: b_last must be finite and nonnegative");
  }
  constexpr double band[] = {1.0, 2.0, 3.0, 2.0, 1.0};
  std::vector<Triplet> a;
  a.reserve(static_cast<std::size_t>(5 * n));
  for (Eigen::Index i = 0; i < n; ++i)
  {
    for (int k = -2; k <= 2; ++k)
    {
      const Eigen::Index j = i + k;
      if (j >= 0 && j < n)
      {
        a.emplace_back(i, j, band[k + 2]);
      }
    }
  }
  std::vector<Triplet> b;
  for (Eigen::Index i = 0; i < n; ++i)
  {
    const double v = (i + 1 == n) ? b_last : 1.0;
    if (v != 0.0)
    {
      b.emplace_back(i, i, v);
    }
  }
  return {HermitianOperator::from_triplets(n, a), HermitianOperator::from_triplets(n, b)};
}

}  // namespace ssenclose
