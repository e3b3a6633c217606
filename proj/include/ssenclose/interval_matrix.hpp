// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "ssenclose/interval.hpp"

namespace Eigen
{

// ComplexInterval is stored in Eigen containers but is deliberately not
// flagged as complex: Eigen's conj() would be a no-op on it, so conjugate
// transposes go through ssenclose::conj_transpose instead.
template <>
struct NumTraits<ssenclose::ComplexInterval> : GenericNumTraits<ssenclose::ComplexInterval>
{
  using Real = ssenclose::ComplexInterval;
  using NonInteger = ssenclose::ComplexInterval;
  using Nested = ssenclose::ComplexInterval;
  using Literal = ssenclose::ComplexInterval;
  enum
  {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 32
  };
  static int digits10() { return 17; }
};

}  // namespace Eigen

namespace ssenclose
{

using IntervalMatrix = Eigen::Matrix<ComplexInterval, Eigen::Dynamic, Eigen::Dynamic>;
using IntervalVector = Eigen::Matrix<ComplexInterval, Eigen::Dynamic, 1>;

template <typename Derived>
IntervalMatrix to_interval(const Eigen::MatrixBase<Derived> &m)
{
  IntervalMatrix r(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
  {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
      r(i, j) = ComplexInterval(std::complex<double>(m(i, j)));
    }
  }
  return r;
}

Eigen::MatrixXcd midpoint(const IntervalMatrix &m);

// Entrywise upper bounds on |x_ij - mid_ij| over all members.
Eigen::MatrixXd radius(const IntervalMatrix &m);

// Entrywise upper bounds on |x_ij| over all members.
Eigen::MatrixXd magnitude(const IntervalMatrix &m);

IntervalMatrix conj_transpose(const IntervalMatrix &m);

// Interval product with row-major accumulation: C(i,j) = sum_k A(i,k) B(k,j)
// summed in increasing k.
IntervalMatrix matmul(const IntervalMatrix &a, const IntervalMatrix &b);

IntervalMatrix operator*(const ComplexInterval &s, const IntervalMatrix &m);

// Upper bound on the Frobenius norm of every member.
double frob_norm_sup(const IntervalMatrix &m);

// Smallest Hermitian-consistent enclosure: entry (i,j) becomes the hull of
// m(i,j) and conj(m(j,i)), so the result equals its conjugate transpose.
IntervalMatrix hermitian_hull(const IntervalMatrix &m);

// Exact check that m(i,j) == conj(m(j,i)) for all i, j.
bool is_hermitian(const IntervalMatrix &m);

bool contains(const IntervalMatrix &m, const Eigen::MatrixXcd &x);

// Rigorous upper bound of the spectral norm of a nonnegative matrix, taken as
// min(sqrt(||P||_1 ||P||_inf), ||P||_F) evaluated with upward rounding.
double nonneg_norm2_upper(const Eigen::MatrixXd &p);

}  // namespace ssenclose
