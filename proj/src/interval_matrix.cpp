// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ssenclose/interval_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace ssenclose
{

using namespace rounding;

Eigen::MatrixXcd midpoint(const IntervalMatrix &m)
{
  Eigen::MatrixXcd r(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
  {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
      r(i, j) = m(i, j).mid();
    }
  }
  return r;
}

Eigen::MatrixXd radius(const IntervalMatrix &m)
{
  Eigen::MatrixXd r(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
  {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
      r(i, j) = m(i, j).rad();
    }
  }
  return r;
}

Eigen::MatrixXd magnitude(const IntervalMatrix &m)
{
  Eigen::MatrixXd r(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
  {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
      r(i, j) = m(i, j).mag();
    }
  }
  return r;
}

IntervalMatrix conj_transpose(const IntervalMatrix &m)
{
  IntervalMatrix r(m.cols(), m.rows());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
  {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
      r(j, i) = conj(m(i, j));
    }
  }
  return r;
}

IntervalMatrix matmul(const IntervalMatrix &a, const IntervalMatrix &b)
{
  if (a.cols() != b.rows())
  {
    throw std::invalid_argument("matmul: inner dimensions disagree");
  }
  IntervalMatrix c(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
  {
    for (Eigen::Index j = 0; j < b.cols(); ++j)
    {
      ComplexInterval acc(0.0);
      for (Eigen::Index k = 0; k < a.cols(); ++k)
      {
        acc += a(i, k) * b(k, j);
      }
      c(i, j) = acc;
    }
  }
  return c;
}

IntervalMatrix operator*(const ComplexInterval &s, const IntervalMatrix &m)
{
  IntervalMatrix r(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
  {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
      r(i, j) = s * m(i, j);
    }
  }
  return r;
}

double frob_norm_sup(const IntervalMatrix &m)
{
  double acc = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
  {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
      const double re = m(i, j).re().mag();
      const double im = m(i, j).im().mag();
      acc = add_up(acc, add_up(mul_up(re, re), mul_up(im, im)));
    }
  }
  return sqrt_up(acc);
}

IntervalMatrix hermitian_hull(const IntervalMatrix &m)
{
  if (m.rows() != m.cols())
  {
    throw std::invalid_argument("hermitian_hull: matrix is not square");
  }
  IntervalMatrix r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
  {
    for (Eigen::Index j = i; j < m.cols(); ++j)
    {
      const ComplexInterval h = hull(m(i, j), conj(m(j, i)));
      r(i, j) = h;
      r(j, i) = conj(h);
    }
  }
  return r;
}

bool is_hermitian(const IntervalMatrix &m)
{
  if (m.rows() != m.cols())
  {
    return false;
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i)
  {
    for (Eigen::Index j = i; j < m.cols(); ++j)
    {
      if (!(m(i, j) == conj(m(j, i))))
      {
        return false;
      }
    }
  }
  return true;
}

bool contains(const IntervalMatrix &m, const Eigen::MatrixXcd &x)
{
  if (m.rows() != x.rows() || m.cols() != x.cols())
  {
    return false;
  }
  for (Eigen::Index j = 0; j < m.cols(); ++j)
  {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
      if (!m(i, j).contains(x(i, j)))
      {
        return false;
      }
    }
  }
  return true;
}

double nonneg_norm2_upper(const Eigen::MatrixXd &p)
{
  double row_max = 0.0;
  double col_max = 0.0;
  double frob = 0.0;
  for (Eigen::Index i = 0; i < p.rows(); ++i)
  {
    double s = 0.0;
    for (Eigen::Index j = 0; j < p.cols(); ++j)
    {
      s = add_up(s, p(i, j));
      frob = add_up(frob, mul_up(p(i, j), p(i, j)));
    }
    row_max = std::max(row_max, s);
  }
  for (Eigen::Index j = 0; j < p.cols(); ++j)
  {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.rows(); ++i)
    {
      s = add_up(s, p(i, j));
    }
    col_max = std::max(col_max, s);
  }
  return std::min(sqrt_up(mul_up(row_max, col_max)), sqrt_up(frob));
}

}  // namespace ssenclose
