// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ssenclose/contraction.hpp"

#include <limits>
#include <stdexcept>

#include <Eigen/LU>

namespace ssenclose
{

using namespace rounding;

namespace
{

constexpr double kEta = std::numeric_limits<double>::denorm_min();

double cabs_upper(std::complex<double> z)
{
  return ComplexInterval(z).mag();
}

}  // namespace

Eigen::MatrixXd abs_upper(const Eigen::MatrixXcd &m)
{
  Eigen::MatrixXd r(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
  {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
      r(i, j) = cabs_upper(m(i, j));
    }
  }
  return r;
}

Eigen::MatrixXd nonneg_product_upper(const Eigen::MatrixXd &p, const Eigen::MatrixXd &q)
{
  if (p.cols() != q.rows())
  {
    throw std::invalid_argument("nonneg_product_upper: inner dimensions disagree");
  }
  const double k = static_cast<double>(p.cols());
  Eigen::MatrixXd s = (p * q).eval();
  // For nonnegative terms fl(sum) >= (1 - gamma_k) sum in any order; each
  // product may additionally lose up to eta to underflow.
  const double g = gamma_up(k + 2.0);
  const double scale = div_up(1.0, sub_down(1.0, g));
  const double tiny = mul_up(k + 2.0, kEta);
  for (Eigen::Index j = 0; j < s.cols(); ++j)
  {
    for (Eigen::Index i = 0; i < s.rows(); ++i)
    {
      s(i, j) = add_up(mul_up(s(i, j), scale), tiny);
    }
  }
  return s;
}

MidRad to_mid_rad(const IntervalMatrix &m)
{
  return {midpoint(m), radius(m)};
}

ContractionBound certify_contraction(const MidRad &c)
{
  if (c.mid.rows() != c.mid.cols())
  {
    throw std::invalid_argument("certify_contraction: matrix is not square");
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(c.mid);
  Eigen::MatrixXcd r = lu.inverse();
  if (!r.allFinite())
  {
    ContractionBound out;
    out.r = r;
    out.alpha = std::numeric_limits<double>::infinity();
    out.row_sums = Eigen::VectorXd::Constant(c.mid.rows(), out.alpha);
    return out;
  }
  return certify_contraction(c, r);
}

ContractionBound certify_contraction(const MidRad &c, const Eigen::MatrixXcd &r)
{
  const Eigen::Index n = c.mid.rows();
  ContractionBound out;
  out.r = r;
  if (!r.allFinite())
  {
    out.alpha = std::numeric_limits<double>::infinity();
    out.row_sums = Eigen::VectorXd::Constant(n, out.alpha);
    return out;
  }
  const Eigen::MatrixXcd p = r * c.mid;
  const Eigen::MatrixXd abs_r = abs_upper(r);
  const Eigen::MatrixXd s1 = nonneg_product_upper(abs_r, abs_upper(c.mid));
  const Eigen::MatrixXd s2 = nonneg_product_upper(abs_r, c.rad);
  // Complex dot products of length n: each real part is a sum of 2n real
  // products, so |fl(R mid) - R mid| <= 2 gamma_{2n+4} |R||mid| + underflow.
  const double f = mul_up(2.0, gamma_up(2.0 * static_cast<double>(n) + 4.0));
  const double tiny = mul_up(4.0 * static_cast<double>(n) + 8.0, kEta);

  out.row_sums.resize(n);
  out.alpha = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
  {
    double row = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
    {
      const ComplexInterval e = ComplexInterval(i == j ? 1.0 : 0.0) - ComplexInterval(p(i, j));
      double v = add_up(e.mag(), add_up(mul_up(f, s1(i, j)), tiny));
      v = add_up(v, s2(i, j));
      row = add_up(row, v);
    }
    out.row_sums(i) = row;
    out.alpha = std::max(out.alpha, row);
  }
  out.contracts = out.alpha < 1.0;
  return out;
}

}  // namespace ssenclose
