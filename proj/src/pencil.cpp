// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ssenclose/pencil.hpp"

#include <cmath>
#include <stdexcept>

namespace ssenclose
{

void SpectralWindow::validate() const
{
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
  {
    throw std::invalid_argument("window: need finite a < b");
  }
  if (m < 1)
  {
    throw std::invalid_argument("window: m must be positive");
  }
}

RealInterval SpectralWindow::gamma() const
{
  return (RealInterval(a) + RealInterval(b)) / RealInterval(2.0);
}

RealInterval SpectralWindow::rho() const
{
  return (RealInterval(b) - RealInterval(a)) / RealInterval(2.0);
}

RealInterval SpectralWindow::to_scaled(const RealInterval &lambda) const
{
  return (lambda - gamma()) / rho();
}

RealInterval SpectralWindow::from_scaled(const RealInterval &lambda_scaled) const
{
  return rho() * lambda_scaled + gamma();
}

ScaledPencil::ScaledPencil(const HermitianOperator &a, const HermitianOperator &b,
                           const SpectralWindow &window)
    : n_(a.n()), window_(window), b_op_(b)
{
  window.validate();
  if (a.n() != b.n())
  {
    throw std::invalid_argument("ScaledPencil: A and B differ in size");
  }
  real_ = a.is_real() && b.is_real();

  // Row-major copies give sorted column indices per row.
  using RowMajor = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;
  const RowMajor ar = a.sparse();
  const RowMajor br = b.sparse();
  const RealInterval g = window.gamma();
  const RealInterval r = window.rho();

  row_ptr_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (Eigen::Index i = 0; i < n_; ++i)
  {
    RowMajor::InnerIterator ia(ar, i);
    RowMajor::InnerIterator ib(br, i);
    while (ia || ib)
    {
      Eigen::Index j;
      std::complex<double> av(0.0), bv(0.0);
      if (ia && (!ib || ia.col() < ib.col()))
      {
        j = ia.col();
        av = ia.value();
        ++ia;
      }
      else if (ib && (!ia || ib.col() < ia.col()))
      {
        j = ib.col();
        bv = ib.value();
        ++ib;
      }
      else
      {
        j = ia.col();
        av = ia.value();
        bv = ib.value();
        ++ia;
        ++ib;
      }
      col_.push_back(j);
      b_.push_back(bv);
      a_.push_back((ComplexInterval(av) - g * ComplexInterval(bv)) / r);
    }
    row_ptr_[static_cast<std::size_t>(i) + 1] = static_cast<Eigen::Index>(col_.size());
  }
}

std::vector<ComplexInterval> ScaledPencil::shifted_entries(const ComplexInterval &z) const
{
  std::vector<ComplexInterval> e(a_.size());
  for (std::size_t k = 0; k < a_.size(); ++k)
  {
    e[k] = z * ComplexInterval(b_[k]) - a_[k];
  }
  return e;
}

SparseMatrixC ScaledPencil::shifted_midpoint(std::complex<double> z) const
{
  std::vector<Triplet> t;
  t.reserve(a_.size());
  for (Eigen::Index i = 0; i < n_; ++i)
  {
    for (Eigen::Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
    {
      t.emplace_back(i, col_[k], z * b_[k] - a_[k].mid());
    }
  }
  SparseMatrixC m(n_, n_);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

IntervalMatrix ScaledPencil::dense_a_scaled() const
{
  IntervalMatrix m = IntervalMatrix::Constant(n_, n_, ComplexInterval(0.0));
  for (Eigen::Index i = 0; i < n_; ++i)
  {
    for (Eigen::Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
    {
      m(i, col_[k]) = a_[k];
    }
  }
  return m;
}

Eigen::MatrixXcd ScaledPencil::dense_b() const
{
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_, n_);
  for (Eigen::Index i = 0; i < n_; ++i)
  {
    for (Eigen::Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
    {
      m(i, col_[k]) = b_[k];
    }
  }
  return m;
}

IntervalMatrix ScaledPencil::dense_shifted(const ComplexInterval &z) const
{
  IntervalMatrix m = IntervalMatrix::Constant(n_, n_, ComplexInterval(0.0));
  const auto e = shifted_entries(z);
  for (Eigen::Index i = 0; i < n_; ++i)
  {
    for (Eigen::Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
    {
      m(i, col_[k]) = e[k];
    }
  }
  return m;
}

IntervalMatrix ScaledPencil::b_times(const Eigen::MatrixXcd &v) const
{
  if (v.rows() != n_)
  {
    throw std::invalid_argument("b_times: dimension mismatch");
  }
  IntervalMatrix w(n_, v.cols());
  std::vector<ComplexInterval> be(b_.begin(), b_.end());
  for (Eigen::Index c = 0; c < v.cols(); ++c)
  {
    w.col(c) = pattern_matvec(*this, be, v.col(c));
  }
  return w;
}

IntervalVector pattern_matvec(const ScaledPencil &p, const std::vector<ComplexInterval> &entries,
                              const Eigen::VectorXcd &x)
{
  const auto &rp = p.row_ptr();
  const auto &col = p.col();
  IntervalVector y(p.n());
  for (Eigen::Index i = 0; i < p.n(); ++i)
  {
    ComplexInterval acc(0.0);
    for (Eigen::Index k = rp[i]; k < rp[i + 1]; ++k)
    {
      const std::complex<double> xv = x(col[k]);
      if (xv != std::complex<double>(0.0, 0.0))
      {
        acc += entries[k] * ComplexInterval(xv);
      }
    }
    y(i) = acc;
  }
  return y;
}

}  // namespace ssenclose
