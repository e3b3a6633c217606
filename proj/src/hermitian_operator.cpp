// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ssenclose/hermitian_operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ssenclose
{

namespace
{

bool finite(std::complex<double> z)
{
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

HermitianOperator HermitianOperator::from_triplets(Eigen::Index n,
                                                   const std::vector<Triplet> &entries)
{
  if (n <= 0)
  {
    throw std::invalid_argument("HermitianOperator: dimension must be positive");
  }
  for (const auto &t : entries)
  {
    if (t.row() < 0 || t.row() >= n || t.col() < 0 || t.col() >= n)
    {
      throw std::invalid_argument("HermitianOperator: index out of range");
    }
    if (!finite(t.value()))
    {
      throw std::invalid_argument("HermitianOperator: non-finite entry");
    }
  }
  HermitianOperator op;
  op.mat_.resize(n, n);
  bool duplicate = false;
  op.mat_.setFromTriplets(entries.begin(), entries.end(),
                          [&duplicate](const std::complex<double> &a, const std::complex<double> &)
                          {
                            duplicate = true;
                            return a;
                          });
  if (duplicate)
  {
    throw std::invalid_argument("HermitianOperator: duplicate entry");
  }
  op.mat_.prune(std::complex<double>(0.0, 0.0), 0.0);
  op.mat_.makeCompressed();

  // Exact conjugate symmetry, including the pattern.
  const SparseMatrixC adj = op.mat_.adjoint();
  if (adj.nonZeros() != op.mat_.nonZeros())
  {
    throw std::invalid_argument("HermitianOperator: matrix is not Hermitian");
  }
  for (Eigen::Index j = 0; j < n; ++j)
  {
    SparseMatrixC::InnerIterator a(op.mat_, j);
    SparseMatrixC::InnerIterator b(adj, j);
    for (; a && b; ++a, ++b)
    {
      if (a.row() != b.row() || a.value() != b.value())
      {
        throw std::invalid_argument("HermitianOperator: matrix is not Hermitian (entry " +
                                    std::to_string(a.row() + 1) + "," +
                                    std::to_string(j + 1) + ")");
      }
    }
    if (a || b)
    {
      throw std::invalid_argument("HermitianOperator: matrix is not Hermitian");
    }
  }
  return op;
}

HermitianOperator HermitianOperator::from_dense(const Eigen::MatrixXcd &a)
{
  if (a.rows() != a.cols())
  {
    throw std::invalid_argument("HermitianOperator: matrix is not square");
  }
  std::vector<Triplet> t;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
  {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
    {
      if (a(i, j) != std::complex<double>(0.0, 0.0) || !finite(a(i, j)))
      {
        t.emplace_back(i, j, a(i, j));
      }
    }
  }
  return from_triplets(a.rows(), t);
}

HermitianOperator HermitianOperator::identity(Eigen::Index n)
{
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
  {
    t.emplace_back(i, i, 1.0);
  }
  return from_triplets(n, t);
}

std::vector<Triplet> HermitianOperator::triplets() const
{
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(mat_.nonZeros()));
  for (Eigen::Index j = 0; j < mat_.outerSize(); ++j)
  {
    for (SparseMatrixC::InnerIterator it(mat_, j); it; ++it)
    {
      t.emplace_back(it.row(), it.col(), it.value());
    }
  }
  return t;
}

bool HermitianOperator::is_real() const
{
  const auto *v = mat_.valuePtr();
  return std::all_of(v, v + mat_.nonZeros(), [](const auto &z) { return z.imag() == 0.0; });
}

bool HermitianOperator::is_diagonal() const
{
  for (Eigen::Index j = 0; j < mat_.outerSize(); ++j)
  {
    for (SparseMatrixC::InnerIterator it(mat_, j); it; ++it)
    {
      if (it.row() != it.col())
      {
        return false;
      }
    }
  }
  return true;
}

Eigen::VectorXd HermitianOperator::diagonal() const
{
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n());
  for (Eigen::Index j = 0; j < mat_.outerSize(); ++j)
  {
    for (SparseMatrixC::InnerIterator it(mat_, j); it; ++it)
    {
      if (it.row() == it.col())
      {
        d(j) = it.value().real();
      }
    }
  }
  return d;
}

Eigen::Index HermitianOperator::max_row_nnz() const
{
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < mat_.outerSize(); ++j)
  {
    k = std::max<Eigen::Index>(k, mat_.outerIndexPtr()[j + 1] - mat_.outerIndexPtr()[j]);
  }
  return k;
}

}  // namespace ssenclose
