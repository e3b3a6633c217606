// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace ssenclose
{

using SparseMatrixC = Eigen::SparseMatrix<std::complex<double>, Eigen::ColMajor>;
using Triplet = Eigen::Triplet<std::complex<double>>;

// Square Hermitian matrix with exact binary64 entries, stored sparse. Dense
// inputs are kept in the same format with explicit zeros dropped.
class HermitianOperator
{
public:
  HermitianOperator() = default;

  // Builds from a full entry list (both triangles). Throws
  // std::invalid_argument on duplicates, out-of-range indices, non-finite
  // values or a pair (i,j), (j,i) that is not an exact conjugate pair.
  static HermitianOperator from_triplets(Eigen::Index n, const std::vector<Triplet> &entries);

  // Builds from a Hermitian dense matrix; the same exactness checks apply.
  static HermitianOperator from_dense(const Eigen::MatrixXcd &a);

  static HermitianOperator identity(Eigen::Index n);

  Eigen::Index n() const { return mat_.rows(); }
  Eigen::Index nnz() const { return mat_.nonZeros(); }
  const SparseMatrixC &sparse() const { return mat_; }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(mat_); }

  // Full entry list in column-major order, both triangles.
  std::vector<Triplet> triplets() const;

  bool is_real() const;
  bool is_diagonal() const;

  // Real diagonal; imaginary parts of a Hermitian diagonal are zero.
  Eigen::VectorXd diagonal() const;

  // Largest number of stored entries in any row (equal to the column count
  // by symmetry of the pattern).
  Eigen::Index max_row_nnz() const;

private:
  SparseMatrixC mat_;
};

}  // namespace ssenclose
