// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include "ssenclose/hermitian_operator.hpp"
#include "ssenclose/interval.hpp"
#include "ssenclose/interval_matrix.hpp"

namespace ssenclose
{

// Target interval [a, b] with center gamma = (a+b)/2, radius rho = (b-a)/2
// and the number m of eigenvalues it is expected to hold.
struct SpectralWindow
{
  double a = -1.0;
  double b = 1.0;
  int m = 1;

  void validate() const;
  RealInterval gamma() const;
  RealInterval rho() const;

  // Interval of lambda' = (lambda - gamma) / rho.
  RealInterval to_scaled(const RealInterval &lambda) const;
  // Interval of rho * lambda' + gamma.
  RealInterval from_scaled(const RealInterval &lambda_scaled) const;
};

// The pencil (A', B) with A' = (A - gamma B) / rho enclosed entrywise, stored
// on the union sparsity pattern of A and B in compressed row form. B is kept
// exactly. After scaling the target window becomes [-1, 1].
class ScaledPencil
{
public:
  ScaledPencil(const HermitianOperator &a, const HermitianOperator &b,
               const SpectralWindow &window);

  Eigen::Index n() const { return n_; }
  bool is_real() const { return real_; }
  const SpectralWindow &window() const { return window_; }

  // Compressed row pattern: entries k in [row_ptr[i], row_ptr[i+1]).
  const std::vector<Eigen::Index> &row_ptr() const { return row_ptr_; }
  const std::vector<Eigen::Index> &col() const { return col_; }
  const std::vector<ComplexInterval> &a_scaled() const { return a_; }
  const std::vector<std::complex<double>> &b() const { return b_; }

  const HermitianOperator &b_operator() const { return b_op_; }

  // Interval entries of z B - A' on the pattern.
  std::vector<ComplexInterval> shifted_entries(const ComplexInterval &z) const;

  // z B - mid(A') as a floating sparse matrix, for factorization.
  SparseMatrixC shifted_midpoint(std::complex<double> z) const;

  // Dense interval A' and dense B.
  IntervalMatrix dense_a_scaled() const;
  Eigen::MatrixXcd dense_b() const;

  // Dense interval z B - A'.
  IntervalMatrix dense_shifted(const ComplexInterval &z) const;

  // Interval product B V for a point block V.
  IntervalMatrix b_times(const Eigen::MatrixXcd &v) const;

private:
  Eigen::Index n_ = 0;
  bool real_ = true;
  SpectralWindow window_;
  std::vector<Eigen::Index> row_ptr_;
  std::vector<Eigen::Index> col_;
  std::vector<ComplexInterval> a_;
  std::vector<std::complex<double>> b_;
  HermitianOperator b_op_;
};

// Interval y = M x for M given by entries on the pencil pattern and a point
// vector x. Rows accumulate in increasing column order.
IntervalVector pattern_matvec(const ScaledPencil &p, const std::vector<ComplexInterval> &entries,
                              const Eigen::VectorXcd &x);

}  // namespace ssenclose
