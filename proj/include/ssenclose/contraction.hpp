// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "ssenclose/interval_matrix.hpp"

namespace ssenclose
{

// Entrywise upper bound of |z| for a floating complex matrix.
Eigen::MatrixXd abs_upper(const Eigen::MatrixXcd &m);

// Upper bound of the exact product P Q of two nonnegative matrices, from a
// floating GEMM inflated by its a-priori error bound.
Eigen::MatrixXd nonneg_product_upper(const Eigen::MatrixXd &p, const Eigen::MatrixXd &q);

// Midpoint-radius form of a dense interval matrix: every member C satisfies
// |C - mid| <= rad entrywise (complex modulus).
struct MidRad
{
  Eigen::MatrixXcd mid;
  Eigen::MatrixXd rad;
};

MidRad to_mid_rad(const IntervalMatrix &m);

// Result of certifying an approximate inverse R of every member of <mid, rad>.
struct ContractionBound
{
  Eigen::MatrixXcd r;          // approximate inverse of mid
  Eigen::VectorXd row_sums;    // upper bounds of the row sums of |I - R C|
  double alpha = 0.0;          // upper bound of ||I - R C||_inf over all members
  bool contracts = false;      // alpha < 1: every member is nonsingular
};

// Computes R = inv(mid) and bounds ||I - R C||_inf rigorously for all C in
// <mid, rad>. The floating product R mid is corrected by its a-priori
// rounding-error bound, so no interval matrix product is formed.
ContractionBound certify_contraction(const MidRad &c);

// Same bound for a given approximate inverse.
ContractionBound certify_contraction(const MidRad &c, const Eigen::MatrixXcd &r);

}  // namespace ssenclose
