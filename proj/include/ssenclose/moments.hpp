// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ssenclose/hermitian_operator.hpp"
#include "ssenclose/interval_matrix.hpp"
#include "ssenclose/linsolve.hpp"
#include "ssenclose/pencil.hpp"

namespace ssenclose
{

// All moment arithmetic is in scaled coordinates: the contour is the unit
// circle and nodes are z_j = exp(i theta_j), theta_j = (2j - 1) pi / N.
struct QuadratureNode
{
  long j = 0;  // 1-based
  RealInterval theta;
  ComplexInterval z;
};

struct QuadratureGrid
{
  long n_nodes = 0;
  std::vector<QuadratureNode> nodes;
};

// Interval enclosure of a moment block, stored as an interval matrix; the
// center/radius view is available through midpoint() and radius().
struct MomentEnclosure
{
  int p = 0;
  IntervalMatrix value;

  Eigen::MatrixXcd center() const { return midpoint(value); }
  Eigen::MatrixXd radius() const { return ssenclose::radius(value); }
};

struct HankelPencilEnclosure
{
  IntervalMatrix h_lt;  // blocks M_{i+j+1}, 0-based block indices
  IntervalMatrix h;     // blocks M_{i+j}
};

// Scaled pencil of a window (same as constructing ScaledPencil).
ScaledPencil scale_pencil(const HermitianOperator &a, const HermitianOperator &b,
                          const SpectralWindow &window);

// Smallest even N >= max(2M, log(delta / (c + delta)) / log(1 / lambda_hat))
// with c = (r - m) vbv lambda_hat^(2M - 1), capped at n_max. Throws
// std::invalid_argument if lambda_hat_lower <= 1 or delta <= 0.
long choose_N(double delta, double r_minus_m, double lambda_hat_lower, double vbv_norm_upper,
              int M, long n_max = 1L << 16);

QuadratureGrid build_grid(long n_nodes);

// Upper bound of every entry of the outside part of the p-th truncated
// moment: (r - m) lambda_hat^p q / (1 - q) vbv with q = lambda_hat^-N.
// Requires 0 <= p < N and lambda_hat_lower > 1.
double outer_bound(int p, double r_minus_m, double lambda_hat_lower, double vbv_norm_upper,
                   long n_nodes);

// Interval product B V for an exact sparse B.
IntervalMatrix operator_times(const HermitianOperator &b, const Eigen::MatrixXcd &v);

// Upper bound of ||V^H B V||_F.
double vbv_norm_upper(const Eigen::MatrixXcd &v, const HermitianOperator &b);

// Enclosure of W^H Y* for one node from its solve certificate, with W an
// interval enclosure of B V.
IntervalMatrix node_block(const IntervalMatrix &w, const SolveCertificate &cert);

// (1/N) sum_j z_j^(p+1) G_j in node order, inflated by outer in the real and
// imaginary part of every entry, then replaced by its Hermitian hull.
MomentEnclosure assemble_moment(int p, const QuadratureGrid &grid,
                                const std::vector<IntervalMatrix> &node_blocks, double outer);

// Convenience form taking the certificates and W directly.
MomentEnclosure assemble_moment(int p, const QuadratureGrid &grid,
                                const std::vector<SolveCertificate> &certs,
                                const IntervalMatrix &w, double outer);

// Block Hankel pair from moments 0..2M-1 (moments[p].p == p).
HankelPencilEnclosure build_hankel(const std::vector<MomentEnclosure> &moments, int M);

}  // namespace ssenclose
