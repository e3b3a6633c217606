// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>

#include <Eigen/Dense>

#include "ssenclose/interval_matrix.hpp"
#include "ssenclose/pencil.hpp"

namespace ssenclose
{

// (z B - A') Y = W for one quadrature node, with z an interval node and W an
// interval enclosure of B V.
struct ShiftedSystem
{
  ShiftedSystem(const ScaledPencil &pencil, const ComplexInterval &z, const IntervalMatrix &rhs);

  const ScaledPencil *pencil;
  ComplexInterval z;
  IntervalMatrix rhs;
  Eigen::MatrixXcd rhs_mid;
};

// Floating factorization of z_mid B - mid(A'): sparse LU, falling back to a
// dense partial-pivoting LU when the sparse factorization breaks down.
class NodeSolver
{
public:
  explicit NodeSolver(const ShiftedSystem &s);
  ~NodeSolver();
  NodeSolver(NodeSolver &&) noexcept;
  NodeSolver &operator=(NodeSolver &&) noexcept;

  Eigen::MatrixXcd solve(const Eigen::MatrixXcd &rhs) const;
  bool dense() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

enum class SolvePath
{
  FastPD,
  General
};

// Certified enclosure of the exact solution Y* of a shifted system.
// FastPD: ||Y*(:,c) - (y + d)(:,c)||_2 <= err2(c), hence every entry of that
//   column is within err2(c) of the center.
// General: |Y* - (y + d)| <= rad entrywise.
struct SolveCertificate
{
  SolvePath path = SolvePath::FastPD;
  bool verified = false;
  std::string message;
  Eigen::MatrixXcd y;
  Eigen::MatrixXcd d;  // staggered correction, zero columns when unused
  Eigen::VectorXd err2;
  Eigen::MatrixXd rad;

  Eigen::MatrixXcd center() const { return y + d; }
  // Uniform entrywise bound for column c around the center.
  double err_uniform(Eigen::Index c) const;
};

Eigen::MatrixXcd approx_solve(const ShiftedSystem &s);

// Interval enclosure of W - (z B - A')(Y + D); D may be empty.
IntervalMatrix residual_enclosure(const ShiftedSystem &s, const Eigen::MatrixXcd &y,
                                  const Eigen::MatrixXcd &d = Eigen::MatrixXcd());

// Upper bounds of the 2-norms of the columns of an interval matrix.
Eigen::VectorXd column_norm2_upper(const IntervalMatrix &r);

// Error bound from the residual: ||y - y*||_2 <= ||r||_2 / (|Im z| lambda_min(B))
// with the infimum of |Im z| over the node interval. After the first bound,
// up to `passes` staggered corrections are tried; a correction is kept for a
// column only if it lowers that column's bound. Throws std::invalid_argument
// when lambda_min_lower <= 0 or the node touches the real axis.
SolveCertificate enclose_fast_pd(const ShiftedSystem &s, const NodeSolver &solver,
                                 const Eigen::MatrixXcd &y, double lambda_min_lower,
                                 int passes = 1);

// One staggered correction step: d_new = d + solve(mid(residual of y + d)).
struct CorrectionStep
{
  Eigen::MatrixXcd d;
  Eigen::VectorXd bound_before;
  Eigen::VectorXd bound_after;
};
CorrectionStep staggered_correction(const ShiftedSystem &s, const NodeSolver &solver,
                                    const Eigen::MatrixXcd &y, const Eigen::MatrixXcd &d,
                                    double lambda_min_lower);

// Entrywise enclosure through a dense approximate inverse R of the midpoint:
// with alpha >= ||I - R C||_inf < 1 for all members C, the error e = y* - y
// satisfies |e| <= |R r| + (row sums of |I - R C|) ||R r||_inf / (1 - alpha).
// Also proves every member nonsingular. verified = false if alpha >= 1.
SolveCertificate enclose_general(const ShiftedSystem &s, const Eigen::MatrixXcd &y);

}  // namespace ssenclose
