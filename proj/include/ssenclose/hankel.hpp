// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ssenclose/interval.hpp"
#include "ssenclose/interval_matrix.hpp"
#include "ssenclose/pencil.hpp"

namespace ssenclose
{

enum class EigenStatus
{
  Verified,
  Failed
};

struct ApproxPencilEig
{
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // columns normalized so that X^H H X = I
};

// Dense numerical eigenpairs of K u = lambda H u for Hermitian K and
// Hermitian positive definite H. Throws std::runtime_error when H is not
// numerically positive definite or the solver fails.
ApproxPencilEig approx_pencil_eig(const Eigen::MatrixXcd &k_mid, const Eigen::MatrixXcd &h_mid);

// True only if every member of the Hermitian interval matrix H is positive
// definite.
bool verify_pencil_pd(const IntervalMatrix &h);

// Interval of pencil eigenvalues in scaled units together with the number
// of eigenvalues it holds.
struct PencilEnclosure
{
  RealInterval interval;
  int cluster_size = 1;
  int first_index = 0;  // 0-based position of the first approximation
  EigenStatus status = EigenStatus::Failed;
};

struct PencilEnclosureOptions
{
  double cluster_rel_tol = 1e-8;
};

// Verified enclosures of the eigenvalues of every member pencil
// (K, H), K in [k], H in [h], with [h] positive definite. Uses a congruence
// with the approximate eigenvectors X: inertia of X^H (K - s H) X counts the
// eigenvalues below s, and Weyl's bound on the off-diagonal part makes the
// count rigorous. A cluster whose bracketing cuts give a count difference
// equal to its size is verified. Clusters that cannot be separated from a
// neighbor are merged. Precondition failures (H or X^H H X not certified
// positive definite) return all slots as failed.
std::vector<PencilEnclosure> enclose_pencil_eigs(const IntervalMatrix &k, const IntervalMatrix &h,
                                                 const ApproxPencilEig &approx,
                                                 const PencilEnclosureOptions &opts = {});

// Number of eigenvalues below s for every member of the congruent pencil
// (k2, h2), or nullopt when Weyl's bound cannot fix the inertia of k2 - s h2.
std::optional<int> count_below(const IntervalMatrix &k2, const IntervalMatrix &h2, double s);

struct EigenEnclosure
{
  RealInterval interval;  // original problem units
  int cluster_size = 1;
  EigenStatus status = EigenStatus::Failed;
};

// lambda = rho lambda' + gamma with outward rounding; order preserved.
std::vector<EigenEnclosure> rescale(const std::vector<PencilEnclosure> &scaled,
                                    const SpectralWindow &window);

}  // namespace ssenclose
