// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ssenclose/hermitian_operator.hpp"
#include "ssenclose/interval_matrix.hpp"
#include "ssenclose/pencil.hpp"

namespace ssenclose
{

// A required certificate could not be established.
class CertificateError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Failure of the exclusion-band check, naming the sub-interval of shifts
// that could not be certified.
class GapError : public CertificateError
{
public:
  GapError(const std::string &what, double lo, double hi)
      : CertificateError(what), lo_(lo), hi_(hi)
  {
  }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

private:
  double lo_;
  double hi_;
};

struct PDCertificate
{
  double shift = 0.0;
  bool verified = false;
};

// True only if every member of H minus shift*I is Hermitian positive
// definite. Floating Cholesky of mid(H) - (tau + sigma) I where tau bounds
// ||rad(H)||_2 + shift and sigma bounds the backward error of the
// factorization. False is inconclusive. Throws std::invalid_argument if H is
// not exactly conjugate-symmetric.
bool verify_positive_definite(const IntervalMatrix &h, double shift = 0.0);

// Same certificate for an exact sparse operator, using a sparse Cholesky.
bool verify_positive_definite(const HermitianOperator &b, double shift = 0.0);

// Sparse interval variant: members lie within rad_norm2 (spectral norm) of
// the exactly Hermitian midpoint.
bool verify_positive_definite(const SparseMatrixC &mid, double rad_norm2, double shift);

// Numerical estimate of the smallest eigenvalue (no rigor).
double lambda_min_estimate(const HermitianOperator &b);

// Certified t < lambda_min(B): t = c^k * estimate for the first k = 1..8 that
// passes verify_positive_definite(B, t). Throws CertificateError otherwise.
double lambda_min_lower_bound(const HermitianOperator &b, double c = 0.99);

struct GapCertificate
{
  double lambda_hat_lower = 1.0;  // no scaled eigenvalue has modulus in [1, this]
  std::string method;
  double estimate = 0.0;          // numerical |lambda_hat| used to pick the target, 0 if none
  int pieces = 0;                 // sub-intervals certified
};

// Certifies that A' - t B is nonsingular for every t with 1 <= |t| <= t_hi,
// by covering [1, t_hi] and [-t_hi, -1] with sub-intervals and proving
// ||I - R (A' - [t] B)||_inf < 1 on each. Failed pieces are bisected up to
// depth 20. Dense: intended for moderate n. Throws GapError on failure.
GapCertificate verify_outside_gap(const ScaledPencil &p, double t_hi);

// Modulus of the (m+1)-th scaled eigenvalue closest to zero, from a dense
// numerical eigensolve of (A' - iB)^{-1} B. Infinite eigenvalues are skipped.
// Throws CertificateError when fewer than m+1 finite eigenvalues exist.
double estimate_outside_modulus(const ScaledPencil &p, int m);

// Exclusion band from perturbation theory for diagonal B. analytic holds
// enclosures of all eigenvalues lambda_i(A) in ascending order; every
// generalized eigenvalue then lies in lambda_i(A) * [1 - kappa, 1 + kappa]
// with kappa = ||I - B||_2 ||B^{-1}||_2. Requires exactly window.m of these
// intervals inside the open window and none straddling its ends. Throws
// CertificateError otherwise or when the resulting bound is not above 1.
GapCertificate gap_from_diagonal_perturbation(const std::vector<RealInterval> &analytic,
                                              const Eigen::VectorXd &b_diag,
                                              const SpectralWindow &window);

// Enclosures of 2 - 2 cos(i pi / (n + 1)), i = 1..n.
std::vector<RealInterval> tridiag_eigenvalues(Eigen::Index n);

// True if A is exactly tridiag(-1, 2, -1).
bool is_second_difference(const HermitianOperator &a);

// True only if the pencil z B - A is regular, via positive definiteness of
// B B^H + A A^H evaluated in interval arithmetic.
bool verify_pencil_regular(const HermitianOperator &a, const HermitianOperator &b);

}  // namespace ssenclose
