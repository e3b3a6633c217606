// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ssenclose/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SparseCholesky>

#include "ssenclose/contraction.hpp"
#include "ssenclose/random.hpp"

namespace ssenclose
{

using namespace rounding;

namespace
{

constexpr double kEta = std::numeric_limits<double>::denorm_min();

// Upper bound of the spectral norm of the Cholesky backward error for a
// factorization whose inner products have at most k terms, relative to the
// nonnegative part of the trace. Complex arithmetic doubles the term count.
double cholesky_backward_bound(double k, double trace_pos, double n, bool complex)
{
  const double g = complex ? mul_up(2.0, gamma_up(2.0 * k + 4.0)) : gamma_up(k + 1.0);
  if (!(g < 0.5))
  {
    return std::numeric_limits<double>::infinity();
  }
  double s = div_up(mul_up(g, trace_pos), sub_down(1.0, g));
  return add_up(s, mul_up(mul_up(4.0 * n, k + 2.0), kEta));
}

template <typename Matrix>
bool factor_diag_ok(const Matrix &l)
{
  for (Eigen::Index i = 0; i < l.rows(); ++i)
  {
    const double d = std::real(l(i, i));
    if (!(d > 0.0) || !std::isfinite(d))
    {
      return false;
    }
  }
  return true;
}

template <typename Scalar>
bool dense_cholesky_certificate(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> &c,
                                double tau, bool complex)
{
  const Eigen::Index n = c.rows();
  double tr = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
  {
    tr = add_up(tr, std::max(std::real(c(i, i)), 0.0));
  }
  const double sigma =
      cholesky_backward_bound(static_cast<double>(n), tr, static_cast<double>(n), complex);
  const double total = add_up(tau, sigma);
  if (!std::isfinite(total))
  {
    return false;
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> d = c;
  for (Eigen::Index i = 0; i < n; ++i)
  {
    d(i, i) = sub_down(std::real(c(i, i)), total);
  }
  Eigen::LLT<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>, Eigen::Lower> llt(d);
  if (llt.info() != Eigen::Success)
  {
    return false;
  }
  const auto l = llt.matrixLLT();
  return factor_diag_ok(l);
}

template <typename Scalar>
Eigen::SparseMatrix<Scalar> with_diagonal(const SparseMatrixC &mid, double subtract)
{
  std::vector<Eigen::Triplet<Scalar>> t;
  t.reserve(static_cast<std::size_t>(mid.nonZeros() + mid.rows()));
  std::vector<char> has_diag(static_cast<std::size_t>(mid.rows()), 0);
  for (Eigen::Index j = 0; j < mid.outerSize(); ++j)
  {
    for (SparseMatrixC::InnerIterator it(mid, j); it; ++it)
    {
      if (it.row() == it.col())
      {
        has_diag[static_cast<std::size_t>(j)] = 1;
        t.emplace_back(j, j, Scalar(sub_down(it.value().real(), subtract)));
      }
      else if constexpr (std::is_same_v<Scalar, double>)
      {
        t.emplace_back(it.row(), it.col(), it.value().real());
      }
      else
      {
        t.emplace_back(it.row(), it.col(), it.value());
      }
    }
  }
  for (Eigen::Index j = 0; j < mid.rows(); ++j)
  {
    if (!has_diag[static_cast<std::size_t>(j)])
    {
      t.emplace_back(j, j, Scalar(sub_down(0.0, subtract)));
    }
  }
  Eigen::SparseMatrix<Scalar> d(mid.rows(), mid.cols());
  d.setFromTriplets(t.begin(), t.end());
  d.makeCompressed();
  return d;
}

template <typename Scalar>
bool sparse_cholesky_certificate(const SparseMatrixC &mid, double tau, bool complex)
{
  using Sparse = Eigen::SparseMatrix<Scalar>;
  const Eigen::Index n = mid.rows();
  double tr = 0.0;
  for (Eigen::Index j = 0; j < mid.outerSize(); ++j)
  {
    for (SparseMatrixC::InnerIterator it(mid, j); it; ++it)
    {
      if (it.row() == it.col())
      {
        tr = add_up(tr, std::max(it.value().real(), 0.0));
      }
    }
  }

  // First pass fixes the fill pattern, which bounds the inner-product length.
  Eigen::SimplicialLLT<Sparse, Eigen::Lower, Eigen::AMDOrdering<int>> llt;
  llt.analyzePattern(with_diagonal<Scalar>(mid, tau));
  llt.factorize(with_diagonal<Scalar>(mid, tau));
  if (llt.info() != Eigen::Success)
  {
    return false;
  }
  Sparse l = llt.matrixL();
  std::vector<Eigen::Index> row_count(static_cast<std::size_t>(n), 0);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < l.outerSize(); ++j)
  {
    Eigen::Index col_count = 0;
    for (typename Sparse::InnerIterator it(l, j); it; ++it)
    {
      ++col_count;
      ++row_count[static_cast<std::size_t>(it.row())];
    }
    k = std::max(k, col_count);
  }
  for (auto c : row_count)
  {
    k = std::max(k, c);
  }

  const double sigma =
      cholesky_backward_bound(static_cast<double>(k), tr, static_cast<double>(n), complex);
  const double total = add_up(tau, sigma);
  if (!std::isfinite(total))
  {
    return false;
  }
  llt.factorize(with_diagonal<Scalar>(mid, total));
  if (llt.info() != Eigen::Success)
  {
    return false;
  }
  l = llt.matrixL();
  for (Eigen::Index j = 0; j < l.outerSize(); ++j)
  {
    const double d = std::real(l.coeff(j, j));
    if (!(d > 0.0) || !std::isfinite(d))
    {
      return false;
    }
  }
  return true;
}

bool sparse_is_real(const SparseMatrixC &m)
{
  const auto *v = m.valuePtr();
  return std::all_of(v, v + m.nonZeros(), [](const auto &z) { return z.imag() == 0.0; });
}

// Upper bound of ||P||_2 for a nonnegative sparse P, as sqrt(||P||_1 ||P||_inf).
double sparse_nonneg_norm2_upper(const std::vector<std::map<Eigen::Index, double>> &rows)
{
  std::vector<double> col_sum(rows.size(), 0.0);
  double row_max = 0.0;
  for (const auto &r : rows)
  {
    double s = 0.0;
    for (const auto &[j, v] : r)
    {
      s = add_up(s, v);
      col_sum[static_cast<std::size_t>(j)] = add_up(col_sum[static_cast<std::size_t>(j)], v);
    }
    row_max = std::max(row_max, s);
  }
  const double col_max = col_sum.empty() ? 0.0 : *std::max_element(col_sum.begin(), col_sum.end());
  return sqrt_up(mul_up(row_max, col_max));
}

}  // namespace

bool verify_positive_definite(const IntervalMatrix &h, double shift)
{
  if (!is_hermitian(h))
  {
    throw std::invalid_argument("verify_positive_definite: matrix is not Hermitian");
  }
  const Eigen::Index n = h.rows();
  for (Eigen::Index j = 0; j < n; ++j)
  {
    for (Eigen::Index i = 0; i < n; ++i)
    {
      if (!h(i, j).is_finite())
      {
        return false;
      }
    }
  }
  if (n == 0)
  {
    return true;
  }
  const Eigen::MatrixXcd c = midpoint(h);
  const double tau = add_up(nonneg_norm2_upper(radius(h)), shift);
  const bool complex = (c.imag().array() != 0.0).any();
  if (complex)
  {
    return dense_cholesky_certificate<std::complex<double>>(c, tau, true);
  }
  return dense_cholesky_certificate<double>(c.real(), tau, false);
}

bool verify_positive_definite(const SparseMatrixC &mid, double rad_norm2, double shift)
{
  if (mid.rows() != mid.cols())
  {
    throw std::invalid_argument("verify_positive_definite: matrix is not square");
  }
  if (mid.rows() == 0)
  {
    return true;
  }
  const double tau = add_up(rad_norm2, shift);
  if (!std::isfinite(tau))
  {
    return false;
  }
  if (sparse_is_real(mid))
  {
    return sparse_cholesky_certificate<double>(mid, tau, false);
  }
  return sparse_cholesky_certificate<std::complex<double>>(mid, tau, true);
}

bool verify_positive_definite(const HermitianOperator &b, double shift)
{
  return verify_positive_definite(b.sparse(), 0.0, shift);
}

double lambda_min_estimate(const HermitianOperator &b)
{
  const Eigen::Index n = b.n();
  if (b.is_diagonal())
  {
    return b.diagonal().minCoeff();
  }
  if (n <= 1500)
  {
    if (b.is_real())
    {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.dense().real(), Eigen::EigenvaluesOnly);
      return es.eigenvalues()(0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b.dense(), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
  }
  // Inverse iteration converges to the eigenvalue of smallest modulus, which
  // is lambda_min when B is positive definite.
  Eigen::SimplicialLDLT<SparseMatrixC> ldlt(b.sparse());
  if (ldlt.info() != Eigen::Success)
  {
    return 0.0;
  }
  Rng rng(1);
  Eigen::VectorXcd x = rng.gaussian_matrix(n, 1).cast<std::complex<double>>();
  x.normalize();
  double est = 0.0;
  for (int it = 0; it < 60; ++it)
  {
    Eigen::VectorXcd y = ldlt.solve(x);
    if (ldlt.info() != Eigen::Success || !y.allFinite())
    {
      return 0.0;
    }
    const double nrm = y.norm();
    if (nrm == 0.0)
    {
      return 0.0;
    }
    x = y / nrm;
    const double next = (x.adjoint() * (b.sparse() * x))(0).real();
    if (it > 5 && std::abs(next - est) <= 1e-12 * std::abs(next))
    {
      est = next;
      break;
    }
    est = next;
  }
  return est;
}

double lambda_min_lower_bound(const HermitianOperator &b, double c)
{
  if (!(c > 0.0 && c < 1.0))
  {
    throw std::invalid_argument("lambda_min_lower_bound: c must lie in (0, 1)");
  }
  const double est = lambda_min_estimate(b);
  if (!(est > 0.0) || !std::isfinite(est))
  {
    throw CertificateError("lambda_min(B): B is not numerically positive definite");
  }
  double factor = c;
  for (int k = 1; k <= 8; ++k)
  {
    const double t = factor * est;
    if (verify_positive_definite(b, t))
    {
      return t;
    }
    factor *= c;
  }
  throw CertificateError("lambda_min(B): positive definiteness could not be certified");
}

namespace
{

bool certify_shift_piece(const IntervalMatrix &a_scaled, const Eigen::MatrixXcd &b,
                         const RealInterval &t)
{
  const Eigen::Index n = a_scaled.rows();
  MidRad c;
  c.mid.resize(n, n);
  c.rad.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
  {
    for (Eigen::Index i = 0; i < n; ++i)
    {
      const ComplexInterval e = a_scaled(i, j) - t * ComplexInterval(b(i, j));
      c.mid(i, j) = e.mid();
      c.rad(i, j) = e.rad();
    }
  }
  return certify_contraction(c).contracts;
}

}  // namespace

GapCertificate verify_outside_gap(const ScaledPencil &p, double t_hi)
{
  if (!(t_hi > 1.0) || !std::isfinite(t_hi))
  {
    throw std::invalid_argument("verify_outside_gap: t_hi must be finite and > 1");
  }
  const IntervalMatrix a = p.dense_a_scaled();
  const Eigen::MatrixXcd b = p.dense_b();
  constexpr int kMaxDepth = 20;
  GapCertificate cert;
  cert.method = "regularity-sweep";
  cert.lambda_hat_lower = t_hi;

  struct Piece
  {
    double lo, hi;
    int depth;
  };
  for (const double sign : {1.0, -1.0})
  {
    std::vector<Piece> stack;
    const double w = (t_hi - 1.0) / 4.0;
    double edges[5] = {1.0, 1.0 + w, 1.0 + 2.0 * w, 1.0 + 3.0 * w, t_hi};
    for (int k = 3; k >= 0; --k)
    {
      if (edges[k] < edges[k + 1])
      {
        stack.push_back({edges[k], edges[k + 1], 0});
      }
    }
    while (!stack.empty())
    {
      const Piece pc = stack.back();
      stack.pop_back();
      const RealInterval t = sign > 0 ? RealInterval(pc.lo, pc.hi) : RealInterval(-pc.hi, -pc.lo);
      if (certify_shift_piece(a, b, t))
      {
        ++cert.pieces;
        continue;
      }
      const double mid = pc.lo + 0.5 * (pc.hi - pc.lo);
      if (pc.depth >= kMaxDepth || !(pc.lo < mid && mid < pc.hi))
      {
        std::ostringstream msg;
        msg.precision(17);
        msg << "exclusion band: A' - tB not certified nonsingular for t in [" << t.inf() << ", "
            << t.sup() << "]";
        throw GapError(msg.str(), t.inf(), t.sup());
      }
      stack.push_back({mid, pc.hi, pc.depth + 1});
      stack.push_back({pc.lo, mid, pc.depth + 1});
    }
  }
  return cert;
}

double estimate_outside_modulus(const ScaledPencil &p, int m)
{
  const Eigen::MatrixXcd a = midpoint(p.dense_a_scaled());
  const Eigen::MatrixXcd b = p.dense_b();
  const std::complex<double> i(0.0, 1.0);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a - i * b);
  const Eigen::MatrixXcd t = lu.solve(b);
  if (!t.allFinite())
  {
    throw CertificateError("eigenvalue estimate: A' - iB is numerically singular");
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(t, false);
  if (es.info() != Eigen::Success)
  {
    throw CertificateError("eigenvalue estimate: eigensolver failed");
  }
  const Eigen::VectorXcd mu = es.eigenvalues();
  const double scale = mu.cwiseAbs().maxCoeff();
  std::vector<double> mods;
  for (Eigen::Index k = 0; k < mu.size(); ++k)
  {
    if (std::abs(mu(k)) <= 1e-13 * scale)
    {
      continue;  // infinite eigenvalue
    }
    mods.push_back(std::abs(i + 1.0 / mu(k)));
  }
  std::sort(mods.begin(), mods.end());
  if (static_cast<int>(mods.size()) <= m)
  {
    throw CertificateError("eigenvalue estimate: fewer than m+1 finite eigenvalues");
  }
  return mods[static_cast<std::size_t>(m)];
}

std::vector<RealInterval> tridiag_eigenvalues(Eigen::Index n)
{
  std::vector<RealInterval> ev;
  ev.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 1; k <= n; ++k)
  {
    const RealInterval c = unit_root(k, n + 1).re();
    ev.push_back(RealInterval(2.0) - RealInterval(2.0) * c);
  }
  return ev;
}

bool is_second_difference(const HermitianOperator &a)
{
  const Eigen::Index n = a.n();
  if (n < 2 || a.nnz() != 3 * n - 2)
  {
    return false;
  }
  for (const auto &t : a.triplets())
  {
    const Eigen::Index d = t.row() - t.col();
    const std::complex<double> want = d == 0 ? 2.0 : -1.0;
    if (std::abs(d) > 1 || t.value() != want)
    {
      return false;
    }
  }
  return true;
}

GapCertificate gap_from_diagonal_perturbation(const std::vector<RealInterval> &analytic,
                                              const Eigen::VectorXd &b_diag,
                                              const SpectralWindow &window)
{
  window.validate();
  if (analytic.size() != static_cast<std::size_t>(b_diag.size()))
  {
    throw std::invalid_argument("gap_from_diagonal_perturbation: size mismatch");
  }
  double db = 0.0;
  double bmin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < b_diag.size(); ++i)
  {
    db = std::max(db, std::max(sub_up(1.0, b_diag(i)), sub_up(b_diag(i), 1.0)));
    bmin = std::min(bmin, b_diag(i));
  }
  if (!(bmin > 0.0))
  {
    throw CertificateError("perturbation bound: B is not positive definite");
  }
  const double kappa = mul_up(db, div_up(1.0, bmin));
  const RealInterval spread = RealInterval(-kappa, kappa);

  int inside = 0;
  double lam_hat = std::numeric_limits<double>::max();
  for (const auto &l : analytic)
  {
    const RealInterval e = l + abs(l) * spread;
    const RealInterval s = window.to_scaled(e);
    if (s.inf() > -1.0 && s.sup() < 1.0)
    {
      ++inside;
    }
    else if (s.contains(1.0) || s.contains(-1.0))
    {
      throw CertificateError("perturbation bound: an eigenvalue enclosure straddles the window end");
    }
    else
    {
      lam_hat = std::min(lam_hat, s.mig());
    }
  }
  if (inside != window.m)
  {
    throw CertificateError("perturbation bound: window holds " + std::to_string(inside) +
                           " eigenvalues, expected " + std::to_string(window.m));
  }
  if (!(lam_hat > 1.0))
  {
    throw CertificateError("perturbation bound: exclusion band collapsed");
  }
  GapCertificate cert;
  cert.lambda_hat_lower = lam_hat;
  cert.method = "diagonal-perturbation";
  return cert;
}

bool verify_pencil_regular(const HermitianOperator &a, const HermitianOperator &b)
{
  if (a.n() != b.n())
  {
    throw std::invalid_argument("verify_pencil_regular: size mismatch");
  }
  const Eigen::Index n = a.n();
  using RowMajor = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;
  const RowMajor ar = a.sparse();
  const RowMajor br = b.sparse();
  // G = B B^H + A A^H = B B + A A, accumulated row by row in interval form.
  std::vector<std::map<Eigen::Index, ComplexInterval>> g(static_cast<std::size_t>(n));
  for (const RowMajor *m : {&br, &ar})
  {
    for (Eigen::Index i = 0; i < n; ++i)
    {
      auto &row = g[static_cast<std::size_t>(i)];
      for (RowMajor::InnerIterator ik(*m, i); ik; ++ik)
      {
        for (RowMajor::InnerIterator kj(*m, ik.col()); kj; ++kj)
        {
          auto [it, fresh] = row.try_emplace(kj.col(), ComplexInterval(0.0));
          it->second += ComplexInterval(ik.value()) * ComplexInterval(kj.value());
        }
      }
    }
  }
  std::vector<Triplet> t;
  std::vector<std::map<Eigen::Index, double>> rad(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
  {
    for (const auto &[j, v] : g[static_cast<std::size_t>(i)])
    {
      const auto &other = g[static_cast<std::size_t>(j)];
      const auto o = other.find(i);
      ComplexInterval h = o == other.end() ? hull(v, ComplexInterval(0.0)) : hull(v, conj(o->second));
      if (i == j)
      {
        h = ComplexInterval(h.re(), hull(h.im(), -h.im()));
      }
      else if (j < i)
      {
        // Use the conjugate of the upper-triangle hull so the midpoint is
        // exactly Hermitian.
        const auto &up = g[static_cast<std::size_t>(j)];
        const auto u = up.find(i);
        const ComplexInterval hu =
            hull(u == up.end() ? ComplexInterval(0.0) : u->second, conj(v));
        h = conj(hu);
      }
      const std::complex<double> mid = h.mid();
      if (mid != std::complex<double>(0.0, 0.0))
      {
        t.emplace_back(i, j, i == j ? std::complex<double>(mid.real(), 0.0) : mid);
      }
      const double r = h.rad();
      if (r > 0.0)
      {
        rad[static_cast<std::size_t>(i)][j] = r;
      }
    }
  }
  SparseMatrixC mid(n, n);
  mid.setFromTriplets(t.begin(), t.end());
  return verify_positive_definite(mid, sparse_nonneg_norm2_upper(rad), 0.0);
}

}  // namespace ssenclose
