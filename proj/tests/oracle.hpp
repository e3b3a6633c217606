// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Extended-precision reference computations shared by the tests.

#pragma once

#include <complex>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <Eigen/Dense>

#include "ssenclose/interval.hpp"
#include "ssenclose/interval_matrix.hpp"

namespace oracle
{

using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<40>,
                                           boost::multiprecision::et_off>;

}  // namespace oracle

namespace Eigen
{

template <>
struct NumTraits<oracle::Real> : GenericNumTraits<oracle::Real>
{
  using Real = oracle::Real;
  using NonInteger = oracle::Real;
  using Nested = oracle::Real;
  using Literal = oracle::Real;
  enum
  {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 16
  };
  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static Real dummy_precision() { return Real(1e-30); }
  static Real highest() { return std::numeric_limits<Real>::max(); }
  static Real lowest() { return std::numeric_limits<Real>::lowest(); }
  static int digits10() { return std::numeric_limits<Real>::digits10; }
  static Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
};

}  // namespace Eigen

namespace oracle
{

using MatR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using VecR = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Complex value as a pair of extended reals.
struct Cplx
{
  Real re;
  Real im;
};

inline Real pi()
{
  return boost::math::constants::pi<Real>();
}

inline bool contains(const ssenclose::RealInterval &x, const Real &v)
{
  return Real(x.inf()) <= v && v <= Real(x.sup());
}

inline bool contains(const ssenclose::ComplexInterval &z, const Cplx &v)
{
  return contains(z.re(), v.re) && contains(z.im(), v.im);
}

// Real embedding [[Re, -Im], [Im, Re]] of a complex matrix given exactly in
// binary64.
inline MatR embed(const Eigen::MatrixXcd &c)
{
  const Eigen::Index r = c.rows(), k = c.cols();
  MatR e(2 * r, 2 * k);
  for (Eigen::Index j = 0; j < k; ++j)
  {
    for (Eigen::Index i = 0; i < r; ++i)
    {
      const Real re(c(i, j).real());
      const Real im(c(i, j).imag());
      e(i, j) = re;
      e(i, j + k) = -im;
      e(i + r, j) = im;
      e(i + r, j + k) = re;
    }
  }
  return e;
}

// Complex matrix stored as an embedding: real part is the top-left block,
// imaginary part the bottom-left block.
struct CMat
{
  MatR re;
  MatR im;

  Cplx operator()(Eigen::Index i, Eigen::Index j) const { return {re(i, j), im(i, j)}; }
};

inline CMat extract(const MatR &e, Eigen::Index rows, Eigen::Index cols)
{
  return {e.topLeftCorner(rows, cols), e.bottomLeftCorner(rows, cols)};
}

inline MatR embed(const CMat &c)
{
  const Eigen::Index r = c.re.rows(), k = c.re.cols();
  MatR e(2 * r, 2 * k);
  e << c.re, -c.im, c.im, c.re;
  return e;
}

// Generalized Hermitian eigendecomposition A x = lambda B x with B positive
// definite, in the real embedding. Each eigenvalue appears twice; the
// eigenvector pairs sum to the embedded complex projectors, so
// sum_k f(lambda_k) w_k w_k^T equals the embedding of sum f(lambda) x x^H.
struct Eig
{
  VecR values;   // ascending, each eigenvalue twice
  MatR vectors;  // B-orthonormal columns
};

inline Eig generalized_eig(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b)
{
  const MatR ae = embed(a);
  const MatR be = embed(b);
  Eigen::GeneralizedSelfAdjointEigenSolver<MatR> es(ae, be);
  return {es.eigenvalues(), es.eigenvectors()};
}

// Distinct eigenvalues of the embedding (every second one).
inline std::vector<Real> distinct_values(const Eig &e)
{
  std::vector<Real> out;
  for (Eigen::Index i = 0; i < e.values.size(); i += 2)
  {
    out.push_back(e.values(i));
  }
  return out;
}

// sum over the embedded eigenpairs of f(lambda_k) w_k w_k^T.
template <typename F>
MatR spectral_sum(const Eig &e, F f)
{
  const Eigen::Index n2 = e.values.size();
  MatR s = MatR::Zero(n2, n2);
  for (Eigen::Index k = 0; k < n2; ++k)
  {
    const Real w = f(e.values(k));
    if (w != 0)
    {
      s += w * e.vectors.col(k) * e.vectors.col(k).transpose();
    }
  }
  return s;
}

// W^H P W for an embedded n x n P and exact complex W (n x L), as L x L.
inline CMat sandwich(const Eigen::MatrixXcd &w, const MatR &p)
{
  const MatR we = embed(w);
  const MatR r = we.transpose() * p * we;
  return extract(r, w.cols(), w.cols());
}

// Exact product of binary64 matrices in extended precision (embedded).
inline MatR product(const Eigen::MatrixXcd &x, const Eigen::MatrixXcd &y)
{
  return embed(x) * embed(y);
}

template <typename Derived>
bool contains(const ssenclose::IntervalMatrix &m, const Derived &re, const Derived &im)
{
  for (Eigen::Index j = 0; j < m.cols(); ++j)
  {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
      if (!contains(m(i, j), Cplx{re(i, j), im(i, j)}))
      {
        return false;
      }
    }
  }
  return true;
}

inline bool contains(const ssenclose::IntervalMatrix &m, const CMat &c)
{
  return contains(m, c.re, c.im);
}

inline Real abs(const Cplx &z)
{
  return boost::multiprecision::sqrt(z.re * z.re + z.im * z.im);
}

// Smallest singular value of a complex matrix given exactly, via the
// eigenvalues of the embedded C^T C.
inline Real sigma_min(const MatR &ce)
{
  Eigen::SelfAdjointEigenSolver<MatR> es(ce.transpose() * ce, Eigen::EigenvaluesOnly);
  const Real l = es.eigenvalues()(0);
  return boost::multiprecision::sqrt(l > 0 ? l : Real(0));
}

// Distance in units of the binary64 spacing at x (for "within k ulps").
inline double ulps_above(double computed, const Real &exact)
{
  const double e = static_cast<double>(exact);
  const double spacing = std::nextafter(std::abs(e), INFINITY) - std::abs(e);
  return static_cast<double>((Real(computed) - exact) / Real(spacing));
}

}  // namespace oracle
