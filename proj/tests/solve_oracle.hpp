// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Extended-precision solutions of the shifted systems and a containment
// check for solve certificates.

#pragma once

#include "oracle.hpp"
#include "ssenclose/linsolve.hpp"
#include "ssenclose/pencil.hpp"

namespace testing
{

using oracle::CMat;
using oracle::MatR;
using oracle::Real;

// Embedded z B - A' for a point node z and the exactly scaled A'.
inline MatR shifted_embed(std::complex<double> z, const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b,
                   const ssenclose::SpectralWindow &w)
{
  const Eigen::Index n = a.rows();
  const Real gamma = (Real(w.a) + Real(w.b)) / 2;
  const Real rho = (Real(w.b) - Real(w.a)) / 2;
  const MatR be = oracle::embed(b);
  const MatR as = (oracle::embed(a) - gamma * be) / rho;
  MatR ze = MatR::Zero(2 * n, 2 * n);
  ze.topLeftCorner(n, n).diagonal().setConstant(Real(z.real()));
  ze.bottomRightCorner(n, n).diagonal().setConstant(Real(z.real()));
  ze.topRightCorner(n, n).diagonal().setConstant(-Real(z.imag()));
  ze.bottomLeftCorner(n, n).diagonal().setConstant(Real(z.imag()));
  return MatR(ze * be - as);
}

// Exact solution of (z B - A') Y = B V in extended precision.
inline CMat oracle_solve(std::complex<double> z, const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b,
                  const ssenclose::SpectralWindow &w, const Eigen::MatrixXcd &v)
{
  const MatR c = shifted_embed(z, a, b, w);
  const MatR rhs = oracle::product(b, v);
  const MatR y = c.partialPivLu().solve(rhs);
  return oracle::extract(y, a.rows(), v.cols());
}

inline Real col_dist2(const Eigen::MatrixXcd &center, const CMat &exact, Eigen::Index c)
{
  Real s = 0;
  for (Eigen::Index i = 0; i < center.rows(); ++i)
  {
    const Real dr = Real(center(i, c).real()) - exact.re(i, c);
    const Real di = Real(center(i, c).imag()) - exact.im(i, c);
    s += dr * dr + di * di;
  }
  return boost::multiprecision::sqrt(s);
}

// Checks the certificate against the oracle solution; returns false on the
// first violation.
inline bool certificate_contains(const ssenclose::SolveCertificate &cert, const CMat &exact)
{
  const Eigen::MatrixXcd center = cert.center();
  for (Eigen::Index c = 0; c < center.cols(); ++c)
  {
    if (cert.path == ssenclose::SolvePath::FastPD && !(col_dist2(center, exact, c) <= Real(cert.err2(c))))
    {
      return false;
    }
    for (Eigen::Index i = 0; i < center.rows(); ++i)
    {
      const oracle::Cplx d{Real(center(i, c).real()) - exact.re(i, c),
                           Real(center(i, c).imag()) - exact.im(i, c)};
      const Real bound = cert.path == ssenclose::SolvePath::FastPD ? Real(cert.err2(c)) : Real(cert.rad(i, c));
      if (!(oracle::abs(d) <= bound))
      {
        return false;
      }
    }
  }
  return true;
}

}  // namespace testing
