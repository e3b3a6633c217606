// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ssenclose/linsolve.hpp"

#include <optional>
#include <stdexcept>

#include <Eigen/LU>
#include <Eigen/SparseLU>

#include "ssenclose/contraction.hpp"

namespace ssenclose
{

using namespace rounding;

namespace
{

constexpr Eigen::Index kDenseFallbackLimit = 6000;

}  // namespace

ShiftedSystem::ShiftedSystem(const ScaledPencil &p, const ComplexInterval &node,
                             const IntervalMatrix &w)
    : pencil(&p), z(node), rhs(w), rhs_mid(midpoint(w))
{
  if (w.rows() != p.n())
  {
    throw std::invalid_argument("ShiftedSystem: right-hand side has wrong row count");
  }
  if (z.im().contains_zero())
  {
    throw std::invalid_argument("ShiftedSystem: node touches the real axis");
  }
}

struct NodeSolver::Impl
{
  Eigen::SparseLU<SparseMatrixC, Eigen::COLAMDOrdering<int>> sparse;
  std::optional<Eigen::PartialPivLU<Eigen::MatrixXcd>> dense;
};

NodeSolver::NodeSolver(const ShiftedSystem &s) : impl_(std::make_unique<Impl>())
{
  const SparseMatrixC m = s.pencil->shifted_midpoint(s.z.mid());
  impl_->sparse.analyzePattern(m);
  impl_->sparse.factorize(m);
  if (impl_->sparse.info() == Eigen::Success)
  {
    return;
  }
  if (m.rows() > kDenseFallbackLimit)
  {
    throw std::runtime_error("NodeSolver: sparse factorization failed");
  }
  impl_->dense.emplace(Eigen::MatrixXcd(m));
}

NodeSolver::~NodeSolver() = default;
NodeSolver::NodeSolver(NodeSolver &&) noexcept = default;
NodeSolver &NodeSolver::operator=(NodeSolver &&) noexcept = default;

bool NodeSolver::dense() const
{
  return impl_->dense.has_value();
}

Eigen::MatrixXcd NodeSolver::solve(const Eigen::MatrixXcd &rhs) const
{
  if (impl_->dense)
  {
    return impl_->dense->solve(rhs);
  }
  Eigen::MatrixXcd x = impl_->sparse.solve(rhs);
  if (!x.allFinite())
  {
    throw std::runtime_error("NodeSolver: solve produced non-finite values");
  }
  return x;
}

double SolveCertificate::err_uniform(Eigen::Index c) const
{
  if (path == SolvePath::FastPD)
  {
    return err2(c);
  }
  return rad.col(c).maxCoeff();
}

Eigen::MatrixXcd approx_solve(const ShiftedSystem &s)
{
  return NodeSolver(s).solve(s.rhs_mid);
}

IntervalMatrix residual_enclosure(const ShiftedSystem &s, const Eigen::MatrixXcd &y,
                                  const Eigen::MatrixXcd &d)
{
  const auto entries = s.pencil->shifted_entries(s.z);
  IntervalMatrix r(s.rhs.rows(), s.rhs.cols());
  for (Eigen::Index c = 0; c < s.rhs.cols(); ++c)
  {
    IntervalVector col = s.rhs.col(c) - pattern_matvec(*s.pencil, entries, y.col(c));
    if (d.size() != 0)
    {
      col -= pattern_matvec(*s.pencil, entries, d.col(c));
    }
    r.col(c) = col;
  }
  return r;
}

Eigen::VectorXd column_norm2_upper(const IntervalMatrix &r)
{
  Eigen::VectorXd out(r.cols());
  for (Eigen::Index c = 0; c < r.cols(); ++c)
  {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < r.rows(); ++i)
    {
      const double m = r(i, c).mag();
      acc = add_up(acc, mul_up(m, m));
    }
    out(c) = sqrt_up(acc);
  }
  return out;
}

namespace
{

Eigen::VectorXd fast_bound(const ShiftedSystem &s, const IntervalMatrix &r, double lambda_min_lower)
{
  const double denom = mul_down(s.z.im().mig(), lambda_min_lower);
  Eigen::VectorXd e = column_norm2_upper(r);
  for (Eigen::Index c = 0; c < e.size(); ++c)
  {
    e(c) = div_up(e(c), denom);
  }
  return e;
}

void check_fast_preconditions(const ShiftedSystem &s, double lambda_min_lower)
{
  if (!(lambda_min_lower > 0.0))
  {
    throw std::invalid_argument("fast path refused: no positive lambda_min(B) certificate");
  }
  if (!(s.z.im().mig() > 0.0))
  {
    throw std::invalid_argument("fast path refused: node touches the real axis");
  }
}

}  // namespace

CorrectionStep staggered_correction(const ShiftedSystem &s, const NodeSolver &solver,
                                    const Eigen::MatrixXcd &y, const Eigen::MatrixXcd &d,
                                    double lambda_min_lower)
{
  check_fast_preconditions(s, lambda_min_lower);
  const Eigen::MatrixXcd d0 = d.size() == 0 ? Eigen::MatrixXcd::Zero(y.rows(), y.cols()) : d;
  const IntervalMatrix r0 = residual_enclosure(s, y, d0);
  CorrectionStep step;
  step.bound_before = fast_bound(s, r0, lambda_min_lower);
  step.d = d0 + solver.solve(midpoint(r0));
  step.bound_after = fast_bound(s, residual_enclosure(s, y, step.d), lambda_min_lower);
  return step;
}

SolveCertificate enclose_fast_pd(const ShiftedSystem &s, const NodeSolver &solver,
                                 const Eigen::MatrixXcd &y, double lambda_min_lower, int passes)
{
  check_fast_preconditions(s, lambda_min_lower);
  if (passes < 0 || passes > 3)
  {
    throw std::invalid_argument("enclose_fast_pd: correction passes must be in 0..3");
  }
  SolveCertificate cert;
  cert.path = SolvePath::FastPD;
  cert.y = y;
  cert.d = Eigen::MatrixXcd::Zero(y.rows(), y.cols());
  IntervalMatrix r = residual_enclosure(s, cert.y, cert.d);
  cert.err2 = fast_bound(s, r, lambda_min_lower);
  for (int pass = 0; pass < passes; ++pass)
  {
    const Eigen::MatrixXcd d_new = cert.d + solver.solve(midpoint(r));
    const IntervalMatrix r_new = residual_enclosure(s, cert.y, d_new);
    const Eigen::VectorXd e_new = fast_bound(s, r_new, lambda_min_lower);
    bool improved = false;
    for (Eigen::Index c = 0; c < y.cols(); ++c)
    {
      if (e_new(c) < cert.err2(c))
      {
        cert.d.col(c) = d_new.col(c);
        cert.err2(c) = e_new(c);
        r.col(c) = r_new.col(c);
        improved = true;
      }
    }
    if (!improved)
    {
      break;
    }
  }
  cert.verified = cert.err2.allFinite();
  return cert;
}

SolveCertificate enclose_general(const ShiftedSystem &s, const Eigen::MatrixXcd &y)
{
  SolveCertificate cert;
  cert.path = SolvePath::General;
  const MidRad c = to_mid_rad(s.pencil->dense_shifted(s.z));
  const ContractionBound cb = certify_contraction(c);
  if (!cb.contracts)
  {
    cert.verified = false;
    cert.message = "contraction test failed: ||I - R(zB - A')||_inf not below 1";
    cert.y = y;
    cert.d = Eigen::MatrixXcd::Zero(y.rows(), y.cols());
    return cert;
  }
  // One floating refinement with the approximate inverse before bounding.
  const IntervalMatrix r0 = residual_enclosure(s, y);
  cert.y = y;
  cert.d = cb.r * midpoint(r0);
  const IntervalMatrix r = residual_enclosure(s, cert.y, cert.d);
  const IntervalMatrix rr = matmul(to_interval(cb.r), r);

  const double one_minus_alpha = sub_down(1.0, cb.alpha);
  cert.rad.resize(y.rows(), y.cols());
  for (Eigen::Index col = 0; col < y.cols(); ++col)
  {
    double inf_norm = 0.0;
    for (Eigen::Index i = 0; i < y.rows(); ++i)
    {
      inf_norm = std::max(inf_norm, rr(i, col).mag());
    }
    const double e_max = div_up(inf_norm, one_minus_alpha);
    for (Eigen::Index i = 0; i < y.rows(); ++i)
    {
      cert.rad(i, col) = add_up(rr(i, col).mag(), mul_up(cb.row_sums(i), e_max));
    }
  }
  cert.verified = cert.rad.allFinite();
  return cert;
}

}  // namespace ssenclose
