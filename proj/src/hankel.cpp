// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ssenclose/hankel.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "ssenclose/certificates.hpp"

namespace ssenclose
{

using namespace rounding;

ApproxPencilEig approx_pencil_eig(const Eigen::MatrixXcd &k_mid, const Eigen::MatrixXcd &h_mid)
{
  if (k_mid.rows() != k_mid.cols() || h_mid.rows() != h_mid.cols() || k_mid.rows() != h_mid.rows())
  {
    throw std::invalid_argument("approx_pencil_eig: dimension mismatch");
  }
  const Eigen::MatrixXcd k = (k_mid + k_mid.adjoint()) * 0.5;
  const Eigen::MatrixXcd h = (h_mid + h_mid.adjoint()) * 0.5;
  // The generalized solver does not report a failed Cholesky of H.
  const Eigen::LLT<Eigen::MatrixXcd> llt(h);
  if (llt.info() != Eigen::Success)
  {
    throw std::runtime_error("approx_pencil_eig: H is not numerically positive definite");
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      k, h, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success)
  {
    throw std::runtime_error("approx_pencil_eig: H is not numerically positive definite");
  }
  ApproxPencilEig out{es.eigenvalues(), es.eigenvectors()};
  if (!out.values.allFinite() || !out.vectors.allFinite())
  {
    throw std::runtime_error("approx_pencil_eig: eigensolver produced non-finite values");
  }
  return out;
}

bool verify_pencil_pd(const IntervalMatrix &h)
{
  return verify_positive_definite(h, 0.0);
}

std::optional<int> count_below(const IntervalMatrix &k2, const IntervalMatrix &h2, double s)
{
  const Eigen::Index n = k2.rows();
  const RealInterval shift(s);
  Eigen::VectorXd d(n);
  Eigen::MatrixXd e(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
  {
    for (Eigen::Index i = 0; i < n; ++i)
    {
      const ComplexInterval t = k2(i, j) - h2(i, j) * shift;
      if (i == j)
      {
        // Members are Hermitian, so only the real part of the diagonal counts.
        d(i) = t.re().mid();
        e(i, i) = std::max(sub_up(t.re().sup(), d(i)), sub_up(d(i), t.re().inf()));
      }
      else
      {
        e(i, j) = t.mag();
      }
    }
  }
  const double eps = nonneg_norm2_upper(e);
  if (!std::isfinite(eps))
  {
    return std::nullopt;
  }
  int negative = 0;
  for (Eigen::Index i = 0; i < n; ++i)
  {
    if (!(std::abs(d(i)) > eps))
    {
      return std::nullopt;
    }
    negative += d(i) < 0.0 ? 1 : 0;
  }
  return negative;
}

namespace
{

struct Cut
{
  double s = 0.0;
  int count = 0;
};

// Walks outward from `from` in direction dir, doubling the offset, until
// the inertia at the cut is certified or the offset passes cap.
std::optional<Cut> find_cut(const IntervalMatrix &k2, const IntervalMatrix &h2, double from,
                            double dir, double cap)
{
  double off = 0x1p-50 * std::max(1.0, std::abs(from));
  while (off <= cap)
  {
    const double s = from + dir * off;
    if (auto c = count_below(k2, h2, s))
    {
      return Cut{s, *c};
    }
    off *= 2.0;
  }
  return std::nullopt;
}

struct Cluster
{
  int first = 0;
  int last = 0;
};

std::vector<PencilEnclosure> all_failed(const Eigen::VectorXd &values)
{
  std::vector<PencilEnclosure> out;
  for (Eigen::Index i = 0; i < values.size(); ++i)
  {
    PencilEnclosure e;
    e.interval = RealInterval(values(i));
    e.first_index = static_cast<int>(i);
    e.status = EigenStatus::Failed;
    out.push_back(e);
  }
  return out;
}

}  // namespace

std::vector<PencilEnclosure> enclose_pencil_eigs(const IntervalMatrix &k, const IntervalMatrix &h,
                                                 const ApproxPencilEig &approx,
                                                 const PencilEnclosureOptions &opts)
{
  const Eigen::Index n = h.rows();
  if (k.rows() != n || k.cols() != n || h.cols() != n || approx.values.size() != n ||
      approx.vectors.rows() != n || approx.vectors.cols() != n)
  {
    throw std::invalid_argument("enclose_pencil_eigs: dimension mismatch");
  }
  const Eigen::VectorXd &lam = approx.values;
  if (!verify_pencil_pd(h))
  {
    return all_failed(lam);
  }
  const IntervalMatrix x = to_interval(approx.vectors);
  const IntervalMatrix xh = conj_transpose(x);
  const IntervalMatrix k2 = hermitian_hull(matmul(matmul(xh, k), x));
  const IntervalMatrix h2 = hermitian_hull(matmul(matmul(xh, h), x));
  // X^H H X positive definite also proves X nonsingular, so the congruence
  // preserves inertia.
  if (!verify_pencil_pd(h2))
  {
    return all_failed(lam);
  }

  std::vector<Cluster> clusters;
  for (int i = 0; i < static_cast<int>(n); ++i)
  {
    if (!clusters.empty() &&
        lam(i) - lam(clusters.back().last) <= opts.cluster_rel_tol * std::max(1.0, std::abs(lam(i))))
    {
      clusters.back().last = i;
    }
    else
    {
      clusters.push_back({i, i});
    }
  }

  for (;;)
  {
    std::vector<PencilEnclosure> out;
    bool merged = false;
    for (std::size_t c = 0; c < clusters.size() && !merged; ++c)
    {
      const double lo_val = lam(clusters[c].first);
      const double hi_val = lam(clusters[c].last);
      const double far = std::max(4.0, 2.0 * std::max(std::abs(lo_val), std::abs(hi_val)));
      const double lo_cap = c == 0 ? far : 0.5 * (lo_val - lam(clusters[c - 1].last));
      const double hi_cap =
          c + 1 == clusters.size() ? far : 0.5 * (lam(clusters[c + 1].first) - hi_val);
      const auto lo = find_cut(k2, h2, lo_val, -1.0, lo_cap);
      const auto hi = find_cut(k2, h2, hi_val, 1.0, hi_cap);
      if (!lo && c > 0)
      {
        clusters[c - 1].last = clusters[c].last;
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(c));
        merged = true;
        break;
      }
      if (!hi && c + 1 < clusters.size())
      {
        clusters[c].last = clusters[c + 1].last;
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(c + 1));
        merged = true;
        break;
      }
      PencilEnclosure e;
      e.first_index = clusters[c].first;
      e.cluster_size = clusters[c].last - clusters[c].first + 1;
      if (lo && hi && hi->count - lo->count == e.cluster_size)
      {
        e.interval = RealInterval(lo->s, hi->s);
        e.status = EigenStatus::Verified;
      }
      else
      {
        e.interval = RealInterval(lo_val, hi_val);
        e.status = EigenStatus::Failed;
      }
      out.push_back(e);
    }
    if (!merged)
    {
      return out;
    }
  }
}

std::vector<EigenEnclosure> rescale(const std::vector<PencilEnclosure> &scaled,
                                    const SpectralWindow &window)
{
  std::vector<EigenEnclosure> out;
  out.reserve(scaled.size());
  for (const auto &s : scaled)
  {
    EigenEnclosure e;
    e.interval = window.from_scaled(s.interval);
    e.cluster_size = s.cluster_size;
    e.status = s.status;
    out.push_back(e);
  }
  return out;
}

}  // namespace ssenclose
