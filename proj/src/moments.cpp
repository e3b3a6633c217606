// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ssenclose/moments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ssenclose
{

using namespace rounding;

ScaledPencil scale_pencil(const HermitianOperator &a, const HermitianOperator &b,
                          const SpectralWindow &window)
{
  return ScaledPencil(a, b, window);
}

long choose_N(double delta, double r_minus_m, double lambda_hat_lower, double vbv_norm_upper,
              int M, long n_max)
{
  if (!(lambda_hat_lower > 1.0))
  {
    throw std::invalid_argument("choose_N: lambda_hat_lower must exceed 1");
  }
  if (!(delta > 0.0))
  {
    throw std::invalid_argument("choose_N: delta must be positive");
  }
  if (M < 1 || r_minus_m < 0.0)
  {
    throw std::invalid_argument("choose_N: invalid M or r - m");
  }
  const long floor_n = 2L * M;
  if (r_minus_m == 0.0 || vbv_norm_upper == 0.0 || std::isinf(lambda_hat_lower))
  {
    return floor_n;
  }
  // log c computed in log space so that large lambda_hat does not overflow.
  const double log_c = std::log(r_minus_m) + std::log(vbv_norm_upper) +
                       (2.0 * M - 1.0) * std::log(lambda_hat_lower);
  const double log_ratio = std::log(delta) - (std::max(log_c, std::log(delta)) +
                                               std::log1p(std::exp(-std::abs(log_c - std::log(delta)))));
  const double bound = log_ratio / -std::log(lambda_hat_lower);
  if (!(bound < static_cast<double>(n_max)))
  {
    return n_max;
  }
  long n = static_cast<long>(std::ceil(bound));
  n += n % 2;
  return std::min(std::max(n, floor_n), n_max);
}

QuadratureGrid build_grid(long n_nodes)
{
  if (n_nodes < 2)
  {
    throw std::invalid_argument("build_grid: N must be at least 2");
  }
  QuadratureGrid g;
  g.n_nodes = n_nodes;
  g.nodes.reserve(static_cast<std::size_t>(n_nodes));
  for (long j = 1; j <= n_nodes; ++j)
  {
    QuadratureNode node;
    node.j = j;
    node.theta = RealInterval(static_cast<double>(2 * j - 1)) * pi_interval() /
                 RealInterval(static_cast<double>(n_nodes));
    node.z = unit_root(2 * j - 1, n_nodes);
    g.nodes.push_back(node);
  }
  return g;
}

double outer_bound(int p, double r_minus_m, double lambda_hat_lower, double vbv_norm_upper,
                   long n_nodes)
{
  if (p < 0 || static_cast<long>(p) >= n_nodes)
  {
    throw std::invalid_argument("outer_bound: need 0 <= p < N");
  }
  if (!(lambda_hat_lower > 1.0))
  {
    throw std::invalid_argument("outer_bound: lambda_hat_lower must exceed 1");
  }
  if (r_minus_m == 0.0 || vbv_norm_upper == 0.0)
  {
    return 0.0;
  }
  // lambda^(p-N) / (1 - lambda^-N) decreases in lambda for p < N, so the
  // lower bound of |lambda_hat| yields an upper bound.
  const RealInterval lam(lambda_hat_lower);
  const double big_n = pow(lam, static_cast<unsigned>(n_nodes)).inf();
  const double big_np = pow(lam, static_cast<unsigned>(n_nodes - p)).inf();
  const double q = div_up(1.0, big_n);
  const double num = div_up(1.0, big_np);
  const double den = sub_down(1.0, q);
  if (!(den > 0.0))
  {
    return std::numeric_limits<double>::infinity();
  }
  return mul_up(mul_up(r_minus_m, vbv_norm_upper), div_up(num, den));
}

IntervalMatrix operator_times(const HermitianOperator &b, const Eigen::MatrixXcd &v)
{
  if (v.rows() != b.n())
  {
    throw std::invalid_argument("operator_times: dimension mismatch");
  }
  using RowMajor = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;
  const RowMajor br = b.sparse();
  IntervalMatrix w(b.n(), v.cols());
  for (Eigen::Index c = 0; c < v.cols(); ++c)
  {
    for (Eigen::Index i = 0; i < b.n(); ++i)
    {
      ComplexInterval acc(0.0);
      for (RowMajor::InnerIterator it(br, i); it; ++it)
      {
        acc += ComplexInterval(it.value()) * ComplexInterval(v(it.col(), c));
      }
      w(i, c) = acc;
    }
  }
  return w;
}

double vbv_norm_upper(const Eigen::MatrixXcd &v, const HermitianOperator &b)
{
  const IntervalMatrix w = operator_times(b, v);
  const IntervalMatrix vh = to_interval(Eigen::MatrixXcd(v.adjoint()));
  return frob_norm_sup(matmul(vh, w));
}

IntervalMatrix node_block(const IntervalMatrix &w, const SolveCertificate &cert)
{
  const Eigen::Index n = w.rows();
  const Eigen::Index l = w.cols();
  const Eigen::Index k = cert.y.cols();
  if (cert.y.rows() != n)
  {
    throw std::invalid_argument("node_block: dimension mismatch");
  }
  // Column norms and magnitudes of W for the error terms.
  Eigen::VectorXd w_norm(l);
  Eigen::MatrixXd w_mag(n, l);
  for (Eigen::Index a = 0; a < l; ++a)
  {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
    {
      w_mag(i, a) = w(i, a).mag();
      acc = add_up(acc, mul_up(w_mag(i, a), w_mag(i, a)));
    }
    w_norm(a) = sqrt_up(acc);
  }
  IntervalMatrix g(l, k);
  for (Eigen::Index a = 0; a < l; ++a)
  {
    for (Eigen::Index c = 0; c < k; ++c)
    {
      ComplexInterval acc(0.0);
      for (Eigen::Index i = 0; i < n; ++i)
      {
        const ComplexInterval wc = conj(w(i, a));
        acc += wc * ComplexInterval(cert.y(i, c));
        if (cert.d.size() != 0 && cert.d(i, c) != std::complex<double>(0.0, 0.0))
        {
          acc += wc * ComplexInterval(cert.d(i, c));
        }
      }
      double err = 0.0;
      if (cert.path == SolvePath::FastPD)
      {
        // |w^H e| <= ||w||_2 ||e||_2.
        err = mul_up(w_norm(a), cert.err2(c));
      }
      else
      {
        for (Eigen::Index i = 0; i < n; ++i)
        {
          err = add_up(err, mul_up(w_mag(i, a), cert.rad(i, c)));
        }
      }
      g(a, c) = inflate(acc, err);
    }
  }
  return g;
}

MomentEnclosure assemble_moment(int p, const QuadratureGrid &grid,
                                const std::vector<IntervalMatrix> &node_blocks, double outer)
{
  if (static_cast<long>(node_blocks.size()) != grid.n_nodes)
  {
    throw std::invalid_argument("assemble_moment: missing node certificates");
  }
  if (p < 0 || !(outer >= 0.0))
  {
    throw std::invalid_argument("assemble_moment: invalid order or outer bound");
  }
  const Eigen::Index l = node_blocks.front().rows();
  IntervalMatrix sum = IntervalMatrix::Constant(l, node_blocks.front().cols(), ComplexInterval(0.0));
  const long n_nodes = grid.n_nodes;
  for (long idx = 0; idx < n_nodes; ++idx)
  {
    const long j = grid.nodes[static_cast<std::size_t>(idx)].j;
    const ComplexInterval w = unit_root(static_cast<long long>(p + 1) * (2 * j - 1), n_nodes);
    const IntervalMatrix &g = node_blocks[static_cast<std::size_t>(idx)];
    for (Eigen::Index c = 0; c < g.cols(); ++c)
    {
      for (Eigen::Index r = 0; r < g.rows(); ++r)
      {
        sum(r, c) += w * g(r, c);
      }
    }
  }
  const RealInterval nn(static_cast<double>(n_nodes));
  for (Eigen::Index c = 0; c < sum.cols(); ++c)
  {
    for (Eigen::Index r = 0; r < sum.rows(); ++r)
    {
      sum(r, c) = inflate(sum(r, c) / nn, outer);
    }
  }
  MomentEnclosure m;
  m.p = p;
  m.value = hermitian_hull(sum);
  return m;
}

MomentEnclosure assemble_moment(int p, const QuadratureGrid &grid,
                                const std::vector<SolveCertificate> &certs,
                                const IntervalMatrix &w, double outer)
{
  std::vector<IntervalMatrix> blocks;
  blocks.reserve(certs.size());
  for (const auto &c : certs)
  {
    if (!c.verified)
    {
      throw std::runtime_error("assemble_moment: node certificate missing");
    }
    blocks.push_back(node_block(w, c));
  }
  return assemble_moment(p, grid, blocks, outer);
}

HankelPencilEnclosure build_hankel(const std::vector<MomentEnclosure> &moments, int M)
{
  if (M < 1 || moments.size() < static_cast<std::size_t>(2 * M))
  {
    throw std::invalid_argument("build_hankel: need moments 0..2M-1");
  }
  for (int p = 0; p < 2 * M; ++p)
  {
    if (moments[static_cast<std::size_t>(p)].p != p)
    {
      throw std::invalid_argument("build_hankel: moments out of order");
    }
  }
  const Eigen::Index l = moments.front().value.rows();
  HankelPencilEnclosure h;
  h.h_lt.resize(l * M, l * M);
  h.h.resize(l * M, l * M);
  for (int bi = 0; bi < M; ++bi)
  {
    for (int bj = 0; bj < M; ++bj)
    {
      h.h_lt.block(bi * l, bj * l, l, l) = moments[static_cast<std::size_t>(bi + bj + 1)].value;
      h.h.block(bi * l, bj * l, l, l) = moments[static_cast<std::size_t>(bi + bj)].value;
    }
  }
  return h;
}

}  // namespace ssenclose
