// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ssenclose/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace ssenclose
{

namespace
{

enum class Format
{
  Coordinate,
  Array
};
enum class Field
{
  Real,
  Integer,
  Complex
};
enum class Symmetry
{
  General,
  Symmetric,
  Hermitian
};

std::string lower(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string_view> split(std::string_view line)
{
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size())
  {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
    {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
    {
      ++i;
    }
    if (i > start)
    {
      out.push_back(line.substr(start, i - start));
    }
  }
  return out;
}

[[noreturn]] void fail(long line_no, const std::string &what)
{
  throw std::runtime_error("Matrix Market line " + std::to_string(line_no) + ": " + what);
}

long long parse_index(std::string_view tok, long line_no)
{
  long long v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
  {
    fail(line_no, "bad integer '" + std::string(tok) + "'");
  }
  return v;
}

double parse_value(std::string_view tok, Field field, long line_no)
{
  if (field == Field::Integer)
  {
    const long long v = parse_index(tok, line_no);
    if (std::llabs(v) > (1LL << 53))
    {
      fail(line_no, "integer entry not exactly representable");
    }
    return static_cast<double>(v);
  }
  const char *first = tok.data();
  if (!tok.empty() && tok.front() == '+')
  {
    ++first;
  }
  double v = 0.0;
  const auto res = std::from_chars(first, tok.data() + tok.size(), v);
  if (res.ec == std::errc::result_out_of_range)
  {
    throw std::invalid_argument("Matrix Market: entry out of binary64 range: " + std::string(tok));
  }
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
  {
    fail(line_no, "bad number '" + std::string(tok) + "'");
  }
  if (!std::isfinite(v))
  {
    throw std::invalid_argument("Matrix Market: non-finite entry");
  }
  return v;
}

}  // namespace

HermitianOperator read_matrix_market(std::istream &in)
{
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line))
  {
    throw std::runtime_error("Matrix Market: empty input");
  }
  ++line_no;
  const auto banner = split(line);
  if (banner.size() != 5 || lower(std::string(banner[0])) != "%%matrixmarket" ||
      lower(std::string(banner[1])) != "matrix")
  {
    fail(line_no, "missing %%MatrixMarket matrix banner");
  }
  const std::string fmt = lower(std::string(banner[2]));
  const std::string fld = lower(std::string(banner[3]));
  const std::string sym = lower(std::string(banner[4]));
  Format format;
  if (fmt == "coordinate")
  {
    format = Format::Coordinate;
  }
  else if (fmt == "array")
  {
    format = Format::Array;
  }
  else
  {
    fail(line_no, "unsupported format '" + fmt + "'");
  }
  Field field;
  if (fld == "real" || fld == "double")
  {
    field = Field::Real;
  }
  else if (fld == "integer")
  {
    field = Field::Integer;
  }
  else if (fld == "complex")
  {
    field = Field::Complex;
  }
  else
  {
    fail(line_no, "unsupported field '" + fld + "'");
  }
  Symmetry symmetry;
  if (sym == "general")
  {
    symmetry = Symmetry::General;
  }
  else if (sym == "symmetric")
  {
    symmetry = Symmetry::Symmetric;
  }
  else if (sym == "hermitian")
  {
    symmetry = Symmetry::Hermitian;
  }
  else
  {
    fail(line_no, "unsupported symmetry '" + sym + "'");
  }
  if (symmetry == Symmetry::Hermitian && field != Field::Complex)
  {
    symmetry = Symmetry::Symmetric;
  }

  auto next_data_line = [&](std::vector<std::string_view> &tokens) -> bool
  {
    while (std::getline(in, line))
    {
      ++line_no;
      if (!line.empty() && line[0] == '%')
      {
        continue;
      }
      tokens = split(line);
      if (!tokens.empty())
      {
        return true;
      }
    }
    return false;
  };

  std::vector<std::string_view> tok;
  if (!next_data_line(tok))
  {
    fail(line_no, "missing size line");
  }
  const std::size_t want = format == Format::Coordinate ? 3 : 2;
  if (tok.size() != want)
  {
    fail(line_no, "bad size line");
  }
  const long long rows = parse_index(tok[0], line_no);
  const long long cols = parse_index(tok[1], line_no);
  if (rows <= 0 || cols <= 0)
  {
    fail(line_no, "dimensions must be positive");
  }
  if (rows != cols)
  {
    throw std::invalid_argument("Matrix Market: matrix is not square");
  }
  const Eigen::Index n = rows;
  const std::size_t vals = field == Field::Complex ? 2 : 1;

  // Raw entries keyed by (row, col); duplicates are rejected.
  std::map<std::pair<Eigen::Index, Eigen::Index>, std::complex<double>> raw;
  auto insert = [&](Eigen::Index i, Eigen::Index j, std::complex<double> v)
  {
    if (!raw.emplace(std::make_pair(i, j), v).second)
    {
      fail(line_no, "duplicate entry");
    }
  };
  auto read_value = [&](const std::vector<std::string_view> &t, std::size_t off)
  {
    const double re = parse_value(t[off], field, line_no);
    const double im = vals == 2 ? parse_value(t[off + 1], field, line_no) : 0.0;
    return std::complex<double>(re, im);
  };

  if (format == Format::Coordinate)
  {
    const long long nnz = parse_index(tok[2], line_no);
    if (nnz < 0)
    {
      fail(line_no, "negative entry count");
    }
    for (long long k = 0; k < nnz; ++k)
    {
      if (!next_data_line(tok))
      {
        fail(line_no, "unexpected end of file");
      }
      if (tok.size() != 2 + vals)
      {
        fail(line_no, "wrong number of fields");
      }
      const long long i = parse_index(tok[0], line_no);
      const long long j = parse_index(tok[1], line_no);
      if (i < 1 || i > n || j < 1 || j > n)
      {
        fail(line_no, "index out of range");
      }
      insert(i - 1, j - 1, read_value(tok, 2));
    }
  }
  else
  {
    // Column-major; symmetric storage lists only the lower triangle.
    for (Eigen::Index j = 0; j < n; ++j)
    {
      for (Eigen::Index i = (symmetry == Symmetry::General ? 0 : j); i < n; ++i)
      {
        if (!next_data_line(tok))
        {
          fail(line_no, "unexpected end of file");
        }
        if (tok.size() != vals)
        {
          fail(line_no, "wrong number of fields");
        }
        const std::complex<double> v = read_value(tok, 0);
        if (v != std::complex<double>(0.0, 0.0))
        {
          insert(i, j, v);
        }
      }
    }
  }
  if (next_data_line(tok))
  {
    fail(line_no, "trailing data");
  }

  std::vector<Triplet> t;
  t.reserve(2 * raw.size());
  if (symmetry != Symmetry::General)
  {
    for (const auto &[ij, v] : raw)
    {
      const auto [i, j] = ij;
      if (i != j && raw.count({j, i}) != 0)
      {
        throw std::invalid_argument("Matrix Market: both triangles given for symmetric storage");
      }
      t.emplace_back(i, j, v);
      if (i != j)
      {
        t.emplace_back(j, i, symmetry == Symmetry::Hermitian ? std::conj(v) : v);
      }
    }
    return HermitianOperator::from_triplets(n, t);
  }

  bool has_lower = false, has_upper = false;
  for (const auto &[ij, v] : raw)
  {
    has_lower = has_lower || ij.first > ij.second;
    has_upper = has_upper || ij.first < ij.second;
  }
  for (const auto &[ij, v] : raw)
  {
    const auto [i, j] = ij;
    t.emplace_back(i, j, v);
    if (i != j && !(has_lower && has_upper))
    {
      t.emplace_back(j, i, std::conj(v));
    }
  }
  return HermitianOperator::from_triplets(n, t);
}

HermitianOperator load_matrix_market(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw std::runtime_error("cannot open " + path);
  }
  return read_matrix_market(in);
}

std::string shortest_repr(double x)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_matrix_market(std::ostream &out, const HermitianOperator &op)
{
  const bool real = op.is_real();
  std::vector<Triplet> lower_entries;
  for (const auto &t : op.triplets())
  {
    if (t.row() >= t.col())
    {
      lower_entries.push_back(t);
    }
  }
  out << "%%MatrixMarket matrix coordinate " << (real ? "real symmetric" : "complex hermitian")
      << "\n";
  out << op.n() << " " << op.n() << " " << lower_entries.size() << "\n";
  for (const auto &t : lower_entries)
  {
    out << t.row() + 1 << " " << t.col() + 1 << " " << shortest_repr(t.value().real());
    if (!real)
    {
      out << " " << shortest_repr(t.value().imag());
    }
    out << "\n";
  }
}

void write_matrix_market(const std::string &path, const HermitianOperator &op)
{
  std::ofstream out(path);
  if (!out)
  {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  write_matrix_market(out, op);
  out.flush();
  if (!out)
  {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace ssenclose
