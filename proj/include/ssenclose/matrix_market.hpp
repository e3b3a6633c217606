// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "ssenclose/hermitian_operator.hpp"

namespace ssenclose
{

// Reads a Matrix Market file (coordinate or array; real, integer or complex;
// general, symmetric or hermitian). Values are taken exactly as the nearest
// binary64 of the decimal text. Symmetric and hermitian storage is expanded.
// General input must either hold exact conjugate pairs for every
// off-diagonal entry or lie entirely in one triangle, which is then mirrored.
// Throws std::runtime_error on malformed input and std::invalid_argument on
// non-square, non-Hermitian or non-finite data.
HermitianOperator load_matrix_market(const std::string &path);
HermitianOperator read_matrix_market(std::istream &in);

// Writes coordinate format, lower triangle, with "symmetric" for real data and
// "hermitian" otherwise. Values use the shortest round-trip representation,
// so reading the file back reproduces every entry bit for bit.
void write_matrix_market(const std::string &path, const HermitianOperator &op);
void write_matrix_market(std::ostream &out, const HermitianOperator &op);

// Shortest decimal string that parses back to x.
std::string shortest_repr(double x);

}  // namespace ssenclose
