// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>

#include "ssenclose/hermitian_operator.hpp"

namespace ssenclose
{

// Mass-spring chain: A = tridiag(-1, 2, -1), B = diag(b_i) with
// b_i = 1 + sqrt(variance) g_i and g_i standard normal from Rng(seed).
// variance = 0 gives B = I exactly.
std::pair<HermitianOperator, HermitianOperator> gen_mass_spring(Eigen::Index n, double variance,
                                                                std::uint64_t seed);

// A = pentadiag(1, 2, 3, 2, 1) Toeplitz, B = diag(1, ..., 1, b_last).
std::pair<HermitianOperator, HermitianOperator> gen_pentadiag(Eigen::Index n, double b_last);

}  // namespace ssenclose
