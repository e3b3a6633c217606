// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace ssenclose
{

// Decimal strings for interval endpoints. Both start from the shortest
// round-trip digits of x; if that decimal lies on the wrong side of x it is
// moved outward by one unit in its last digit. The comparison with x uses the
// exact decimal expansion of x, so decimal_down(x) <= x <= decimal_up(x)
// holds for the real numbers the strings denote.
std::string decimal_down(double x);
std::string decimal_up(double x);

}  // namespace ssenclose
