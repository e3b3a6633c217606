// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssenclose/hankel.hpp"

namespace ssenclose
{

struct ReportEntry
{
  int index = 1;  // 1-based position of the first eigenvalue of the cluster
  EigenEnclosure enclosure;
};

struct Report
{
  double a = 0.0;
  double b = 0.0;
  int m = 0;
  int L = 0;
  int M = 0;
  long N = 0;
  double delta = 0.0;
  std::vector<ReportEntry> eigenvalues;
  std::optional<double> lambda_min_b;
  std::optional<double> lambda_hat_lower;
  std::string gap_method;
  std::string solver_path;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::string status;  // "verified", "partial" or "failed"
  std::string error;   // failed stage, empty on success
};

// JSON text of the report. Verified endpoints are written as decimal strings
// rounded outward; failed entries carry null endpoints.
std::string emit_report(const Report &r);

void write_report(std::ostream &os, const Report &r);
void write_report(const std::string &path, const Report &r);

}  // namespace ssenclose
