// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ssenclose/report.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "ssenclose/decimal.hpp"

namespace ssenclose
{

std::string emit_report(const Report &r)
{
  using nlohmann::ordered_json;
  ordered_json j;
  j["window"] = {r.a, r.b};
  j["m"] = r.m;
  j["L"] = r.L;
  j["M"] = r.M;
  j["N"] = r.N;
  j["delta"] = r.delta;
  ordered_json eigs = ordered_json::array();
  for (const auto &e : r.eigenvalues)
  {
    ordered_json item;
    item["index"] = e.index;
    const bool ok = e.enclosure.status == EigenStatus::Verified;
    if (ok)
    {
      item["inf"] = decimal_down(e.enclosure.interval.inf());
      item["sup"] = decimal_up(e.enclosure.interval.sup());
    }
    else
    {
      item["inf"] = nullptr;
      item["sup"] = nullptr;
    }
    item["status"] = ok ? "verified" : "failed";
    item["cluster_size"] = e.enclosure.cluster_size;
    eigs.push_back(item);
  }
  j["eigenvalues"] = eigs;
  ordered_json cert;
  cert["lambda_min_B"] = r.lambda_min_b ? ordered_json(*r.lambda_min_b) : ordered_json(nullptr);
  cert["lambda_hat_lower"] =
      r.lambda_hat_lower ? ordered_json(*r.lambda_hat_lower) : ordered_json(nullptr);
  cert["gap_method"] = r.gap_method;
  j["certificates"] = cert;
  j["solver_path"] = r.solver_path;
  j["warnings"] = r.warnings;
  ordered_json t = ordered_json::object();
  for (const auto &[name, ms] : r.timings_ms)
  {
    t[name] = ms;
  }
  j["timings_ms"] = t;
  j["status"] = r.status;
  if (!r.error.empty())
  {
    j["error"] = r.error;
  }
  return j.dump(2);
}

void write_report(std::ostream &os, const Report &r)
{
  os << emit_report(r) << '\n';
  if (!os)
  {
    throw std::runtime_error("write_report: output failed");
  }
}

void write_report(const std::string &path, const Report &r)
{
  std::ofstream f(path);
  if (!f)
  {
    throw std::runtime_error("write_report: cannot open " + path);
  }
  write_report(f, r);
}

}  // namespace ssenclose
