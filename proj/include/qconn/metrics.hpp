// Copyright 2026 The qconn authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>

#include "qconn/pathopt.hpp"

namespace qconn {

/// Threshold of the quantum information processing task: a pair counts as
/// functionally connected only when its connection strength strictly
/// exceeds epsilon. A pair sitting exactly at the threshold does not pass.
struct MetricParams {
  double epsilon = 0.0;

  void validate() const {
    detail::require(epsilon >= 0.0 && epsilon <= 1.0, errc::invalid_parameter,
                    "epsilon must lie in [0,1]");
  }
};

struct ConnectivityReport {
  double qcm = 0.0;
  double qcf = 0.0;
  std::uint64_t pair_count = 0;
  std::uint64_t passing_pairs = 0;
};

/// QCM and QCF of a strength table in one pass. The threshold test runs in
/// the log domain, so a strength stored as log(c) compares against
/// epsilon = c without round-trip rounding surprises.
inline ConnectivityReport connectivity_report(const StrengthTable& table,
                                              MetricParams params) {
  params.validate();
  const std::uint64_t np = table.pair_count();
  detail::require(np >= 1, errc::empty_table, "strength table has no pairs");
  const double log_eps = std::log(params.epsilon);
  double sum = 0.0;
  std::uint64_t passing = 0;
  for (double ls : table.log_strengths()) {
    if (ls > log_eps) {
      ++passing;
      sum += std::exp(ls);
    }
  }
  ConnectivityReport r;
  r.pair_count = np;
  r.passing_pairs = passing;
  r.qcm = sum / static_cast<double>(np);
  r.qcf = static_cast<double>(passing) / static_cast<double>(np);
  return r;
}

/// Average connection strength over pairs above threshold.
inline double qcm(const StrengthTable& table, MetricParams params) {
  return connectivity_report(table, params).qcm;
}

/// Fraction of pairs whose strength strictly exceeds the threshold.
inline double qcf(const StrengthTable& table, MetricParams params) {
  return connectivity_report(table, params).qcf;
}

/// Quantum clustering coefficient of node i: the QCM of its neighbour set,
/// with paths free to run through any network node, i included. Undefined
/// (degree_too_small) below degree 2.
inline double qcc(const Network& net, NodeId i, MetricParams params,
                  unsigned threads = 0) {
  params.validate();
  const NodeSet neighbors = neighbor_set(net, i);
  detail::require(neighbors.size() >= 2, errc::degree_too_small,
                  "qcc undefined for node " + std::to_string(i) +
                      " of degree " + std::to_string(neighbors.size()));
  const StrengthTable table =
      all_pairs_strengths(net, neighbors, {.keep_paths = false,
                                           .threads = threads});
  return connectivity_report(table, params).qcm;
}

}  // namespace qconn
