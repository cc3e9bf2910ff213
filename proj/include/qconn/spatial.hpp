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
#include <limits>
#include <numbers>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qconn/metrics.hpp"
#include "qconn/network.hpp"

namespace qconn {

/// Percolation threshold for this class of photonic geometric networks,
/// taken as a given constant (nodes per square km).
inline constexpr double kCriticalDensityPerKm2 = 6.82e-5;

struct DensityReport {
  double rho = 0.0;  // nodes per square km
  bool above_critical = false;
};

inline DensityReport density_report(std::int64_t nodes, double radius_km) {
  detail::require(nodes >= 1, errc::invalid_parameter,
                  "need at least one node");
  detail::require(radius_km > 0.0, errc::invalid_parameter,
                  "radius must be positive");
  DensityReport r;
  r.rho = static_cast<double>(nodes) /
          (std::numbers::pi * radius_km * radius_km);
  r.above_critical = r.rho > kCriticalDensityPerKm2;
  return r;
}

/// Assignment of positioned nodes to spatial regions of scale
/// `region_radius_km`. Disks of a fixed radius cannot tile the plane, so
/// regions are the Voronoi cells of a hexagonal lattice of centers with
/// spacing 2r, clipped to the disk that encloses the node positions; cells
/// then have circumradius about 1.155 r. Empty regions are legal.
struct RegionPartition {
  double region_radius_km = 0.0;
  Position disk_center;
  double disk_radius_km = 0.0;
  std::vector<Position> centers;
  std::unordered_map<NodeId, std::uint32_t> assignment;
  std::vector<std::uint32_t> node_counts;  // per region
};

inline RegionPartition partition_regions(const Network& net,
                                         double region_radius_km) {
  detail::require(region_radius_km > 0.0, errc::invalid_parameter,
                  "region radius must be positive");
  detail::require(net.node_count() > 0, errc::invalid_parameter,
                  "network has no nodes");
  detail::require(net.all_positioned(), errc::missing_positions,
                  "regional analysis needs positions on every node");

  RegionPartition part;
  part.region_radius_km = region_radius_km;

  double cx = 0.0, cy = 0.0;
  for (const Node& n : net.nodes()) {
    cx += n.position->x;
    cy += n.position->y;
  }
  cx /= static_cast<double>(net.node_count());
  cy /= static_cast<double>(net.node_count());
  double disk_r = 0.0;
  for (const Node& n : net.nodes())
    disk_r = std::max(disk_r,
                      std::hypot(n.position->x - cx, n.position->y - cy));
  part.disk_center = Position{cx, cy};
  part.disk_radius_km = disk_r;

  // hexagonal lattice: rows sqrt(3) r apart, 2r between centers in a row,
  // odd rows shifted by r; one lattice point sits on the disk center
  const double r = region_radius_km;
  const double row_step = std::sqrt(3.0) * r;
  const double keep = disk_r * (1.0 + 1e-12) + 1e-9;
  const auto j_span = static_cast<std::int64_t>(disk_r / row_step) + 1;
  const auto i_span = static_cast<std::int64_t>(disk_r / (2.0 * r)) + 2;
  for (std::int64_t j = -j_span; j <= j_span; ++j) {
    const double y = cy + static_cast<double>(j) * row_step;
    const double shift = (j % 2 != 0) ? r : 0.0;
    for (std::int64_t i = -i_span; i <= i_span; ++i) {
      const double x = cx + static_cast<double>(i) * 2.0 * r + shift;
      if (std::hypot(x - cx, y - cy) <= keep)
        part.centers.push_back(Position{x, y});
    }
  }

  part.node_counts.assign(part.centers.size(), 0);
  part.assignment.reserve(net.node_count());
  for (const Node& n : net.nodes()) {
    std::uint32_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::uint32_t c = 0; c < part.centers.size(); ++c) {
      const double dx = n.position->x - part.centers[c].x;
      const double dy = n.position->y - part.centers[c].y;
      const double d2 = dx * dx + dy * dy;
      if (d2 < best_d2) {  // ties keep the lowest center index
        best_d2 = d2;
        best = c;
      }
    }
    part.assignment.emplace(n.id, best);
    ++part.node_counts[best];
  }
  return part;
}

/// Connectivity of one region's node set; regions with fewer than two
/// nodes have no pairs and report no value.
struct RegionReport {
  std::uint32_t region = 0;
  Position center;
  std::uint32_t node_count = 0;
  std::optional<ConnectivityReport> connectivity;
};

/// Per-region QCM/QCF. Paths between nodes of a region are free to leave
/// it: strengths come from whole-network optimal paths.
inline std::vector<RegionReport> regional_qcm(const Network& net,
                                              const RegionPartition& part,
                                              MetricParams params,
                                              unsigned threads = 0) {
  params.validate();
  detail::require(part.assignment.size() == net.node_count(),
                  errc::inconsistent_partition,
                  "partition does not cover the network's nodes");
  std::vector<std::vector<NodeId>> members(part.centers.size());
  for (const Node& n : net.nodes()) {
    auto it = part.assignment.find(n.id);
    detail::require(it != part.assignment.end(),
                    errc::inconsistent_partition,
                    "node " + std::to_string(n.id) + " unassigned");
    detail::require(it->second < part.centers.size(),
                    errc::inconsistent_partition, "region index out of range");
    members[it->second].push_back(n.id);
  }

  std::vector<RegionReport> out;
  out.reserve(part.centers.size());
  for (std::uint32_t rix = 0; rix < part.centers.size(); ++rix) {
    RegionReport rep;
    rep.region = rix;
    rep.center = part.centers[rix];
    rep.node_count = static_cast<std::uint32_t>(members[rix].size());
    if (members[rix].size() >= 2) {
      const StrengthTable table = all_pairs_strengths(
          net, NodeSet(members[rix]), {.keep_paths = false,
                                       .threads = threads});
      rep.connectivity = connectivity_report(table, params);
    }
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace qconn
