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
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "qconn/distribution.hpp"
#include "qconn/network.hpp"
#include "qconn/rng.hpp"

namespace qconn {

/// Bare topology: nodes (optionally positioned) plus unweighted edges.
/// Concurrences are attached separately so one realization of the topology
/// can carry many samplings of the edge values.
struct Topology {
  std::vector<Node> nodes;
  std::vector<std::pair<NodeId, NodeId>> edges;
};

inline Topology complete_graph(std::int64_t n) {
  detail::require(n >= 2, errc::invalid_parameter,
                  "complete graph needs at least 2 nodes");
  Topology t;
  t.nodes.reserve(static_cast<std::size_t>(n));
  for (NodeId i = 0; i < n; ++i) t.nodes.push_back(Node{i, {}});
  t.edges.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) t.edges.emplace_back(i, j);
  return t;
}

/// G(n, p) with p = avg_degree / (n - 1); pairs are visited in a fixed
/// order so a seed pins the edge set exactly.
inline Topology erdos_renyi(std::int64_t n, double avg_degree,
                            std::uint64_t seed) {
  detail::require(n >= 2, errc::invalid_parameter,
                  "random graph needs at least 2 nodes");
  detail::require(avg_degree > 0.0 && avg_degree <= static_cast<double>(n - 1),
                  errc::invalid_parameter,
                  "average degree must lie in (0, n-1]");
  const double p = avg_degree / static_cast<double>(n - 1);
  Topology t;
  t.nodes.reserve(static_cast<std::size_t>(n));
  for (NodeId i = 0; i < n; ++i) t.nodes.push_back(Node{i, {}});
  Rng rng(seed);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) t.edges.emplace_back(i, j);
  return t;
}

/// Photonic random-geometric model over a disk of radius `radius_km`.
/// Nodes are spread uniformly over the disk; two nodes at distance z share
/// a link with probability
///   P(z) = exp(-z / (2 alpha R)) * (1 - (1 - 10^(-gamma z / 10))^n_p),
/// an exponential length cutoff times the chance that at least one of n_p
/// photons survives fiber loss of gamma dB/km.
struct WaxmanParams {
  std::int64_t nodes = 500;
  double radius_km = 1000.0;
  std::optional<double> alpha;  // defaults to 226 / (2 R)
  double gamma_db_per_km = 0.2;
  double photons_per_attempt = 1000.0;
  std::uint64_t seed = 0;

  double resolved_alpha() const {
    return alpha.value_or(226.0 / (2.0 * radius_km));
  }

  void validate() const {
    detail::require(nodes >= 1, errc::invalid_parameter,
                    "node count must be positive");
    detail::require(radius_km > 0.0, errc::invalid_parameter,
                    "radius must be positive");
    detail::require(resolved_alpha() > 0.0, errc::invalid_parameter,
                    "alpha must be positive");
    detail::require(gamma_db_per_km > 0.0, errc::invalid_parameter,
                    "gamma must be positive");
    detail::require(photons_per_attempt > 0.0, errc::invalid_parameter,
                    "photon count must be positive");
  }
};

inline double waxman_link_probability(double z_km, const WaxmanParams& p) {
  const double decay = 2.0 * p.resolved_alpha() * p.radius_km;
  const double loss = std::pow(10.0, -p.gamma_db_per_km * z_km / 10.0);
  const double success =
      1.0 - std::pow(1.0 - loss, p.photons_per_attempt);
  return std::exp(-z_km / decay) * success;
}

inline Topology waxman(const WaxmanParams& params) {
  params.validate();
  Topology t;
  const auto n = static_cast<std::size_t>(params.nodes);
  t.nodes.reserve(n);
  Rng rng(params.seed);
  for (std::size_t i = 0; i < n; ++i) {
    // area-uniform: radius grows as sqrt(u)
    const double r = params.radius_km * std::sqrt(rng.u01());
    const double theta = 2.0 * std::numbers::pi * rng.u01();
    t.nodes.push_back(Node{static_cast<NodeId>(i),
                           Position{r * std::cos(theta),
                                    r * std::sin(theta)}});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Position& a = *t.nodes[i].position;
      const Position& b = *t.nodes[j].position;
      const double z = std::hypot(a.x - b.x, a.y - b.y);
      if (rng.bernoulli(waxman_link_probability(z, params)))
        t.edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
  }
  return t;
}

/// Attach i.i.d. edge concurrences to a topology. Edges are visited in
/// declaration order, one draw per edge, so (topology, distribution, seed)
/// pins the network.
inline Network sample_concurrences(const Topology& topology,
                                   const ConcurrenceDistribution& dist,
                                   std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(topology.edges.size());
  for (const auto& [u, v] : topology.edges)
    edges.push_back(Edge{u, v, dist.sample(rng)});
  return Network(topology.nodes, std::move(edges));
}

}  // namespace qconn
