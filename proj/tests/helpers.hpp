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

// Test-only oracles kept independent of the path engine: exhaustive
// simple-path search, plain BFS hop counting and triangle counting.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qconn/generate.hpp"
#include "qconn/network.hpp"
#include "qconn/rng.hpp"

namespace testutil {

using qconn::Network;
using qconn::NodeId;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct BestPath {
  double log_strength = kNegInf;
  std::int32_t hops = 0;
  std::vector<NodeId> path;  // empty if unreachable
};

// True when (la, ha, pa) is a strictly better record than (lb, hb, pb)
// under the engine's tie rules: stronger, then fewer hops, then
// lexicographically smaller node sequence.
inline bool better(double la, std::int32_t ha, const std::vector<NodeId>& pa,
                   double lb, std::int32_t hb, const std::vector<NodeId>& pb) {
  if (la != lb) return la > lb;
  if (ha != hb) return ha < hb;
  return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(),
                                      pb.end());
}

// Exhaustive DFS over all simple paths out of `source`, keeping the best
// record per reachable target. Log-strengths accumulate in path order.
inline std::vector<BestPath> brute_force_from(const Network& net,
                                              NodeId source) {
  const std::size_t n = net.node_count();
  std::vector<BestPath> best(n);
  std::vector<bool> on_path(n, false);
  std::vector<NodeId> path;
  const std::uint32_t s = net.index_of(source);

  auto dfs = [&](auto&& self, std::uint32_t u, double log_sum,
                 std::int32_t hops) -> void {
    for (const qconn::Network::Arc& a : net.arcs(u)) {
      if (on_path[a.to] || a.concurrence == 0.0) continue;
      const double ls = log_sum + std::log(a.concurrence);
      path.push_back(net.id_of(a.to));
      BestPath& rec = best[a.to];
      if (rec.path.empty() ||
          better(ls, hops + 1, path, rec.log_strength, rec.hops, rec.path)) {
        rec.log_strength = ls;
        rec.hops = hops + 1;
        rec.path = path;
      }
      on_path[a.to] = true;
      self(self, a.to, ls, hops + 1);
      on_path[a.to] = false;
      path.pop_back();
    }
  };

  on_path[s] = true;
  path.push_back(source);
  dfs(dfs, s, 0.0, 0);
  return best;
}

// Unweighted hop distances from `source`; -1 for unreachable. Edges with
// zero concurrence do not count.
inline std::vector<std::int32_t> bfs_hops(const Network& net, NodeId source) {
  std::vector<std::int32_t> depth(net.node_count(), -1);
  std::vector<std::uint32_t> frontier{net.index_of(source)};
  depth[frontier[0]] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const std::uint32_t u = frontier[head];
    for (const qconn::Network::Arc& a : net.arcs(u)) {
      if (a.concurrence == 0.0 || depth[a.to] >= 0) continue;
      depth[a.to] = depth[u] + 1;
      frontier.push_back(a.to);
    }
  }
  return depth;
}

// Classical clustering coefficient by direct triangle count.
inline double classical_clustering(const Network& net, NodeId node) {
  const auto neighbors = qconn::neighbor_set(net, node);
  const std::size_t d = neighbors.size();
  if (d < 2) return 0.0;
  std::size_t links = 0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b)
      for (const qconn::Network::Arc& arc :
           net.arcs(net.index_of(neighbors[a])))
        if (net.id_of(arc.to) == neighbors[b]) ++links;
  return static_cast<double>(links) /
         (static_cast<double>(d) * static_cast<double>(d - 1) / 2.0);
}

inline Network make_star(int leaves, double c) {
  std::vector<qconn::Node> nodes{{0, {}}};
  std::vector<qconn::Edge> edges;
  for (NodeId i = 1; i <= leaves; ++i) {
    nodes.push_back({i, {}});
    edges.push_back({0, i, c});
  }
  return Network(std::move(nodes), std::move(edges));
}

inline Network make_path(const std::vector<NodeId>& ids, double c) {
  std::vector<qconn::Node> nodes;
  std::vector<qconn::Edge> edges;
  for (NodeId id : ids) nodes.push_back({id, {}});
  for (std::size_t k = 0; k + 1 < ids.size(); ++k)
    edges.push_back({ids[k], ids[k + 1], c});
  return Network(std::move(nodes), std::move(edges));
}

// Small random instance for property tests: 2..max_nodes nodes, random
// density, concurrences in [0.05, 1] with an occasional hard zero.
inline Network random_test_network(qconn::Rng& rng, int max_nodes = 10,
                                   double zero_edge_prob = 0.05) {
  const int n =
      2 + static_cast<int>(rng.u01() * static_cast<double>(max_nodes - 1));
  const double p = rng.uniform(0.15, 0.95);
  std::vector<qconn::Node> nodes;
  for (NodeId i = 0; i < n; ++i) nodes.push_back({i, {}});
  std::vector<qconn::Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) {
        const double c =
            rng.bernoulli(zero_edge_prob) ? 0.0 : rng.uniform(0.05, 1.0);
        edges.push_back({i, j, c});
      }
  return Network(std::move(nodes), std::move(edges));
}

}  // namespace testutil
