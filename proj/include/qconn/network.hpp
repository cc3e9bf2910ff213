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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qconn/errors.hpp"

namespace qconn {

using NodeId = std::int64_t;

struct Position {
  double x = 0.0;  // km
  double y = 0.0;  // km

  friend bool operator==(const Position&, const Position&) = default;
};

struct Node {
  NodeId id = 0;
  std::optional<Position> position;

  friend bool operator==(const Node&, const Node&) = default;
};

/// Undirected edge carrying the concurrence of the entangled state shared
/// across it. Concurrence must lie in the closed interval [0, 1].
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double concurrence = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Ordered (ascending id) duplicate-free set of node ids.
class NodeSet {
 public:
  NodeSet() = default;

  explicit NodeSet(std::vector<NodeId> ids) : members_(std::move(ids)) {
    std::sort(members_.begin(), members_.end());
    auto dup = std::adjacent_find(members_.begin(), members_.end());
    detail::require(dup == members_.end(), errc::duplicate_node,
                    "node set contains duplicate id " +
                        (dup == members_.end() ? std::string()
                                               : std::to_string(*dup)));
  }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  bool contains(NodeId id) const {
    return std::binary_search(members_.begin(), members_.end(), id);
  }

  /// Position of `id` within the ordered set.
  std::size_t rank(NodeId id) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), id);
    detail::require(it != members_.end() && *it == id, errc::unknown_node,
                    "node " + std::to_string(id) + " not in set");
    return static_cast<std::size_t>(it - members_.begin());
  }

  NodeId operator[](std::size_t i) const { return members_[i]; }
  const std::vector<NodeId>& members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<NodeId> members_;
};

/// Immutable weighted undirected simple graph of entanglement links.
///
/// Node ids are arbitrary 64-bit integers; internally they map to dense
/// indices in declaration order. Adjacency is stored in CSR form with arcs
/// sorted by neighbour id, so traversals that break ties by "smallest node
/// id first" fall out of plain iteration order. Edges with concurrence 0
/// stay in the edge list (and in neighbour sets) but get weight +inf, which
/// path algorithms treat as non-traversable.
///
/// Instances never change after construction and are safe to share across
/// threads.
class Network {
 public:
  /// Directed half of an undirected edge, in dense-index space.
  struct Arc {
    std::uint32_t to = 0;
    double concurrence = 0.0;
    double weight = 0.0;  // -log(concurrence); +inf when concurrence == 0
  };

  Network(std::vector<Node> nodes, std::vector<Edge> edges)
      : nodes_(std::move(nodes)), edges_(std::move(edges)) {
    detail::require(nodes_.size() < 0xffffffffu, errc::invalid_parameter,
                    "too many nodes");
    index_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      auto [it, inserted] =
          index_.emplace(nodes_[i].id, static_cast<std::uint32_t>(i));
      detail::require(inserted, errc::duplicate_node,
                      "duplicate node id " + std::to_string(nodes_[i].id));
    }

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges_.size());
    std::vector<std::uint32_t> degree(nodes_.size(), 0);
    for (const Edge& e : edges_) {
      detail::require(e.concurrence >= 0.0 && e.concurrence <= 1.0,
                      errc::concurrence_out_of_range,
                      "edge (" + std::to_string(e.u) + "," +
                          std::to_string(e.v) + ") has concurrence " +
                          std::to_string(e.concurrence));
      detail::require(e.u != e.v, errc::self_loop,
                      "self-loop at node " + std::to_string(e.u));
      auto iu = index_.find(e.u);
      auto iv = index_.find(e.v);
      detail::require(iu != index_.end() && iv != index_.end(),
                      errc::dangling_endpoint,
                      "edge (" + std::to_string(e.u) + "," +
                          std::to_string(e.v) + ") references unknown node");
      std::uint64_t a = iu->second, b = iv->second;
      if (a > b) std::swap(a, b);
      detail::require(seen.insert((a << 32) | b).second, errc::duplicate_edge,
                      "duplicate edge (" + std::to_string(e.u) + "," +
                          std::to_string(e.v) + ")");
      ++degree[a];
      ++degree[b];
    }

    arc_offset_.assign(nodes_.size() + 1, 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      arc_offset_[i + 1] = arc_offset_[i] + degree[i];
    arcs_.resize(2 * edges_.size());
    std::vector<std::uint32_t> cursor(arc_offset_.begin(),
                                      arc_offset_.end() - 1);
    for (const Edge& e : edges_) {
      const std::uint32_t a = index_.at(e.u), b = index_.at(e.v);
      const double w = -std::log(e.concurrence);
      arcs_[cursor[a]++] = Arc{b, e.concurrence, w};
      arcs_[cursor[b]++] = Arc{a, e.concurrence, w};
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      std::sort(arcs_.begin() + arc_offset_[i],
                arcs_.begin() + arc_offset_[i + 1],
                [this](const Arc& x, const Arc& y) {
                  return nodes_[x.to].id < nodes_[y.to].id;
                });
    }
  }

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool has_node(NodeId id) const { return index_.count(id) != 0; }

  std::uint32_t index_of(NodeId id) const {
    auto it = index_.find(id);
    detail::require(it != index_.end(), errc::unknown_node,
                    "unknown node " + std::to_string(id));
    return it->second;
  }

  NodeId id_of(std::size_t index) const { return nodes_[index].id; }

  std::span<const Arc> arcs(std::size_t index) const {
    return {arcs_.data() + arc_offset_[index],
            arcs_.data() + arc_offset_[index + 1]};
  }

  std::size_t degree(NodeId id) const {
    const std::uint32_t i = index_of(id);
    return arc_offset_[i + 1] - arc_offset_[i];
  }

  bool all_positioned() const {
    return std::all_of(nodes_.begin(), nodes_.end(),
                       [](const Node& n) { return n.position.has_value(); });
  }

  friend bool operator==(const Network& a, const Network& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<NodeId, std::uint32_t> index_;
  std::vector<std::uint32_t> arc_offset_;
  std::vector<Arc> arcs_;
};

inline Network build_network(std::vector<Node> nodes, std::vector<Edge> edges) {
  return Network(std::move(nodes), std::move(edges));
}

/// All nodes sharing an edge with `i`, excluding `i` itself. Edges with
/// concurrence 0 still count as edges here.
inline NodeSet neighbor_set(const Network& net, NodeId i) {
  const std::uint32_t idx = net.index_of(i);
  std::vector<NodeId> out;
  const auto arcs = net.arcs(idx);
  out.reserve(arcs.size());
  for (const Network::Arc& a : arcs) out.push_back(net.id_of(a.to));
  return NodeSet(std::move(out));
}

}  // namespace qconn
